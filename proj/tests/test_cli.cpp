// SPDX-License-Identifier: Apache-2.0
//
// whpulse - pulse design for Weyl-Heisenberg signaling over WSSUS channels
// Copyright (C) 2026 The whpulse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Runs the command-line tool as a subprocess.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"
#include "whp/io.hpp"

using json = nlohmann::json;
using whp::testing::ScratchDir;
using whp::testing::slurp;

namespace
{
    struct Run
    {
        int code = -1;
        std::string err;
    };

    Run run_cli(const ScratchDir &dir, const std::string &args)
    {
        const std::string err_file = dir.file("stderr.txt");
        const std::string cmd = std::string(WHP_CLI_PATH) + " " + args + " > " + dir.file("stdout.txt") + " 2> " + err_file;
        const int status = std::system(cmd.c_str());
        Run r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = slurp(err_file);
        return r;
    }

    std::string write_config(const ScratchDir &dir, const std::string &name, json cfg)
    {
        const std::string path = dir.file(name);
        std::ofstream(path) << cfg.dump(2);
        return path;
    }

    json read_json(const std::string &path) { return json::parse(slurp(path)); }

    std::vector<std::vector<std::string>> read_csv(const std::string &path)
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(slurp(path));
        std::string line;
        while (std::getline(in, line))
        {
            std::vector<std::string> cells;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                cells.push_back(cell);
            if (!line.empty() && line.back() == ',')
                cells.emplace_back();
            rows.push_back(cells);
        }
        return rows;
    }
}

TEST_CASE("design on the Gaussian channel")
{
    ScratchDir dir("cli");
    const std::string out = dir.file("design");
    const std::string cfg = write_config(dir, "design.json",
                                         {{"scattering", {{"model", "gaussian"}, {"alpha", 2.0}, {"resolution", 48}}},
                                          {"method", "alternating"},
                                          {"output_dir", out}});
    const Run r = run_cli(dir, "design --config " + cfg);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const json result = read_json(out + "/result.json");
    CHECK(std::abs(result["gain"].get<double>() - 0.5) < 2e-3);
    CHECK(result["method"] == "alternating");
    CHECK(result["config"]["grid"]["n_samples"] == 256);
    CHECK(result["config"]["lattice"]["T_seconds"] == 2.0);
    const auto gamma_rows = read_csv(out + "/gamma.csv");
    CHECK(gamma_rows.size() == 258); // metadata, column names, 256 samples
    CHECK(gamma_rows[1] == std::vector<std::string>{"t", "re", "im"});

    // byte-identical on rerun
    const std::string first_result = slurp(out + "/result.json");
    const std::string first_gamma = slurp(out + "/gamma.csv");
    REQUIRE(run_cli(dir, "design --config " + cfg).code == 0);
    CHECK(slurp(out + "/result.json") == first_result);
    CHECK(slurp(out + "/gamma.csv") == first_gamma);

    // the embedded config reproduces the run on its own
    json embedded = result["config"];
    embedded["output_dir"] = dir.file("replay");
    const std::string replay = write_config(dir, "replay.json", embedded);
    REQUIRE(run_cli(dir, "design --config " + replay).code == 0);
    CHECK(slurp(dir.file("replay/gamma.csv")) == first_gamma);
    CHECK(read_json(dir.file("replay/result.json"))["gain"] == result["gain"]);

    // evaluate the designed pair
    const std::string eval_out = dir.file("eval");
    const std::string ecfg = write_config(dir, "eval.json",
                                          {{"scattering", {{"model", "gaussian"}, {"alpha", 2.0}, {"resolution", 48}}},
                                           {"monte_carlo", {{"n_realizations", 4000}, {"seed", 3}}},
                                           {"output_dir", eval_out}});
    const Run e = run_cli(dir, "evaluate --config " + ecfg + " --gamma " + out + "/gamma.csv --g " + out + "/g.csv");
    REQUIRE_MESSAGE(e.code == 0, e.err);
    const json rep = read_json(eval_out + "/report.json");
    const double gain = rep["quadrature_gain"], ea = rep["E_a"], eb = rep["E_b"], se = rep["mc_stderr"];
    CHECK(std::abs(gain - result["gain"].get<double>()) < 1e-12);
    CHECK(std::abs(ea - gain) < 3.0 * se);
    CHECK(rep["sinr"].get<double>() == ea / (rep["sigma2"].get<double>() + eb));
    CHECK(eb <= rep["bessel_bound"].get<double>() - ea + 3.0 * se);
}

TEST_CASE("design edge cases")
{
    ScratchDir dir("cli");
    const std::string point = write_config(
        dir, "point.json",
        {{"scattering", {{"model", "point"}, {"tau_seconds", 0.5}, {"nu_hertz", -0.25}}}, {"output_dir", dir.file("p")}});
    REQUIRE(run_cli(dir, "design --config " + point).code == 0);
    CHECK(std::abs(read_json(dir.file("p/result.json"))["gain"].get<double>() - 1.0) < 1e-8);

    // correlated delay-Doppler spread is outside the local eigen path
    {
        std::ofstream csv(dir.file("skew.csv"));
        csv << "tau,nu,w\n-0.1,-0.05,1\n0,0,1\n0.1,0.05,1\n";
    }
    const std::string skew = write_config(dir, "skew.json",
                                          {{"scattering", {{"model", "custom"}, {"csv_path", "skew.csv"}}},
                                           {"method", "local_eigen"},
                                           {"output_dir", dir.file("s")}});
    const Run r = run_cli(dir, "design --config " + skew);
    CHECK(r.code == 2);
    CHECK(r.err.find("separable") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2")
{
    ScratchDir dir("cli");
    auto code_for = [&](const json &cfg, const std::string &cmd = "design") {
        return run_cli(dir, cmd + " --config " + write_config(dir, "c.json", cfg)).code;
    };
    CHECK(code_for({{"bogus", 1}}) == 2);
    CHECK(code_for({{"scattering", {{"model", "gaussian"}, {"alpah", 2}}}}) == 2);
    CHECK(code_for({{"scattering", {{"model", "rectangular"}}}}) == 2);
    CHECK(code_for({{"method", "simplex"}}) == 2);
    CHECK(code_for({{"grid", {{"t_span_seconds", -1}}}}) == 2);
    CHECK(code_for({{"monte_carlo", {{"n_realizations", 10}}}}) == 2);
    // lattice atoms beyond the guard region
    const Run guard = run_cli(dir, "simulate --config " + write_config(dir, "g.json", {{"lattice", {{"T_seconds", 5.0}}},
                                                                                       {"output_dir", dir.file("o")}}));
    CHECK(guard.code == 2);
    CHECK(guard.err.find("guard") != std::string::npos);
    CHECK(run_cli(dir, "design --config " + dir.file("missing.json")).code == 2);
    {
        std::ofstream(dir.file("broken.json")) << "{ not json";
    }
    CHECK(run_cli(dir, "design --config " + dir.file("broken.json")).code == 2);
    CHECK(run_cli(dir, "design").code == 2);
}

TEST_CASE("evaluate rejects mismatched or missing pulses")
{
    ScratchDir dir("cli");
    const std::string small = write_config(
        dir, "small.json",
        {{"grid", {{"n_samples", 128}}},
         {"scattering", {{"model", "point"}}},
         {"method", "gaussian_ansatz"},
         {"output_dir", dir.file("small")}});
    REQUIRE(run_cli(dir, "design --config " + small).code == 0);
    const std::string cfg = write_config(dir, "eval.json", {{"output_dir", dir.file("e")}});
    const Run r = run_cli(dir, "evaluate --config " + cfg + " --gamma " + dir.file("small/gamma.csv") + " --g " +
                                   dir.file("small/g.csv"));
    CHECK(r.code == 2);
    CHECK(run_cli(dir, "evaluate --config " + cfg).code == 2);
}

TEST_CASE("far-separated pulses have no gain")
{
    ScratchDir dir("cli");
    const whp::TimeGrid grid;
    whp::write_signal_csv(dir.file("early.csv"), whp::tf_shift(whp::hermite(grid, 0), -3.0, 0.0));
    whp::write_signal_csv(dir.file("late.csv"), whp::tf_shift(whp::hermite(grid, 0), 3.0, 0.0));
    const std::string cfg = write_config(
        dir, "far.json",
        {{"scattering", {{"model", "rectangular"}, {"tau_max_seconds", 0.2}, {"nu_max_hertz", 0.05}, {"resolution", 32}}},
         {"pulses", {{"gamma_csv", "early.csv"}, {"g_csv", "late.csv"}}},
         {"monte_carlo", {{"n_realizations", 200}}},
         {"output_dir", dir.file("far")}});
    const Run r = run_cli(dir, "evaluate --config " + cfg);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(read_json(dir.file("far/report.json"))["quadrature_gain"].get<double>() < 1e-6);
}

TEST_CASE("simulate writes a per-realization trace")
{
    ScratchDir dir("cli");
    const std::string cfg = write_config(dir, "sim.json",
                                         {{"scattering", {{"model", "gaussian"}, {"alpha", 2.0}, {"resolution", 32}}},
                                          {"monte_carlo", {{"n_realizations", 500}, {"seed", 11}}},
                                          {"output_dir", dir.file("sim")}});
    REQUIRE(run_cli(dir, "simulate --config " + cfg).code == 0);
    const auto rows = read_csv(dir.file("sim/trace.csv"));
    REQUIRE(rows.size() == 501);
    CHECK(rows[0] == std::vector<std::string>{"realization_id", "a", "b"});
    const json rep = read_json(dir.file("sim/report.json"));
    CHECK(rep["n_realizations"] == 500);
    CHECK(rep["config"]["monte_carlo"]["seed"] == 11);

    // --seed overrides the configured seed and changes the draws
    REQUIRE(run_cli(dir, "simulate --config " + cfg + " --seed 12 --out " + dir.file("sim12")).code == 0);
    CHECK(read_json(dir.file("sim12/report.json"))["config"]["monte_carlo"]["seed"] == 12);
    CHECK(slurp(dir.file("sim12/trace.csv")) != slurp(dir.file("sim/trace.csv")));
}

TEST_CASE("sweeps")
{
    ScratchDir dir("cli");
    const json rect{{"model", "rectangular"}, {"tau_max_seconds", 0.2}, {"nu_max_hertz", 0.05}, {"resolution", 128}};
    std::string values;
    for (int i = 0; i <= 50; ++i)
        values += (i ? "," : "") + std::to_string(0.5 + 0.01 * i);
    const std::string cfg = write_config(dir, "sweep.json", {{"scattering", rect}, {"output_dir", dir.file("a")}});
    const Run r = run_cli(dir, "sweep --config " + cfg + " --param alpha --values " + values);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const json summary = read_json(dir.file("a/sweep.json"));
    CHECK(std::abs(summary["argmax_value"].get<double>() - 0.70711) <= 0.01 + 1e-9);
    const auto rows = read_csv(dir.file("a/sweep.csv"));
    REQUIRE(rows.size() == 52);
    CHECK(rows[0][0] == "alpha");
    CHECK(rows[0][1] == "gain");

    // quadrature refinement converges to the closed form
    const std::string res = write_config(
        dir, "res.json",
        {{"scattering", {{"model", "gaussian"}, {"alpha", 2.0}}}, {"output_dir", dir.file("r")}});
    REQUIRE(run_cli(dir, "sweep --config " + res + " --param resolution --values 4,8,16,32").code == 0);
    const auto res_rows = read_csv(dir.file("r/sweep.csv"));
    REQUIRE(res_rows.size() == 5);
    double previous = 1.0;
    for (std::size_t i = 1; i < res_rows.size(); ++i)
    {
        const double err = std::abs(std::stod(res_rows[i][1]) - 0.5);
        CHECK(err <= previous);
        previous = err;
    }
    CHECK(previous < 2e-3);

    CHECK(run_cli(dir, "sweep --config " + cfg + " --param alpha").code == 2);
    CHECK(run_cli(dir, "sweep --config " + cfg + " --param colour --values 1,2").code == 2);
    // same seed and values: identical table
    const std::string first = slurp(dir.file("a/sweep.csv"));
    REQUIRE(run_cli(dir, "sweep --config " + cfg + " --param alpha --values " + values).code == 0);
    CHECK(slurp(dir.file("a/sweep.csv")) == first);
}
