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

// whpulse command-line front end. Talks to the library only through whp.h.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "whp/whp.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{
    constexpr int exit_config = 2;
    constexpr int exit_numerical = 3;

    struct CliError : std::runtime_error
    {
        CliError(int code, const std::string &message) : std::runtime_error(message), exit_code(code) {}
        int exit_code;
    };

    [[noreturn]] void config_error(const std::string &message) { throw CliError(exit_config, message); }

    void check(whp_status status, const std::string &context)
    {
        if (status == WHP_OK)
            return;
        const int code = (status == WHP_ERR_NUMERICAL || status == WHP_ERR_INTERNAL) ? exit_numerical : exit_config;
        throw CliError(code, context + ": " + whp_status_name(status) + ": " + whp_last_error());
    }

    struct Release
    {
        void operator()(whp_grid *p) const { whp_grid_destroy(p); }
        void operator()(whp_signal *p) const { whp_signal_destroy(p); }
        void operator()(whp_scattering *p) const { whp_scattering_destroy(p); }
        void operator()(whp_lattice *p) const { whp_lattice_destroy(p); }
        void operator()(whp_design *p) const { whp_design_destroy(p); }
        void operator()(char *p) const { whp_string_free(p); }
    };
    using Grid = std::unique_ptr<whp_grid, Release>;
    using Pulse = std::unique_ptr<whp_signal, Release>;
    using Scattering = std::unique_ptr<whp_scattering, Release>;
    using Lattice = std::unique_ptr<whp_lattice, Release>;
    using Design = std::unique_ptr<whp_design, Release>;
    using CString = std::unique_ptr<char, Release>;

    json take_json(char *raw)
    {
        CString owned(raw);
        return json::parse(owned.get());
    }

    std::string fmt(double x)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    // ------------------------------------------------------------ configuration

    void allow_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where)
    {
        if (!obj.is_object())
            config_error(where + " must be a JSON object");
        for (const auto &[k, v] : obj.items())
            if (!allowed.count(k))
                config_error("unknown key '" + k + "' in " + where);
    }

    template <class T>
    T field(const json &obj, const std::string &key, const T &fallback, const std::string &where)
    {
        if (!obj.contains(key))
            return fallback;
        try
        {
            return obj.at(key).get<T>();
        }
        catch (const json::exception &)
        {
            config_error(where + "." + key + " has the wrong type");
        }
    }

    template <class T>
    T required(const json &obj, const std::string &key, const std::string &where)
    {
        if (!obj.contains(key))
            config_error(where + "." + key + " is required");
        return field<T>(obj, key, T{}, where);
    }

    void require_positive(double v, const std::string &name)
    {
        if (!(v > 0.0) || !std::isfinite(v))
            config_error(name + " must be a positive finite number");
    }

    fs::path resolve_path(const std::string &p, const fs::path &base)
    {
        fs::path path(p);
        return path.is_absolute() ? path : base / path;
    }

    // Fills every default so the written config reproduces the run on its own.
    json resolve_config(const json &raw, const fs::path &base)
    {
        allow_keys(raw, {"grid", "scattering", "lattice", "method", "optimizer", "monte_carlo", "pulses", "sweep",
                         "output_dir"},
                   "config");
        json cfg;

        const json grid = raw.value("grid", json::object());
        allow_keys(grid, {"n_samples", "t_span_seconds"}, "grid");
        cfg["grid"] = {{"n_samples", field<std::size_t>(grid, "n_samples", 256, "grid")},
                       {"t_span_seconds", field<double>(grid, "t_span_seconds", 16.0, "grid")}};
        require_positive(cfg["grid"]["t_span_seconds"].get<double>(), "grid.t_span_seconds");

        const json sc = raw.value("scattering", json{{"model", "gaussian"}});
        allow_keys(sc, {"model", "alpha", "resolution", "tau_max_seconds", "nu_max_hertz", "tau_seconds", "nu_hertz",
                        "csv_path"},
                   "scattering");
        std::string model = field<std::string>(sc, "model", "gaussian", "scattering");
        if (model == "gaussian_symmetric")
            model = "gaussian";
        json out_sc{{"model", model}};
        if (model == "gaussian")
        {
            out_sc["alpha"] = field<double>(sc, "alpha", 2.0, "scattering");
            out_sc["resolution"] = field<unsigned>(sc, "resolution", 64, "scattering");
            require_positive(out_sc["alpha"].get<double>(), "scattering.alpha");
        }
        else if (model == "rectangular")
        {
            out_sc["tau_max_seconds"] = required<double>(sc, "tau_max_seconds", "scattering");
            out_sc["nu_max_hertz"] = required<double>(sc, "nu_max_hertz", "scattering");
            out_sc["resolution"] = field<unsigned>(sc, "resolution", 256, "scattering");
            require_positive(out_sc["tau_max_seconds"].get<double>(), "scattering.tau_max_seconds");
            require_positive(out_sc["nu_max_hertz"].get<double>(), "scattering.nu_max_hertz");
        }
        else if (model == "point")
        {
            out_sc["tau_seconds"] = field<double>(sc, "tau_seconds", 0.0, "scattering");
            out_sc["nu_hertz"] = field<double>(sc, "nu_hertz", 0.0, "scattering");
        }
        else if (model == "custom")
            out_sc["csv_path"] = resolve_path(required<std::string>(sc, "csv_path", "scattering"), base).string();
        else
            config_error("scattering.model must be one of gaussian, rectangular, point, custom (got '" + model + "')");
        if (out_sc.contains("resolution") && out_sc["resolution"].get<unsigned>() == 0)
            config_error("scattering.resolution must be positive");
        cfg["scattering"] = out_sc;

        const json lat = raw.value("lattice", json::object());
        allow_keys(lat, {"T_seconds", "F_hertz", "index_radius"}, "lattice");
        cfg["lattice"] = {{"T_seconds", field<double>(lat, "T_seconds", 2.0, "lattice")},
                          {"F_hertz", field<double>(lat, "F_hertz", 2.0, "lattice")},
                          {"index_radius", field<int>(lat, "index_radius", 2, "lattice")}};
        require_positive(cfg["lattice"]["T_seconds"].get<double>(), "lattice.T_seconds");
        require_positive(cfg["lattice"]["F_hertz"].get<double>(), "lattice.F_hertz");
        if (cfg["lattice"]["index_radius"].get<int>() < 0)
            config_error("lattice.index_radius must be nonnegative");

        cfg["method"] = field<std::string>(raw, "method", "alternating", "config");
        whp_method method{};
        if (whp_method_from_name(cfg["method"].get<std::string>().c_str(), &method) != WHP_OK)
            config_error("method must be one of gaussian_ansatz, local_eigen, exact_oscillator, alternating");

        const json opt = raw.value("optimizer", json::object());
        allow_keys(opt, {"max_iters", "tol"}, "optimizer");
        cfg["optimizer"] = {{"max_iters", field<int>(opt, "max_iters", 200, "optimizer")},
                            {"tol", field<double>(opt, "tol", 1e-9, "optimizer")}};
        if (cfg["optimizer"]["max_iters"].get<int>() < 1)
            config_error("optimizer.max_iters must be at least 1");
        require_positive(cfg["optimizer"]["tol"].get<double>(), "optimizer.tol");

        const json mc = raw.value("monte_carlo", json::object());
        allow_keys(mc, {"n_realizations", "seed", "sigma2"}, "monte_carlo");
        cfg["monte_carlo"] = {{"n_realizations", field<int>(mc, "n_realizations", 20000, "monte_carlo")},
                              {"seed", field<std::uint64_t>(mc, "seed", 1, "monte_carlo")},
                              {"sigma2", field<double>(mc, "sigma2", 0.1, "monte_carlo")}};
        if (cfg["monte_carlo"]["n_realizations"].get<int>() < 100)
            config_error("monte_carlo.n_realizations must be at least 100");
        if (!(cfg["monte_carlo"]["sigma2"].get<double>() >= 0.0))
            config_error("monte_carlo.sigma2 must be nonnegative");

        if (raw.contains("pulses"))
        {
            const json &p = raw["pulses"];
            allow_keys(p, {"gamma_csv", "g_csv"}, "pulses");
            json out_p = json::object();
            for (const char *k : {"gamma_csv", "g_csv"})
                if (p.contains(k))
                    out_p[k] = resolve_path(field<std::string>(p, k, "", "pulses"), base).string();
            cfg["pulses"] = out_p;
        }
        if (raw.contains("sweep"))
        {
            const json &s = raw["sweep"];
            allow_keys(s, {"parameter", "values"}, "sweep");
            cfg["sweep"] = {{"parameter", field<std::string>(s, "parameter", "", "sweep")},
                            {"values", field<std::vector<double>>(s, "values", {}, "sweep")}};
        }
        cfg["output_dir"] = field<std::string>(raw, "output_dir", "out", "config");
        return cfg;
    }

    json load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            config_error("cannot read config '" + path + "'");
        try
        {
            return json::parse(in);
        }
        catch (const json::exception &e)
        {
            config_error("config '" + path + "' is not valid JSON: " + e.what());
        }
    }

    // ------------------------------------------------------------ construction

    Grid make_grid(const json &cfg)
    {
        whp_grid *g = nullptr;
        check(whp_grid_create(cfg["grid"]["n_samples"].get<std::size_t>(),
                              cfg["grid"]["t_span_seconds"].get<double>(), &g),
              "grid");
        return Grid(g);
    }

    Scattering make_scattering(const json &cfg, const whp_grid *grid)
    {
        const json &sc = cfg["scattering"];
        const std::string model = sc["model"];
        whp_scattering *c = nullptr;
        if (model == "gaussian")
            check(whp_scattering_gaussian(sc["alpha"], sc["resolution"], &c), "scattering");
        else if (model == "rectangular")
            check(whp_scattering_rectangular(sc["tau_max_seconds"], sc["nu_max_hertz"], sc["resolution"], &c),
                  "scattering");
        else if (model == "point")
            check(whp_scattering_point(sc["tau_seconds"], sc["nu_hertz"], &c), "scattering");
        else
            check(whp_scattering_read_csv(sc["csv_path"].get<std::string>().c_str(), &c), "scattering");
        Scattering out(c);
        check(whp_scattering_check_guard(out.get(), grid), "scattering");
        return out;
    }

    Lattice make_lattice(const json &cfg, const whp_grid *grid)
    {
        const json &l = cfg["lattice"];
        whp_lattice *p = nullptr;
        check(whp_lattice_square(l["T_seconds"], l["F_hertz"], l["index_radius"], &p), "lattice");
        Lattice out(p);
        check(whp_lattice_validate(out.get(), grid), "lattice");
        return out;
    }

    Pulse read_pulse(const std::string &path, const whp_grid *grid, const std::string &what)
    {
        whp_signal *s = nullptr;
        check(whp_signal_read_csv(path.c_str(), &s), what);
        Pulse out(s);
        whp_grid *pg = nullptr;
        check(whp_signal_grid(out.get(), &pg), what);
        Grid own(pg);
        std::size_t n1 = 0, n2 = 0;
        double s1 = 0.0, s2 = 0.0;
        check(whp_grid_info(grid, &n1, &s1, nullptr), what);
        check(whp_grid_info(own.get(), &n2, &s2, nullptr), what);
        if (n1 != n2 || s1 != s2)
            config_error(what + " '" + path + "' lives on a grid of " + std::to_string(n2) + " samples over " +
                         fmt(s2) + " s; the config grid has " + std::to_string(n1) + " over " + fmt(s1) + " s");
        whp_signal *unit = nullptr;
        check(whp_signal_normalize(out.get(), &unit), what);
        return Pulse(unit);
    }

    Pulse hermite0(const whp_grid *grid)
    {
        whp_signal *s = nullptr;
        check(whp_signal_hermite(grid, 0, &s), "pulse");
        return Pulse(s);
    }

    // Pulses from --gamma/--g, else the config, else h0 when allowed.
    std::pair<Pulse, Pulse> pick_pulses(const json &cfg, const whp_grid *grid, const std::string &gamma_flag,
                                        const std::string &g_flag, bool default_h0)
    {
        std::string gamma_path = gamma_flag;
        std::string g_path = g_flag;
        if (cfg.contains("pulses"))
        {
            if (gamma_path.empty())
                gamma_path = cfg["pulses"].value("gamma_csv", "");
            if (g_path.empty())
                g_path = cfg["pulses"].value("g_csv", "");
        }
        if (gamma_path.empty() || g_path.empty())
        {
            if (!default_h0)
                config_error("evaluate needs both pulses (--gamma and --g, or pulses.gamma_csv and pulses.g_csv)");
        }
        Pulse gamma = gamma_path.empty() ? hermite0(grid) : read_pulse(gamma_path, grid, "gamma");
        Pulse g = g_path.empty() ? hermite0(grid) : read_pulse(g_path, grid, "g");
        return {std::move(gamma), std::move(g)};
    }

    // ------------------------------------------------------------ evaluation

    struct Metrics
    {
        double gain = 0.0;
        std::optional<double> lower_bound;
        json mc; // null when Monte-Carlo was not run
        double bessel = 0.0;
    };

    json moments_of(const whp_scattering *c)
    {
        char *raw = nullptr;
        check(whp_scattering_moments_json(c, &raw), "moments");
        return take_json(raw);
    }

    Metrics evaluate_pair(const json &cfg, const whp_scattering *c, const whp_lattice *lattice, const whp_signal *g,
                          const whp_signal *gamma, bool monte_carlo, const std::string &trace_path = "")
    {
        Metrics m;
        check(whp_fidelity(c, g, gamma, &m.gain), "fidelity");
        const json mom = moments_of(c);
        double lb = 0.0;
        const whp_status st = whp_lower_bound(c, g, gamma, mom["tau0"], mom["nu0"], &lb);
        if (st == WHP_OK)
            m.lower_bound = lb;
        else if (st != WHP_ERR_GUARD_VIOLATION)
            check(st, "lower bound");
        check(whp_bessel_bound(gamma, lattice, &m.bessel), "bessel bound");
        if (monte_carlo)
        {
            const json &mc = cfg["monte_carlo"];
            char *raw = nullptr;
            check(whp_simulate(c, g, gamma, lattice, mc["sigma2"], mc["n_realizations"],
                               mc["seed"].get<std::uint64_t>(), trace_path.empty() ? nullptr : trace_path.c_str(),
                               &raw),
                  "simulate");
            m.mc = take_json(raw);
        }
        return m;
    }

    json metrics_json(const Metrics &m)
    {
        json j{{"quadrature_gain", m.gain},
               {"lower_bound", m.lower_bound ? json(*m.lower_bound) : json(nullptr)},
               {"bessel_bound", m.bessel}};
        if (!m.mc.is_null())
            for (const auto &[k, v] : m.mc.items())
                j[k] = v;
        return j;
    }

    void write_file(const fs::path &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::trunc);
        out << text;
        if (!out)
            throw CliError(exit_config, "cannot write '" + path.string() + "'");
    }

    fs::path prepare_output(const json &cfg)
    {
        const fs::path dir = cfg["output_dir"].get<std::string>();
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            config_error("cannot create output directory '" + dir.string() + "': " + ec.message());
        return dir;
    }

    void write_pulse(const whp_signal *s, const fs::path &path)
    {
        check(whp_signal_write_csv(s, path.string().c_str()), "write " + path.string());
    }

    // ------------------------------------------------------------ commands

    int cmd_design(const json &cfg)
    {
        Grid grid = make_grid(cfg);
        Scattering c = make_scattering(cfg, grid.get());
        whp_method method{};
        check(whp_method_from_name(cfg["method"].get<std::string>().c_str(), &method), "method");
        const fs::path dir = prepare_output(cfg);

        whp_design *raw = nullptr;
        check(whp_design_run(grid.get(), c.get(), method, cfg["optimizer"]["max_iters"], cfg["optimizer"]["tol"], &raw),
              "design");
        Design d(raw);
        whp_signal *gamma = nullptr;
        whp_signal *g = nullptr;
        check(whp_design_gamma(d.get(), &gamma), "design");
        Pulse gamma_p(gamma);
        check(whp_design_g(d.get(), &g), "design");
        Pulse g_p(g);
        write_pulse(gamma_p.get(), dir / "gamma.csv");
        write_pulse(g_p.get(), dir / "g.csv");

        char *js = nullptr;
        check(whp_design_json(d.get(), &js), "design");
        json result = take_json(js);
        json out{{"command", "design"}, {"config", cfg}, {"moments", moments_of(c.get())}};
        for (const auto &[k, v] : result.items())
            out[k] = v;
        write_file(dir / "result.json", out.dump(2) + "\n");
        std::cout << "design " << cfg["method"].get<std::string>() << ": gain " << fmt(result["gain"].get<double>())
                  << " -> " << dir.string() << "\n";
        return 0;
    }

    int cmd_evaluate(const json &cfg, const std::string &gamma_flag, const std::string &g_flag)
    {
        Grid grid = make_grid(cfg);
        Scattering c = make_scattering(cfg, grid.get());
        Lattice lattice = make_lattice(cfg, grid.get());
        auto [gamma, g] = pick_pulses(cfg, grid.get(), gamma_flag, g_flag, false);
        const fs::path dir = prepare_output(cfg);
        const Metrics m = evaluate_pair(cfg, c.get(), lattice.get(), g.get(), gamma.get(), true);
        json out{{"command", "evaluate"}, {"config", cfg}};
        const json metrics = metrics_json(m); // items() only views its argument
        for (const auto &[k, v] : metrics.items())
            out[k] = v;
        write_file(dir / "report.json", out.dump(2) + "\n");
        std::cout << "evaluate: gain " << fmt(m.gain) << ", E_a " << fmt(m.mc["E_a"].get<double>()) << " -> "
                  << dir.string() << "\n";
        return 0;
    }

    int cmd_simulate(const json &cfg, const std::string &gamma_flag, const std::string &g_flag)
    {
        Grid grid = make_grid(cfg);
        Scattering c = make_scattering(cfg, grid.get());
        Lattice lattice = make_lattice(cfg, grid.get());
        auto [gamma, g] = pick_pulses(cfg, grid.get(), gamma_flag, g_flag, true);
        const fs::path dir = prepare_output(cfg);
        const json &mc = cfg["monte_carlo"];
        char *raw = nullptr;
        check(whp_simulate(c.get(), g.get(), gamma.get(), lattice.get(), mc["sigma2"], mc["n_realizations"],
                           mc["seed"].get<std::uint64_t>(), (dir / "trace.csv").string().c_str(), &raw),
              "simulate");
        json rep = take_json(raw);
        json out{{"command", "simulate"}, {"config", cfg}};
        for (const auto &[k, v] : rep.items())
            out[k] = v;
        write_file(dir / "report.json", out.dump(2) + "\n");
        std::cout << "simulate: E_a " << fmt(rep["E_a"].get<double>()) << " +/- " << fmt(rep["mc_stderr"].get<double>())
                  << " -> " << dir.string() << "\n";
        return 0;
    }

    int cmd_sweep(json cfg, const std::string &param_flag, const std::vector<double> &values_flag,
                  const std::string &gamma_flag, const std::string &g_flag, bool mc_requested)
    {
        std::string parameter = param_flag;
        std::vector<double> values = values_flag;
        if (cfg.contains("sweep"))
        {
            if (parameter.empty())
                parameter = cfg["sweep"]["parameter"];
            if (values.empty())
                values = cfg["sweep"]["values"].get<std::vector<double>>();
        }
        static const std::set<std::string> known{"alpha", "T", "F", "n_realizations", "resolution"};
        if (!known.count(parameter))
            config_error("sweep parameter must be one of alpha, T, F, n_realizations, resolution (got '" + parameter +
                         "')");
        if (values.empty())
            config_error("sweep needs at least one value");
        for (double v : values)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                config_error("sweep values must be positive");
            if ((parameter == "n_realizations" || parameter == "resolution") && v != std::floor(v))
                config_error("sweep values for " + parameter + " must be integers");
            if (parameter == "n_realizations" && v < 100)
                config_error("sweep values for n_realizations must be at least 100");
        }
        if (parameter == "resolution" && cfg["scattering"]["model"] != "gaussian" &&
            cfg["scattering"]["model"] != "rectangular")
            config_error("a resolution sweep needs a gaussian or rectangular scattering model");
        cfg["sweep"] = {{"parameter", parameter}, {"values", values}};
        const bool monte_carlo = mc_requested || parameter == "T" || parameter == "F" || parameter == "n_realizations";

        // Validate every variant before computing anything.
        std::vector<json> variants;
        for (double v : values)
        {
            json run = cfg;
            if (parameter == "T")
                run["lattice"]["T_seconds"] = v;
            else if (parameter == "F")
                run["lattice"]["F_hertz"] = v;
            else if (parameter == "n_realizations")
                run["monte_carlo"]["n_realizations"] = int(v);
            else if (parameter == "resolution")
                run["scattering"]["resolution"] = unsigned(v);
            Grid grid = make_grid(run);
            make_scattering(run, grid.get());
            make_lattice(run, grid.get());
            variants.push_back(std::move(run));
        }
        const fs::path dir = prepare_output(cfg);

        std::ostringstream csv;
        csv << parameter << ",gain,lower_bound,bessel_bound,E_a,E_b,sinr,mc_stderr\n";
        std::size_t best = 0;
        std::vector<double> gains;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const json &run = variants[i];
            Grid grid = make_grid(run);
            Scattering c = make_scattering(run, grid.get());
            Lattice lattice = make_lattice(run, grid.get());
            Pulse gamma, g;
            if (parameter == "alpha")
            {
                // Displaced d_{1/alpha} h0 pair.
                const json mom = moments_of(c.get());
                Pulse h0 = hermite0(grid.get());
                whp_signal *dil = nullptr;
                check(whp_signal_dilate(h0.get(), 1.0 / values[i], &dil), "dilate");
                g.reset(dil);
                whp_signal *back = nullptr;
                check(whp_signal_tf_shift(g.get(), -mom["tau0"].get<double>(), -mom["nu0"].get<double>(), &back),
                      "shift");
                gamma.reset(back);
            }
            else
                std::tie(gamma, g) = pick_pulses(run, grid.get(), gamma_flag, g_flag, true);
            const Metrics m = evaluate_pair(run, c.get(), lattice.get(), g.get(), gamma.get(), monte_carlo);
            gains.push_back(m.gain);
            if (m.gain > gains[best])
                best = i;
            csv << fmt(values[i]) << ',' << fmt(m.gain) << ',' << (m.lower_bound ? fmt(*m.lower_bound) : "") << ','
                << fmt(m.bessel);
            for (const char *k : {"E_a", "E_b", "sinr", "mc_stderr"})
                csv << ',' << (m.mc.is_null() ? "" : fmt(m.mc[k].get<double>()));
            csv << '\n';
        }
        write_file(dir / "sweep.csv", csv.str());
        json summary{{"command", "sweep"},
                     {"config", cfg},
                     {"parameter", parameter},
                     {"values", values},
                     {"gains", gains},
                     {"argmax_index", best},
                     {"argmax_value", values[best]}};
        write_file(dir / "sweep.json", summary.dump(2) + "\n");
        std::cout << "sweep " << parameter << ": best " << fmt(values[best]) << " (gain " << fmt(gains[best])
                  << ") -> " << dir.string() << "\n";
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"whpulse: pulse design and evaluation for doubly dispersive channels"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string gamma_path;
    std::string g_path;
    std::string sweep_param;
    std::vector<double> sweep_values;
    bool sweep_mc = false;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--seed", seed, "Monte-Carlo seed (overrides monte_carlo.seed)");
    };
    CLI::App *design = app.add_subcommand("design", "optimize a transmit/receive pulse pair");
    CLI::App *evaluate = app.add_subcommand("evaluate", "quadrature and Monte-Carlo gain of a pulse pair");
    CLI::App *simulate = app.add_subcommand("simulate", "Monte-Carlo SINR of a pulse pair");
    CLI::App *sweep = app.add_subcommand("sweep", "tabulate gains over one parameter");
    for (CLI::App *sub : {design, evaluate, simulate, sweep})
        add_common(sub);
    for (CLI::App *sub : {evaluate, simulate, sweep})
    {
        sub->add_option("--gamma", gamma_path, "transmit pulse CSV");
        sub->add_option("--g", g_path, "receive pulse CSV");
    }
    sweep->add_option("--param", sweep_param, "alpha, T, F, n_realizations or resolution");
    sweep->add_option("--values", sweep_values, "comma-separated values")->delimiter(',');
    sweep->add_flag("--monte-carlo", sweep_mc, "run the Monte-Carlo estimate for every row");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    try
    {
        json raw = load_config(config_path);
        json cfg = resolve_config(raw, fs::path(config_path).parent_path());
        if (!out_dir.empty())
            cfg["output_dir"] = out_dir;
        if (sweep->count("--seed") || design->count("--seed") || evaluate->count("--seed") ||
            simulate->count("--seed"))
            cfg["monte_carlo"]["seed"] = seed;

        if (*design)
            return cmd_design(cfg);
        if (*evaluate)
            return cmd_evaluate(cfg, gamma_path, g_path);
        if (*simulate)
            return cmd_simulate(cfg, gamma_path, g_path);
        return cmd_sweep(cfg, sweep_param, sweep_values, gamma_path, g_path, sweep_mc || raw.contains("monte_carlo"));
    }
    catch (const CliError &e)
    {
        std::cerr << "whpulse: " << e.what() << "\n";
        return e.exit_code;
    }
    catch (const json::exception &e)
    {
        std::cerr << "whpulse: configuration error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "whpulse: " << e.what() << "\n";
        return exit_numerical;
    }
}
