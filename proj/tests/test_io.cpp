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

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>

#include <json.hpp>

#include "support.hpp"
#include "whp/error.hpp"
#include "whp/io.hpp"

using namespace whp;
using namespace whp::testing;
using json = nlohmann::json;

namespace
{
    ErrorCode code_of(auto &&fn)
    {
        try
        {
            fn();
        }
        catch (const Error &e)
        {
            return e.code();
        }
        FAIL("no error raised");
        return ErrorCode::invalid_argument;
    }
}

TEST_CASE("doubles survive a text round trip")
{
    std::mt19937_64 rng(1);
    std::vector<double> values{0.0, -0.0, 0.1, 1.0 / 3.0, 1e-300, 5e-324, 1.7976931348623157e308, -2.5e-17};
    for (int i = 0; i < 1000; ++i)
        values.push_back(std::ldexp(uniform(rng, -1.0, 1.0), int(uniform(rng, -60, 60))));
    for (double x : values)
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("pulse CSV")
{
    ScratchDir dir("io");
    const TimeGrid g(128, 12.0);
    std::mt19937_64 rng(2);
    const Signal s = random_pulse(g, rng);
    write_signal_csv(dir.file("p.csv"), s);
    const Signal back = read_signal_csv(dir.file("p.csv"));
    CHECK(back.grid() == g);
    CHECK(back.samples() == s.samples());
    const std::string text = slurp(dir.file("p.csv"));
    CHECK(text.rfind("# {", 0) == 0);
    CHECK(text.find("\nt,re,im\n") != std::string::npos);

    // without the metadata line the grid comes from the time column
    {
        std::ofstream out(dir.file("bare.csv"));
        for (std::size_t k = 0; k < g.size(); ++k)
            out << format_double(g.time(k)) << ',' << format_double(s[k].real()) << ','
                << format_double(s[k].imag()) << '\n';
    }
    const Signal bare = read_signal_csv(dir.file("bare.csv"));
    CHECK(bare.grid().size() == g.size());
    CHECK(std::abs(bare.grid().span() - g.span()) < 1e-12);
    CHECK(max_abs_diff(bare.samples(), s.samples()) == 0.0);

    {
        std::ofstream out(dir.file("bad.csv"));
        out << "t,re,im\n0,1\n";
    }
    CHECK(code_of([&] { read_signal_csv(dir.file("bad.csv")); }) == ErrorCode::io_error);
    CHECK(code_of([&] { read_signal_csv(dir.file("missing.csv")); }) == ErrorCode::io_error);
    {
        std::ofstream out(dir.file("short.csv"));
        out << "# {\"n_samples\":128,\"t_span\":12.0}\nt,re,im\n0,1,0\n0.1,1,0\n";
    }
    CHECK(code_of([&] { read_signal_csv(dir.file("short.csv")); }) == ErrorCode::grid_mismatch);
}

TEST_CASE("scattering CSV")
{
    ScratchDir dir("io");
    const ScatteringGrid c = build_rectangular(0.2, 0.05, 16);
    write_scattering_csv(dir.file("c.csv"), c);
    const ScatteringGrid back = read_scattering_csv(dir.file("c.csv"));
    REQUIRE(back.size() == c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
    {
        CHECK(back.nodes()[k].tau == c.nodes()[k].tau);
        CHECK(back.nodes()[k].nu == c.nodes()[k].nu);
        CHECK(back.nodes()[k].weight == doctest::Approx(c.nodes()[k].weight).epsilon(1e-15));
    }
    CHECK(back.model() == c.model());
    CHECK(back.parameters() == c.parameters());

    // unnormalized custom input is normalized on load
    {
        std::ofstream out(dir.file("raw.csv"));
        out << "tau,nu,w\n0,0,2\n0.5,0.25,6\n";
    }
    const ScatteringGrid raw = read_scattering_csv(dir.file("raw.csv"));
    CHECK(raw.model() == ScatteringModel::custom);
    CHECK(raw.nodes()[1].weight == doctest::Approx(0.75));
    {
        std::ofstream out(dir.file("neg.csv"));
        out << "tau,nu,w\n0,0,-1\n";
    }
    CHECK_THROWS_AS(read_scattering_csv(dir.file("neg.csv")), Error);
}

TEST_CASE("operator dumps")
{
    ScratchDir dir("io");
    const TimeGrid g(32, 8.0);
    const OperatorMatrix x = harmonic_oscillator(g);
    write_operator(dir.file("op"), x);
    const OperatorMatrix back = read_operator(dir.file("op"));
    CHECK(back.grid() == g);
    CHECK(back.entries() == x.entries());
    CHECK(std::filesystem::file_size(dir.file("op.bin")) == 32u * 32u * 16u);
    const json meta = json::parse(slurp(dir.file("op.json")));
    CHECK(meta["rows"] == 32);
    CHECK(meta["hermitian"] == true);

    // first entry stored as two little-endian doubles
    std::ifstream in(dir.file("op.bin"), std::ios::binary);
    double parts[2];
    in.read(reinterpret_cast<char *>(parts), sizeof parts);
    CHECK(parts[0] == x.entries()(0, 0).real());
    CHECK(parts[1] == x.entries()(0, 0).imag());

    std::filesystem::resize_file(dir.file("op.bin"), 100);
    CHECK(code_of([&] { read_operator(dir.file("op")); }) == ErrorCode::io_error);
}

TEST_CASE("JSON reports")
{
    const TimeGrid g;
    DesignResult r(g);
    r.gain = 0.5;
    r.lower_bound = std::numeric_limits<double>::quiet_NaN();
    r.method = DesignMethod::alternating;
    r.iterations = 3;
    r.trajectory = {0.25, 0.5, 0.5};
    r.warnings = {"note"};
    const json d = json::parse(design_result_json(r));
    CHECK(d["method"] == "alternating");
    CHECK(d["gain"] == 0.5);
    CHECK(d["lower_bound"].is_null());
    CHECK(d["trajectory"].size() == 3);
    CHECK(d["warnings"][0] == "note");

    FidelityReport f;
    f.E_a = 0.1 + 0.2;
    f.E_b = 1.0 / 3.0;
    f.sinr = f.E_a / (0.1 + f.E_b);
    const json fj = json::parse(fidelity_report_json(f));
    CHECK(fj["E_a"].get<double>() == f.E_a);
    CHECK(fj["E_b"].get<double>() == f.E_b);
    for (const char *key : {"sinr", "sigma2", "bessel_bound", "n_realizations", "mc_stderr", "stderr_b"})
        CHECK(fj.contains(key));

    const json mj = json::parse(moments_json(compute_moments(build_rectangular(0.2, 0.05, 16))));
    CHECK(mj["tau0"].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("trace CSV")
{
    ScratchDir dir("io");
    write_trace_csv(dir.file("t.csv"), {{0, 0.5, 0.25}, {1, 0.125, 0.0}});
    CHECK(slurp(dir.file("t.csv")) == "realization_id,a,b\n0,0.5,0.25\n1,0.125,0\n");
    CHECK(code_of([&] { write_text(dir.file("no/such/dir/x.txt"), "x"); }) == ErrorCode::io_error);
}
