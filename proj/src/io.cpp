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

#include "whp/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "whp/error.hpp"

namespace whp
{
    using nlohmann::json;

    namespace
    {
        std::ofstream open_out(const std::string &path, std::ios::openmode mode = std::ios::out)
        {
            std::ofstream out(path, mode | std::ios::trunc);
            if (!out)
                fail(ErrorCode::io_error, "cannot open '" + path + "' for writing");
            return out;
        }

        std::ifstream open_in(const std::string &path, std::ios::openmode mode = std::ios::in)
        {
            std::ifstream in(path, mode);
            if (!in)
                fail(ErrorCode::io_error, "cannot open '" + path + "' for reading");
            return in;
        }

        std::vector<double> parse_row(const std::string &line, const std::string &path, std::size_t lineno)
        {
            std::vector<double> out;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
            {
                char *end = nullptr;
                const double v = std::strtod(cell.c_str(), &end);
                while (end && (*end == ' ' || *end == '\r' || *end == '\t'))
                    ++end;
                if (end == cell.c_str() || (end && *end != '\0'))
                    fail(ErrorCode::io_error,
                         path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
                out.push_back(v);
            }
            return out;
        }

        // Returns the JSON header (or null) and the numeric rows of a CSV file.
        std::pair<json, std::vector<std::vector<double>>> read_table(const std::string &path, std::size_t columns)
        {
            std::ifstream in = open_in(path);
            json header;
            std::vector<std::vector<double>> rows;
            std::string line;
            std::size_t lineno = 0;
            bool seen_names = false;
            while (std::getline(in, line))
            {
                ++lineno;
                if (line.empty() || line == "\r")
                    continue;
                if (line[0] == '#')
                {
                    if (header.is_null() && rows.empty())
                    {
                        try
                        {
                            header = json::parse(line.substr(1));
                        }
                        catch (const json::exception &e)
                        {
                            fail(ErrorCode::io_error, path + ": malformed header: " + e.what());
                        }
                    }
                    continue;
                }
                const char first = line[0];
                if (!seen_names && rows.empty() && std::isalpha(static_cast<unsigned char>(first)))
                {
                    seen_names = true;
                    continue;
                }
                auto row = parse_row(line, path, lineno);
                if (row.size() != columns)
                    fail(ErrorCode::io_error, path + ":" + std::to_string(lineno) + ": expected " +
                                                  std::to_string(columns) + " columns, got " +
                                                  std::to_string(row.size()));
                rows.push_back(std::move(row));
            }
            return {header, rows};
        }

        json grid_json(const TimeGrid &g) { return json{{"n_samples", g.size()}, {"t_span", g.span()}}; }

        TimeGrid grid_from_json(const json &j, const std::string &where)
        {
            try
            {
                return TimeGrid(j.at("n_samples").get<std::size_t>(), j.at("t_span").get<double>());
            }
            catch (const json::exception &e)
            {
                fail(ErrorCode::io_error, where + ": bad grid description: " + e.what());
            }
        }
    }

    std::string format_double(double x)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    void write_signal_csv(const std::string &path, const Signal &s)
    {
        std::ofstream out = open_out(path);
        out << "# " << grid_json(s.grid()).dump() << "\n";
        out << "t,re,im\n";
        const rvec t = s.grid().times();
        for (std::size_t k = 0; k < s.size(); ++k)
            out << format_double(t[Eigen::Index(k)]) << ',' << format_double(s[k].real()) << ','
                << format_double(s[k].imag()) << '\n';
        if (!out)
            fail(ErrorCode::io_error, "write failed for '" + path + "'");
    }

    Signal read_signal_csv(const std::string &path)
    {
        auto [header, rows] = read_table(path, 3);
        if (rows.size() < 2)
            fail(ErrorCode::io_error, path + ": too few samples");
        TimeGrid grid = [&] {
            if (!header.is_null())
                return grid_from_json(header, path);
            const double dt = rows[1][0] - rows[0][0];
            return TimeGrid(rows.size(), dt * double(rows.size()));
        }();
        if (rows.size() != grid.size())
            fail(ErrorCode::grid_mismatch, path + ": " + std::to_string(rows.size()) + " rows for a grid of " +
                                               std::to_string(grid.size()) + " samples");
        cvec x(Eigen::Index(rows.size()));
        for (std::size_t k = 0; k < rows.size(); ++k)
        {
            if (std::abs(rows[k][0] - grid.time(k)) > 1e-9 * std::max(1.0, grid.span()))
                fail(ErrorCode::grid_mismatch, path + ": time column does not match the grid at row " +
                                                   std::to_string(k));
            x[Eigen::Index(k)] = cplx(rows[k][1], rows[k][2]);
        }
        return Signal(grid, std::move(x));
    }

    void write_scattering_csv(const std::string &path, const ScatteringGrid &c)
    {
        std::ofstream out = open_out(path);
        json params = json::object();
        for (const auto &[k, v] : c.parameters())
            params[k] = v;
        out << "# " << json{{"model", to_string(c.model())}, {"parameters", params}}.dump() << "\n";
        out << "tau,nu,w\n";
        for (const auto &nd : c.nodes())
            out << format_double(nd.tau) << ',' << format_double(nd.nu) << ',' << format_double(nd.weight) << '\n';
        if (!out)
            fail(ErrorCode::io_error, "write failed for '" + path + "'");
    }

    ScatteringGrid read_scattering_csv(const std::string &path)
    {
        auto [header, rows] = read_table(path, 3);
        if (rows.empty())
            fail(ErrorCode::io_error, path + ": no scattering nodes");
        std::vector<ScatterNode> nodes;
        nodes.reserve(rows.size());
        for (const auto &r : rows)
            nodes.push_back({r[0], r[1], r[2]});
        ScatteringModel model = ScatteringModel::custom;
        std::map<std::string, double> params;
        if (header.is_object())
        {
            if (header.contains("model"))
                model = scattering_model_from_string(header["model"].get<std::string>());
            if (header.contains("parameters"))
                for (const auto &[k, v] : header["parameters"].items())
                    params[k] = v.get<double>();
        }
        return ScatteringGrid(std::move(nodes), model, std::move(params));
    }

    void write_operator(const std::string &stem, const OperatorMatrix &op)
    {
        static_assert(std::endian::native == std::endian::little, "operator dumps assume a little-endian host");
        const cmat &m = op.entries();
        {
            std::ofstream out = open_out(stem + ".bin", std::ios::binary);
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                {
                    const double parts[2] = {m(r, c).real(), m(r, c).imag()};
                    out.write(reinterpret_cast<const char *>(parts), sizeof parts);
                }
            if (!out)
                fail(ErrorCode::io_error, "write failed for '" + stem + ".bin'");
        }
        json meta{{"grid", grid_json(op.grid())},
                  {"rows", m.rows()},
                  {"cols", m.cols()},
                  {"layout", "row-major complex128 little-endian"},
                  {"hermitian", op.hermitian()}};
        write_text(stem + ".json", meta.dump(2) + "\n");
    }

    OperatorMatrix read_operator(const std::string &stem)
    {
        json meta;
        {
            std::ifstream in = open_in(stem + ".json");
            try
            {
                meta = json::parse(in);
            }
            catch (const json::exception &e)
            {
                fail(ErrorCode::io_error, stem + ".json: " + e.what());
            }
        }
        const TimeGrid grid = grid_from_json(meta.at("grid"), stem + ".json");
        const auto n = Eigen::Index(grid.size());
        if (meta.value("rows", 0L) != n || meta.value("cols", 0L) != n)
            fail(ErrorCode::grid_mismatch, stem + ".json: shape does not match grid");
        cmat m(n, n);
        std::ifstream in = open_in(stem + ".bin", std::ios::binary);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
            {
                double parts[2];
                if (!in.read(reinterpret_cast<char *>(parts), sizeof parts))
                    fail(ErrorCode::io_error, stem + ".bin: truncated");
                m(r, c) = cplx(parts[0], parts[1]);
            }
        return OperatorMatrix(grid, std::move(m));
    }

    std::string design_result_json(const DesignResult &r)
    {
        json j{{"method", to_string(r.method)},
               {"gain", r.gain},
               {"lower_bound", std::isnan(r.lower_bound) ? json(nullptr) : json(r.lower_bound)},
               {"iterations", r.iterations},
               {"trajectory", r.trajectory},
               {"warnings", json(r.warnings)},
               {"grid", grid_json(r.gamma_opt.grid())}};
        return j.dump(2);
    }

    std::string fidelity_report_json(const FidelityReport &r)
    {
        json j{{"E_a", r.E_a},
               {"E_b", r.E_b},
               {"sinr", r.sinr},
               {"sigma2", r.sigma2},
               {"bessel_bound", r.bessel_bound},
               {"n_realizations", r.n_realizations},
               {"mc_stderr", r.mc_stderr},
               {"stderr_b", r.stderr_b}};
        return j.dump(2);
    }

    std::string moments_json(const Moments &m)
    {
        json j{{"tau0", m.tau0},        {"nu0", m.nu0},         {"c00", m.c00},
               {"c10", m.c10},          {"c01", m.c01},         {"c20", m.c20},
               {"c02", m.c02},          {"c11", m.c11},         {"alpha_scale", m.alpha_scale},
               {"underspread", m.underspread}, {"degenerate", m.degenerate}, {"warning", m.warning}};
        return j.dump(2);
    }

    void write_trace_csv(const std::string &path, const std::vector<TraceRow> &rows)
    {
        std::ofstream out = open_out(path);
        out << "realization_id,a,b\n";
        for (const auto &r : rows)
            out << r.realization << ',' << format_double(r.a) << ',' << format_double(r.b) << '\n';
        if (!out)
            fail(ErrorCode::io_error, "write failed for '" + path + "'");
    }

    void write_text(const std::string &path, const std::string &text)
    {
        std::ofstream out = open_out(path);
        out << text;
        if (!out)
            fail(ErrorCode::io_error, "write failed for '" + path + "'");
    }
}
