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

// Shared fixtures and independent reference computations for the unit tests.

#ifndef WHP_TESTS_SUPPORT_HPP
#define WHP_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <numbers>
#include <random>

#include "whp/signal.hpp"

namespace whp::testing
{
    inline constexpr double pi = std::numbers::pi;

    // Random combination of h0..h5: smooth and well inside the window.
    inline Signal random_pulse(const TimeGrid &grid, std::mt19937_64 &rng, unsigned orders = 6)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        Signal s = Signal::zeros(grid);
        for (unsigned k = 0; k < orders; ++k)
            s += cplx(n(rng), n(rng)) * hermite(grid, k);
        return s.normalized();
    }

    inline double uniform(std::mt19937_64 &rng, double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    // Direct O(N^2) evaluation of e^{i 2 pi nu t} f(t - tau) through the
    // trigonometric interpolant of the samples.
    inline cvec direct_shift(const Signal &f, double tau, double nu)
    {
        const TimeGrid &g = f.grid();
        const auto n = Eigen::Index(g.size());
        const rvec t = g.times();
        const rvec fr = g.frequencies();
        cvec spectrum = cvec::Zero(n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                spectrum[j] += f.samples()[k] * std::polar(1.0, -2.0 * pi * double(j * k) / double(n));
        cvec out = cvec::Zero(n);
        for (Eigen::Index k = 0; k < n; ++k)
        {
            cplx acc(0.0, 0.0);
            for (Eigen::Index j = 0; j < n; ++j)
                acc += spectrum[j] * std::polar(1.0, 2.0 * pi * double(j * k) / double(n) - 2.0 * pi * fr[j] * tau);
            out[k] = acc / double(n) * std::polar(1.0, 2.0 * pi * nu * t[k]);
        }
        return out;
    }

    // Fresh directory under the system temp dir, removed on destruction.
    class ScratchDir
    {
    public:
        explicit ScratchDir(const std::string &tag)
        {
            std::random_device rd;
            path_ = std::filesystem::temp_directory_path() / ("whp_" + tag + "_" + std::to_string(rd()));
            std::filesystem::create_directories(path_);
        }
        ~ScratchDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        ScratchDir(const ScratchDir &) = delete;
        ScratchDir &operator=(const ScratchDir &) = delete;

        std::string file(const std::string &name) const { return (path_ / name).string(); }
        const std::filesystem::path &path() const noexcept { return path_; }

    private:
        std::filesystem::path path_;
    };

    inline std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    inline double max_abs_diff(const cvec &a, const cvec &b) { return (a - b).cwiseAbs().maxCoeff(); }

    inline Signal sampled(const TimeGrid &grid, auto &&fn)
    {
        cvec x(Eigen::Index(grid.size()));
        for (std::size_t k = 0; k < grid.size(); ++k)
            x[Eigen::Index(k)] = fn(grid.time(k));
        return Signal(grid, x);
    }
}

#endif
