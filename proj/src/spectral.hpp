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

// Internal spectral helpers shared by the compute modules.

#ifndef WHP_SPECTRAL_HPP
#define WHP_SPECTRAL_HPP

#include <cmath>
#include <numbers>
#include <string>

#include <map>
#include <optional>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "whp/error.hpp"
#include "whp/scattering.hpp"
#include "whp/signal.hpp"

namespace whp::detail
{
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    inline Eigen::FFT<double> &fft_engine()
    {
        thread_local Eigen::FFT<double> engine;
        return engine;
    }

    // Unnormalized forward DFT.
    inline cvec fft(const cvec &x)
    {
        cvec out(x.size());
        fft_engine().fwd(out, x);
        return out;
    }

    // Inverse DFT including the 1/n factor.
    inline cvec ifft(const cvec &x)
    {
        cvec out(x.size());
        fft_engine().inv(out, x);
        return out;
    }

    inline cvec delay_phases(const TimeGrid &grid, double tau)
    {
        const rvec f = grid.frequencies();
        cvec ph(f.size());
        for (Eigen::Index j = 0; j < f.size(); ++j)
            ph[j] = std::polar(1.0, -two_pi * f[j] * tau);
        return ph;
    }

    // Delays that are whole multiples of dt act as cyclic rotations; the
    // spectral ramp reproduces them exactly, so the rotation is a pure shortcut.
    inline std::optional<Eigen::Index> whole_sample_delay(const TimeGrid &grid, double tau)
    {
        const double steps = tau / grid.dt();
        const double r = std::round(steps);
        if (std::abs(steps - r) > 1e-12 * std::max(1.0, std::abs(steps)))
            return std::nullopt;
        const auto n = Eigen::Index(grid.size());
        return ((Eigen::Index(r) % n) + n) % n;
    }

    inline cvec rotate(const cvec &x, Eigen::Index k)
    {
        const Eigen::Index n = x.size();
        cvec out(n);
        out.tail(n - k) = x.head(n - k);
        out.head(k) = x.tail(k);
        return out;
    }

    // x(t - tau) on the torus.
    inline cvec delay(const cvec &x, const TimeGrid &grid, double tau)
    {
        if (tau == 0.0)
            return x;
        if (const auto k = whole_sample_delay(grid, tau))
            return rotate(x, *k);
        cvec X = fft(x);
        X.array() *= delay_phases(grid, tau).array();
        return ifft(X);
    }

    inline cvec modulation(const TimeGrid &grid, double nu)
    {
        cvec m(Eigen::Index(grid.size()));
        for (std::size_t k = 0; k < grid.size(); ++k)
            m[Eigen::Index(k)] = std::polar(1.0, two_pi * nu * grid.time(k));
        return m;
    }

    // e^{i 2 pi nu t} x(t - tau)
    inline cvec shift(const cvec &x, const TimeGrid &grid, double tau, double nu)
    {
        cvec y = delay(x, grid, tau);
        if (nu != 0.0)
            y.array() *= modulation(grid, nu).array();
        return y;
    }

    // First column of the circulant delay matrix T_tau (sample-index space).
    inline cvec delay_column(const TimeGrid &grid, double tau)
    {
        cvec e = cvec::Zero(Eigen::Index(grid.size()));
        e[0] = 1.0;
        return delay(e, grid, tau);
    }

    inline cmat circulant(const cvec &column)
    {
        const Eigen::Index n = column.size();
        cmat c(n, n);
        for (Eigen::Index b = 0; b < n; ++b)
            for (Eigen::Index a = 0; a < n; ++a)
                c(a, b) = column[(a - b + n) % n];
        return c;
    }

    // x(t - tau) given precomputed delay_phases(grid, tau).
    inline cvec delay_with(const cvec &x, const cvec &phases)
    {
        cvec X = fft(x);
        X.array() *= phases.array();
        return ifft(X);
    }

    // Scattering nodes sharing one delay; lets per-delay work be done once.
    struct DelayGroup
    {
        double tau = 0.0;
        std::vector<double> nu;
        std::vector<double> weight;
    };

    inline std::vector<DelayGroup> delay_groups(const ScatteringGrid &c)
    {
        std::map<double, DelayGroup> groups;
        for (const auto &nd : c.nodes())
        {
            DelayGroup &g = groups[nd.tau];
            g.tau = nd.tau;
            g.nu.push_back(nd.nu);
            g.weight.push_back(nd.weight);
        }
        std::vector<DelayGroup> out;
        out.reserve(groups.size());
        for (auto &kv : groups)
            out.push_back(std::move(kv.second));
        return out;
    }

    inline void check_guard(const TimeGrid &grid, double tau, double nu, const char *what)
    {
        if (!grid.in_guard(tau, nu))
            fail(ErrorCode::guard_violation,
                 std::string(what) + ": shift (tau=" + std::to_string(tau) + ", nu=" + std::to_string(nu) +
                     ") leaves the guard region |tau| <= " + std::to_string(grid.time_guard()) +
                     ", |nu| <= " + std::to_string(grid.frequency_guard()) +
                     "; larger shifts wrap around the periodic window and alias into the pulse");
    }
}

#endif
