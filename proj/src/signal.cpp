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

#include "whp/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "spectral.hpp"
#include "whp/error.hpp"

namespace whp
{
    namespace
    {
        bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

        // Periodic band-limited interpolation kernel with a symmetric Nyquist term,
        // evaluated at offset x from a sample. Real-valued.
        double interpolation_kernel(double x, std::size_t n, double span)
        {
            const double theta = detail::two_pi * x / span;
            const double half = 0.5 * theta;
            const double m = double(n / 2) - 1.0;
            const double s = std::sin(half);
            // limit at theta = 2 pi k is 2m + 1 for even n
            const double dirichlet = std::abs(s) < 1e-12 ? 2.0 * m + 1.0 : std::sin((m + 0.5) * theta) / s;
            return (dirichlet + std::cos(0.5 * double(n) * theta)) / double(n);
        }

        double outer_energy(const cvec &x, const rvec &coord, double limit, double weight)
        {
            double e = 0.0;
            for (Eigen::Index k = 0; k < x.size(); ++k)
                if (std::abs(coord[k]) > limit)
                    e += std::norm(x[k]);
            return e * weight;
        }
    }

    TimeGrid::TimeGrid(std::size_t n_samples, double t_span) : n_(n_samples), span_(t_span)
    {
        if (n_samples < 2 || !is_power_of_two(n_samples))
            fail(ErrorCode::invalid_argument,
                 "TimeGrid: n_samples must be an even power of two, got " + std::to_string(n_samples));
        if (!(t_span > 0.0) || !std::isfinite(t_span))
            fail(ErrorCode::invalid_argument, "TimeGrid: t_span must be positive and finite");
    }

    rvec TimeGrid::times() const
    {
        rvec t(static_cast<Eigen::Index>(n_));
        for (std::size_t k = 0; k < n_; ++k)
            t[Eigen::Index(k)] = time(k);
        return t;
    }

    rvec TimeGrid::frequencies() const
    {
        rvec f(static_cast<Eigen::Index>(n_));
        const auto half = Eigen::Index(n_ / 2);
        for (Eigen::Index j = 0; j < Eigen::Index(n_); ++j)
            f[j] = double(j < half ? j : j - Eigen::Index(n_)) / span_;
        return f;
    }

    bool TimeGrid::in_guard(double tau, double nu) const noexcept
    {
        constexpr double slack = 1.0 + 1e-12;
        return std::isfinite(tau) && std::isfinite(nu) && std::abs(tau) <= time_guard() * slack &&
               std::abs(nu) <= frequency_guard() * slack;
    }

    // ---------------------------------------------------------------- Signal

    Signal::Signal(const TimeGrid &grid, cvec samples) : grid_(grid), samples_(std::move(samples))
    {
        if (std::size_t(samples_.size()) != grid_.size())
            fail(ErrorCode::grid_mismatch, "Signal: sample count " + std::to_string(samples_.size()) +
                                               " does not match grid size " + std::to_string(grid_.size()));
    }

    Signal Signal::zeros(const TimeGrid &grid) { return Signal(grid, cvec::Zero(Eigen::Index(grid.size()))); }

    double Signal::norm() const { return std::sqrt(samples_.squaredNorm() * grid_.dt()); }

    Signal Signal::normalized() const
    {
        const double nrm = norm();
        if (!(nrm > 0.0))
            fail(ErrorCode::numerical_failure, "Signal::normalized: zero signal");
        return Signal(grid_, samples_ / nrm);
    }

    cvec Signal::coordinates() const { return samples_ * std::sqrt(grid_.dt()); }

    Signal Signal::from_coordinates(const TimeGrid &grid, const cvec &coords)
    {
        return Signal(grid, coords / std::sqrt(grid.dt()));
    }

    Signal &Signal::operator+=(const Signal &other)
    {
        require_same_grid(*this, other);
        samples_ += other.samples_;
        return *this;
    }

    Signal &Signal::operator-=(const Signal &other)
    {
        require_same_grid(*this, other);
        samples_ -= other.samples_;
        return *this;
    }

    Signal &Signal::operator*=(cplx scale)
    {
        samples_ *= scale;
        return *this;
    }

    Signal operator+(Signal a, const Signal &b) { return a += b; }
    Signal operator-(Signal a, const Signal &b) { return a -= b; }
    Signal operator*(cplx scale, Signal a) { return a *= scale; }

    // --------------------------------------------------------------- Lattice

    LatticeParams LatticeParams::square(double T, double F, int radius)
    {
        if (radius < 0)
            fail(ErrorCode::invalid_argument, "LatticeParams: index radius must be nonnegative");
        LatticeParams p;
        p.T = T;
        p.F = F;
        p.index_set.push_back({0, 0});
        for (int m = -radius; m <= radius; ++m)
            for (int n = -radius; n <= radius; ++n)
                if (m != 0 || n != 0)
                    p.index_set.push_back({m, n});
        return p;
    }

    void LatticeParams::validate(const TimeGrid &grid) const
    {
        if (!(T > 0.0) || !(F > 0.0))
            fail(ErrorCode::invalid_argument, "lattice: T and F must be positive");
        if (index_set.empty())
            fail(ErrorCode::invalid_argument, "lattice: empty index set");
        std::set<std::pair<int, int>> seen;
        for (const auto &idx : index_set)
        {
            if (!seen.insert({idx.m, idx.n}).second)
                fail(ErrorCode::invalid_argument,
                     "lattice: duplicate index (" + std::to_string(idx.m) + ", " + std::to_string(idx.n) + ")");
            if (!grid.in_guard(idx.n * T, idx.m * F))
                fail(ErrorCode::guard_violation,
                     "lattice: atom (m=" + std::to_string(idx.m) + ", n=" + std::to_string(idx.n) +
                         ") shifts by (" + std::to_string(idx.n * T) + " s, " + std::to_string(idx.m * F) +
                         " Hz), outside the +-25% guard (" + std::to_string(grid.time_guard()) + " s, " +
                         std::to_string(grid.frequency_guard()) + " Hz)");
        }
    }

    std::size_t LatticeParams::position_of(LatticeIndex idx) const
    {
        const auto it = std::find(index_set.begin(), index_set.end(), idx);
        if (it == index_set.end())
            fail(ErrorCode::invalid_argument, "lattice: index not in index set");
        return std::size_t(it - index_set.begin());
    }

    // ------------------------------------------------------------ Operations

    void require_same_grid(const Signal &a, const Signal &b)
    {
        if (!(a.grid() == b.grid()))
            fail(ErrorCode::grid_mismatch, "signals live on different time grids");
    }

    cplx inner_product(const Signal &f, const Signal &g)
    {
        require_same_grid(f, g);
        return f.samples().dot(g.samples()) * f.grid().dt();
    }

    Signal tf_shift(const Signal &f, double tau, double nu)
    {
        detail::check_guard(f.grid(), tau, nu, "tf_shift");
        if (tau == 0.0 && nu == 0.0)
            return f;
        return Signal(f.grid(), detail::shift(f.samples(), f.grid(), tau, nu));
    }

    Signal tf_shift_inverse(const Signal &f, double tau, double nu)
    {
        Signal out = tf_shift(f, -tau, -nu);
        out *= std::polar(1.0, -detail::two_pi * tau * nu);
        return out;
    }

    rmat dilation_matrix(const TimeGrid &grid, double alpha)
    {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            fail(ErrorCode::invalid_argument, "dilate: alpha must be positive, got " + std::to_string(alpha));
        const auto n = Eigen::Index(grid.size());
        if (alpha == 1.0)
            return rmat::Identity(n, n);
        const double half = 0.5 * grid.span();
        const double scale = 1.0 / std::sqrt(alpha);
        rmat d = rmat::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k)
        {
            const double x = grid.time(std::size_t(k)) / alpha;
            if (std::abs(x) > half * (1.0 + 1e-12))
                continue;
            for (Eigen::Index j = 0; j < n; ++j)
                d(k, j) = scale * interpolation_kernel(x - grid.time(std::size_t(j)), grid.size(), grid.span());
        }
        return d;
    }

    Signal dilate(const Signal &f, double alpha)
    {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            fail(ErrorCode::invalid_argument, "dilate: alpha must be positive, got " + std::to_string(alpha));
        if (alpha == 1.0)
            return f;
        const rmat d = dilation_matrix(f.grid(), alpha);
        Signal out(f.grid(), d.cast<cplx>() * f.samples());
        const double n_in = f.norm();
        const double n_out = out.norm();
        const double tail = std::max(tail_mass(out), spectral_tail_mass(out));
        if (tail > tail_mass_limit || std::abs(n_out - n_in) > tail_mass_limit * std::max(1.0, n_in))
            fail(ErrorCode::guard_violation, "dilate: support overflow for alpha=" + std::to_string(alpha) +
                                                 " (tail mass " + std::to_string(tail) + ", norm change " +
                                                 std::to_string(n_out - n_in) + ")");
        return out;
    }

    Signal hermite(const TimeGrid &grid, unsigned n)
    {
        const auto size = Eigen::Index(grid.size());
        const double root = std::sqrt(detail::two_pi);
        cvec prev = cvec::Zero(size);
        cvec cur(size);
        for (Eigen::Index k = 0; k < size; ++k)
        {
            const double t = grid.time(std::size_t(k));
            cur[k] = std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * t * t);
        }
        for (unsigned j = 0; j < n; ++j)
        {
            cvec next(size);
            const double a = std::sqrt(2.0 / double(j + 1));
            const double b = std::sqrt(double(j) / double(j + 1));
            for (Eigen::Index k = 0; k < size; ++k)
                next[k] = a * root * grid.time(std::size_t(k)) * cur[k] - b * prev[k];
            prev = std::move(cur);
            cur = std::move(next);
        }
        Signal h(grid, std::move(cur));
        const double tail = std::max(tail_mass(h), spectral_tail_mass(h));
        if (tail > hermite_tail_limit)
            fail(ErrorCode::domain_error, "hermite: order " + std::to_string(n) + " too large for the grid (tail mass " +
                                              std::to_string(tail) + " exceeds " +
                                              std::to_string(hermite_tail_limit) + ")");
        return h;
    }

    unsigned hermite_max_order(const TimeGrid &grid)
    {
        unsigned n = 0;
        for (;; ++n)
        {
            try
            {
                hermite(grid, n + 1);
            }
            catch (const Error &)
            {
                return n;
            }
        }
    }

    Signal lattice_atom(const Signal &gamma, const LatticeParams &lattice, LatticeIndex idx)
    {
        return tf_shift(gamma, idx.n * lattice.T, idx.m * lattice.F);
    }

    Signal gabor_synthesize(const Signal &gamma, const LatticeParams &lattice, std::span<const cplx> symbols)
    {
        if (symbols.size() != lattice.index_set.size())
            fail(ErrorCode::invalid_argument, "gabor_synthesize: " + std::to_string(symbols.size()) +
                                                  " symbols for " + std::to_string(lattice.index_set.size()) +
                                                  " lattice points");
        lattice.validate(gamma.grid());
        Signal s = Signal::zeros(gamma.grid());
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i] != cplx(0.0))
                s += symbols[i] * lattice_atom(gamma, lattice, lattice.index_set[i]);
        return s;
    }

    double tail_mass(const Signal &f)
    {
        const TimeGrid &g = f.grid();
        return outer_energy(f.samples(), g.times(), 0.4 * g.span(), g.dt());
    }

    double spectral_tail_mass(const Signal &f)
    {
        const TimeGrid &g = f.grid();
        const cvec X = detail::fft(f.samples());
        // Parseval: sum |x|^2 dt = sum |X|^2 dt / n
        return outer_energy(X, g.frequencies(), 0.4 * g.bandwidth(), g.dt() / double(g.size()));
    }

    Signal canonical_phase(const Signal &f)
    {
        Eigen::Index k = 0;
        const double peak = f.samples().cwiseAbs().maxCoeff(&k);
        if (!(peak > 0.0))
            return f;
        Signal out = f;
        out *= std::conj(f.samples()[k]) / peak;
        return out;
    }
}
