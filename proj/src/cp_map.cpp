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

#include "whp/cp_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "spectral.hpp"
#include "whp/error.hpp"

namespace whp
{
    using detail::two_pi;

    namespace
    {
        constexpr std::size_t groups_per_chunk = 8;

        void require_normalized(const ScatteringGrid &c)
        {
            if (std::abs(c.total_weight() - 1.0) > 1e-10)
                fail(ErrorCode::invalid_argument, "scattering weights are not normalized");
        }

        void check_nodes(const TimeGrid &grid, const ScatteringGrid &c)
        {
            for (const auto &nd : c.nodes())
                detail::check_guard(grid, nd.tau, nd.nu, "channel map");
        }

        // K(a, b) = sum_j w_j e^{i 2 pi nu_j (t_a - t_b)}, stored by a - b + n - 1.
        cvec toeplitz_kernel(const detail::DelayGroup &g, const TimeGrid &grid)
        {
            const auto n = Eigen::Index(grid.size());
            cvec kern = cvec::Zero(2 * n - 1);
            for (std::size_t j = 0; j < g.nu.size(); ++j)
            {
                const cplx step = std::polar(1.0, two_pi * g.nu[j] * grid.dt());
                // walk d = 0, 1, 2, ... and mirror by conjugation
                cplx ph(1.0, 0.0);
                for (Eigen::Index d = 0; d < n; ++d)
                {
                    if (d % 64 == 0)
                        ph = std::polar(1.0, two_pi * g.nu[j] * grid.dt() * double(d));
                    kern[n - 1 + d] += g.weight[j] * ph;
                    if (d > 0)
                        kern[n - 1 - d] += g.weight[j] * std::conj(ph);
                    ph *= step;
                }
            }
            return kern;
        }

        void hadamard_toeplitz(cmat &m, const cvec &kern, bool conjugate)
        {
            const Eigen::Index n = m.rows();
            // column b meets kern[a - b + n - 1] for a = 0..n-1, a contiguous run
            if (conjugate)
                for (Eigen::Index b = 0; b < n; ++b)
                    m.col(b).array() *= kern.segment(n - 1 - b, n).conjugate().array();
            else
                for (Eigen::Index b = 0; b < n; ++b)
                    m.col(b).array() *= kern.segment(n - 1 - b, n).array();
        }

        // T m T^dagger for the delay by tau.
        cmat conjugate_by_delay(const cmat &m, const TimeGrid &grid, double tau)
        {
            const Eigen::Index n = m.rows();
            if (const auto k = detail::whole_sample_delay(grid, tau))
            {
                // (T m T^dagger)(a, b) = m(a - k, b - k)
                cmat out(n, n);
                for (Eigen::Index b = 0; b < n; ++b)
                {
                    const Eigen::Index sb = (b - *k + n) % n;
                    for (Eigen::Index a = 0; a < n; ++a)
                        out(a, b) = m((a - *k + n) % n, sb);
                }
                return out;
            }
            const cvec phases = detail::delay_phases(grid, tau);
            cmat y(n, n);
            for (Eigen::Index c = 0; c < n; ++c)
                y.col(c) = detail::delay_with(m.col(c), phases);
            cmat z = y.adjoint();
            for (Eigen::Index c = 0; c < n; ++c)
                z.col(c) = detail::delay_with(z.col(c), phases);
            return z.adjoint();
        }

        template <class GroupTerm>
        cmat sum_over_groups(const std::vector<detail::DelayGroup> &groups, Eigen::Index n, GroupTerm &&term)
        {
            const std::size_t chunks = (groups.size() + groups_per_chunk - 1) / groups_per_chunk;
            std::vector<cmat> partial(chunks, cmat::Zero(n, n));
            detail::parallel_for(chunks, [&](std::size_t chunk) {
                const std::size_t end = std::min(groups.size(), (chunk + 1) * groups_per_chunk);
                for (std::size_t i = chunk * groups_per_chunk; i < end; ++i)
                    partial[chunk] += term(groups[i]);
            });
            cmat total = cmat::Zero(n, n);
            for (const auto &p : partial)
                total += p;
            return total;
        }
    }

    // ---------------------------------------------------------------- DensityOperator

    DensityOperator::DensityOperator(const TimeGrid &grid, cmat entries) : grid_(grid), entries_(std::move(entries))
    {
        const auto n = Eigen::Index(grid_.size());
        if (entries_.rows() != n || entries_.cols() != n)
            fail(ErrorCode::grid_mismatch, "DensityOperator: matrix shape does not match grid size");
    }

    DensityOperator DensityOperator::pure(const Signal &f)
    {
        const cvec v = f.normalized().coordinates();
        return DensityOperator(f.grid(), v * v.adjoint());
    }

    double DensityOperator::trace() const { return entries_.trace().real(); }

    double DensityOperator::purity() const { return (entries_ * entries_).trace().real(); }

    double DensityOperator::min_eigenvalue() const
    {
        const cmat herm = 0.5 * (entries_ + entries_.adjoint());
        Eigen::SelfAdjointEigenSolver<cmat> es(herm, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            fail(ErrorCode::numerical_failure, "DensityOperator: eigensolver did not converge");
        return es.eigenvalues()[0];
    }

    bool DensityOperator::is_state(double tolerance) const
    {
        if ((entries_ - entries_.adjoint()).norm() > tolerance)
            return false;
        if (std::abs(trace() - 1.0) > tolerance)
            return false;
        return min_eigenvalue() >= psd_floor;
    }

    // ---------------------------------------------------------------- channel map

    cmat apply_cp_map(const ScatteringGrid &c, const TimeGrid &grid, const cmat &x, bool adjoint)
    {
        const auto n = Eigen::Index(grid.size());
        if (x.rows() != n || x.cols() != n)
            fail(ErrorCode::grid_mismatch, "apply_cp_map: matrix shape does not match grid size");
        check_nodes(grid, c);
        const auto groups = detail::delay_groups(c);
        return sum_over_groups(groups, n, [&](const detail::DelayGroup &g) -> cmat {
            const cvec kern = toeplitz_kernel(g, grid);
            if (!adjoint)
            {
                cmat m = conjugate_by_delay(x, grid, g.tau);
                hadamard_toeplitz(m, kern, false);
                return m;
            }
            cmat m = x;
            hadamard_toeplitz(m, kern, true);
            return conjugate_by_delay(m, grid, -g.tau);
        });
    }

    DensityOperator apply_cp_map(const ScatteringGrid &c, const DensityOperator &rho, bool adjoint)
    {
        require_normalized(c);
        if (std::abs(rho.trace() - 1.0) > 1e-8 || (rho.entries() - rho.entries().adjoint()).norm() > 1e-8)
            fail(ErrorCode::invalid_argument, "apply_cp_map: input is not a unit-trace Hermitian operator");
        return DensityOperator(rho.grid(), apply_cp_map(c, rho.grid(), rho.entries(), adjoint));
    }

    cmat apply_cp_map_pure(const ScatteringGrid &c, const Signal &f, bool adjoint)
    {
        require_normalized(c);
        const TimeGrid &grid = f.grid();
        check_nodes(grid, c);
        const cvec v = f.normalized().coordinates();
        const auto n = Eigen::Index(grid.size());
        const auto groups = detail::delay_groups(c);
        if (adjoint)
        {
            // S^dagger = phase * S_(-tau,-nu), and the phase cancels in a projector.
            std::vector<ScatterNode> mirrored = c.nodes();
            for (auto &nd : mirrored)
            {
                nd.tau = -nd.tau;
                nd.nu = -nd.nu;
            }
            return apply_cp_map_pure(ScatteringGrid(std::move(mirrored)), f, false);
        }
        return sum_over_groups(groups, n, [&](const detail::DelayGroup &g) -> cmat {
            const cvec u = detail::delay(v, grid, g.tau);
            const cvec kern = toeplitz_kernel(g, grid);
            cmat m(n, n);
            for (Eigen::Index b = 0; b < n; ++b)
                m.col(b) = std::conj(u[b]) * u.cwiseProduct(kern.segment(n - 1 - b, n));
            return m;
        });
    }

    // ---------------------------------------------------------------- functionals

    cplx cross_ambiguity(const Signal &g, const Signal &gamma, double tau, double nu)
    {
        return inner_product(g, tf_shift(gamma, tau, nu));
    }

    double fidelity(const ScatteringGrid &c, const Signal &g, const Signal &gamma)
    {
        require_same_grid(g, gamma);
        const TimeGrid &grid = g.grid();
        check_nodes(grid, c);
        const rvec t = grid.times();
        double total = 0.0;
        for (const auto &grp : detail::delay_groups(c))
        {
            const cvec z = g.samples().conjugate().cwiseProduct(detail::delay(gamma.samples(), grid, grp.tau));
            for (std::size_t j = 0; j < grp.nu.size(); ++j)
            {
                cplx s(0.0, 0.0);
                for (Eigen::Index a = 0; a < z.size(); ++a)
                    s += z[a] * std::polar(1.0, two_pi * grp.nu[j] * t[a]);
                total += grp.weight[j] * std::norm(s * grid.dt());
            }
        }
        return total;
    }

    Signal apply_lower_bound_operator(const ScatteringGrid &c, const Signal &f, double tau0, double nu0)
    {
        const TimeGrid &grid = f.grid();
        std::map<double, std::vector<SpreadingNode>> by_delay;
        for (const auto &nd : lower_bound_spreading(c, tau0, nu0))
        {
            detail::check_guard(grid, nd.tau, nd.nu, "lower-bound operator");
            by_delay[nd.tau].push_back(nd);
        }
        const rvec t = grid.times();
        cvec out = cvec::Zero(f.samples().size());
        for (const auto &[tau, group] : by_delay)
        {
            // rho(tau, nu) = e^{pi i tau nu} M_nu T_{-tau}
            const cvec moved = detail::delay(f.samples(), grid, -tau);
            cvec envelope = cvec::Zero(t.size());
            for (const auto &nd : group)
            {
                const cplx c0 = nd.weight * std::polar(1.0, std::numbers::pi * tau * nd.nu);
                const cplx step = std::polar(1.0, two_pi * nd.nu * grid.dt());
                cplx ph = std::polar(1.0, two_pi * nd.nu * t[0]);
                for (Eigen::Index a = 0; a < t.size(); ++a)
                {
                    if (a % 64 == 0)
                        ph = std::polar(1.0, two_pi * nd.nu * t[a]);
                    envelope[a] += c0 * ph;
                    ph *= step;
                }
            }
            out += envelope.cwiseProduct(moved);
        }
        return Signal(grid, std::move(out));
    }

    double lower_bound(const ScatteringGrid &c, const Signal &g, const Signal &gamma, double tau0, double nu0)
    {
        require_same_grid(g, gamma);
        return std::norm(inner_product(g, apply_lower_bound_operator(c, tf_shift(gamma, tau0, nu0), tau0, nu0)));
    }

    double check_covariance(const ScatteringGrid &c, const Signal &g, const Signal &gamma, double tau, double nu)
    {
        const double base = fidelity(c, g, gamma);
        const double moved = fidelity(c, tf_shift(g, tau, nu), tf_shift(gamma, tau, nu));
        return std::abs(moved - base);
    }

    OperatorMatrix build_A1(const ScatteringGrid &c, const Moments &m, const DensityOperator &rho, double alpha)
    {
        (void)c;
        if (!(alpha > 0.0))
            fail(ErrorCode::invalid_argument, "build_A1: alpha must be positive");
        const TimeGrid &grid = rho.grid();
        cmat g = rho.entries();
        if (m.tau0 != 0.0 || m.nu0 != 0.0)
        {
            const cmat s = shift_operator(grid, m.tau0, m.nu0).entries();
            g = s * g * s.adjoint();
        }

        const cmat x = position_operator(grid).entries();
        const cmat d = momentum_operator(grid).entries();
        const cmat cx = x * g - g * x;
        const cmat cd = d * g - g * d;
        const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
        const double c20 = m.c20 * alpha * alpha;
        const double c02 = m.c02 / (alpha * alpha);
        const double c10 = m.c10 * alpha;
        const double c01 = m.c01 / alpha;

        cmat a1 = m.c00 * g;
        a1 -= four_pi2 * (c20 * (d * cd) + c02 * (x * cx));
        a1 += four_pi2 * m.c11 * (d * cx + x * cd);
        a1 += cplx(0.0, two_pi) * (c01 * cx - c10 * cd);
        return OperatorMatrix(grid, std::move(a1));
    }

    double majorization_excess(const ScatteringGrid &c, const DensityOperator &rho)
    {
        const DensityOperator out = apply_cp_map(c, rho);
        const rvec in_ev = hermitian_spectrum(0.5 * (rho.entries() + rho.entries().adjoint())).values;
        const rvec out_ev = hermitian_spectrum(0.5 * (out.entries() + out.entries().adjoint())).values;
        double in_sum = 0.0;
        double out_sum = 0.0;
        double excess = -std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < in_ev.size(); ++k)
        {
            in_sum += in_ev[k];
            out_sum += out_ev[k];
            excess = std::max(excess, out_sum - in_sum);
        }
        return excess;
    }

    bool check_majorization(const ScatteringGrid &c, const DensityOperator &rho)
    {
        return majorization_excess(c, rho) <= 1e-8;
    }
}
