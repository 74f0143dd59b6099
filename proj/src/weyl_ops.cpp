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

#include "whp/weyl_ops.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "spectral.hpp"
#include "whp/error.hpp"

namespace whp
{
    using detail::two_pi;

    namespace
    {
        // Unitary DFT matrix F with F x = fft(x) / sqrt(n).
        cmat unitary_dft(std::size_t n)
        {
            const auto size = Eigen::Index(n);
            cmat f(size, size);
            const double scale = 1.0 / std::sqrt(double(n));
            for (Eigen::Index j = 0; j < size; ++j)
                for (Eigen::Index k = 0; k < size; ++k)
                    f(j, k) = std::polar(scale, -two_pi * double((j * k) % size) / double(n));
            return f;
        }

        // F^dagger diag(values) F
        cmat spectral_multiplier(const TimeGrid &grid, const rvec &values)
        {
            const cmat f = unitary_dft(grid.size());
            return f.adjoint() * values.cast<cplx>().asDiagonal() * f;
        }

        cmat exp_i_hermitian(const cmat &generator, double scale)
        {
            Eigen::SelfAdjointEigenSolver<cmat> es(generator);
            if (es.info() != Eigen::Success)
                fail(ErrorCode::numerical_failure, "eigendecomposition of Hermitian generator failed");
            cvec phases(es.eigenvalues().size());
            for (Eigen::Index k = 0; k < phases.size(); ++k)
                phases[k] = std::polar(1.0, scale * es.eigenvalues()[k]);
            return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        }
    }

    OperatorMatrix::OperatorMatrix(const TimeGrid &grid, cmat entries) : grid_(grid), entries_(std::move(entries))
    {
        const auto n = Eigen::Index(grid_.size());
        if (entries_.rows() != n || entries_.cols() != n)
            fail(ErrorCode::grid_mismatch, "OperatorMatrix: matrix shape does not match grid size");
        hermitian_ = hermitian_defect() < hermitian_tolerance;
    }

    double OperatorMatrix::hermitian_defect() const { return (entries_ - entries_.adjoint()).norm(); }

    Signal OperatorMatrix::apply(const Signal &f) const
    {
        if (!(f.grid() == grid_))
            fail(ErrorCode::grid_mismatch, "OperatorMatrix::apply: signal grid differs from operator grid");
        return Signal(grid_, entries_ * f.samples());
    }

    Spectrum hermitian_spectrum(const cmat &m)
    {
        Eigen::SelfAdjointEigenSolver<cmat> es(m);
        if (es.info() != Eigen::Success)
            fail(ErrorCode::numerical_failure, "Hermitian eigensolver did not converge");
        Spectrum s;
        s.values = es.eigenvalues().reverse();
        s.vectors = es.eigenvectors().rowwise().reverse();
        return s;
    }

    double operator_norm(const cmat &m)
    {
        Eigen::SelfAdjointEigenSolver<cmat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            fail(ErrorCode::numerical_failure, "operator_norm: eigensolver did not converge");
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    }

    OperatorMatrix position_operator(const TimeGrid &grid)
    {
        return OperatorMatrix(grid, grid.times().cast<cplx>().asDiagonal().toDenseMatrix());
    }

    OperatorMatrix momentum_operator(const TimeGrid &grid)
    {
        return OperatorMatrix(grid, spectral_multiplier(grid, grid.frequencies()));
    }

    OperatorMatrix harmonic_oscillator(const TimeGrid &grid)
    {
        const rvec t = grid.times();
        const rvec f = grid.frequencies();
        cmat h = spectral_multiplier(grid, f.array().square().matrix());
        h.diagonal() += t.array().square().matrix().cast<cplx>();
        return OperatorMatrix(grid, std::move(h));
    }

    OperatorMatrix shift_operator(const TimeGrid &grid, double tau, double nu)
    {
        detail::check_guard(grid, tau, nu, "shift_operator");
        cmat s = detail::circulant(detail::delay_column(grid, tau));
        s = detail::modulation(grid, nu).asDiagonal() * s;
        return OperatorMatrix(grid, std::move(s));
    }

    OperatorMatrix weyl_operator(const TimeGrid &grid, double tau, double nu)
    {
        detail::check_guard(grid, tau, nu, "weyl_operator");
        const auto n = Eigen::Index(grid.size());
        if (tau == 0.0 && nu == 0.0)
            return OperatorMatrix(grid, cmat::Identity(n, n));
        cmat generator = tau * momentum_operator(grid).entries();
        generator.diagonal() += (nu * grid.times()).cast<cplx>();
        return OperatorMatrix(grid, exp_i_hermitian(generator, two_pi));
    }

    OperatorMatrix dilation_operator(const TimeGrid &grid, double alpha)
    {
        return OperatorMatrix(grid, dilation_matrix(grid, alpha).cast<cplx>());
    }

    OperatorMatrix from_spreading(const TimeGrid &grid, std::span<const SpreadingNode> spread)
    {
        const auto n = Eigen::Index(grid.size());
        std::map<double, std::vector<const SpreadingNode *>> by_delay;
        for (const auto &nd : spread)
        {
            detail::check_guard(grid, nd.tau, nd.nu, "from_spreading");
            by_delay[nd.tau].push_back(&nd);
        }
        const rvec t = grid.times();
        cmat op = cmat::Zero(n, n);
        for (const auto &[tau, group] : by_delay)
        {
            // sum_j c_j e^{pi i tau nu_j} M_{nu_j} T_{-tau} = diag(u) T_{-tau}
            cvec u = cvec::Zero(n);
            for (const SpreadingNode *nd : group)
            {
                const cplx c = nd->weight * std::polar(1.0, std::numbers::pi * tau * nd->nu);
                for (Eigen::Index a = 0; a < n; ++a)
                    u[a] += c * std::polar(1.0, two_pi * nd->nu * t[a]);
            }
            const cvec column = detail::delay_column(grid, -tau);
            for (Eigen::Index b = 0; b < n; ++b)
                for (Eigen::Index a = 0; a < n; ++a)
                    op(a, b) += u[a] * column[(a - b + n) % n];
        }
        return OperatorMatrix(grid, std::move(op));
    }

    std::vector<SpreadingNode> lower_bound_spreading(const ScatteringGrid &c, double tau0, double nu0)
    {
        // sigma(tau, nu) = -C(tau0 - tau, nu + nu0): node (tau_k, nu_k) lands at (tau0 - tau_k, nu_k - nu0)
        std::vector<SpreadingNode> spread;
        spread.reserve(c.size());
        for (const auto &nd : c.nodes())
            spread.push_back({tau0 - nd.tau, nd.nu - nu0, cplx(-nd.weight)});
        return spread;
    }

    OperatorMatrix lower_bound_operator(const TimeGrid &grid, const ScatteringGrid &c, double tau0, double nu0)
    {
        const auto spread = lower_bound_spreading(c, tau0, nu0);
        return from_spreading(grid, spread);
    }

    std::vector<SpreadingNode> ambiguity_spreading(const Signal &phi, const Signal &psi, double half_width)
    {
        require_same_grid(phi, psi);
        if (!(half_width > 0.0))
            fail(ErrorCode::invalid_argument, "ambiguity_spreading: half width must be positive");
        const TimeGrid &grid = phi.grid();
        const double dt = grid.dt();
        const double df = 1.0 / grid.span();
        const int na = int(std::floor(half_width / dt + 1e-9));
        const int nb = int(std::floor(half_width / df + 1e-9));
        std::vector<SpreadingNode> spread;
        spread.reserve(std::size_t(2 * na + 1) * std::size_t(2 * nb + 1));
        for (int i = -na; i <= na; ++i)
        {
            const double tau = i * dt;
            detail::check_guard(grid, tau, nb * df, "ambiguity_spreading");
            const cvec delayed = detail::delay(psi.samples(), grid, -tau);
            for (int j = -nb; j <= nb; ++j)
            {
                const double nu = j * df;
                const cvec moved = detail::modulation(grid, nu).cwiseProduct(delayed);
                const cplx value = std::polar(1.0, std::numbers::pi * tau * nu) * phi.samples().dot(moved) * dt;
                spread.push_back({tau, nu, value * dt * df});
            }
        }
        return spread;
    }

    OperatorMatrix oscillator_semigroup_operator(const TimeGrid &grid, double alpha)
    {
        if (!(alpha > 1.0) || !std::isfinite(alpha))
            fail(ErrorCode::domain_error, "oscillator_semigroup_operator: arcoth requires alpha > 1, got " +
                                              std::to_string(alpha) +
                                              " (alpha = 1 is the rank-one projector case of from_spreading)");
        const double arcoth = 0.5 * std::log((alpha + 1.0) / (alpha - 1.0));
        const Spectrum s = hermitian_spectrum(harmonic_oscillator(grid).entries());
        rvec decay(s.values.size());
        for (Eigen::Index k = 0; k < decay.size(); ++k)
            decay[k] = std::exp(-two_pi * arcoth * s.values[k]);
        return OperatorMatrix(grid, s.vectors * decay.cast<cplx>().asDiagonal() * s.vectors.adjoint());
    }

    OperatorMatrix build_local_operator(const TimeGrid &grid, const Moments &m, double alpha)
    {
        if (std::abs(m.c10) > centered_moment_tolerance || std::abs(m.c01) > centered_moment_tolerance)
            fail(ErrorCode::invalid_argument,
                 "build_local_operator: first moments C10=" + std::to_string(m.c10) + ", C01=" + std::to_string(m.c01) +
                     " do not vanish; recenter about (tau0, nu0) so that L is Hermitian");
        if (!(alpha > 0.0))
            fail(ErrorCode::invalid_argument, "build_local_operator: alpha must be positive");
        const auto n = Eigen::Index(grid.size());
        const cmat x = position_operator(grid).entries();
        const cmat d = momentum_operator(grid).entries();
        const double pi2 = std::numbers::pi * std::numbers::pi;
        const cplx i2pi(0.0, two_pi);
        cmat l = m.c00 * cmat::Identity(n, n);
        l += i2pi * ((m.c01 / alpha) * x - (m.c10 * alpha) * d);
        l -= 2.0 * pi2 * ((m.c02 / (alpha * alpha)) * (x * x) + (m.c20 * alpha * alpha) * (d * d) - m.c11 * (x * d + d * x));
        return OperatorMatrix(grid, std::move(l));
    }

    // ---------------------------------------------------------------- Heisenberg group

    Mat3 heisenberg_matrix(const HeisenbergElement &h)
    {
        Mat3 m = Mat3::Identity();
        m(0, 1) = h.alpha;
        m(0, 2) = h.phi;
        m(1, 2) = h.beta;
        return m;
    }

    Mat3 algebra_matrix(const HeisenbergElement &h) { return heisenberg_matrix(h) - Mat3::Identity(); }

    Mat3 heisenberg_exp(const HeisenbergElement &h)
    {
        const Mat3 a = algebra_matrix(h);
        return Mat3::Identity() + a + 0.5 * (a * a);
    }

    HeisenbergElement element_of(const Mat3 &m) { return {m(0, 1), m(1, 2), m(0, 2)}; }

    HeisenbergElement polarized_product(const HeisenbergElement &a, const HeisenbergElement &b)
    {
        return {a.alpha + b.alpha, a.beta + b.beta, a.phi + b.phi - a.alpha * b.beta};
    }

    Signal apply_group_element(const Signal &f, const HeisenbergElement &h)
    {
        Signal out = tf_shift(f, h.alpha, h.beta);
        out *= std::polar(1.0, two_pi * h.phi);
        return out;
    }
}
