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

#ifndef WHP_WEYL_OPS_HPP
#define WHP_WEYL_OPS_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "whp/scattering.hpp"
#include "whp/signal.hpp"

namespace whp
{
    // Dense operator on the sample space of a grid. Entries act on sample vectors
    // (equivalently on orthonormal coordinates; the operators are linear).
    class OperatorMatrix
    {
    public:
        OperatorMatrix(const TimeGrid &grid, cmat entries);

        const TimeGrid &grid() const noexcept { return grid_; }
        const cmat &entries() const noexcept { return entries_; }
        bool hermitian() const noexcept { return hermitian_; }
        // Frobenius norm of M - M^dagger.
        double hermitian_defect() const;

        Signal apply(const Signal &f) const;

    private:
        TimeGrid grid_;
        cmat entries_;
        bool hermitian_;
    };

    inline constexpr double hermitian_tolerance = 1e-10;

    // Eigenpairs of a Hermitian matrix, sorted by descending eigenvalue.
    struct Spectrum
    {
        rvec values;
        cmat vectors;
    };
    Spectrum hermitian_spectrum(const cmat &m);
    // Largest singular value.
    double operator_norm(const cmat &m);

    OperatorMatrix position_operator(const TimeGrid &grid); // (X f)(t) = t f(t)
    OperatorMatrix momentum_operator(const TimeGrid &grid); // D = (1 / 2 pi i) d/dt, spectral
    OperatorMatrix harmonic_oscillator(const TimeGrid &grid); // X^2 + D^2

    // Matrix of S_(tau,nu) as realized by tf_shift.
    OperatorMatrix shift_operator(const TimeGrid &grid, double tau, double nu);

    // rho(tau, nu) = e^{2 pi i (nu X + tau D)} by eigendecomposition of the generator.
    OperatorMatrix weyl_operator(const TimeGrid &grid, double tau, double nu);

    OperatorMatrix dilation_operator(const TimeGrid &grid, double alpha);

    struct SpreadingNode
    {
        double tau = 0.0;
        double nu = 0.0;
        cplx weight{};
    };

    // sum_k c_k rho(tau_k, nu_k), with each rho realized as e^{pi i tau nu} S_(-tau, nu).
    OperatorMatrix from_spreading(const TimeGrid &grid, std::span<const SpreadingNode> spread);

    // Spreading function -C(tau0 - tau, nu + nu0) of the lower-bound operator.
    std::vector<SpreadingNode> lower_bound_spreading(const ScatteringGrid &c, double tau0, double nu0);
    OperatorMatrix lower_bound_operator(const TimeGrid &grid, const ScatteringGrid &c, double tau0, double nu0);

    // Samples <phi, rho(tau, nu) psi> dtau dnu over [-h, h]^2 on the grid's own
    // lattice (steps dt and 1 / t_span), where the discrete shifts form a complete
    // system and the Weyl sum closes up to truncation.
    std::vector<SpreadingNode> ambiguity_spreading(const Signal &phi, const Signal &psi, double half_width);

    // e^{-2 pi arcoth(alpha) (X^2 + D^2)}; alpha > 1.
    OperatorMatrix oscillator_semigroup_operator(const TimeGrid &grid, double alpha);

    // Second-order local approximation
    //   L = C00 + 2 pi i (C01 X - C10 D) - 2 pi^2 (C02 X^2 + C20 D^2 - C11 (XD + DX)),
    // conjugated by the dilation d_alpha when alpha != 1 (X -> X / alpha, D -> alpha D).
    OperatorMatrix build_local_operator(const TimeGrid &grid, const Moments &moments, double alpha = 1.0);

    inline constexpr double centered_moment_tolerance = 1e-8;

    // ---------------------------------------------------------------- Heisenberg group

    struct HeisenbergElement
    {
        double alpha = 0.0;
        double beta = 0.0;
        double phi = 0.0;
    };

    using Mat3 = Eigen::Matrix3d;

    Mat3 heisenberg_matrix(const HeisenbergElement &h); // H(alpha, beta, phi)
    Mat3 algebra_matrix(const HeisenbergElement &h);    // h = H - 1, nilpotent
    Mat3 heisenberg_exp(const HeisenbergElement &h);    // 1 + h + h^2 / 2
    HeisenbergElement element_of(const Mat3 &m);

    // Group law of e^{i 2 pi phi} S_(alpha, beta):
    // (alpha, beta, phi)(gamma, delta, psi) = (alpha + gamma, beta + delta, phi + psi - alpha delta).
    HeisenbergElement polarized_product(const HeisenbergElement &a, const HeisenbergElement &b);
    Signal apply_group_element(const Signal &f, const HeisenbergElement &h);
}

#endif
