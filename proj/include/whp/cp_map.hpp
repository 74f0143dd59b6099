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

#ifndef WHP_CP_MAP_HPP
#define WHP_CP_MAP_HPP

#include "whp/scattering.hpp"
#include "whp/signal.hpp"
#include "whp/weyl_ops.hpp"

namespace whp
{
    // Operator on the orthonormal sample coordinates of a grid. Members of M1 are
    // Hermitian, positive semidefinite and of unit trace.
    class DensityOperator
    {
    public:
        DensityOperator(const TimeGrid &grid, cmat entries);
        // Orthogonal projector onto span{f}.
        static DensityOperator pure(const Signal &f);

        const TimeGrid &grid() const noexcept { return grid_; }
        const cmat &entries() const noexcept { return entries_; }

        double trace() const;
        double purity() const; // Tr(rho^2)
        double min_eigenvalue() const;
        bool is_state(double tolerance = 1e-10) const;

    private:
        TimeGrid grid_;
        cmat entries_;
    };

    inline constexpr double psd_floor = -1e-10;

    // A(rho) = sum_k w_k S_k rho S_k^dagger, or the adjoint sum_k w_k S_k^dagger rho S_k.
    // Throws unless rho is a density operator and C has unit mass.
    DensityOperator apply_cp_map(const ScatteringGrid &c, const DensityOperator &rho, bool adjoint = false);
    // Linear extension to arbitrary square matrices, no state checks.
    cmat apply_cp_map(const ScatteringGrid &c, const TimeGrid &grid, const cmat &x, bool adjoint = false);
    // A(|f><f|) for unit-norm f without forming the projector first.
    cmat apply_cp_map_pure(const ScatteringGrid &c, const Signal &f, bool adjoint = false);

    // <g, S_(tau,nu) gamma>
    cplx cross_ambiguity(const Signal &g, const Signal &gamma, double tau, double nu);

    // sum_k w_k |<g, S_k gamma>|^2 = Tr(G A(Gamma)) for unit-norm pulses.
    double fidelity(const ScatteringGrid &c, const Signal &g, const Signal &gamma);

    // Lcal f for the lower-bound operator about (tau0, nu0).
    Signal apply_lower_bound_operator(const ScatteringGrid &c, const Signal &f, double tau0, double nu0);

    // |<g, Lcal S_(tau0,nu0) gamma>|^2 with Lcal the lower-bound operator about (tau0, nu0).
    double lower_bound(const ScatteringGrid &c, const Signal &g, const Signal &gamma, double tau0, double nu0);

    // |fidelity(C, S g, S gamma) - fidelity(C, g, gamma)| for S = S_(tau,nu).
    double check_covariance(const ScatteringGrid &c, const Signal &g, const Signal &gamma, double tau, double nu);

    // Second-order approximation A1 of the channel map, from the closed-form
    // moment integrals about (moments.tau0, moments.nu0):
    //   C00 G - 4 pi^2 (C20 D[D,G] + C02 X[X,G]) + 4 pi^2 C11 (D[X,G] + X[D,G]) + 2 pi i (C01 [X,G] - C10 [D,G])
    // with G = S_(tau0,nu0) rho S_(tau0,nu0)^dagger. For alpha != 1, rho is read in the
    // frame dilated by d_alpha and the moments are rescaled to match (C20 alpha^2,
    // C02 / alpha^2, C10 alpha, C01 / alpha).
    OperatorMatrix build_A1(const ScatteringGrid &c, const Moments &moments, const DensityOperator &rho,
                            double alpha = 1.0);

    // Largest prefix excess of the sorted eigenvalue partial sums of A(rho) over those of rho.
    double majorization_excess(const ScatteringGrid &c, const DensityOperator &rho);
    // A(rho) is majorized by rho within 1e-8 at every prefix.
    bool check_majorization(const ScatteringGrid &c, const DensityOperator &rho);
}

#endif
