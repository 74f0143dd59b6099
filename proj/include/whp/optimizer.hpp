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

#ifndef WHP_OPTIMIZER_HPP
#define WHP_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "whp/scattering.hpp"
#include "whp/signal.hpp"

namespace whp
{
    enum class DesignMethod
    {
        gaussian_ansatz,
        local_eigen,
        exact_oscillator,
        alternating
    };

    const char *to_string(DesignMethod method) noexcept;
    DesignMethod design_method_from_string(const std::string &name);

    struct DesignResult
    {
        explicit DesignResult(const TimeGrid &grid) : gamma_opt(Signal::zeros(grid)), g_opt(Signal::zeros(grid)) {}

        Signal gamma_opt; // transmit pulse
        Signal g_opt;     // receive pulse
        double gain = 0.0;
        double lower_bound = 0.0; // NaN when the bound operator leaves the guard region
        DesignMethod method = DesignMethod::gaussian_ansatz;
        int iterations = 0;
        std::vector<double> trajectory;
        std::vector<std::string> warnings;
    };

    // g = d_{1/alpha} h0, gamma = S^{-1}_(tau0,nu0) g with alpha = (C02/C20)^{1/4}.
    DesignResult gaussian_ansatz(const TimeGrid &grid, const ScatteringGrid &c);

    // Top eigenvector of the dilated local operator L_alpha, pulled back to the
    // original frame; g follows the lower-bound operator. Requires |C11| <= 1e-8.
    DesignResult local_eigen_design(const TimeGrid &grid, const ScatteringGrid &c);

    // Top singular pair of the quadrature lower-bound operator about the centroid.
    DesignResult exact_oscillator_design(const TimeGrid &grid, const ScatteringGrid &c);

    inline constexpr int default_max_iters = 200;
    inline constexpr double default_tolerance = 1e-9;

    // G <- top eigenprojector of A(Gamma), Gamma <- top eigenprojector of A~(G).
    // trajectory[0] is fidelity(init, init); entry i is the gain after step i.
    DesignResult alternating_maximize(const ScatteringGrid &c, const Signal &init_gamma,
                                      int max_iters = default_max_iters, double tol = default_tolerance);

    DesignResult design(const TimeGrid &grid, const ScatteringGrid &c, DesignMethod method,
                        int max_iters = default_max_iters, double tol = default_tolerance);

    struct ScalingSweep
    {
        std::vector<double> alphas;
        std::vector<double> gains;
        std::size_t argmax = 0;
    };

    // Fidelity of g = gamma-displaced d_{1/alpha} h0 pair for each alpha.
    ScalingSweep scaling_sweep(const TimeGrid &grid, const ScatteringGrid &c, const std::vector<double> &alphas);

    inline constexpr double separable_tolerance = 1e-8;
}

#endif
