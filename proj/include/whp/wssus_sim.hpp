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

#ifndef WHP_WSSUS_SIM_HPP
#define WHP_WSSUS_SIM_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "whp/scattering.hpp"
#include "whp/signal.hpp"

namespace whp
{
    // One draw of the discrete spreading function: gain k multiplies S_(tau_k, nu_k).
    struct ChannelRealization
    {
        std::shared_ptr<const std::vector<ScatterNode>> nodes;
        cvec gains;
    };

    // Circular complex Gaussian gains with E|gain_k|^2 = w_k; the generator is
    // seeded from a splitmix64 hash of the seed.
    ChannelRealization draw_channel(const ScatteringGrid &c, std::uint64_t seed);

    // sum_k gain_k S_k s, without noise.
    Signal apply_channel(const ChannelRealization &h, const Signal &s);

    // H(i, j) = <g_i, H gamma_j> over the lattice index set.
    cmat channel_matrix(const ChannelRealization &h, const Signal &g, const Signal &gamma,
                        const LatticeParams &lattice);

    // Largest eigenvalue of the Gram matrix of the truncated family {gamma_mn}.
    double bessel_bound(const Signal &gamma, const LatticeParams &lattice);

    struct FidelityReport
    {
        double E_a = 0.0;
        double E_b = 0.0;
        double sinr = 0.0;
        double bessel_bound = 0.0;
        int n_realizations = 0;
        double mc_stderr = 0.0; // standard error of E_a
        double stderr_b = 0.0;
        double sigma2 = 0.0;
    };

    struct TraceRow
    {
        int realization = 0;
        double a = 0.0;
        double b = 0.0;
    };

    inline constexpr double sinr_cap = 1e12;
    inline constexpr int min_realizations = 100;

    // Realization r is drawn with seed ^ r, so results do not depend on the
    // execution order. The lattice index set must contain (0, 0).
    FidelityReport estimate_sinr(const ScatteringGrid &c, const Signal &g, const Signal &gamma,
                                 const LatticeParams &lattice, double sigma2, int n_realizations, std::uint64_t seed,
                                 std::vector<TraceRow> *trace = nullptr);
}

#endif
