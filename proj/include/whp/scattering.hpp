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

#ifndef WHP_SCATTERING_HPP
#define WHP_SCATTERING_HPP

#include <map>
#include <string>
#include <vector>

namespace whp
{
    struct ScatterNode
    {
        double tau = 0.0; // delay, seconds
        double nu = 0.0;  // Doppler, Hz
        double weight = 0.0;
    };

    enum class ScatteringModel
    {
        gaussian_symmetric,
        rectangular,
        custom
    };

    const char *to_string(ScatteringModel model) noexcept;
    ScatteringModel scattering_model_from_string(const std::string &name);

    // Discretized scattering function. Weights absorb C(tau_k, nu_k) dtau dnu and
    // always sum to one.
    class ScatteringGrid
    {
    public:
        // Normalizes nonnegative weights to unit mass; throws on negative or all-zero input.
        ScatteringGrid(std::vector<ScatterNode> nodes, ScatteringModel model = ScatteringModel::custom,
                       std::map<std::string, double> parameters = {});

        const std::vector<ScatterNode> &nodes() const noexcept { return nodes_; }
        std::size_t size() const noexcept { return nodes_.size(); }
        ScatteringModel model() const noexcept { return model_; }
        const std::map<std::string, double> &parameters() const noexcept { return parameters_; }
        double total_weight() const;
        double max_abs_tau() const;
        double max_abs_nu() const;

    private:
        std::vector<ScatterNode> nodes_;
        ScatteringModel model_;
        std::map<std::string, double> parameters_;
    };

    // C(tau, nu) = (alpha/2) e^{-(pi/2) alpha (tau^2 + nu^2)} on a resolution x resolution
    // midpoint grid over the square where C >= 1e-14 max C; nodes below the
    // threshold are dropped before renormalization.
    ScatteringGrid build_gaussian(double alpha, unsigned resolution);

    // Same density sampled on the lattice {(i tau_step, j nu_step)}, truncated at
    // 1e-14 of the peak and at |tau| <= tau_limit, |nu| <= nu_limit. With the steps of
    // a time grid (dt and 1 / t_span) every node is an exact discrete shift, which
    // avoids wraparound artifacts in operators assembled from the nodes.
    ScatteringGrid build_gaussian_lattice(double alpha, double tau_step, double nu_step, double tau_limit,
                                          double nu_limit);

    // Uniform density on [0, tau_max] x [-nu_max, nu_max], midpoint rule.
    ScatteringGrid build_rectangular(double tau_max, double nu_max, unsigned resolution);

    // Single scatterer of unit weight.
    ScatteringGrid build_point(double tau, double nu);

    // Rigid translation of every node by (dtau, dnu).
    ScatteringGrid shifted(const ScatteringGrid &c, double dtau, double dnu);
    // Node coordinates multiplied by s (support shrinks for s < 1); weights unchanged.
    ScatteringGrid scaled(const ScatteringGrid &c, double s);

    struct Moments
    {
        double tau0 = 0.0;
        double nu0 = 0.0;
        // C_mn = sum_k w_k (tau_k - tau0)^m (nu_k - nu0)^n
        double c00 = 0.0;
        double c10 = 0.0;
        double c01 = 0.0;
        double c20 = 0.0;
        double c02 = 0.0;
        double c11 = 0.0;
        double alpha_scale = 1.0; // (C02 / C20)^{1/4}
        bool underspread = false; // C02 C20 < underspread_threshold
        bool degenerate = false;  // exactly one of C20, C02 vanishes
        std::string warning;
    };

    inline constexpr double underspread_threshold = 1e-2;
    inline constexpr double vanishing_moment = 1e-24;

    // Centroid (tau0, nu0) and central moments about it.
    Moments compute_moments(const ScatteringGrid &c);
    // Moments about an arbitrary offset; C10 and C01 need not vanish.
    Moments moments_about(const ScatteringGrid &c, double tau0, double nu0);
}

#endif
