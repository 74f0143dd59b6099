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

#include "whp/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "whp/error.hpp"

namespace whp
{
    const char *to_string(ScatteringModel model) noexcept
    {
        switch (model)
        {
        case ScatteringModel::gaussian_symmetric:
            return "gaussian_symmetric";
        case ScatteringModel::rectangular:
            return "rectangular";
        case ScatteringModel::custom:
            return "custom";
        }
        return "custom";
    }

    ScatteringModel scattering_model_from_string(const std::string &name)
    {
        if (name == "gaussian_symmetric")
            return ScatteringModel::gaussian_symmetric;
        if (name == "rectangular")
            return ScatteringModel::rectangular;
        if (name == "custom")
            return ScatteringModel::custom;
        fail(ErrorCode::invalid_argument, "unknown scattering model tag '" + name + "'");
    }

    ScatteringGrid::ScatteringGrid(std::vector<ScatterNode> nodes, ScatteringModel model,
                                   std::map<std::string, double> parameters)
        : nodes_(std::move(nodes)), model_(model), parameters_(std::move(parameters))
    {
        if (nodes_.empty())
            fail(ErrorCode::invalid_argument, "ScatteringGrid: no nodes");
        double total = 0.0;
        for (const auto &nd : nodes_)
        {
            if (!std::isfinite(nd.tau) || !std::isfinite(nd.nu) || !std::isfinite(nd.weight))
                fail(ErrorCode::invalid_argument, "ScatteringGrid: non-finite node");
            if (nd.weight < 0.0)
                fail(ErrorCode::invalid_argument, "ScatteringGrid: negative weight");
            total += nd.weight;
        }
        if (!(total > 0.0))
            fail(ErrorCode::invalid_argument, "ScatteringGrid: weights sum to zero");
        for (auto &nd : nodes_)
            nd.weight /= total;
    }

    double ScatteringGrid::total_weight() const
    {
        double s = 0.0;
        for (const auto &nd : nodes_)
            s += nd.weight;
        return s;
    }

    double ScatteringGrid::max_abs_tau() const
    {
        double m = 0.0;
        for (const auto &nd : nodes_)
            m = std::max(m, std::abs(nd.tau));
        return m;
    }

    double ScatteringGrid::max_abs_nu() const
    {
        double m = 0.0;
        for (const auto &nd : nodes_)
            m = std::max(m, std::abs(nd.nu));
        return m;
    }

    ScatteringGrid build_gaussian(double alpha, unsigned resolution)
    {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            fail(ErrorCode::invalid_argument, "build_gaussian: alpha must be positive");
        if (resolution == 0)
            fail(ErrorCode::invalid_argument, "build_gaussian: resolution must be positive");
        constexpr double rel_cut = 1e-14;
        const double a = 0.5 * std::numbers::pi * alpha;
        // C / max C = e^{-a r^2} reaches rel_cut at r = sqrt(-ln(rel_cut) / a)
        const double radius = std::sqrt(-std::log(rel_cut) / a);
        const double h = 2.0 * radius / double(resolution);
        std::vector<ScatterNode> nodes;
        nodes.reserve(std::size_t(resolution) * resolution);
        for (unsigned i = 0; i < resolution; ++i)
        {
            const double tau = -radius + (double(i) + 0.5) * h;
            for (unsigned j = 0; j < resolution; ++j)
            {
                const double nu = -radius + (double(j) + 0.5) * h;
                const double rel = std::exp(-a * (tau * tau + nu * nu));
                if (rel < rel_cut)
                    continue;
                nodes.push_back({tau, nu, 0.5 * alpha * rel * h * h});
            }
        }
        return ScatteringGrid(std::move(nodes), ScatteringModel::gaussian_symmetric,
                              {{"alpha", alpha}, {"resolution", double(resolution)}});
    }

    ScatteringGrid build_gaussian_lattice(double alpha, double tau_step, double nu_step, double tau_limit,
                                          double nu_limit)
    {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            fail(ErrorCode::invalid_argument, "build_gaussian_lattice: alpha must be positive");
        if (!(tau_step > 0.0) || !(nu_step > 0.0) || !(tau_limit >= 0.0) || !(nu_limit >= 0.0))
            fail(ErrorCode::invalid_argument, "build_gaussian_lattice: steps must be positive, limits nonnegative");
        constexpr double rel_cut = 1e-14;
        const double a = 0.5 * std::numbers::pi * alpha;
        const double radius = std::sqrt(-std::log(rel_cut) / a);
        const int na = int(std::floor(std::min(radius, tau_limit) / tau_step + 1e-9));
        const int nb = int(std::floor(std::min(radius, nu_limit) / nu_step + 1e-9));
        std::vector<ScatterNode> nodes;
        for (int i = -na; i <= na; ++i)
            for (int j = -nb; j <= nb; ++j)
            {
                const double tau = i * tau_step;
                const double nu = j * nu_step;
                const double rel = std::exp(-a * (tau * tau + nu * nu));
                if (rel < rel_cut)
                    continue;
                nodes.push_back({tau, nu, 0.5 * alpha * rel * tau_step * nu_step});
            }
        return ScatteringGrid(std::move(nodes), ScatteringModel::gaussian_symmetric,
                              {{"alpha", alpha}, {"tau_step", tau_step}, {"nu_step", nu_step}});
    }

    ScatteringGrid build_rectangular(double tau_max, double nu_max, unsigned resolution)
    {
        if (!(tau_max > 0.0) || !(nu_max > 0.0))
            fail(ErrorCode::invalid_argument, "build_rectangular: tau_max and nu_max must be positive");
        if (resolution == 0)
            fail(ErrorCode::invalid_argument, "build_rectangular: resolution must be positive");
        const double ht = tau_max / double(resolution);
        const double hn = 2.0 * nu_max / double(resolution);
        std::vector<ScatterNode> nodes;
        nodes.reserve(std::size_t(resolution) * resolution);
        for (unsigned i = 0; i < resolution; ++i)
            for (unsigned j = 0; j < resolution; ++j)
                nodes.push_back({(double(i) + 0.5) * ht, -nu_max + (double(j) + 0.5) * hn, 1.0});
        return ScatteringGrid(std::move(nodes), ScatteringModel::rectangular,
                              {{"tau_max", tau_max}, {"nu_max", nu_max}, {"resolution", double(resolution)}});
    }

    ScatteringGrid build_point(double tau, double nu)
    {
        return ScatteringGrid({{tau, nu, 1.0}}, ScatteringModel::custom, {{"tau", tau}, {"nu", nu}});
    }

    ScatteringGrid shifted(const ScatteringGrid &c, double dtau, double dnu)
    {
        std::vector<ScatterNode> nodes = c.nodes();
        for (auto &nd : nodes)
        {
            nd.tau += dtau;
            nd.nu += dnu;
        }
        return ScatteringGrid(std::move(nodes), ScatteringModel::custom);
    }

    ScatteringGrid scaled(const ScatteringGrid &c, double s)
    {
        if (!(s > 0.0))
            fail(ErrorCode::invalid_argument, "scaled: factor must be positive");
        std::vector<ScatterNode> nodes = c.nodes();
        for (auto &nd : nodes)
        {
            nd.tau *= s;
            nd.nu *= s;
        }
        return ScatteringGrid(std::move(nodes), ScatteringModel::custom);
    }

    Moments moments_about(const ScatteringGrid &c, double tau0, double nu0)
    {
        Moments m;
        m.tau0 = tau0;
        m.nu0 = nu0;
        for (const auto &nd : c.nodes())
        {
            const double dt = nd.tau - tau0;
            const double dn = nd.nu - nu0;
            m.c00 += nd.weight;
            m.c10 += nd.weight * dt;
            m.c01 += nd.weight * dn;
            m.c20 += nd.weight * dt * dt;
            m.c02 += nd.weight * dn * dn;
            m.c11 += nd.weight * dt * dn;
        }
        m.underspread = m.c02 * m.c20 < underspread_threshold;
        const bool tau_zero = m.c20 < vanishing_moment;
        const bool nu_zero = m.c02 < vanishing_moment;
        if (tau_zero && nu_zero)
        {
            m.alpha_scale = 1.0;
        }
        else if (tau_zero || nu_zero)
        {
            m.alpha_scale = 1.0;
            m.degenerate = true;
            m.warning = tau_zero ? "pure Doppler channel (C20 = 0): scaling undefined, using alpha = 1"
                                 : "pure delay channel (C02 = 0): scaling undefined, using alpha = 1";
        }
        else
        {
            m.alpha_scale = std::pow(m.c02 / m.c20, 0.25);
        }
        return m;
    }

    Moments compute_moments(const ScatteringGrid &c)
    {
        double tau0 = 0.0;
        double nu0 = 0.0;
        double total = 0.0;
        for (const auto &nd : c.nodes())
        {
            tau0 += nd.weight * nd.tau;
            nu0 += nd.weight * nd.nu;
            total += nd.weight;
        }
        if (std::abs(total - 1.0) > 1e-10)
            fail(ErrorCode::invalid_argument, "compute_moments: scattering weights are not normalized");
        return moments_about(c, tau0, nu0);
    }
}
