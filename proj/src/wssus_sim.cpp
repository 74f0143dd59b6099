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

#include "whp/wssus_sim.hpp"

#include <cmath>
#include <random>

#include "parallel.hpp"
#include "spectral.hpp"
#include "whp/error.hpp"
#include "whp/weyl_ops.hpp"

namespace whp
{
    namespace
    {
        constexpr int realizations_per_chunk = 256;

        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        void fill_gains(cvec &gains, const std::vector<ScatterNode> &nodes, std::uint64_t seed)
        {
            std::mt19937_64 rng(splitmix64(seed));
            std::normal_distribution<double> normal(0.0, 1.0);
            for (std::size_t k = 0; k < nodes.size(); ++k)
            {
                const double s = std::sqrt(0.5 * nodes[k].weight);
                const double re = normal(rng);
                const double im = normal(rng);
                gains[Eigen::Index(k)] = cplx(s * re, s * im);
            }
        }

        // e^{i 2 pi nu t_a} for every sample.
        cvec modulation_row(const TimeGrid &grid, double nu)
        {
            const rvec t = grid.times();
            cvec out(t.size());
            for (Eigen::Index a = 0; a < t.size(); ++a)
                out[a] = std::polar(1.0, detail::two_pi * nu * t[a]);
            return out;
        }
    }

    ChannelRealization draw_channel(const ScatteringGrid &c, std::uint64_t seed)
    {
        ChannelRealization h;
        h.nodes = std::make_shared<const std::vector<ScatterNode>>(c.nodes());
        h.gains.resize(Eigen::Index(c.size()));
        fill_gains(h.gains, *h.nodes, seed);
        return h;
    }

    Signal apply_channel(const ChannelRealization &h, const Signal &s)
    {
        if (!h.nodes || h.gains.size() != Eigen::Index(h.nodes->size()))
            fail(ErrorCode::invalid_argument, "apply_channel: gains do not match nodes");
        const TimeGrid &grid = s.grid();
        const rvec t = grid.times();
        std::map<double, cvec> envelope; // per delay: sum_k gain_k e^{i 2 pi nu_k t}
        for (std::size_t k = 0; k < h.nodes->size(); ++k)
        {
            const ScatterNode &nd = (*h.nodes)[k];
            detail::check_guard(grid, nd.tau, nd.nu, "apply_channel");
            auto [it, fresh] = envelope.try_emplace(nd.tau, cvec::Zero(t.size()));
            it->second += h.gains[Eigen::Index(k)] * modulation_row(grid, nd.nu);
        }
        cvec out = cvec::Zero(t.size());
        for (const auto &[tau, env] : envelope)
            out += env.cwiseProduct(detail::delay(s.samples(), grid, tau));
        return Signal(grid, std::move(out));
    }

    cmat channel_matrix(const ChannelRealization &h, const Signal &g, const Signal &gamma,
                        const LatticeParams &lattice)
    {
        require_same_grid(g, gamma);
        lattice.validate(g.grid());
        const auto n = Eigen::Index(lattice.index_set.size());
        std::vector<Signal> rx;
        rx.reserve(std::size_t(n));
        for (const auto &idx : lattice.index_set)
            rx.push_back(lattice_atom(g, lattice, idx));
        cmat out(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const Signal y = apply_channel(h, lattice_atom(gamma, lattice, lattice.index_set[std::size_t(j)]));
            for (Eigen::Index i = 0; i < n; ++i)
                out(i, j) = inner_product(rx[std::size_t(i)], y);
        }
        return out;
    }

    double bessel_bound(const Signal &gamma, const LatticeParams &lattice)
    {
        lattice.validate(gamma.grid());
        const auto n = Eigen::Index(lattice.index_set.size());
        cmat atoms(Eigen::Index(gamma.size()), n);
        for (Eigen::Index j = 0; j < n; ++j)
            atoms.col(j) = lattice_atom(gamma, lattice, lattice.index_set[std::size_t(j)]).coordinates();
        return hermitian_spectrum(atoms.adjoint() * atoms).values[0];
    }

    FidelityReport estimate_sinr(const ScatteringGrid &c, const Signal &g, const Signal &gamma,
                                 const LatticeParams &lattice, double sigma2, int n_realizations, std::uint64_t seed,
                                 std::vector<TraceRow> *trace)
    {
        require_same_grid(g, gamma);
        if (n_realizations < min_realizations)
            fail(ErrorCode::invalid_argument,
                 "estimate_sinr: n_realizations must be at least " + std::to_string(min_realizations));
        if (!(sigma2 >= 0.0))
            fail(ErrorCode::invalid_argument, "estimate_sinr: sigma2 must be nonnegative");
        lattice.validate(g.grid());
        const std::size_t origin = lattice.position_of({0, 0});
        const TimeGrid &grid = g.grid();

        // basis(k, j) = <g, S_k gamma_j>; then H_00,j = sum_k gain_k basis(k, j).
        const auto& nodes = c.nodes();
        const auto n_nodes = Eigen::Index(nodes.size());
        const auto n_atoms = Eigen::Index(lattice.index_set.size());
        cmat atoms(Eigen::Index(grid.size()), n_atoms);
        for (Eigen::Index j = 0; j < n_atoms; ++j)
            atoms.col(j) = lattice_atom(gamma, lattice, lattice.index_set[std::size_t(j)]).samples();
        const cvec g_conj = g.samples().conjugate() * grid.dt();

        cmat basis(n_nodes, n_atoms);
        std::map<double, std::vector<Eigen::Index>> groups;
        for (Eigen::Index k = 0; k < n_nodes; ++k)
        {
            detail::check_guard(grid, nodes[std::size_t(k)].tau, nodes[std::size_t(k)].nu, "estimate_sinr");
            groups[nodes[std::size_t(k)].tau].push_back(k);
        }
        for (const auto &[tau, members] : groups)
        {
            const cvec phases = detail::delay_phases(grid, tau);
            cmat moved(atoms.rows(), n_atoms);
            for (Eigen::Index j = 0; j < n_atoms; ++j)
                moved.col(j) = g_conj.cwiseProduct(detail::delay_with(atoms.col(j), phases));
            for (Eigen::Index k : members)
                basis.row(k) = modulation_row(grid, nodes[std::size_t(k)].nu).transpose() * moved;
        }

        std::vector<double> a(static_cast<std::size_t>(n_realizations));
        std::vector<double> b(static_cast<std::size_t>(n_realizations));
        const std::size_t chunks = std::size_t((n_realizations + realizations_per_chunk - 1) / realizations_per_chunk);
        detail::parallel_for(chunks, [&](std::size_t chunk) {
            const int first = int(chunk) * realizations_per_chunk;
            const int count = std::min(realizations_per_chunk, n_realizations - first);
            cmat gains(n_nodes, count);
            cvec column(n_nodes);
            for (int r = 0; r < count; ++r)
            {
                fill_gains(column, nodes, seed ^ std::uint64_t(first + r));
                gains.col(r) = column;
            }
            const cmat h = basis.transpose() * gains; // atoms x realizations
            for (int r = 0; r < count; ++r)
            {
                const double total = h.col(r).squaredNorm();
                const double own = std::norm(h(Eigen::Index(origin), r));
                a[std::size_t(first + r)] = own;
                b[std::size_t(first + r)] = std::max(0.0, total - own);
            }
        });

        auto mean_and_stderr = [n_realizations](const std::vector<double> &v) {
            double mean = 0.0;
            for (double x : v)
                mean += x;
            mean /= n_realizations;
            double var = 0.0;
            for (double x : v)
                var += (x - mean) * (x - mean);
            var /= (n_realizations - 1);
            return std::pair{mean, std::sqrt(var / n_realizations)};
        };

        FidelityReport rep;
        std::tie(rep.E_a, rep.mc_stderr) = mean_and_stderr(a);
        std::tie(rep.E_b, rep.stderr_b) = mean_and_stderr(b);
        rep.n_realizations = n_realizations;
        rep.sigma2 = sigma2;
        rep.bessel_bound = bessel_bound(gamma, lattice);
        const double denom = sigma2 + rep.E_b;
        rep.sinr = denom < 1e-12 ? sinr_cap : rep.E_a / denom;
        if (trace != nullptr)
        {
            trace->clear();
            for (int r = 0; r < n_realizations; ++r)
                trace->push_back({r, a[std::size_t(r)], b[std::size_t(r)]});
        }
        return rep;
    }
}
