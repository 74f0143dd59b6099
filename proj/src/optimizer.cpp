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

#include "whp/optimizer.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include <Eigen/SVD>

#include "parallel.hpp"
#include "whp/cp_map.hpp"
#include "whp/error.hpp"
#include "whp/weyl_ops.hpp"

namespace whp
{
    namespace
    {
        // Eigenvalues this close to the top (relative) count as one eigenspace.
        constexpr double tie_window = 1e-6;

        double pick_alpha(const Moments &m, DesignResult &out)
        {
            if (m.degenerate || !(m.c20 > 0.0) || !(m.c02 > 0.0))
            {
                out.warnings.push_back("degenerate second moments; using alpha = 1");
                return 1.0;
            }
            return m.alpha_scale;
        }

        void attach_bound(DesignResult &out, const ScatteringGrid &c, const Moments &m)
        {
            try
            {
                out.lower_bound = lower_bound(c, out.g_opt, out.gamma_opt, m.tau0, m.nu0);
            }
            catch (const Error &e)
            {
                if (e.code() != ErrorCode::guard_violation)
                    throw;
                out.lower_bound = std::numeric_limits<double>::quiet_NaN();
                out.warnings.push_back(std::string("lower bound unavailable: ") + e.what());
            }
        }

        void finish(DesignResult &out, const ScatteringGrid &c, const Moments &m)
        {
            out.g_opt = canonical_phase(out.g_opt.normalized());
            out.gamma_opt = canonical_phase(out.gamma_opt.normalized());
            out.gain = fidelity(c, out.g_opt, out.gamma_opt);
            attach_bound(out, c, m);
            if (!m.warning.empty())
                out.warnings.push_back(m.warning);
        }

        cvec unit(const cvec &v) { return v / v.norm(); }

        // Unit vectors of the top eigenspace of a Hermitian matrix worth trying:
        // projections of the hints, then the eigenbasis itself.
        std::vector<cvec> top_candidates(const Spectrum &spec, std::initializer_list<const cvec *> hints)
        {
            const double top = spec.values[0];
            Eigen::Index k = 1;
            while (k < spec.values.size() && spec.values[k] >= top - tie_window * std::max(1.0, std::abs(top)))
                ++k;
            std::vector<cvec> out;
            if (k == 1)
            {
                out.push_back(spec.vectors.col(0));
                return out;
            }
            const cmat basis = spec.vectors.leftCols(k);
            for (const cvec *h : hints)
            {
                if (h == nullptr)
                    continue;
                const cvec p = basis * (basis.adjoint() * *h);
                if (p.norm() > 1e-8)
                    out.push_back(unit(p));
            }
            for (Eigen::Index j = 0; j < k; ++j)
                out.push_back(basis.col(j));
            return out;
        }

        double top_eigenvalue(const cmat &m)
        {
            return hermitian_spectrum(0.5 * (m + m.adjoint())).values[0];
        }

        // Among candidates, the largest score wins; near-ties go to the largest
        // overlap with the previous iterate.
        cvec choose(const std::vector<cvec> &candidates, const cvec &previous,
                    const std::function<double(const cvec &)> &score, double &best_score)
        {
            if (candidates.size() == 1)
            {
                best_score = score(candidates.front());
                return candidates.front();
            }
            std::size_t best = 0;
            best_score = -std::numeric_limits<double>::infinity();
            double best_overlap = -1.0;
            for (std::size_t i = 0; i < candidates.size(); ++i)
            {
                const double s = score(candidates[i]);
                const double ov = std::abs(previous.dot(candidates[i]));
                if (s > best_score + 1e-12 || (std::abs(s - best_score) <= 1e-12 && ov > best_overlap))
                {
                    best = i;
                    best_score = std::max(s, best_score);
                    best_overlap = ov;
                }
            }
            return candidates[best];
        }
    }

    const char *to_string(DesignMethod method) noexcept
    {
        switch (method)
        {
        case DesignMethod::gaussian_ansatz:
            return "gaussian_ansatz";
        case DesignMethod::local_eigen:
            return "local_eigen";
        case DesignMethod::exact_oscillator:
            return "exact_oscillator";
        case DesignMethod::alternating:
            return "alternating";
        }
        return "unknown";
    }

    DesignMethod design_method_from_string(const std::string &name)
    {
        for (auto m : {DesignMethod::gaussian_ansatz, DesignMethod::local_eigen, DesignMethod::exact_oscillator,
                       DesignMethod::alternating})
            if (name == to_string(m))
                return m;
        fail(ErrorCode::invalid_argument, "unknown design method '" + name + "'");
    }

    DesignResult gaussian_ansatz(const TimeGrid &grid, const ScatteringGrid &c)
    {
        const Moments m = compute_moments(c);
        DesignResult out(grid);
        out.method = DesignMethod::gaussian_ansatz;
        const double alpha = pick_alpha(m, out);
        out.g_opt = dilate(hermite(grid, 0), 1.0 / alpha);
        out.gamma_opt = tf_shift_inverse(out.g_opt, m.tau0, m.nu0);
        finish(out, c, m);
        out.trajectory = {out.gain};
        return out;
    }

    DesignResult local_eigen_design(const TimeGrid &grid, const ScatteringGrid &c)
    {
        const Moments m = compute_moments(c);
        if (std::abs(m.c11) > separable_tolerance)
            fail(ErrorCode::domain_error,
                 "local_eigen needs separable scattering (|C11| <= 1e-8); correlated delay-Doppler spread is not supported");
        DesignResult out(grid);
        out.method = DesignMethod::local_eigen;
        const double alpha = pick_alpha(m, out);

        // Largest algebraic eigenvalue: the discretized D^2 has spurious large
        // magnitudes of the wrong sign near the band edge.
        const Spectrum spec = hermitian_spectrum(build_local_operator(grid, m, alpha).entries());
        const cvec h0 = hermite(grid, 0).normalized().coordinates();
        const std::vector<cvec> cands = top_candidates(spec, {&h0});
        const Signal top = Signal::from_coordinates(grid, cands.front());

        const Signal centered = dilate(top, 1.0 / alpha);
        out.gamma_opt = tf_shift_inverse(centered, m.tau0, m.nu0);
        const Signal response = apply_lower_bound_operator(c, centered, m.tau0, m.nu0);
        if (response.norm() > 1e-12)
            out.g_opt = response;
        else
        {
            out.g_opt = centered;
            out.warnings.push_back("lower-bound operator annihilates the eigenpulse; receiver set to the eigenpulse");
        }
        finish(out, c, m);
        out.trajectory = {out.gain};
        return out;
    }

    DesignResult exact_oscillator_design(const TimeGrid &grid, const ScatteringGrid &c)
    {
        const Moments m = compute_moments(c);
        DesignResult out(grid);
        out.method = DesignMethod::exact_oscillator;
        const cmat lcal = lower_bound_operator(grid, c, m.tau0, m.nu0).entries();
        Eigen::BDCSVD<cmat> svd(lcal, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success)
            fail(ErrorCode::numerical_failure, "exact_oscillator: SVD did not converge");
        const Signal centered = Signal::from_coordinates(grid, svd.matrixV().col(0));
        out.gamma_opt = tf_shift_inverse(centered, m.tau0, m.nu0);
        out.g_opt = Signal::from_coordinates(grid, svd.matrixU().col(0));
        finish(out, c, m);
        out.trajectory = {out.gain};
        return out;
    }

    DesignResult alternating_maximize(const ScatteringGrid &c, const Signal &init_gamma, int max_iters, double tol)
    {
        if (max_iters < 1)
            fail(ErrorCode::invalid_argument, "alternating_maximize: max_iters must be at least 1");
        if (!(tol > 0.0))
            fail(ErrorCode::invalid_argument, "alternating_maximize: tol must be positive");
        if (std::abs(init_gamma.norm() - 1.0) > 1e-8)
            fail(ErrorCode::invalid_argument, "alternating_maximize: initial pulse must have unit norm");

        const TimeGrid &grid = init_gamma.grid();
        const cvec h0 = hermite(grid, 0).normalized().coordinates();
        auto signal_of = [&](const cvec &v) { return Signal::from_coordinates(grid, v); };
        auto forward_top = [&](const cvec &v) { return top_eigenvalue(apply_cp_map_pure(c, signal_of(v))); };
        auto adjoint_top = [&](const cvec &v) { return top_eigenvalue(apply_cp_map_pure(c, signal_of(v), true)); };

        DesignResult out(grid);
        out.method = DesignMethod::alternating;
        cvec gamma = init_gamma.coordinates();
        cvec g = gamma;
        out.trajectory.push_back(fidelity(c, init_gamma, init_gamma));

        for (int it = 1; it <= max_iters; ++it)
        {
            // Receiver step. Within a tied eigenspace the receiver whose adjoint
            // image has the largest top eigenvalue is taken, so the gain cannot drop.
            const Spectrum fwd = hermitian_spectrum(apply_cp_map_pure(c, signal_of(gamma)));
            double gain = 0.0;
            g = choose(top_candidates(fwd, {&g, &h0}), g, adjoint_top, gain);

            // Transmitter step; every vector of the top eigenspace attains the gain.
            const Spectrum adj = hermitian_spectrum(apply_cp_map_pure(c, signal_of(g), true));
            double ignored = 0.0;
            gamma = choose(top_candidates(adj, {&gamma, &h0}), gamma, forward_top, ignored);
            gain = adj.values[0];

            out.trajectory.push_back(gain);
            out.iterations = it;
            if (gain - out.trajectory[out.trajectory.size() - 2] < tol)
                break;
        }
        if (out.iterations == max_iters)
            out.warnings.push_back("alternating_maximize stopped at max_iters before reaching tol");

        out.g_opt = signal_of(g);
        out.gamma_opt = signal_of(gamma);
        finish(out, c, compute_moments(c));
        return out;
    }

    DesignResult design(const TimeGrid &grid, const ScatteringGrid &c, DesignMethod method, int max_iters, double tol)
    {
        switch (method)
        {
        case DesignMethod::gaussian_ansatz:
            return gaussian_ansatz(grid, c);
        case DesignMethod::local_eigen:
            return local_eigen_design(grid, c);
        case DesignMethod::exact_oscillator:
            return exact_oscillator_design(grid, c);
        case DesignMethod::alternating:
            break;
        }
        const DesignResult seed = gaussian_ansatz(grid, c);
        return alternating_maximize(c, seed.gamma_opt, max_iters, tol);
    }

    ScalingSweep scaling_sweep(const TimeGrid &grid, const ScatteringGrid &c, const std::vector<double> &alphas)
    {
        for (double a : alphas)
            if (!(a > 0.0))
                fail(ErrorCode::invalid_argument, "scaling_sweep: alphas must be positive");
        if (alphas.empty())
            fail(ErrorCode::invalid_argument, "scaling_sweep: no alphas given");
        const Moments m = compute_moments(c);
        const Signal h0 = hermite(grid, 0);
        ScalingSweep out;
        out.alphas = alphas;
        out.gains.assign(alphas.size(), 0.0);
        detail::parallel_for(alphas.size(), [&](std::size_t i) {
            const Signal g = dilate(h0, 1.0 / alphas[i]);
            out.gains[i] = fidelity(c, g, tf_shift_inverse(g, m.tau0, m.nu0));
        });
        for (std::size_t i = 1; i < out.gains.size(); ++i)
            if (out.gains[i] > out.gains[out.argmax])
                out.argmax = i;
        return out;
    }
}
