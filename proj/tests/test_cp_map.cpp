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

#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "whp/cp_map.hpp"
#include "whp/error.hpp"

using namespace whp;
using namespace whp::testing;

namespace
{
    // Mixed state from a few random pulses with random positive weights.
    DensityOperator random_state(const TimeGrid &g, std::mt19937_64 &rng, int rank = 3)
    {
        cmat m = cmat::Zero(Eigen::Index(g.size()), Eigen::Index(g.size()));
        double total = 0.0;
        for (int r = 0; r < rank; ++r)
        {
            const double p = uniform(rng, 0.1, 1.0);
            const cvec v = random_pulse(g, rng).coordinates();
            m += p * v * v.adjoint();
            total += p;
        }
        return DensityOperator(g, m / total);
    }

    // Few-node channel for the explicit Kraus-sum oracle.
    ScatteringGrid random_channel(std::mt19937_64 &rng, int nodes)
    {
        std::vector<ScatterNode> v;
        for (int k = 0; k < nodes; ++k)
            v.push_back({uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6), uniform(rng, 0.1, 1.0)});
        return ScatteringGrid(std::move(v));
    }

    cmat kraus_sum(const ScatteringGrid &c, const TimeGrid &g, const cmat &x, bool adjoint)
    {
        cmat out = cmat::Zero(x.rows(), x.cols());
        for (const auto &nd : c.nodes())
        {
            const cmat s = shift_operator(g, nd.tau, nd.nu).entries();
            out += nd.weight * (adjoint ? cmat(s.adjoint() * x * s) : cmat(s * x * s.adjoint()));
        }
        return out;
    }
}

TEST_CASE("density operators")
{
    const TimeGrid g;
    std::mt19937_64 rng(3);
    const Signal f = random_pulse(g, rng);
    const DensityOperator p = DensityOperator::pure(f);
    CHECK(p.is_state());
    CHECK(std::abs(p.trace() - 1.0) < 1e-12);
    CHECK(std::abs(p.purity() - 1.0) < 1e-8);
    const DensityOperator mixed = random_state(g, rng);
    CHECK(mixed.is_state());
    CHECK(mixed.purity() < 1.0 - 1e-3);

    cmat bad = p.entries();
    bad(0, 1) += 0.1;
    CHECK_FALSE(DensityOperator(g, bad).is_state());
    CHECK_FALSE(DensityOperator(g, 2.0 * p.entries()).is_state());
}

TEST_CASE("channel map against the explicit Kraus sum")
{
    const TimeGrid g(128, 16.0);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial)
    {
        const ScatteringGrid c = random_channel(rng, 7);
        const DensityOperator rho = random_state(g, rng);
        for (bool adjoint : {false, true})
        {
            const cmat want = kraus_sum(c, g, rho.entries(), adjoint);
            CHECK((apply_cp_map(c, rho, adjoint).entries() - want).cwiseAbs().maxCoeff() < 1e-11);
        }
        // pure-state path
        const Signal f = random_pulse(g, rng);
        const cvec v = f.coordinates();
        for (bool adjoint : {false, true})
        {
            const cmat want = kraus_sum(c, g, v * v.adjoint(), adjoint);
            CHECK((apply_cp_map_pure(c, f, adjoint) - want).cwiseAbs().maxCoeff() < 1e-11);
        }
        // fidelity is the direct sum of squared cross ambiguities
        const Signal h = random_pulse(g, rng);
        double direct = 0.0;
        for (const auto &nd : c.nodes())
            direct += nd.weight * std::norm(inner_product(h, tf_shift(f, nd.tau, nd.nu)));
        CHECK(std::abs(fidelity(c, h, f) - direct) < 1e-12);
    }
}

TEST_CASE("channel map examples")
{
    const TimeGrid g;
    const Signal h0 = hermite(g, 0);
    const DensityOperator p0 = DensityOperator::pure(h0);

    const ScatteringGrid origin = build_point(0.0, 0.0);
    CHECK((apply_cp_map(origin, p0).entries() - p0.entries()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(fidelity(origin, h0, h0) - 1.0) < 1e-10);

    // integral of (alpha/2) e^{-(pi/2) alpha r^2} e^{-pi r^2} = alpha / (alpha + 2)
    const ScatteringGrid c = build_gaussian(2.0, 64);
    const DensityOperator out = apply_cp_map(c, p0);
    CHECK(std::abs((p0.entries() * out.entries()).trace().real() - 0.5) < 2e-3);
    CHECK(std::abs(fidelity(c, h0, h0) - 0.5) < 2e-3);
    CHECK(std::abs(fidelity(c, h0, h0) - (p0.entries() * out.entries()).trace().real()) < 1e-10);

    // unnormalized input is rejected
    CHECK_THROWS_AS(apply_cp_map(c, DensityOperator(g, 2.0 * p0.entries())), Error);
}

namespace
{
    void check_invariants(const ScatteringGrid &c, const ScatteringGrid &other, const DensityOperator &rho,
                          const Signal &a, const Signal &b)
    {
        const TimeGrid &g = rho.grid();
        const cmat out = apply_cp_map(c, rho).entries();
        CHECK(std::abs(out.trace().real() - 1.0) < 1e-10);
        CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(hermitian_spectrum(out).values.minCoeff() > -1e-9);
        CHECK(check_majorization(c, rho));

        const cmat pa = DensityOperator::pure(a).entries(), pb = DensityOperator::pure(b).entries();
        const double lhs = (pa * apply_cp_map_pure(c, b)).trace().real();
        const double rhs = (apply_cp_map_pure(c, a, true) * pb).trace().real();
        CHECK(std::abs(lhs - rhs) < 1e-10);

        const cmat ab = apply_cp_map(other, g, out);
        const cmat ba = apply_cp_map(c, g, apply_cp_map(other, rho).entries());
        CHECK((ab - ba).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("structural invariants on random instances")
{
    const TimeGrid g;
    std::mt19937_64 rng(21);
    // lattice-aligned channels keep the twenty instances cheap
    const double ts = g.dt(), fs = 1.0 / g.span();
    const ScatteringGrid wide = build_gaussian_lattice(2.0, ts, fs, g.time_guard(), g.frequency_guard());
    const ScatteringGrid narrow = shifted(build_gaussian_lattice(6.0, ts, fs, 2.0, 2.0), 5 * ts, -3 * fs);
    for (int trial = 0; trial < 20; ++trial)
    {
        const bool flip = trial % 2;
        check_invariants(flip ? wide : narrow, flip ? narrow : wide, random_state(g, rng, 1 + trial % 3),
                         random_pulse(g, rng), random_pulse(g, rng));
    }
    // off-lattice nodes take the spectral path
    const ScatteringGrid rect = build_rectangular(0.4, 0.3, 24);
    const ScatteringGrid gauss = build_gaussian(2.0, 24);
    for (int trial = 0; trial < 2; ++trial)
        check_invariants(trial ? rect : gauss, trial ? gauss : rect, random_state(g, rng), random_pulse(g, rng),
                         random_pulse(g, rng));
}

TEST_CASE("majorization")
{
    const TimeGrid g;
    const DensityOperator p0 = DensityOperator::pure(hermite(g, 0));
    CHECK(std::abs(majorization_excess(build_point(0.0, 0.0), p0)) < 1e-12);
    const ScatteringGrid c = build_gaussian(2.0, 48);
    CHECK(check_majorization(c, p0));
    CHECK(hermitian_spectrum(apply_cp_map(c, p0).entries()).values[0] < 1.0 - 1e-3);

    // maximally mixed on the span of h0..h7
    cmat m = cmat::Zero(Eigen::Index(g.size()), Eigen::Index(g.size()));
    for (unsigned k = 0; k < 8; ++k)
    {
        const cvec v = hermite(g, k).coordinates();
        m += v * v.adjoint() / 8.0;
    }
    CHECK(check_majorization(c, DensityOperator(g, m)));
}

TEST_CASE("Jensen lower bound")
{
    const TimeGrid g;
    std::mt19937_64 rng(5);
    const ScatteringGrid models[] = {build_gaussian(2.0, 48), build_rectangular(0.2, 0.05, 64),
                                     shifted(build_gaussian(4.0, 32), 0.5, -0.25)};
    for (const auto &c : models)
    {
        const Moments m = compute_moments(c);
        int violations = 0;
        for (int trial = 0; trial < 30; ++trial)
        {
            const Signal a = random_pulse(g, rng);
            const Signal b = random_pulse(g, rng);
            if (lower_bound(c, a, b, m.tau0, m.nu0) > fidelity(c, a, b) + 1e-8)
                ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("lower-bound operator action")
{
    const TimeGrid g;
    std::mt19937_64 rng(8);
    const ScatteringGrid c = shifted(build_gaussian(3.0, 24), 0.3, 0.2);
    const OperatorMatrix l = lower_bound_operator(g, c, 0.3, 0.2);
    const Signal f = random_pulse(g, rng);
    CHECK(max_abs_diff(apply_lower_bound_operator(c, f, 0.3, 0.2).samples(), l.apply(f).samples()) < 1e-10);
}

TEST_CASE("covariance")
{
    const TimeGrid g;
    const Signal h0 = hermite(g, 0);
    const ScatteringGrid c = build_gaussian(2.0, 48);
    CHECK(check_covariance(c, h0, h0, 0.0, 0.0) == 0.0);
    CHECK(check_covariance(c, h0, h0, 4 * g.dt(), 3.0 / g.span()) < 1e-10);
    CHECK(check_covariance(c, h0, h0, -7 * g.dt(), -2.0 / g.span()) < 1e-10);
    CHECK(check_covariance(c, h0, h0, 0.3 * g.dt(), 0.0) < 1e-6);
    CHECK(check_covariance(c, h0, h0, 1.3 * g.dt(), 0.7 / g.span()) < 1e-6);
    std::mt19937_64 rng(9);
    const Signal a = random_pulse(g, rng), b = random_pulse(g, rng);
    CHECK(check_covariance(c, a, b, 0.45, -0.3) < 1e-6);
}

TEST_CASE("second-order approximation")
{
    const TimeGrid g;
    const Signal h0 = hermite(g, 0);
    const DensityOperator p0 = DensityOperator::pure(h0);

    // point mass anywhere: A1 reproduces the displaced projector exactly
    for (auto [t, v] : {std::pair{0.0, 0.0}, std::pair{0.5, -0.25}})
    {
        const ScatteringGrid pt = build_point(t, v);
        const cmat a1 = build_A1(pt, compute_moments(pt), p0).entries();
        CHECK((a1 - apply_cp_map(pt, p0).entries()).cwiseAbs().maxCoeff() < 1e-10);
    }

    // rectangular example: 1 - 2 pi sqrt(C02 C20) in the scaled frame
    const ScatteringGrid rect = build_rectangular(0.2, 0.05, 256);
    const Moments m = compute_moments(rect);
    {
        // brute-force expectation of the double commutators
        const cmat x = position_operator(g).entries(), d = momentum_operator(g).entries();
        const cmat gm = p0.entries();
        const double a2 = m.alpha_scale * m.alpha_scale;
        const cmat a1 = m.c00 * gm - 4 * pi * pi * (m.c20 * a2 * d * (d * gm - gm * d) + m.c02 / a2 * x * (x * gm - gm * x));
        CHECK(std::abs((gm * a1).trace().real() - 0.9895279) < 1e-4);
    }
    const ScatteringGrid centered_rect = shifted(rect, -m.tau0, -m.nu0);
    const cmat a1 = build_A1(centered_rect, compute_moments(centered_rect), p0, m.alpha_scale).entries();
    CHECK(std::abs((p0.entries() * a1).trace().real() - 0.9895279) < 1e-4);

    // remainder shrinks at fourth order for the symmetric Gaussian and h0
    const ScatteringGrid base = build_gaussian(2.0, 48);
    double previous = 0.0;
    for (double s : {0.2, 0.1, 0.05})
    {
        const ScatteringGrid c = scaled(base, s);
        const double err = operator_norm(apply_cp_map(c, p0).entries() - build_A1(c, compute_moments(c), p0).entries());
        if (previous > 0.0)
        {
            CHECK(err < previous);
            CHECK(previous / err >= 4.0);
        }
        previous = err;
    }
}
