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

#ifndef WHP_SIGNAL_HPP
#define WHP_SIGNAL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace whp
{
    using cplx = std::complex<double>;
    using cvec = Eigen::VectorXcd;
    using cmat = Eigen::MatrixXcd;
    using rvec = Eigen::VectorXd;
    using rmat = Eigen::MatrixXd;

    // Centered uniform time grid on a torus of length t_span.
    // Sample k sits at t_k = (k - n/2) * dt. The dual frequency grid has spacing
    // 1/t_span and covers [-n/(2 t_span), n/(2 t_span)).
    class TimeGrid
    {
    public:
        TimeGrid(std::size_t n_samples = 256, double t_span = 16.0);

        std::size_t size() const noexcept { return n_; }
        double span() const noexcept { return span_; }
        double dt() const noexcept { return span_ / double(n_); }
        double time(std::size_t k) const noexcept { return (double(k) - double(n_ / 2)) * dt(); }
        rvec times() const;

        double df() const noexcept { return 1.0 / span_; }
        double bandwidth() const noexcept { return double(n_) / span_; }
        // DFT bin order: j / t_span for j < n/2, (j - n) / t_span otherwise.
        rvec frequencies() const;

        // Shifts beyond a quarter of either extent alias into the pulse body.
        double time_guard() const noexcept { return span_ / 4.0; }
        double frequency_guard() const noexcept { return bandwidth() / 4.0; }
        bool in_guard(double tau, double nu) const noexcept;

        bool operator==(const TimeGrid &other) const noexcept = default;

    private:
        std::size_t n_;
        double span_;
    };

    // Sampled pulse; samples carry amplitude per sqrt(second) so that
    // sum |x_k|^2 dt approximates the L2 norm.
    class Signal
    {
    public:
        Signal(const TimeGrid &grid, cvec samples);
        static Signal zeros(const TimeGrid &grid);

        const TimeGrid &grid() const noexcept { return grid_; }
        const cvec &samples() const noexcept { return samples_; }
        std::size_t size() const noexcept { return std::size_t(samples_.size()); }
        cplx operator[](std::size_t k) const { return samples_[Eigen::Index(k)]; }

        double norm() const;
        Signal normalized() const;

        // Coordinates in the orthonormal sample basis: sqrt(dt) * samples.
        cvec coordinates() const;
        static Signal from_coordinates(const TimeGrid &grid, const cvec &coords);

        Signal &operator+=(const Signal &other);
        Signal &operator-=(const Signal &other);
        Signal &operator*=(cplx scale);

    private:
        TimeGrid grid_;
        cvec samples_;
    };

    Signal operator+(Signal a, const Signal &b);
    Signal operator-(Signal a, const Signal &b);
    Signal operator*(cplx scale, Signal a);

    // Lattice point (m, n) denotes the atom e^{i 2 pi m F t} gamma(t - n T).
    struct LatticeIndex
    {
        int m = 0; // frequency index
        int n = 0; // time index
        bool operator==(const LatticeIndex &) const noexcept = default;
    };

    struct LatticeParams
    {
        double T = 1.0;
        double F = 1.0;
        std::vector<LatticeIndex> index_set;

        // All (m, n) with |m|, |n| <= radius, ordered with (0, 0) first.
        static LatticeParams square(double T, double F, int radius);

        // Throws on duplicates, nonpositive spacing, or atoms outside the guard region.
        void validate(const TimeGrid &grid) const;
        std::size_t position_of(LatticeIndex idx) const;
    };

    void require_same_grid(const Signal &a, const Signal &b);

    // sum_k conj(f_k) g_k dt; conjugate-linear in f.
    cplx inner_product(const Signal &f, const Signal &g);

    // (S_(tau,nu) f)(t) = e^{i 2 pi nu t} f(t - tau). Delays are spectral phase
    // ramps, so the operation is exactly unitary on the grid.
    Signal tf_shift(const Signal &f, double tau, double nu);
    // S_(tau,nu)^{-1} f = e^{-i 2 pi tau nu} S_(-tau,-nu) f.
    Signal tf_shift_inverse(const Signal &f, double tau, double nu);

    // (d_alpha f)(t) = f(t / alpha) / sqrt(alpha), by band-limited resampling.
    Signal dilate(const Signal &f, double alpha);

    // Matrix of d_alpha acting on sample vectors. Points with |t / alpha| beyond
    // the half window map to zero instead of wrapping.
    rmat dilation_matrix(const TimeGrid &grid, double alpha);

    // Hermite function h_n, normalized so that h_0(t) = 2^{1/4} e^{-pi t^2}.
    Signal hermite(const TimeGrid &grid, unsigned n);
    unsigned hermite_max_order(const TimeGrid &grid);

    Signal lattice_atom(const Signal &gamma, const LatticeParams &lattice, LatticeIndex idx);
    Signal gabor_synthesize(const Signal &gamma, const LatticeParams &lattice, std::span<const cplx> symbols);

    // Energy in |t| > 0.4 t_span (time) and |f| > 0.4 bandwidth (frequency).
    double tail_mass(const Signal &f);
    double spectral_tail_mass(const Signal &f);

    // Global phase chosen so that the largest-magnitude sample is real positive.
    Signal canonical_phase(const Signal &f);

    inline constexpr double tail_mass_limit = 1e-8;
    inline constexpr double hermite_tail_limit = 1e-10;
}

#endif
