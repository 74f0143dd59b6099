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

#include "whp/whp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "whp/cp_map.hpp"
#include "whp/error.hpp"
#include "whp/io.hpp"
#include "whp/optimizer.hpp"
#include "whp/scattering.hpp"
#include "whp/signal.hpp"
#include "whp/wssus_sim.hpp"

struct whp_grid
{
    whp::TimeGrid value;
};

struct whp_signal
{
    whp::Signal value;
};

struct whp_scattering
{
    whp::ScatteringGrid value;
};

struct whp_lattice
{
    whp::LatticeParams value;
};

struct whp_design
{
    whp::DesignResult value;
};

namespace
{
    thread_local std::string last_error;

    whp_status status_of(whp::ErrorCode code)
    {
        switch (code)
        {
        case whp::ErrorCode::invalid_argument:
            return WHP_ERR_INVALID_ARGUMENT;
        case whp::ErrorCode::grid_mismatch:
            return WHP_ERR_GRID_MISMATCH;
        case whp::ErrorCode::guard_violation:
            return WHP_ERR_GUARD_VIOLATION;
        case whp::ErrorCode::domain_error:
            return WHP_ERR_DOMAIN;
        case whp::ErrorCode::numerical_failure:
            return WHP_ERR_NUMERICAL;
        case whp::ErrorCode::io_error:
            return WHP_ERR_IO;
        }
        return WHP_ERR_INTERNAL;
    }

    template <class Body>
    whp_status guarded(Body &&body) noexcept
    {
        try
        {
            body();
            last_error.clear();
            return WHP_OK;
        }
        catch (const whp::Error &e)
        {
            last_error = e.what();
            return status_of(e.code());
        }
        catch (const std::bad_alloc &)
        {
            last_error = "out of memory";
            return WHP_ERR_INTERNAL;
        }
        catch (const std::exception &e)
        {
            last_error = e.what();
            return WHP_ERR_INTERNAL;
        }
        catch (...)
        {
            last_error = "unknown failure";
            return WHP_ERR_INTERNAL;
        }
    }

    template <class T>
    const T &deref(const T *p, const char *what)
    {
        if (p == nullptr)
            whp::fail(whp::ErrorCode::invalid_argument, std::string(what) + " is NULL");
        return *p;
    }

    template <class T>
    void require_out(T *p)
    {
        if (p == nullptr)
            whp::fail(whp::ErrorCode::invalid_argument, "output pointer is NULL");
    }

    std::string path_of(const char *path)
    {
        if (path == nullptr || *path == '\0')
            whp::fail(whp::ErrorCode::invalid_argument, "path is NULL or empty");
        return path;
    }

    char *dup_string(const std::string &s)
    {
        char *out = static_cast<char *>(std::malloc(s.size() + 1));
        if (out == nullptr)
            throw std::bad_alloc();
        std::memcpy(out, s.c_str(), s.size() + 1);
        return out;
    }

    whp_signal *wrap(whp::Signal s) { return new whp_signal{std::move(s)}; }
}

extern "C" {

const char *whp_version(void) { return "1.0.0"; }

const char *whp_last_error(void) { return last_error.c_str(); }

const char *whp_status_name(whp_status status)
{
    switch (status)
    {
    case WHP_OK:
        return "ok";
    case WHP_ERR_INVALID_ARGUMENT:
        return "invalid_argument";
    case WHP_ERR_GRID_MISMATCH:
        return "grid_mismatch";
    case WHP_ERR_GUARD_VIOLATION:
        return "guard_violation";
    case WHP_ERR_DOMAIN:
        return "domain_error";
    case WHP_ERR_NUMERICAL:
        return "numerical_failure";
    case WHP_ERR_IO:
        return "io_error";
    case WHP_ERR_INTERNAL:
        return "internal_error";
    }
    return "unknown";
}

void whp_string_free(char *s) { std::free(s); }

// ---------------------------------------------------------------- grid

whp_status whp_grid_create(size_t n_samples, double t_span, whp_grid **out)
{
    return guarded([&] {
        require_out(out);
        *out = new whp_grid{whp::TimeGrid(n_samples, t_span)};
    });
}

void whp_grid_destroy(whp_grid *grid) { delete grid; }

whp_status whp_grid_info(const whp_grid *grid, size_t *n_samples, double *t_span, double *dt)
{
    return guarded([&] {
        const auto &g = deref(grid, "grid").value;
        if (n_samples)
            *n_samples = g.size();
        if (t_span)
            *t_span = g.span();
        if (dt)
            *dt = g.dt();
    });
}

// ---------------------------------------------------------------- signals

whp_status whp_signal_from_samples(const whp_grid *grid, const double *re, const double *im, size_t n,
                                   whp_signal **out)
{
    return guarded([&] {
        const auto &g = deref(grid, "grid").value;
        require_out(out);
        if (re == nullptr)
            whp::fail(whp::ErrorCode::invalid_argument, "sample array is NULL");
        if (n != g.size())
            whp::fail(whp::ErrorCode::grid_mismatch, std::to_string(n) + " samples for a grid of " +
                                                         std::to_string(g.size()));
        whp::cvec x(static_cast<Eigen::Index>(n));
        for (size_t k = 0; k < n; ++k)
            x[Eigen::Index(k)] = whp::cplx(re[k], im ? im[k] : 0.0);
        *out = wrap(whp::Signal(g, std::move(x)));
    });
}

whp_status whp_signal_hermite(const whp_grid *grid, unsigned order, whp_signal **out)
{
    return guarded([&] {
        const auto &g = deref(grid, "grid").value;
        require_out(out);
        *out = wrap(whp::hermite(g, order));
    });
}

whp_status whp_signal_read_csv(const char *path, whp_signal **out)
{
    return guarded([&] {
        require_out(out);
        *out = wrap(whp::read_signal_csv(path_of(path)));
    });
}

whp_status whp_signal_write_csv(const whp_signal *s, const char *path)
{
    return guarded([&] { whp::write_signal_csv(path_of(path), deref(s, "signal").value); });
}

whp_status whp_signal_tf_shift(const whp_signal *s, double tau, double nu, whp_signal **out)
{
    return guarded([&] {
        const auto &f = deref(s, "signal").value;
        require_out(out);
        *out = wrap(whp::tf_shift(f, tau, nu));
    });
}

whp_status whp_signal_dilate(const whp_signal *s, double alpha, whp_signal **out)
{
    return guarded([&] {
        const auto &f = deref(s, "signal").value;
        require_out(out);
        *out = wrap(whp::dilate(f, alpha));
    });
}

whp_status whp_signal_normalize(const whp_signal *s, whp_signal **out)
{
    return guarded([&] {
        const auto &f = deref(s, "signal").value;
        require_out(out);
        *out = wrap(f.normalized());
    });
}

whp_status whp_signal_size(const whp_signal *s, size_t *n)
{
    return guarded([&] {
        const auto &f = deref(s, "signal").value;
        require_out(n);
        *n = f.size();
    });
}

whp_status whp_signal_samples(const whp_signal *s, double *re, double *im, size_t n)
{
    return guarded([&] {
        const auto &f = deref(s, "signal").value;
        if (n != f.size())
            whp::fail(whp::ErrorCode::grid_mismatch, "buffer length does not match the signal length");
        for (size_t k = 0; k < n; ++k)
        {
            if (re)
                re[k] = f[k].real();
            if (im)
                im[k] = f[k].imag();
        }
    });
}

whp_status whp_signal_grid(const whp_signal *s, whp_grid **out)
{
    return guarded([&] {
        const auto &f = deref(s, "signal").value;
        require_out(out);
        *out = new whp_grid{f.grid()};
    });
}

whp_status whp_inner_product(const whp_signal *f, const whp_signal *g, double *re, double *im)
{
    return guarded([&] {
        const whp::cplx v = whp::inner_product(deref(f, "f").value, deref(g, "g").value);
        if (re)
            *re = v.real();
        if (im)
            *im = v.imag();
    });
}

void whp_signal_destroy(whp_signal *s) { delete s; }

// ---------------------------------------------------------------- scattering

whp_status whp_scattering_gaussian(double alpha, unsigned resolution, whp_scattering **out)
{
    return guarded([&] {
        require_out(out);
        *out = new whp_scattering{whp::build_gaussian(alpha, resolution)};
    });
}

whp_status whp_scattering_rectangular(double tau_max, double nu_max, unsigned resolution, whp_scattering **out)
{
    return guarded([&] {
        require_out(out);
        *out = new whp_scattering{whp::build_rectangular(tau_max, nu_max, resolution)};
    });
}

whp_status whp_scattering_point(double tau, double nu, whp_scattering **out)
{
    return guarded([&] {
        require_out(out);
        *out = new whp_scattering{whp::build_point(tau, nu)};
    });
}

whp_status whp_scattering_from_nodes(const double *tau, const double *nu, const double *weight, size_t n,
                                     whp_scattering **out)
{
    return guarded([&] {
        require_out(out);
        if (!tau || !nu || !weight)
            whp::fail(whp::ErrorCode::invalid_argument, "node arrays must not be NULL");
        std::vector<whp::ScatterNode> nodes(n);
        for (size_t k = 0; k < n; ++k)
            nodes[k] = {tau[k], nu[k], weight[k]};
        *out = new whp_scattering{whp::ScatteringGrid(std::move(nodes))};
    });
}

whp_status whp_scattering_read_csv(const char *path, whp_scattering **out)
{
    return guarded([&] {
        require_out(out);
        *out = new whp_scattering{whp::read_scattering_csv(path_of(path))};
    });
}

whp_status whp_scattering_write_csv(const whp_scattering *c, const char *path)
{
    return guarded([&] { whp::write_scattering_csv(path_of(path), deref(c, "scattering").value); });
}

whp_status whp_scattering_size(const whp_scattering *c, size_t *n)
{
    return guarded([&] {
        const auto &v = deref(c, "scattering").value;
        require_out(n);
        *n = v.size();
    });
}

whp_status whp_scattering_extent(const whp_scattering *c, double *max_abs_tau, double *max_abs_nu)
{
    return guarded([&] {
        const auto &v = deref(c, "scattering").value;
        if (max_abs_tau)
            *max_abs_tau = v.max_abs_tau();
        if (max_abs_nu)
            *max_abs_nu = v.max_abs_nu();
    });
}

whp_status whp_scattering_check_guard(const whp_scattering *c, const whp_grid *grid)
{
    return guarded([&] {
        const auto &v = deref(c, "scattering").value;
        const auto &g = deref(grid, "grid").value;
        for (const auto &nd : v.nodes())
            if (!g.in_guard(nd.tau, nd.nu))
                whp::fail(whp::ErrorCode::guard_violation,
                          "scattering node (tau=" + whp::format_double(nd.tau) + " s, nu=" +
                              whp::format_double(nd.nu) + " Hz) lies outside the guard region |tau| <= " +
                              whp::format_double(g.time_guard()) + " s, |nu| <= " +
                              whp::format_double(g.frequency_guard()) + " Hz; enlarge the grid");
    });
}

whp_status whp_scattering_moments_json(const whp_scattering *c, char **json)
{
    return guarded([&] {
        const auto &v = deref(c, "scattering").value;
        require_out(json);
        *json = dup_string(whp::moments_json(whp::compute_moments(v)));
    });
}

void whp_scattering_destroy(whp_scattering *c) { delete c; }

// ---------------------------------------------------------------- lattice

whp_status whp_lattice_square(double T, double F, int radius, whp_lattice **out)
{
    return guarded([&] {
        require_out(out);
        *out = new whp_lattice{whp::LatticeParams::square(T, F, radius)};
    });
}

whp_status whp_lattice_size(const whp_lattice *l, size_t *n)
{
    return guarded([&] {
        const auto &v = deref(l, "lattice").value;
        require_out(n);
        *n = v.index_set.size();
    });
}

whp_status whp_lattice_validate(const whp_lattice *l, const whp_grid *grid)
{
    return guarded([&] { deref(l, "lattice").value.validate(deref(grid, "grid").value); });
}

void whp_lattice_destroy(whp_lattice *l) { delete l; }

// ---------------------------------------------------------------- functionals

whp_status whp_fidelity(const whp_scattering *c, const whp_signal *g, const whp_signal *gamma, double *out)
{
    return guarded([&] {
        require_out(out);
        *out = whp::fidelity(deref(c, "scattering").value, deref(g, "g").value, deref(gamma, "gamma").value);
    });
}

whp_status whp_lower_bound(const whp_scattering *c, const whp_signal *g, const whp_signal *gamma, double tau0,
                           double nu0, double *out)
{
    return guarded([&] {
        require_out(out);
        *out = whp::lower_bound(deref(c, "scattering").value, deref(g, "g").value, deref(gamma, "gamma").value,
                                tau0, nu0);
    });
}

whp_status whp_bessel_bound(const whp_signal *gamma, const whp_lattice *l, double *out)
{
    return guarded([&] {
        require_out(out);
        *out = whp::bessel_bound(deref(gamma, "gamma").value, deref(l, "lattice").value);
    });
}

// ---------------------------------------------------------------- design

whp_status whp_method_from_name(const char *name, whp_method *out)
{
    return guarded([&] {
        require_out(out);
        *out = static_cast<whp_method>(whp::design_method_from_string(name ? name : ""));
    });
}

const char *whp_method_name(whp_method method)
{
    switch (method)
    {
    case WHP_METHOD_GAUSSIAN_ANSATZ:
    case WHP_METHOD_LOCAL_EIGEN:
    case WHP_METHOD_EXACT_OSCILLATOR:
    case WHP_METHOD_ALTERNATING:
        return whp::to_string(static_cast<whp::DesignMethod>(method));
    }
    return "unknown";
}

whp_status whp_design_run(const whp_grid *grid, const whp_scattering *c, whp_method method, int max_iters,
                          double tol, whp_design **out)
{
    return guarded([&] {
        require_out(out);
        if (method < WHP_METHOD_GAUSSIAN_ANSATZ || method > WHP_METHOD_ALTERNATING)
            whp::fail(whp::ErrorCode::invalid_argument, "unknown design method");
        *out = new whp_design{whp::design(deref(grid, "grid").value, deref(c, "scattering").value,
                                          static_cast<whp::DesignMethod>(method), max_iters, tol)};
    });
}

whp_status whp_design_alternating(const whp_scattering *c, const whp_signal *init_gamma, int max_iters, double tol,
                                  whp_design **out)
{
    return guarded([&] {
        require_out(out);
        *out = new whp_design{
            whp::alternating_maximize(deref(c, "scattering").value, deref(init_gamma, "init").value, max_iters, tol)};
    });
}

whp_status whp_design_gain(const whp_design *d, double *gain, double *lower_bound)
{
    return guarded([&] {
        const auto &r = deref(d, "design").value;
        if (gain)
            *gain = r.gain;
        if (lower_bound)
            *lower_bound = r.lower_bound;
    });
}

whp_status whp_design_gamma(const whp_design *d, whp_signal **out)
{
    return guarded([&] {
        const auto &r = deref(d, "design").value;
        require_out(out);
        *out = wrap(r.gamma_opt);
    });
}

whp_status whp_design_g(const whp_design *d, whp_signal **out)
{
    return guarded([&] {
        const auto &r = deref(d, "design").value;
        require_out(out);
        *out = wrap(r.g_opt);
    });
}

whp_status whp_design_json(const whp_design *d, char **json)
{
    return guarded([&] {
        const auto &r = deref(d, "design").value;
        require_out(json);
        *json = dup_string(whp::design_result_json(r));
    });
}

void whp_design_destroy(whp_design *d) { delete d; }

whp_status whp_scaling_sweep(const whp_grid *grid, const whp_scattering *c, const double *alphas, size_t n,
                             double *gains, size_t *argmax)
{
    return guarded([&] {
        if (n > 0 && (alphas == nullptr || gains == nullptr))
            whp::fail(whp::ErrorCode::invalid_argument, "alpha or gain buffer is NULL");
        const auto sweep = whp::scaling_sweep(deref(grid, "grid").value, deref(c, "scattering").value,
                                              std::vector<double>(alphas, alphas + n));
        std::copy(sweep.gains.begin(), sweep.gains.end(), gains);
        if (argmax)
            *argmax = sweep.argmax;
    });
}

// ---------------------------------------------------------------- simulation

whp_status whp_simulate(const whp_scattering *c, const whp_signal *g, const whp_signal *gamma, const whp_lattice *l,
                        double sigma2, int n_realizations, uint64_t seed, const char *trace_csv, char **report_json)
{
    return guarded([&] {
        require_out(report_json);
        std::vector<whp::TraceRow> trace;
        const auto rep = whp::estimate_sinr(deref(c, "scattering").value, deref(g, "g").value,
                                            deref(gamma, "gamma").value, deref(l, "lattice").value, sigma2,
                                            n_realizations, seed, trace_csv ? &trace : nullptr);
        if (trace_csv)
            whp::write_trace_csv(trace_csv, trace);
        *report_json = dup_string(whp::fidelity_report_json(rep));
    });
}

} // extern "C"
