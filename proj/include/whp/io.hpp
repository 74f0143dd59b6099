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

#ifndef WHP_IO_HPP
#define WHP_IO_HPP

#include <string>
#include <vector>

#include "whp/optimizer.hpp"
#include "whp/scattering.hpp"
#include "whp/signal.hpp"
#include "whp/weyl_ops.hpp"
#include "whp/wssus_sim.hpp"

namespace whp
{
    // 17 significant digits, "%.17g".
    std::string format_double(double x);

    // Pulse CSV: a "# {json}" line carrying the grid, then "t,re,im" rows.
    void write_signal_csv(const std::string &path, const Signal &s);
    // Headerless files are accepted when the time column is evenly spaced.
    Signal read_signal_csv(const std::string &path);

    // Scattering CSV: "# {json}" with model and parameters, then "tau,nu,w" rows.
    void write_scattering_csv(const std::string &path, const ScatteringGrid &c);
    ScatteringGrid read_scattering_csv(const std::string &path);

    // <stem>.bin holds row-major little-endian complex128 entries; <stem>.json the
    // grid, shape and hermitian flag.
    void write_operator(const std::string &stem, const OperatorMatrix &op);
    OperatorMatrix read_operator(const std::string &stem);

    std::string design_result_json(const DesignResult &r);
    std::string fidelity_report_json(const FidelityReport &r);
    std::string moments_json(const Moments &m);

    void write_trace_csv(const std::string &path, const std::vector<TraceRow> &rows);
    void write_text(const std::string &path, const std::string &text);
}

#endif
