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

#include "whp/error.hpp"

namespace whp
{
    Error::Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code)
    {
    }

    const char *to_string(ErrorCode code) noexcept
    {
        switch (code)
        {
        case ErrorCode::invalid_argument:
            return "invalid argument";
        case ErrorCode::grid_mismatch:
            return "grid mismatch";
        case ErrorCode::guard_violation:
            return "guard violation";
        case ErrorCode::domain_error:
            return "domain error";
        case ErrorCode::numerical_failure:
            return "numerical failure";
        case ErrorCode::io_error:
            return "i/o error";
        }
        return "unknown error";
    }

    void fail(ErrorCode code, const std::string &message)
    {
        throw Error(code, message);
    }
}
