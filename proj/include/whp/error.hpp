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

#ifndef WHP_ERROR_HPP
#define WHP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace whp
{
    // Error categories; the C API and the CLI map these onto status and exit codes.
    enum class ErrorCode
    {
        invalid_argument = 1,
        grid_mismatch = 2,
        guard_violation = 3,
        domain_error = 4,
        numerical_failure = 5,
        io_error = 6
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message);
        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    const char *to_string(ErrorCode code) noexcept;

    [[noreturn]] void fail(ErrorCode code, const std::string &message);
}

#endif
