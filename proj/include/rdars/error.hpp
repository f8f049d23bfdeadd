// SPDX-License-Identifier: Apache-2.0
//
// rdars-sparsity: joint sparsity and beamforming design for RDARS-aided downlink
// Copyright (C) 2026 The rdars-sparsity Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace rdars {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
    InvalidArgument = 1,
    Domain = 2,
    Infeasible = 3,
    Io = 4,
    Parse = 5,
    Numerical = 6,
    Internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what)
{
    if (!cond) fail(code, what);
}

}  // namespace rdars
