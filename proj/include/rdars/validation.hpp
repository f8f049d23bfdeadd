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

// Quick self-checks of the numerical invariants, run by `rdars validate`.

#include <cstdint>
#include <string>
#include <vector>

namespace rdars {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed);

}  // namespace rdars
