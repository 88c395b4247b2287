// Copyright 2026 The fermiref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fermiref {

struct CheckResult {
    std::string name;
    bool pass = false;
    /// Measured quantity (usually a maximum deviation) and the bound it was held to.
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// Random states per property check.
    std::size_t samples = 20;
    /// Loss probability for the Steane suite.
    double steane_p = 0.01;
};

/// Suite names accepted by run_suite, in the order `all` runs them.
const std::vector<std::string> &suite_names();

/// Runs one suite ("fock", "reference", "codes", "steane", "qec", "logical", "backend").
/// Throws std::invalid_argument on an unknown name.
SuiteReport run_suite(const std::string &name, const VerifyOptions &options);

}  // namespace fermiref
