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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fermiref/fock.hpp"
#include "fermiref/qec.hpp"

namespace fermiref {

/// Exact binomial interval for k successes in n trials. Quantiles of the Beta distribution
/// are found by bisection on the regularized incomplete beta function to 1e-12.
std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence);

struct ExperimentConfig {
    std::vector<double> p_values;
    std::size_t shots = 100000;
    std::size_t num_error_layers = 3;
    bool correction_enabled = true;
    bool include_reference_errors = false;
    std::uint64_t seed = 0;
    double confidence = 0.99;
    /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
    std::size_t threads = 1;

    /// Throws std::invalid_argument on an invalid configuration.
    void validate() const;
};

struct PointResult {
    double p = 0.0;
    std::size_t shots = 0;
    std::size_t count_plus = 0;
    std::size_t count_minus = 0;
    /// cos(Theta) = -<Y>.
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double wall_seconds = 0.0;

    /// Logical error estimate - (-1) and its interval.
    double error() const {
        return estimate + 1.0;
    }
    double error_lo() const {
        return ci_lo + 1.0;
    }
    double error_hi() const {
        return ci_hi + 1.0;
    }
};

struct ExperimentSummary {
    ExperimentConfig config;
    std::vector<PointResult> points;
};

/// Register of the exchange experiment: M_s = M_r = N = 9 (three logical modes), ancilla 0
/// probes the exchange and ancilla 1 serves the syndrome measurements.
RegisterLayout exchange_layout();

inline constexpr std::size_t kExchangeAncilla = 0;
inline constexpr std::size_t kSyndromeAncilla = 1;

/// Block pairs of the three controlled pi/2 tunnelings, in circuit order. They move the
/// particles |1,1,0> -> |0,1,1> -> |1,0,1> -> |1,1,0>.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kExchangePairs{{{0, 2}, {0, 1}, {1, 2}}};

/// Slot (0..2 before the tunnelings, 3 before the measurement) of error layer `layer`.
std::size_t layer_slot(std::size_t layer);

/// Precomputed pieces of one exchange shot; shared read-only across threads.
class ExchangeExperiment {
   public:
    explicit ExchangeExperiment(const ExperimentConfig &config);

    /// One realization at error probability p; returns the Y outcome of the ancilla.
    int run_shot(double p, Rng &rng) const;

    const SparseState &initial_state() const {
        return initial_;
    }

   private:
    void error_layer(SparseState &state, double p, Rng &rng) const;

    ExperimentConfig config_;
    RegisterLayout layout_;
    SparseState initial_;
    std::optional<ReferenceRecovery> recovery_;
};

/// Single shot with a freshly built experiment (convenience; run_experiment reuses one).
int run_exchange_shot(const ExperimentConfig &config, double p, Rng &shot_rng);

/// Seed of shot `index`: splitmix64(seed ^ splitmix64(index)).
std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);

/// Runs every shot for every p. The same shot seeds are used for every p.
ExperimentSummary run_experiment(const ExperimentConfig &config);

}  // namespace fermiref
