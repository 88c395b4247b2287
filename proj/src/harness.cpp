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

#include "fermiref/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <mutex>
#include <thread>

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include "fermiref/codes.hpp"
#include "fermiref/logical.hpp"

namespace fermiref {

namespace {

// Smallest x in [0, 1] with I_x(a, b) >= target; I_x is increasing in x.
double beta_quantile(double a, double b, double target) {
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (boost::math::ibeta(a, b, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence) {
    if (n == 0 || k > n) {
        throw std::invalid_argument(fmt::format("clopper_pearson needs 0 <= k <= n and n > 0 (k = {}, n = {})", k, n));
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument(fmt::format("confidence {} outside (0, 1)", confidence));
    }
    const double alpha = 1.0 - confidence;
    const auto kd = static_cast<double>(k);
    const auto nd = static_cast<double>(n);
    double lo = k == 0 ? 0.0 : beta_quantile(kd, nd - kd + 1.0, alpha / 2);
    double hi = k == n ? 1.0 : beta_quantile(kd + 1.0, nd - kd, 1.0 - alpha / 2);
    return {lo, hi};
}

void ExperimentConfig::validate() const {
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    if (p_values.empty()) {
        throw std::invalid_argument("no error probabilities given");
    }
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(fmt::format("error probability {} outside [0, 1]", p));
        }
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument(fmt::format("confidence {} outside (0, 1)", confidence));
    }
}

RegisterLayout exchange_layout() {
    return RegisterLayout::make(9, 9, 9, 2);
}

std::size_t layer_slot(std::size_t layer) {
    return std::min<std::size_t>(layer, kExchangePairs.size());
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index));
}

ExchangeExperiment::ExchangeExperiment(const ExperimentConfig &config)
    : config_(config), layout_(exchange_layout()) {
    initial_ = logical_basis_state(layout_, BackendKind::Compressed, {1, 1, 0});
    if (config_.include_reference_errors) {
        recovery_.emplace(layout_, BackendKind::Compressed, 2);
    }
}

void ExchangeExperiment::error_layer(SparseState &state, double p, Rng &rng) const {
    sample_phase_error_layer(state, NoiseSpec{p, {}, false}, rng);
    if (config_.correction_enabled) {
        qec_round(state, kSyndromeAncilla, rng);
    }
    if (recovery_) {
        NoiseSpec reference{p, {}, false};
        for (std::size_t j = 0; j < layout_.num_reference_modes; ++j) {
            reference.targets.push_back(layout_.reference_mode(j));
        }
        sample_phase_error_layer(state, reference, rng);
        recovery_->recover(state, rng);
    }
}

int ExchangeExperiment::run_shot(double p, Rng &rng) const {
    SparseState state = initial_;
    apply_qubit_gate(state, {QubitGateKind::H, kExchangeAncilla});
    std::size_t layer = 0;
    for (std::size_t slot = 0; slot <= kExchangePairs.size(); ++slot) {
        while (layer < config_.num_error_layers && layer_slot(layer) == slot) {
            error_layer(state, p, rng);
            ++layer;
        }
        if (slot < kExchangePairs.size()) {
            auto [b, b2] = kExchangePairs[slot];
            controlled_tunneling_logical(state, kExchangeAncilla, b, b2, kPi / 2);
        }
    }
    return measure_qubit(state, kExchangeAncilla, MeasureBasis::Y, rng);
}

int run_exchange_shot(const ExperimentConfig &config, double p, Rng &shot_rng) {
    return ExchangeExperiment(config).run_shot(p, shot_rng);
}

ExperimentSummary run_experiment(const ExperimentConfig &config) {
    config.validate();
    ExchangeExperiment experiment(config);
    std::size_t threads = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
    threads = std::min(threads, config.shots);

    ExperimentSummary summary;
    summary.config = config;
    for (double p : config.p_values) {
        auto start = std::chrono::steady_clock::now();
        std::vector<std::int8_t> outcomes(config.shots, 0);
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]() {
            try {
                constexpr std::size_t kChunk = 64;
                for (;;) {
                    std::size_t begin = next.fetch_add(kChunk);
                    if (begin >= config.shots) {
                        return;
                    }
                    std::size_t end = std::min(begin + kChunk, config.shots);
                    for (std::size_t s = begin; s < end; ++s) {
                        Rng rng(shot_seed(config.seed, s));
                        outcomes[s] = static_cast<std::int8_t>(experiment.run_shot(p, rng));
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(config.shots);
            }
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < threads; ++t) {
                pool.emplace_back(worker);
            }
            for (auto &t : pool) {
                t.join();
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }

        PointResult point;
        point.p = p;
        point.shots = config.shots;
        for (auto y : outcomes) {
            (y > 0 ? point.count_plus : point.count_minus) += 1;
        }
        const double n = static_cast<double>(config.shots);
        point.estimate = (static_cast<double>(point.count_minus) - static_cast<double>(point.count_plus)) / n;
        auto [lo, hi] = clopper_pearson(point.count_minus, config.shots, config.confidence);
        point.ci_lo = 2 * lo - 1;
        point.ci_hi = 2 * hi - 1;
        point.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        summary.points.push_back(point);
    }
    return summary;
}

}  // namespace fermiref
