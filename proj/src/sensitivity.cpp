#include "dematel/sensitivity.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace dematel {

namespace {

// SplitMix64 finalizer, used as the mixing step of a counter-based generator.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t absorb(std::uint64_t h, std::uint64_t word) {
  return mix64(h + 0x9e3779b97f4a7c15ULL + word);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One 64-bit draw per (seed, trial, expert, cell) key. Purely functional in
// the key, so evaluation order and thread scheduling cannot change a draw.
std::uint64_t keyed_draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t expert_hash,
                         std::uint64_t row, std::uint64_t col) {
  std::uint64_t h = absorb(0x6a09e667f3bcc909ULL, seed);
  h = absorb(h, trial);
  h = absorb(h, expert_hash);
  h = absorb(h, (row << 32) | col);
  return h;
}

double uniform01(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

void validate_spec(const PerturbationSpec& spec) {
  if (!(spec.flip_probability >= 0.0 && spec.flip_probability <= 1.0)) {
    throw Error("flip probability " + std::to_string(spec.flip_probability) +
                " is outside [0, 1]");
  }
  if (spec.magnitude < 0) {
    throw Error("perturbation magnitude must be non-negative");
  }
}

}  // namespace

ExpertResponse perturb_response(const ExpertResponse& resp, const PerturbationSpec& spec,
                                std::size_t trial_index) {
  validate_spec(spec);
  const std::size_t n = resp.size();
  const std::uint64_t expert_hash = fnv1a64(resp.expert_id());

  std::vector<int> scores = resp.scores();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::uint64_t word = keyed_draw(spec.seed, trial_index, expert_hash, i, j);
      if (uniform01(word) >= spec.flip_probability) continue;
      int step = (word & 1) ? spec.magnitude : -spec.magnitude;
      scores[i * n + j] = std::clamp(scores[i * n + j] + step, kMinScore, kMaxScore);
    }
  }
  return ExpertResponse(resp.expert_id(), n, std::move(scores));
}

StabilityReport monte_carlo_stability(std::span<const ExpertResponse> responses,
                                      const CriteriaSet& cs, const PerturbationSpec& spec,
                                      const PipelineOptions& options, unsigned threads) {
  validate_spec(spec);
  if (responses.empty()) throw EmptyPanelError();
  if (spec.trials == 0) throw Error("at least one perturbation trial is required");
  for (const auto& resp : responses) validate_expert_response(resp, cs);

  const std::size_t n = cs.size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, spec.trials));

  // Workers pull trial indices from a shared counter and keep integer tallies;
  // integer addition commutes, so the merged counts cannot depend on which
  // thread ran which trial.
  std::atomic<std::size_t> next_trial{0};
  std::vector<std::vector<std::int64_t>> cause_counts(threads, std::vector<std::int64_t>(n, 0));
  std::vector<std::int64_t> degenerate(threads, 0);
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::atomic<bool> abort{false};

  auto worker = [&](unsigned slot) {
    try {
      for (;;) {
        std::size_t t = next_trial.fetch_add(1, std::memory_order_relaxed);
        if (t >= spec.trials || abort.load(std::memory_order_relaxed)) return;
        std::vector<ExpertResponse> panel;
        panel.reserve(responses.size());
        for (const auto& resp : responses) panel.push_back(perturb_response(resp, spec, t));
        try {
          AnalysisResult result = run_pipeline(std::span<const ExpertResponse>(panel), cs, options);
          for (std::size_t i = 0; i < n; ++i) {
            if (result.records[i].group == Group::Cause) ++cause_counts[slot][i];
          }
        } catch (const Error&) {
          ++degenerate[slot];
        }
      }
    } catch (...) {
      abort.store(true, std::memory_order_relaxed);
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned slot = 0; slot < threads; ++slot) pool.emplace_back(worker, slot);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::int64_t> causes(n, 0);
  std::int64_t failed = 0;
  for (unsigned slot = 0; slot < threads; ++slot) {
    for (std::size_t i = 0; i < n; ++i) causes[i] += cause_counts[slot][i];
    failed += degenerate[slot];
  }
  const std::int64_t successful = static_cast<std::int64_t>(spec.trials) - failed;
  if (successful == 0) throw AllTrialsDegenerateError(spec.trials);

  StabilityReport report;
  report.codes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) report.codes.push_back(cs.at(i).code);
  report.cause_probability.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.cause_probability[i] =
        static_cast<double>(causes[i]) / static_cast<double>(successful);
  }
  report.trials_run = spec.trials;
  report.degenerate_trials = static_cast<std::size_t>(failed);
  return report;
}

}  // namespace dematel
