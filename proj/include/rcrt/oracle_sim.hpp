#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "rcrt/robust_recon.hpp"

namespace rcrt {

struct ErrorVector {
    std::vector<Int> delta;
};

// rbar_i = clamp(r_i + delta_i, 0, d*m_i - 1).
Observation inject_errors(const CleanInstance &inst, const ErrorVector &ev);

enum class CampaignMode { exhaustive, random };

struct CampaignConfig {
    std::vector<Int> m;
    Int d;
    CampaignMode mode = CampaignMode::exhaustive;
    std::uint64_t trials = 0;  // random mode only
    std::uint64_t seed = 0;    // random mode only
    // Absent selects the default bound ceil(d/4) - 1, the largest integer
    // strictly below d/4 (spelled "paper" on the CLI).
    std::optional<Int> error_bound;
    std::vector<Method> algorithms{Method::quotient, Method::wang_xia, Method::extremes};
};

// Effective per-remainder error bound B for a config.
Int campaign_bound(const CampaignConfig &cfg);

// One failed (or error-producing) trial with everything needed to replay it.
struct FailureWitness {
    std::uint64_t trial = 0;
    Method algorithm = Method::quotient;
    Int N;
    std::vector<Int> deltas;  // nominal deltas, before clamping
    std::vector<Int> rbar;
    std::optional<Int> N_hat;  // absent when the algorithm threw
    std::optional<Int> abs_err;
    std::string error;  // "degenerate_stats" / "non_exact_quotient" / ""
};

struct AlgoStats {
    Method algorithm = Method::quotient;
    std::uint64_t success = 0;  // trials with 4*|N - N_hat| < d
    Int max_abs_err{0};
    // exact quotient vector recovered; meaningless for the extremes method
    std::optional<std::uint64_t> quotient_exact;
    std::uint64_t low_spread = 0;
    std::uint64_t high_spread = 0;
    std::uint64_t no_branch = 0;
    std::uint64_t errors = 0;  // trials that threw instead of estimating
};

inline constexpr std::size_t kMaxFailureWitnesses = 100;

struct CampaignReport {
    CampaignConfig config;
    Int effective_bound;
    std::string generator;  // PRNG identification; empty in exhaustive mode
    std::uint64_t total = 0;
    std::uint64_t clamped = 0;  // trials where clamping changed some rbar
    std::vector<AlgoStats> algorithms;
    std::vector<FailureWitness> failures;  // first <= 100 in trial order
    std::uint64_t total_failures = 0;      // exact count across all algorithms
    double duration_seconds = 0.0;
};

// Per-trial record streamed to an optional sink (one per algorithm run).
struct TrialRecord {
    std::uint64_t trial = 0;
    Int N;
    std::vector<Int> deltas;
    Method algorithm = Method::quotient;
    std::optional<Int> N_hat;
    std::optional<Int> abs_err;
    bool success = false;
};

using TrialSink = std::function<void(const TrialRecord &)>;

// Runs every N in [0, dM) against every integer error vector with
// |delta_i| <= B. Aggregation is associative and commutative, so the report
// is identical for any worker count. A non-null sink forces a single worker
// so rows stream in trial order.
CampaignReport exhaustive_sweep(const CampaignConfig &cfg, unsigned threads = 0,
                                const TrialSink &sink = nullptr);

// Draws `trials` independent (N, delta) samples. Trial t uses its own
// SplitMix64 stream seeded with seed ^ mix64(t + 1): identical configs give
// bit-identical reports (wall-clock duration aside) for any worker count.
CampaignReport random_campaign(const CampaignConfig &cfg, unsigned threads = 0,
                               const TrialSink &sink = nullptr);

// Two consistent instances at error magnitude exactly d/4 that share one
// observation (d, 3d/2) while lying further than d/2 apart, so no estimate
// can be within d/4 of both. Requires distinct primes p, q and 4 | d.
struct SharpnessWitness {
    Int p, q, d;
    Int v;  // p^{-1} mod q
    RobustModuliSet mods;
    std::vector<Int> observation;  // (d, 3d/2)
    CleanInstance instance1;       // r = (3d/4, 7d/4), N_1 = d*v*p + 3d/4
    CleanInstance instance2;       // r = (5d/4, 5d/4), N_2 = 5d/4
    std::vector<Int> delta1;       // (+d/4, -d/4)
    std::vector<Int> delta2;       // (-d/4, +d/4)
};

SharpnessWitness sharpness_witness(const Int &p, const Int &q, const Int &d);

// SplitMix64: fixed 64-bit generator used for every randomized campaign.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // the SplitMix64 output finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Stream for one trial; documented in CampaignReport::generator.
SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Uniform draw from [0, bound) by masked rejection over 64-bit words.
Int uniform_below(SplitMix64 &rng, const Int &bound);

}  // namespace rcrt
