#pragma once

#include <string>
#include <vector>

#include "dcc/json_io.hpp"
#include "dcc/lift.hpp"

namespace dcc {

struct SearchRow {
    std::uint32_t n = 0;
    std::uint32_t mu = 0;
    double log_q_n = 0.0;
    double ratio = 0.0; // mu / log_q n
};

/// All n in [2, n_max] with gcd(n, q t) = 1 and mu(n) > log_q n, ascending.
std::vector<SearchRow> search_n(std::uint64_t q, std::uint64_t t, std::uint32_t n_max);
json search_rows_json(const std::vector<SearchRow>& rows);

struct ExperimentConfig {
    std::shared_ptr<const Fq> F;
    fe lambda = 1;
    std::uint32_t alpha = 1;
    std::uint32_t alpha_prime = 1;
    std::vector<std::uint32_t> ns;
    std::vector<double> deltas;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ull << 20;
    std::uint32_t threads = 0; // 0 = auto
};

struct TrialRow {
    std::uint64_t stream = 0; // per-trial rng stream (pairs with the run seed)
    std::uint32_t n = 0;
    std::uint32_t alpha = 1;
    std::uint32_t alpha_prime = 1;
    fe lambda = 1;
    std::uint32_t dim = 0;
    std::optional<std::uint64_t> min_wt; // absent for the zero code
    bool exact = true;
    double delta_observed = 0.0; // min_wt / ((alpha'+alpha) n)
    bool is_full_dim = false;
};

struct McSummary {
    std::uint32_t n = 0;
    double delta = 0.0;
    double pr_delta_gt = 0.0;
    double pr_full_dim = 0.0;
    bool bound_ey_ok = false; // Lemma hypothesis for the E(Y) bound
    double bound_ey = 0.0;
    double bound_fulldim = 0.0;
    std::uint64_t trials = 0;
    double radius3_delta = 0.0;   // 3 sigma binomial radius on Pr(Delta <= delta)
    double radius3_fulldim = 0.0; // 3 sigma binomial radius on Pr(dim = n-1)
};

struct McResult {
    ExperimentConfig cfg;
    std::vector<TrialRow> rows; // trial-major: all trials for ns[0], then ns[1], ...
    std::vector<McSummary> summaries;
};

/// Runs trials in parallel over per-trial rng streams; results are
/// deterministic functions of (seed, trial index) regardless of thread count.
McResult run_mc(const ExperimentConfig& cfg);

/// CSV: header seed,n,alpha,alpha_prime,lambda,dim,min_wt,exact,delta_threshold,is_full_dim.
std::string mc_csv(const McResult& res);
json mc_summary_json(const McResult& res);

/// Exact tiny-oracle report plus the verified inequality chain.
json oracle_tiny_json(const TwistParams& p, double delta, std::uint64_t budget);

struct LiftDemoConfig {
    RingPairConfig ring_pair;
    std::uint32_t alpha = 1;
    std::uint32_t alpha_prime = 1;
    std::uint32_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ull << 20;
    std::uint32_t max_resample = 64;
};

/// Samples a full-dimension source code (resampling up to max_resample),
/// lifts it, and reports the lifted metrics with the rescaling check.
json lift_demo_json(const LiftDemoConfig& cfg);

} // namespace dcc
