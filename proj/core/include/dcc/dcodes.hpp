#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dcc/linalg.hpp"
#include "dcc/polyring.hpp"
#include "dcc/rng.hpp"

namespace dcc {

// Parameters of the double lambda-twisted ensemble C_{a',a} over F:
// gcd(n, q*t) = 1, gcd(alpha, t) = 1, alpha' = alpha (mod t).
struct TwistParams {
    std::shared_ptr<const Fq> F;
    fe lambda = 1;
    std::uint64_t t = 1; // mult_order(lambda)
    std::uint32_t alpha = 1;
    std::uint32_t alpha_prime = 1;
    std::uint32_t alpha_min = 1; // alpha'' = min{alpha, alpha'}
    std::uint32_t n = 0;
    std::shared_ptr<const Factorization> factz;

    QuotientCtx ring_ctx() const { return {F, n, 1}; }                        // F[X]/(X^n-1)
    QuotientCtx ctx_alpha() const { return {F, alpha * n, lambda}; }          // R_{lambda,alpha}
    QuotientCtx ctx_alpha_prime() const { return {F, alpha_prime * n, lambda}; }
    std::uint32_t code_len() const { return (alpha_prime + alpha) * n; }
};

TwistParams make_twist_params(std::shared_ptr<const Fq> F, fe lambda, std::uint32_t alpha,
                              std::uint32_t alpha_prime, std::uint32_t n);

/// Fixed deterministic basis of I = R*phi_0: the greedy independent subset of
/// {e_I * X^j : j = 0..n-1}, as coefficient rows of length n. Has n-1 rows.
FMatrix ideal_basis(const TwistParams& p);

/// Uniform sample of I_{lambda,alpha'} x I_{lambda,alpha}: each component is
/// an independent uniform draw of F^n pushed through f -> e_I*f -> tau.
/// Deterministic for a fixed (seed, stream); a' is drawn first.
std::pair<QuotientElement, QuotientElement> sample_pair(const TwistParams& p, std::uint64_t seed,
                                                        std::uint64_t stream = 0);

struct DoubleTwistedCode {
    TwistParams params;
    QuotientElement a_prime;
    QuotientElement a;
    FMatrix gen_rows; // n-1 rows (sigma(f_b)a', sigma(f_b)a), f_b the fixed basis of I
    FMatrix basis;    // echelonized independent rows
    std::uint32_t dim = 0;
};

DoubleTwistedCode build_code(const TwistParams& p, const QuotientElement& a_prime,
                             const QuotientElement& a);

struct CodeReport {
    std::uint32_t dim = 0;
    std::optional<std::uint64_t> min_wt; // absent for the zero code
    bool exact = true;
    double delta = 0.0; // min_wt / ((alpha'+alpha) n)
    double rate = 0.0;  // dim / ((alpha'+alpha) n)
};

/// Exact minimum weight when q^dim <= budget (Gray-walk over the row space),
/// otherwise a sampled upper bound with exact = false (budget random words,
/// drawn from `sampler` streams when given, else from seed 0).
CodeReport min_weight(const DoubleTwistedCode& code, std::uint64_t budget,
                      CounterRng* sampler = nullptr);

/// q^k, or nullopt if it exceeds cap.
std::optional<std::uint64_t> pow_checked(std::uint64_t q, std::uint32_t k, std::uint64_t cap);

/// Minimum Hamming weight over the nonzero span of independent rows.
std::uint64_t min_weight_exact(const Fq& F, const FMatrix& basis);

/// Visits every word of the row space exactly once (zero word first).
void enumerate_rowspace(const Fq& F, const FMatrix& basis,
                        const std::function<void(const std::vector<fe>&)>& fn);

/// Drives the modular q-ary Gray walk over q^k states: calls on_digit(z) once
/// per step i = 1..q^k-1, where z is the digit incremented (mod q) at step i.
/// Adding basis row z to an accumulator per step visits every combination
/// exactly once, starting from zero.
void gray_steps(std::uint64_t q, std::uint32_t k,
                const std::function<void(std::size_t)>& on_digit);

std::uint64_t hamming_weight(const std::vector<fe>& v);

// Information sets witnessing balancedness of a shift-closed code: I_1 is the
// lexicographically first full-rank coordinate set, I_{j+1} its rotation by
// theta^{-j}; every coordinate is covered exactly t_cover = dim C times.
struct BalancedWitness {
    std::vector<std::vector<std::uint32_t>> info_sets; // N sets, each of size dim
    std::uint32_t t_cover = 0;
};

/// gen_rows spans a code in F^N closed under the consta-shift of ctx.
/// Errors if the input is not shift-closed.
BalancedWitness balanced_witness(const QuotientCtx& ctx, const FMatrix& gen_rows);

/// q-ary entropy h_q on [0, 1-1/q]; 0 log 0 = 0.
double entropy(double delta, std::uint64_t q);

/// Exact |C^{<=delta}| (zero word included) for the span of the given rows in
/// F^N; requires 0 < delta < 1-1/q and q^k <= budget.
std::uint64_t low_weight_count(const Fq& F, const FMatrix& basis, std::uint32_t N, double delta,
                               std::uint64_t budget);

/// Closed form q^{-2 d_f + 2 d_f h_q((a'+a)/(2a'') delta) + log_q((a'+a) n)}.
double expectation_bound(const TwistParams& p, std::uint32_t d_f, double delta);

struct TotalBound {
    bool hypothesis_ok = false; // 1/2 - h_q((a'+a)/(2a'') delta) - log_q(n)/(2 mu) > 0
    double value = 0.0;         // meaningful only when hypothesis_ok
};

/// Closed form q^{-2 mu (1/2 - h_q((a'+a)/(2a'') delta) - 3 log_q(n)/(2 mu)) + log_q(a'+a)};
/// Pr(Delta <= delta) <= E(Y) <= value whenever the hypothesis holds.
TotalBound total_expectation_bound(const TwistParams& p, double delta);

struct FullDimBound {
    double bound = 0.0;       // (1/4)^{1/mu}
    double exact_ratio = 0.0; // |I*|/|I| = prod_i (1 - q^{-d_i})
};

/// Requires mu(n) > log_q(n).
FullDimBound full_dim_prob_lower_bound(const TwistParams& p);

// Exhaustive enumeration of the whole probability space (tiny n): exact E(Y),
// exact Pr(Delta <= delta), exact Pr(dim = n-1), plus the Omega_d / C*
// partition data of the nonzero elements of I.
struct TinyOracleReport {
    std::uint64_t pairs = 0;          // q^{2(n-1)}
    std::uint64_t ey_sum = 0;         // sum over pairs of Y
    std::uint64_t delta_le_count = 0; // #pairs with Y >= 1
    std::uint64_t full_dim_count = 0; // #pairs with dim = n-1
    double exact_E_Y = 0.0;
    double exact_pr_delta_le = 0.0;
    double exact_pr_full_dim = 0.0;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> omega_sizes; // (d, |Omega_d|)
    bool partition_ok = false;  // each f in I-{0} lies in exactly one C*
    bool omega_bound_ok = false; // |Omega_d| <= n^{d/mu}
    std::uint64_t cstar_total = 0; // sum_C |C*|, must equal |I| - 1
    std::uint64_t ideal_size = 0;  // |I| = q^{n-1}
    std::vector<std::pair<std::uint32_t, std::uint64_t>> per_f; // (d_f, #pairs with 0<w<=deltaL), f != 0
};

TinyOracleReport exact_tiny_oracle(const TwistParams& p, double delta, std::uint64_t budget);

} // namespace dcc
