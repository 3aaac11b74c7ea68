#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dcc/chain_ring.hpp"
#include "dcc/dcodes.hpp"

namespace dcc {

// A chain-ring pair (R', R) joined by the canonical epimorphism rho, with a
// unit lambda of R and lambda' = rho(lambda). Both rings share the residue
// field F, and residue(lambda) is the field-side twist constant.
struct RingPairConfig {
    ChainRing R;       // nilpotency index ell
    ChainRing R_prime; // ell' <= ell
    re lambda = 1;
    re lambda_prime = 1;
    std::shared_ptr<const Fq> F;
    std::uint64_t t = 1; // ord of residue(lambda)
};

RingPairConfig make_ring_pair(const ChainRing& R, const ChainRing& R_prime, re lambda);

/// Coefficientwise socle embedding of f in F[X]/(X^{alpha n} - residue(lambda))
/// into R[X]/(X^{alpha n} - lambda): a_j -> a_j pi^{ell-1}. Injective, additive,
/// Hamming-weight preserving.
std::vector<re> eta_alpha(const QuotientElement& f, const ChainRing& R, re lambda);

/// eta applied to a raw polynomial followed by reduction mod X^N - lambda over
/// R (used to probe ker(eta~) = <X^N - residue(lambda)>).
std::vector<re> eta_reduce_poly(const ChainRing& R, re lambda, std::uint32_t N, const Poly& f);

struct LiftedCode {
    DoubleTwistedCode source;
    RingPairConfig cfg;
    std::vector<std::vector<re>> rows_prime; // images over R', length alpha' n
    std::vector<std::vector<re>> rows;       // images over R, length alpha n
};

/// Images of the source basis rows under (eta'_{alpha'}, eta_alpha).
LiftedCode lift_code(const DoubleTwistedCode& code, const RingPairConfig& cfg);

struct LiftedReport {
    std::uint64_t length = 0;     // alpha' n ell' + alpha n ell
    std::uint32_t log_q_size = 0; // = source dimension (eta is injective)
    std::optional<std::uint64_t> min_wt;
    bool exact = true;
    double delta = 0.0;
    double rate = 0.0;
    bool delta_rescale_check = false; // Delta(C~) = (a'+a)/(a'l'+a l) * Delta(C), exact
};

/// Weight data of the lifted module. Within budget the lifted words are
/// enumerated with ring arithmetic and checked against the source weights;
/// beyond it the check falls back to the basis rows.
LiftedReport lifted_report(const LiftedCode& code, std::uint64_t min_wt_budget);

/// Applies the simultaneous (lambda', lambda)-shift to every row and tests
/// membership in the R-row module (Howell-form reduction over the rings).
bool verify_rr_closure(const LiftedCode& code);

/// Debug path: count distinct lifted words by enumeration (q^dim <= budget).
std::uint64_t lifted_module_size_recount(const LiftedCode& code, std::uint64_t budget);

// Membership oracle for R-submodules of R'^{N'} x R^{N} spanned by rows, where
// R acts on the left segment through rho. Builds a Howell-form basis
// (valuation-pivoted triangularization with pi-saturation) once, then reduces.
class MixedModuleSolver {
public:
    MixedModuleSolver(const ChainRing& R_prime, const ChainRing& R,
                      const std::vector<std::vector<re>>& left_rows,
                      const std::vector<std::vector<re>>& right_rows);

    bool contains(std::vector<re> left, std::vector<re> right) const;

private:
    struct PivotRow {
        std::vector<re> v;      // concatenated, left segment first
        std::uint32_t col = 0;  // leading column
        std::uint32_t val = 0;  // pi-valuation of v[col] (entry normalized to pi^val)
    };

    const ChainRing* Rp_;
    const ChainRing* R_;
    std::uint32_t nl_ = 0, nr_ = 0;
    std::vector<PivotRow> basis_; // sorted by leading column

    bool is_left(std::uint32_t col) const { return col < nl_; }
    std::uint32_t ell_at(std::uint32_t col) const { return is_left(col) ? Rp_->ell() : R_->ell(); }
    re entry_mul(std::uint32_t col, re x, re scalar_in_R) const;
    std::uint32_t val_at(std::uint32_t col, re x) const;
    re exact_div_pi(std::uint32_t col, re x, std::uint32_t k) const;
    re unit_inv_at(std::uint32_t col, re u) const;
    void insert(std::vector<re> row);
};

} // namespace dcc
