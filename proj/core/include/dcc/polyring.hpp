#pragma once

#include <cstdint>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "dcc/gf.hpp"

namespace dcc {

/// Dense polynomial over F, little-endian packed coefficients, no trailing
/// zeros (empty vector = zero polynomial).
using Poly = std::vector<fe>;

int poly_deg(const Poly& f); // -1 for the zero polynomial
void poly_trim(Poly& f);
Poly poly_add(const Fq& F, const Poly& a, const Poly& b);
Poly poly_sub(const Fq& F, const Poly& a, const Poly& b);
Poly poly_mul(const Fq& F, const Poly& a, const Poly& b);
Poly poly_scale(const Fq& F, const Poly& a, fe s);
/// Quotient and remainder by a nonzero divisor.
std::pair<Poly, Poly> poly_divmod(const Fq& F, const Poly& a, const Poly& b);
Poly poly_mod(const Fq& F, const Poly& a, const Poly& b);
/// Exact division; throws if the remainder is nonzero.
Poly poly_div_exact(const Fq& F, const Poly& a, const Poly& b);
/// Monic gcd.
Poly poly_gcd(const Fq& F, Poly a, Poly b);
/// (g, u, v) with u*a + v*b = g, g the monic gcd.
std::tuple<Poly, Poly, Poly> poly_ext_gcd(const Fq& F, const Poly& a, const Poly& b);
fe poly_eval(const Fq& F, const Poly& f, fe x);
bool poly_divides(const Fq& F, const Poly& d, const Poly& f);

// Irreducible factors of X^n - 1 over F together with the CRT idempotents.
// factors[0] is X - 1; the others are sorted by (degree, coefficients).
// Degrees coincide with the q-cyclotomic coset sizes mod n, and
// mu = min{deg factors[i] : i >= 1}.
struct Factorization {
    std::uint32_t n = 0;
    std::vector<Poly> factors;
    std::vector<std::uint32_t> degrees;
    std::uint32_t mu = 0;
    std::vector<Poly> idempotents; // e_i, aligned with factors
    Poly e_I;                      // 1 - e_0, identity of F_1 + ... + F_m
};

/// Requires n >= 2 and gcd(n, q) = 1 (separable modulus). Deterministic.
Factorization factor_xn_minus_1(const Fq& F, std::uint32_t n);

/// Read-shared cache keyed by (field, n); population is synchronized.
std::shared_ptr<const Factorization> factorization_cached(const std::shared_ptr<const Fq>& F,
                                                          std::uint32_t n);

/// q-cyclotomic cosets mod n (orbits of j -> j*q), sorted by smallest member;
/// the coset of 0 comes first. Integer-only.
std::vector<std::vector<std::uint32_t>> cyclotomic_cosets(std::uint64_t q, std::uint32_t n);

/// mu(n) = smallest nonzero coset size, without building the factorization.
std::uint32_t mu_from_cosets(std::uint64_t q, std::uint32_t n);

// F[X]/(X^N - lambda_eff).
struct QuotientCtx {
    std::shared_ptr<const Fq> F;
    std::uint32_t n_total = 0; // N
    fe lambda_eff = 1;

    bool same(const QuotientCtx& o) const {
        return F->same_field(*o.F) && n_total == o.n_total && lambda_eff == o.lambda_eff;
    }
};

struct QuotientElement {
    QuotientCtx ctx;
    std::vector<fe> c; // length exactly N
};

QuotientElement quotient_make(const QuotientCtx& ctx, const Poly& f);
QuotientElement quotient_zero(const QuotientCtx& ctx);
enum class QuotOp { add, mul };
QuotientElement quotient_arith(const QuotientElement& a, const QuotientElement& b, QuotOp op);
/// (c_0,...,c_{N-1}) -> (lambda_eff*c_{N-1}, c_0,...,c_{N-2}); multiplication by X.
QuotientElement consta_shift(const QuotientElement& a);

/// Raw-vector variants used in inner loops.
std::vector<fe> quotient_mul_raw(const Fq& F, std::uint32_t N, fe lambda_eff,
                                 const std::vector<fe>& a, const std::vector<fe>& b);
void consta_shift_raw(const Fq& F, fe lambda_eff, std::vector<fe>& v);

/// psi_{lambda,alpha}(X) = (X^n)^{alpha-1} + (X^n)^{alpha-2} lambda^{1/alpha}
/// + ... + (lambda^{1/alpha})^{alpha-1}; degree (alpha-1)n.
Poly psi(const Fq& F, fe lambda, std::uint32_t alpha, std::uint32_t n);

/// psi+ = phi_0(X / lambda^{1/(alpha n)}) * psi; degree (alpha-1)n + 1.
/// Satisfies X^{alpha n} - lambda = lambda^{1/alpha} * phihat_0(X/lambda^{1/(alpha n)}) * psi+.
Poly psi_plus(const Fq& F, fe lambda, std::uint32_t alpha, std::uint32_t n);

/// The algebra automorphism sigma_lambda: f(X) -> f(X / lambda^{1/(alpha n)}).
Poly sigma(const Fq& F, const Poly& f, fe lambda, std::uint32_t alpha, std::uint32_t n);

/// tau_{lambda,alpha}: I -> I_{lambda,alpha}, f -> sigma_lambda(f) * psi_{lambda,alpha}.
/// f must lie in I = R*phi_0 (validated via e_I * f = f); the result lives in
/// F[X]/(X^{alpha n} - lambda).
QuotientElement tau(const Factorization& factz, const QuotientElement& f, fe lambda,
                    std::uint32_t alpha);

/// Membership in I_{lambda,alpha} = R_{lambda,alpha} * psi+: the canonical
/// representative is divisible by psi+.
bool in_ideal_psi_plus(const Fq& F, const QuotientElement& a, fe lambda, std::uint32_t alpha,
                       std::uint32_t n);

} // namespace dcc
