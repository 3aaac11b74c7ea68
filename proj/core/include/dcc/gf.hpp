#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dcc/errors.hpp"

namespace dcc {

/// Packed element code of GF(p^r): sum c_i * p^i with digits c_i in [0,p).
using fe = std::uint32_t;

/// Boundary representation of a field element: little-endian coefficient
/// vector of length r, each entry reduced mod p. This is the serialized form;
/// internally everything runs on packed codes.
struct FieldElement {
    std::vector<std::int32_t> c;

    bool operator==(const FieldElement&) const = default;
};

enum class FieldOp { add, sub, mul, div };

// GF(p^r) with a deterministic modulus: the lexicographically smallest monic
// irreducible of degree r over GF(p), coefficients compared low-degree-first.
// Immutable after construction; all operations are const and thread-safe.
class Fq {
public:
    Fq(std::uint32_t p, std::uint32_t r);
    Fq(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus);

    /// Decomposes a prime power q = p^r. Errors on non-prime-powers.
    static Fq from_order(std::uint64_t q);

    std::uint32_t p() const { return p_; }
    std::uint32_t r() const { return r_; }
    std::uint64_t q() const { return q_; }
    /// Monic modulus, little-endian, length r+1 (X for prime fields).
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    bool same_field(const Fq& other) const {
        return p_ == other.p_ && r_ == other.r_ && mod_ == other.mod_;
    }

    fe zero() const { return 0; }
    fe one() const { return 1; }

    fe add(fe a, fe b) const {
        if (r_ == 1) {
            fe s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (!addtab_.empty()) return addtab_[a * q_ + b];
        return add_digits(a, b);
    }

    fe neg(fe a) const {
        if (r_ == 1) return a == 0 ? 0 : p_ - a;
        if (p_ == 2) return a;
        return neg_digits(a);
    }

    fe sub(fe a, fe b) const { return add(a, neg(b)); }

    fe mul(fe a, fe b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }

    fe inv(fe a) const;
    fe div(fe a, fe b) const { return mul(a, inv(b)); }
    fe pow(fe a, std::uint64_t e) const;

    /// Least t >= 1 with x^t = 1; divides q-1. Errors on x = 0.
    std::uint64_t mult_order(fe x) const;

    /// lambda^{1/m} inside <lambda>: the unique y = lambda^{m^-1 mod t} with
    /// y^m = lambda. Requires gcd(m, t) = 1 where t = mult_order(lambda).
    fe cyclic_root(fe lambda, std::uint64_t m) const;

    /// Deterministic generator of the multiplicative group (smallest packed
    /// code with order q-1).
    fe generator() const { return gen_; }

    /// Prime factorization of q-1 (ascending, distinct primes).
    const std::vector<std::uint64_t>& q1_primes() const { return q1_primes_; }

    fe encode(const FieldElement& x) const;
    FieldElement decode(fe a) const;
    /// Validates a packed code (range check).
    fe checked(std::uint64_t a) const;

private:
    void init_tables();
    fe add_digits(fe a, fe b) const;
    fe neg_digits(fe a) const;
    fe raw_mul(fe a, fe b) const; // table-free, used during construction

    std::uint32_t p_ = 0, r_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> mod_;
    std::vector<fe> exp_;      // exp_[k] = g^k, k in [0, q-1)
    std::vector<fe> log_;      // log_[exp_[k]] = k; log_[0] unused
    std::vector<fe> addtab_;   // q*q table for small q
    fe gen_ = 0;
    std::vector<std::uint64_t> q1_primes_;
};

/// The spec-level constructor: context for GF(p^r) with the deterministic
/// modulus. Shared so downstream contexts can hold cheap handles.
std::shared_ptr<const Fq> field_new(std::uint32_t p, std::uint32_t r);

/// Checked arithmetic on boundary elements (validates shapes and contexts).
FieldElement field_arith(const Fq& F, const FieldElement& a, const FieldElement& b, FieldOp op);

bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
/// Inverse of a mod m (gcd(a,m)=1, m >= 1; returns 0 when m == 1).
std::uint64_t mod_inverse_u64(std::uint64_t a, std::uint64_t m);

} // namespace dcc
