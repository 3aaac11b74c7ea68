#pragma once

#include <cstdint>
#include <memory>

#include "dcc/gf.hpp"

namespace dcc {

/// Packed chain-ring element code. ZpPow: the integer in [0, p^s).
/// FqU: sum digit_i * q^i where digit_i is the packed field code of the
/// coefficient of u^i.
using re = std::uint64_t;

// One of the two concrete finite chain-ring families:
//   ZpPow : Z_{p^s},            pi = p, ell = s, residue field GF(p)
//   FqU   : F_q[u]/<u^ell>,     pi = u,          residue field F_q
// Contexts are immutable and cheap to copy (field handles are shared).
class ChainRing {
public:
    enum class Family { ZpPow, FqU };

    static ChainRing zp_pow(std::uint32_t p, std::uint32_t s);
    static ChainRing fq_u(std::shared_ptr<const Fq> F, std::uint32_t ell);

    Family family() const { return family_; }
    std::uint32_t ell() const { return ell_; }
    const std::shared_ptr<const Fq>& residue_field() const { return F_; }
    std::uint64_t size() const { return size_; } // |R| = q^ell
    std::uint32_t zp_p() const { return p_; }

    bool same(const ChainRing& o) const {
        return family_ == o.family_ && ell_ == o.ell_ && F_->same_field(*o.F_);
    }
    /// Same family and field, with o.ell() <= ell(): a canonical epimorphism
    /// onto o exists.
    bool maps_onto(const ChainRing& o) const {
        return family_ == o.family_ && F_->same_field(*o.F_) && o.ell_ <= ell_;
    }

    re zero() const { return 0; }
    re one() const { return 1; }
    re add(re a, re b) const;
    re neg(re a) const;
    re sub(re a, re b) const { return add(a, neg(b)); }
    re mul(re a, re b) const;

    re pi() const;                      // p resp. u
    re pi_pow(std::uint32_t k) const;   // pi^k (zero for k >= ell)

    fe residue(re a) const;             // image in F = R/R pi
    re lift(fe x) const;                // canonical section of residue
    bool is_unit(re a) const { return residue(a) != 0; }
    re unit_inv(re a) const;            // inverse of a unit

    /// a must lie in R pi; returns the canonical b with b*pi = a and b in the
    /// image of the canonical section pattern (digit shift / integer division).
    re divide_by_pi(re a) const;

    re checked(std::uint64_t a) const;

private:
    ChainRing() = default;

    Family family_ = Family::ZpPow;
    std::uint32_t ell_ = 1;
    std::uint64_t size_ = 0;
    std::shared_ptr<const Fq> F_;
    std::uint32_t p_ = 0;      // ZpPow only
    std::uint64_t q_ = 0;      // |F|
};

/// Canonical surjection rho: R -> target (reduce mod p^{s'} / truncate the
/// u-expansion). Requires R.maps_onto(target).
re epimorphism(const ChainRing& R, re a, const ChainRing& target);

/// eta: F = R/R pi -> R pi^{ell-1}, residue(a) -> a * pi^{ell-1}.
/// Injective, additive, weight-preserving coefficientwise.
re eta_embed(const ChainRing& R, fe x);

} // namespace dcc
