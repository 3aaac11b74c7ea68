#include "dcc/chain_ring.hpp"

#include <string>

namespace dcc {

namespace {
constexpr std::uint64_t kMaxRingSize = 1ull << 31; // keeps products inside uint64
}

ChainRing ChainRing::zp_pow(std::uint32_t p, std::uint32_t s) {
    if (!is_prime_u64(p)) throw domain_error("zp_pow: p must be prime");
    if (s < 1) throw domain_error("zp_pow: s must be >= 1");
    ChainRing R;
    R.family_ = Family::ZpPow;
    R.ell_ = s;
    R.p_ = p;
    R.F_ = field_new(p, 1);
    R.q_ = p;
    R.size_ = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        R.size_ *= p;
        if (R.size_ > kMaxRingSize) throw domain_error("zp_pow: ring size exceeds ceiling");
    }
    return R;
}

ChainRing ChainRing::fq_u(std::shared_ptr<const Fq> F, std::uint32_t ell) {
    if (!F) throw domain_error("fq_u: null field");
    if (ell < 1) throw domain_error("fq_u: ell must be >= 1");
    ChainRing R;
    R.family_ = Family::FqU;
    R.ell_ = ell;
    R.q_ = F->q();
    R.F_ = std::move(F);
    R.size_ = 1;
    for (std::uint32_t i = 0; i < ell; ++i) {
        R.size_ *= R.q_;
        if (R.size_ > kMaxRingSize) throw domain_error("fq_u: ring size exceeds ceiling");
    }
    return R;
}

re ChainRing::add(re a, re b) const {
    if (family_ == Family::ZpPow) {
        re s = a + b;
        return s >= size_ ? s - size_ : s;
    }
    re out = 0, mul = 1;
    for (std::uint32_t i = 0; i < ell_; ++i) {
        fe da = static_cast<fe>(a % q_), db = static_cast<fe>(b % q_);
        a /= q_;
        b /= q_;
        out += static_cast<re>(F_->add(da, db)) * mul;
        mul *= q_;
    }
    return out;
}

re ChainRing::neg(re a) const {
    if (family_ == Family::ZpPow) return a == 0 ? 0 : size_ - a;
    re out = 0, mul = 1;
    for (std::uint32_t i = 0; i < ell_; ++i) {
        fe da = static_cast<fe>(a % q_);
        a /= q_;
        out += static_cast<re>(F_->neg(da)) * mul;
        mul *= q_;
    }
    return out;
}

re ChainRing::mul(re a, re b) const {
    if (family_ == Family::ZpPow) return a * b % size_;
    // truncated convolution: u^ell = 0
    fe da[32], db[32];
    for (std::uint32_t i = 0; i < ell_; ++i) {
        da[i] = static_cast<fe>(a % q_);
        a /= q_;
        db[i] = static_cast<fe>(b % q_);
        b /= q_;
    }
    re out = 0, mul = 1;
    for (std::uint32_t k = 0; k < ell_; ++k) {
        fe acc = 0;
        for (std::uint32_t i = 0; i <= k; ++i) acc = F_->add(acc, F_->mul(da[i], db[k - i]));
        out += static_cast<re>(acc) * mul;
        mul *= q_;
    }
    return out;
}

re ChainRing::pi() const {
    // pi is zero in the degenerate ell = 1 case (R = F)
    if (ell_ == 1) return 0;
    return family_ == Family::ZpPow ? p_ : q_;
}

re ChainRing::pi_pow(std::uint32_t k) const {
    if (k >= ell_) return 0;
    re out = 1;
    for (std::uint32_t i = 0; i < k; ++i) out = mul(out, pi());
    return out;
}

fe ChainRing::residue(re a) const {
    if (family_ == Family::ZpPow) return static_cast<fe>(a % p_);
    return static_cast<fe>(a % q_);
}

re ChainRing::lift(fe x) const {
    if (x >= q_) throw domain_error("lift: field code out of range");
    return x;
}

re ChainRing::unit_inv(re a) const {
    if (!is_unit(a)) throw domain_error("unit_inv: element is not a unit");
    if (family_ == Family::ZpPow) return mod_inverse_u64(a, size_);
    // a = a0 (1 + w) with w nilpotent: invert a0 in F, expand the series
    const re a0i = F_->inv(residue(a));
    const re w = sub(mul(a0i, a), 1);
    re acc = 1, pw = 1;
    for (std::uint32_t i = 1; i < ell_; ++i) {
        pw = mul(pw, w);
        acc = (i % 2) ? sub(acc, pw) : add(acc, pw);
    }
    return mul(a0i, acc);
}

re ChainRing::divide_by_pi(re a) const {
    if (residue(a) != 0) throw domain_error("divide_by_pi: element not in R*pi");
    if (family_ == Family::ZpPow) return a / p_;
    return a / q_;
}

re ChainRing::checked(std::uint64_t a) const {
    if (a >= size_) throw domain_error("ring element code out of range");
    return a;
}

re epimorphism(const ChainRing& R, re a, const ChainRing& target) {
    if (!R.maps_onto(target))
        throw domain_error("epimorphism: target is not a canonical quotient of the source");
    R.checked(a);
    return a % target.size();
}

re eta_embed(const ChainRing& R, fe x) {
    R.residue_field()->checked(x);
    return R.mul(R.lift(x), R.pi_pow(R.ell() - 1));
}

} // namespace dcc
