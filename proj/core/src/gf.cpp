#include "dcc/gf.hpp"

#include <algorithm>
#include <string>

namespace dcc {

namespace {

constexpr std::uint64_t kMaxQ = 1u << 20;      // desk-scale ceiling
constexpr std::uint64_t kAddTabMaxQ = 256;     // full add table below this

// --- dense polynomial helpers over GF(p), used only for modulus search ---

using PolyP = std::vector<std::uint32_t>; // little-endian

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP mulmod_p(const PolyP& a, const PolyP& b, const PolyP& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    // reduce mod monic m
    const std::size_t dm = m.size() - 1;
    for (std::size_t k = c.size(); k-- > dm;) {
        if (c[k] == 0) continue;
        std::uint32_t t = c[k];
        c[k] = 0;
        for (std::size_t j = 0; j < dm; ++j)
            c[k - dm + j] = (c[k - dm + j] + static_cast<std::uint64_t>(t) * (p - m[j] % p)) % p;
    }
    c.resize(dm);
    PolyP out(c);
    trim(out);
    return out;
}

PolyP powmod_p(PolyP base, std::uint64_t e, const PolyP& m, std::uint32_t p) {
    PolyP acc{1};
    while (e) {
        if (e & 1) acc = mulmod_p(acc, base, m, p);
        base = mulmod_p(base, base, m, p);
        e >>= 1;
    }
    return acc;
}

PolyP gcd_p(PolyP a, PolyP b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b, b made monic on the fly
        std::uint32_t lead = b.back();
        if (lead != 1) {
            std::uint64_t il = 1, base = lead, e = p - 2; // Fermat inverse
            while (e) {
                if (e & 1) il = il * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (auto& x : b) x = static_cast<std::uint64_t>(x) * il % p;
        }
        while (a.size() >= b.size() && !a.empty()) {
            std::uint32_t t = a.back();
            if (t != 0) {
                std::size_t off = a.size() - b.size();
                for (std::size_t j = 0; j < b.size(); ++j)
                    a[off + j] = (a[off + j] + static_cast<std::uint64_t>(t) * (p - b[j] % p)) % p;
            }
            a.pop_back();
            trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin test for a monic f of degree d over GF(p).
bool is_irreducible_gfp(const PolyP& f, std::uint32_t p) {
    const std::size_t d = f.size() - 1;
    if (d == 1) return true;
    PolyP x{0, 1};
    // X^(p^d) == X mod f
    PolyP t = x;
    for (std::size_t i = 0; i < d; ++i) t = powmod_p(t, p, f, p);
    PolyP xr = x;
    trim(xr);
    if (t != xr) return false;
    for (std::uint64_t l : prime_factors_u64(d)) {
        PolyP s = x;
        for (std::size_t i = 0; i < d / l; ++i) s = powmod_p(s, p, f, p);
        // gcd(s - X, f) must be constant
        PolyP diff = s;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        PolyP g = gcd_p(diff, f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t mod_inverse_u64(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::int64_t tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw domain_error("mod_inverse: arguments not coprime");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

Fq::Fq(std::uint32_t p, std::uint32_t r) : p_(p), r_(r) {
    if (!is_prime_u64(p)) throw domain_error("field_new: p = " + std::to_string(p) + " is not prime");
    if (r < 1) throw domain_error("field_new: extension degree must be >= 1");
    q_ = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q_ *= p;
        if (q_ > kMaxQ) throw domain_error("field_new: q exceeds the 2^20 ceiling");
    }
    // lexicographically smallest (low-degree coefficients first) monic
    // irreducible of degree r over GF(p)
    mod_.assign(r + 1, 0);
    mod_[r] = 1;
    if (r == 1) {
        init_tables();
        return;
    }
    std::vector<std::uint32_t> digits(r, 0);
    for (std::uint64_t idx = 0;; ++idx) {
        if (idx >= q_) throw domain_error("field_new: no irreducible modulus found"); // unreachable
        std::uint64_t v = idx;
        for (std::uint32_t i = r; i-- > 0;) { // c0 is the most significant digit of idx
            digits[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        PolyP cand(r + 1, 0);
        cand[r] = 1;
        for (std::uint32_t i = 0; i < r; ++i) cand[i] = digits[i];
        if (cand[0] != 0 && is_irreducible_gfp(cand, p)) {
            for (std::uint32_t i = 0; i < r; ++i) mod_[i] = digits[i];
            break;
        }
    }
    init_tables();
}

Fq::Fq(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus) : p_(p), r_(r) {
    if (!is_prime_u64(p)) throw domain_error("Fq: p is not prime");
    if (r < 1) throw domain_error("Fq: extension degree must be >= 1");
    q_ = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q_ *= p;
        if (q_ > kMaxQ) throw domain_error("Fq: q exceeds the 2^20 ceiling");
    }
    if (modulus.size() != r + 1 || modulus[r] != 1)
        throw domain_error("Fq: modulus must be monic of degree r");
    for (auto c : modulus)
        if (c >= p) throw domain_error("Fq: modulus coefficient out of range");
    if (r > 1 && !is_irreducible_gfp(modulus, p)) throw domain_error("Fq: modulus is reducible");
    mod_ = std::move(modulus);
    init_tables();
}

Fq Fq::from_order(std::uint64_t q) {
    if (q < 2 || q > kMaxQ) throw domain_error("from_order: q out of range");
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            std::uint32_t r = 0;
            std::uint64_t v = q;
            while (v % p == 0) {
                v /= p;
                ++r;
            }
            if (v != 1) throw domain_error("from_order: q is not a prime power");
            return Fq(static_cast<std::uint32_t>(p), r);
        }
    }
    return Fq(static_cast<std::uint32_t>(q), 1); // q prime
}

fe Fq::add_digits(fe a, fe b) const {
    fe out = 0, mul = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        fe da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        fe s = da + db;
        if (s >= p_) s -= p_;
        out += s * mul;
        mul *= p_;
    }
    return out;
}

fe Fq::neg_digits(fe a) const {
    fe out = 0, mul = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        fe da = a % p_;
        a /= p_;
        out += (da == 0 ? 0 : p_ - da) * mul;
        mul *= p_;
    }
    return out;
}

fe Fq::raw_mul(fe a, fe b) const {
    // digit convolution mod (p, modulus)
    std::vector<std::uint32_t> da(r_), db(r_), c(2 * r_ - 1, 0);
    for (std::uint32_t i = 0; i < r_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    for (std::uint32_t i = 0; i < r_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < r_; ++j)
            c[i + j] = (c[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_;
    }
    for (std::uint32_t k = 2 * r_ - 1; k-- > r_;) {
        if (c[k] == 0) continue;
        std::uint32_t t = c[k];
        c[k] = 0;
        for (std::uint32_t j = 0; j < r_; ++j)
            c[k - r_ + j] = (c[k - r_ + j] + static_cast<std::uint64_t>(t) * (p_ - mod_[j]) ) % p_;
    }
    fe out = 0, mul = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        out += c[i] * mul;
        mul *= p_;
    }
    return out;
}

void Fq::init_tables() {
    q1_primes_ = prime_factors_u64(q_ - 1);

    auto raw_pow = [&](fe a, std::uint64_t e) {
        fe acc = 1;
        while (e) {
            if (e & 1) acc = r_ == 1 ? static_cast<fe>(static_cast<std::uint64_t>(acc) * a % p_) : raw_mul(acc, a);
            a = r_ == 1 ? static_cast<fe>(static_cast<std::uint64_t>(a) * a % p_) : raw_mul(a, a);
            e >>= 1;
        }
        return acc;
    };

    gen_ = 0;
    for (fe g = 1; g < q_; ++g) {
        bool ok = true;
        for (std::uint64_t l : q1_primes_)
            if (raw_pow(g, (q_ - 1) / l) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen_ = g;
            break;
        }
    }
    if (gen_ == 0 && q_ > 2) throw domain_error("Fq: no generator found"); // unreachable
    if (q_ == 2) gen_ = 1;

    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    fe cur = 1;
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
        exp_[k] = cur;
        log_[cur] = static_cast<fe>(k);
        cur = r_ == 1 ? static_cast<fe>(static_cast<std::uint64_t>(cur) * gen_ % p_) : raw_mul(cur, gen_);
    }
    if (cur != 1) throw domain_error("Fq: generator order mismatch"); // unreachable

    if (r_ > 1 && q_ <= kAddTabMaxQ) {
        addtab_.resize(q_ * q_);
        for (fe a = 0; a < q_; ++a)
            for (fe b = 0; b < q_; ++b) addtab_[a * q_ + b] = add_digits(a, b);
    }
}

fe Fq::inv(fe a) const {
    if (a == 0) throw domain_error("field division by zero");
    std::uint64_t l = log_[a];
    return exp_[(q_ - 1 - l) % (q_ - 1)];
}

fe Fq::pow(fe a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::uint64_t l = log_[a] % (q_ - 1);
    return exp_[l * (e % (q_ - 1)) % (q_ - 1)];
}

std::uint64_t Fq::mult_order(fe x) const {
    if (x == 0) throw domain_error("mult_order of zero");
    // descend from q-1 through maximal divisors
    std::uint64_t t = q_ - 1;
    for (std::uint64_t l : q1_primes_)
        while (t % l == 0 && pow(x, t / l) == 1) t /= l;
    return t;
}

fe Fq::cyclic_root(fe lambda, std::uint64_t m) const {
    if (lambda == 0) throw domain_error("cyclic_root: lambda must be nonzero");
    if (m == 0) throw domain_error("cyclic_root: m must be positive");
    std::uint64_t t = mult_order(lambda);
    if (t == 1) return 1;
    std::uint64_t mr = m % t; // gcd(m, t) == gcd(m mod t, t), and gcd(0, t) == t
    if (gcd_u64(mr, t) != 1) throw domain_error("cyclic_root: gcd(m, t) != 1");
    std::uint64_t u = mod_inverse_u64(mr, t);
    return pow(lambda, u);
}

fe Fq::encode(const FieldElement& x) const {
    if (x.c.size() != r_) throw domain_error("field element has wrong coefficient count for this context");
    fe out = 0, mul = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        if (x.c[i] < 0 || static_cast<std::uint32_t>(x.c[i]) >= p_)
            throw domain_error("field element coefficient out of range");
        out += static_cast<fe>(x.c[i]) * mul;
        mul *= p_;
    }
    return out;
}

FieldElement Fq::decode(fe a) const {
    if (a >= q_) throw domain_error("packed field code out of range");
    FieldElement x;
    x.c.resize(r_);
    for (std::uint32_t i = 0; i < r_; ++i) {
        x.c[i] = static_cast<std::int32_t>(a % p_);
        a /= p_;
    }
    return x;
}

fe Fq::checked(std::uint64_t a) const {
    if (a >= q_) throw domain_error("packed field code out of range");
    return static_cast<fe>(a);
}

std::shared_ptr<const Fq> field_new(std::uint32_t p, std::uint32_t r) {
    return std::make_shared<const Fq>(p, r);
}

FieldElement field_arith(const Fq& F, const FieldElement& a, const FieldElement& b, FieldOp op) {
    fe x = F.encode(a), y = F.encode(b);
    fe z = 0;
    switch (op) {
        case FieldOp::add: z = F.add(x, y); break;
        case FieldOp::sub: z = F.sub(x, y); break;
        case FieldOp::mul: z = F.mul(x, y); break;
        case FieldOp::div: z = F.div(x, y); break;
    }
    return F.decode(z);
}

} // namespace dcc
