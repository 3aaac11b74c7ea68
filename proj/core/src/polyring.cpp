#include "dcc/polyring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace dcc {

int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_add(const Fq& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        fe x = i < a.size() ? a[i] : 0;
        fe y = i < b.size() ? b[i] : 0;
        c[i] = F.add(x, y);
    }
    poly_trim(c);
    return c;
}

Poly poly_sub(const Fq& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        fe x = i < a.size() ? a[i] : 0;
        fe y = i < b.size() ? b[i] : 0;
        c[i] = F.sub(x, y);
    }
    poly_trim(c);
    return c;
}

Poly poly_mul(const Fq& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
        }
    }
    poly_trim(c);
    return c;
}

Poly poly_scale(const Fq& F, const Poly& a, fe s) {
    if (s == 0) return {};
    Poly c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.mul(a[i], s);
    return c;
}

std::pair<Poly, Poly> poly_divmod(const Fq& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw domain_error("polynomial division by zero");
    Poly rem = a;
    poly_trim(rem);
    const std::size_t db = b.size() - 1;
    if (rem.size() <= db) return {Poly{}, rem};
    Poly quot(rem.size() - db, 0);
    const fe lead_inv = F.inv(b.back());
    for (std::size_t k = rem.size(); k-- > db;) {
        const fe t = F.mul(rem[k], lead_inv);
        if (t == 0) continue;
        quot[k - db] = t;
        for (std::size_t j = 0; j <= db; ++j)
            rem[k - db + j] = F.sub(rem[k - db + j], F.mul(t, b[j]));
    }
    rem.resize(db);
    poly_trim(rem);
    poly_trim(quot);
    return {quot, rem};
}

Poly poly_mod(const Fq& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

Poly poly_div_exact(const Fq& F, const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(F, a, b);
    if (!r.empty()) throw domain_error("poly_div_exact: division is not exact");
    return q;
}

static Poly poly_monic(const Fq& F, Poly f) {
    poly_trim(f);
    if (f.empty() || f.back() == 1) return f;
    return poly_scale(F, f, F.inv(f.back()));
}

Poly poly_gcd(const Fq& F, Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

std::tuple<Poly, Poly, Poly> poly_ext_gcd(const Fq& F, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    poly_trim(r0);
    poly_trim(r1);
    Poly u0{1}, u1{}, v0{}, v1{1};
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(F, r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly u2 = poly_sub(F, u0, poly_mul(F, q, u1));
        u0 = std::move(u1);
        u1 = std::move(u2);
        Poly v2 = poly_sub(F, v0, poly_mul(F, q, v1));
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (!r0.empty() && r0.back() != 1) {
        fe s = F.inv(r0.back());
        r0 = poly_scale(F, r0, s);
        u0 = poly_scale(F, u0, s);
        v0 = poly_scale(F, v0, s);
    }
    return {r0, u0, v0};
}

fe poly_eval(const Fq& F, const Poly& f, fe x) {
    fe acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
    return acc;
}

bool poly_divides(const Fq& F, const Poly& d, const Poly& f) {
    if (f.empty()) return true;
    if (d.empty()) return false;
    return poly_mod(F, f, d).empty();
}

std::vector<std::vector<std::uint32_t>> cyclotomic_cosets(std::uint64_t q, std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> cosets;
    std::vector<bool> seen(n, false);
    for (std::uint32_t j = 0; j < n; ++j) {
        if (seen[j]) continue;
        std::vector<std::uint32_t> orbit;
        std::uint64_t cur = j;
        do {
            seen[cur] = true;
            orbit.push_back(static_cast<std::uint32_t>(cur));
            cur = cur * (q % n) % n;
        } while (cur != j);
        cosets.push_back(std::move(orbit));
    }
    return cosets;
}

std::uint32_t mu_from_cosets(std::uint64_t q, std::uint32_t n) {
    if (n < 2) throw domain_error("mu(n) needs n >= 2");
    auto cosets = cyclotomic_cosets(q, n);
    std::uint32_t mu = n;
    for (const auto& s : cosets)
        if (s[0] != 0) mu = std::min<std::uint32_t>(mu, static_cast<std::uint32_t>(s.size()));
    return mu;
}

namespace {

// Refine g against the Frobenius-fixed vector vS: peel off gcd(g, vS - c) for
// each constant value c actually taken, leaving blocks on which vS is constant.
std::vector<Poly> refine_by_indicator(const Fq& F, Poly g, const Poly& vS) {
    std::vector<Poly> blocks;
    Poly h = poly_mod(F, vS, g);
    for (fe c = 0; poly_deg(h) >= 1; ++c) {
        if (c >= F.q()) throw domain_error("factorization split failed"); // unreachable
        Poly shifted = h;
        if (shifted.empty()) shifted.push_back(0);
        shifted[0] = F.sub(shifted[0], c);
        poly_trim(shifted);
        Poly d = poly_gcd(F, g, shifted);
        if (poly_deg(d) <= 0) continue;
        blocks.push_back(d);
        g = poly_div_exact(F, g, d);
        h = poly_mod(F, h, g);
    }
    blocks.push_back(g);
    return blocks;
}

} // namespace

Factorization factor_xn_minus_1(const Fq& F, std::uint32_t n) {
    if (n < 2) throw domain_error("factor_xn_minus_1: n must be >= 2");
    if (F.q() % n == 0 || gcd_u64(n, F.q()) != 1)
        throw domain_error("factor_xn_minus_1: gcd(n, q) != 1, modulus not separable");

    const auto cosets = cyclotomic_cosets(F.q(), n);

    Poly xn1(n + 1, 0);
    xn1[0] = F.neg(1);
    xn1[n] = 1;

    std::vector<Poly> work{xn1};
    for (const auto& S : cosets) {
        if (work.size() == cosets.size()) break;
        if (S.size() < 2 && S[0] == 0) continue; // indicator of {0} is the constant 1
        Poly vS(*std::max_element(S.begin(), S.end()) + 1, 0);
        for (auto j : S) vS[j] = 1;
        std::vector<Poly> next;
        for (auto& g : work) {
            if (poly_deg(g) == 1) {
                next.push_back(std::move(g));
                continue;
            }
            auto blocks = refine_by_indicator(F, std::move(g), vS);
            for (auto& b : blocks) next.push_back(std::move(b));
        }
        work = std::move(next);
    }
    if (work.size() != cosets.size())
        throw domain_error("factor_xn_minus_1: split did not finish"); // unreachable for separable moduli

    // phi_0 = X - 1 first, the rest sorted by (degree, coefficients)
    Poly phi0{F.neg(1), 1};
    Factorization out;
    out.n = n;
    auto it = std::find(work.begin(), work.end(), phi0);
    if (it == work.end()) throw domain_error("factor_xn_minus_1: X-1 factor missing"); // unreachable
    work.erase(it);
    std::sort(work.begin(), work.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    out.factors.push_back(phi0);
    for (auto& f : work) out.factors.push_back(std::move(f));

    out.degrees.reserve(out.factors.size());
    for (const auto& f : out.factors) out.degrees.push_back(static_cast<std::uint32_t>(poly_deg(f)));
    out.mu = n;
    for (std::size_t i = 1; i < out.degrees.size(); ++i) out.mu = std::min(out.mu, out.degrees[i]);

    {
        // degrees must be the coset sizes
        std::vector<std::uint32_t> a = out.degrees, b;
        for (const auto& s : cosets) b.push_back(static_cast<std::uint32_t>(s.size()));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw domain_error("factor_xn_minus_1: degree/coset mismatch"); // unreachable
    }

    // CRT idempotents: e_i = u_i * M_i with u_i * M_i = 1 mod phi_i
    Poly sum_e;
    for (const auto& phi : out.factors) {
        Poly Mi = poly_div_exact(F, xn1, phi);
        auto [g, u, v] = poly_ext_gcd(F, poly_mod(F, Mi, phi), phi);
        (void)v;
        if (poly_deg(g) != 0) throw domain_error("factor_xn_minus_1: factors not coprime");
        Poly ei = poly_mul(F, u, Mi); // degree < n by construction
        if (poly_deg(ei) >= static_cast<int>(n)) { // guard, should not trigger
            Poly rem = ei;
            for (std::size_t k = rem.size(); k-- > n;) {
                if (rem[k] == 0) continue;
                rem[k - n] = F.add(rem[k - n], rem[k]);
                rem[k] = 0;
            }
            rem.resize(n);
            poly_trim(rem);
            ei = rem;
        }
        out.idempotents.push_back(ei);
        sum_e = poly_add(F, sum_e, ei);
    }
    if (!(sum_e == Poly{1})) throw domain_error("factor_xn_minus_1: idempotents do not sum to 1");
    out.e_I = poly_sub(F, Poly{1}, out.idempotents[0]);

    // product identity
    Poly prod{1};
    for (const auto& f : out.factors) prod = poly_mul(F, prod, f);
    if (prod != xn1) throw domain_error("factor_xn_minus_1: product check failed");

    return out;
}

std::shared_ptr<const Factorization> factorization_cached(const std::shared_ptr<const Fq>& F,
                                                          std::uint32_t n) {
    using Key = std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>, std::uint32_t>;
    static std::mutex mu_;
    static std::map<Key, std::shared_ptr<const Factorization>> cache;
    Key key{F->p(), F->r(), F->modulus(), n};
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto fz = std::make_shared<const Factorization>(factor_xn_minus_1(*F, n));
    cache.emplace(std::move(key), fz);
    return fz;
}

QuotientElement quotient_make(const QuotientCtx& ctx, const Poly& f) {
    QuotientElement e;
    e.ctx = ctx;
    e.c.assign(ctx.n_total, 0);
    Poly rem = f;
    for (std::size_t k = rem.size(); k-- > ctx.n_total;) {
        if (rem[k] == 0) continue;
        rem[k - ctx.n_total] = ctx.F->add(rem[k - ctx.n_total], ctx.F->mul(ctx.lambda_eff, rem[k]));
        rem[k] = 0;
    }
    for (std::size_t i = 0; i < rem.size() && i < ctx.n_total; ++i) e.c[i] = rem[i];
    return e;
}

QuotientElement quotient_zero(const QuotientCtx& ctx) {
    QuotientElement e;
    e.ctx = ctx;
    e.c.assign(ctx.n_total, 0);
    return e;
}

std::vector<fe> quotient_mul_raw(const Fq& F, std::uint32_t N, fe lambda_eff,
                                 const std::vector<fe>& a, const std::vector<fe>& b) {
    std::vector<fe> full(2 * N - 1, 0);
    for (std::uint32_t i = 0; i < N; ++i) {
        if (a[i] == 0) continue;
        for (std::uint32_t j = 0; j < N; ++j) {
            if (b[j] == 0) continue;
            full[i + j] = F.add(full[i + j], F.mul(a[i], b[j]));
        }
    }
    std::vector<fe> out(full.begin(), full.begin() + N);
    for (std::uint32_t k = N; k < 2 * N - 1; ++k)
        if (full[k] != 0) out[k - N] = F.add(out[k - N], F.mul(lambda_eff, full[k]));
    return out;
}

QuotientElement quotient_arith(const QuotientElement& a, const QuotientElement& b, QuotOp op) {
    if (!a.ctx.same(b.ctx)) throw domain_error("quotient_arith: mismatched contexts");
    const Fq& F = *a.ctx.F;
    QuotientElement out;
    out.ctx = a.ctx;
    if (op == QuotOp::add) {
        out.c.resize(a.c.size());
        for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = F.add(a.c[i], b.c[i]);
    } else {
        out.c = quotient_mul_raw(F, a.ctx.n_total, a.ctx.lambda_eff, a.c, b.c);
    }
    return out;
}

void consta_shift_raw(const Fq& F, fe lambda_eff, std::vector<fe>& v) {
    if (v.empty()) return;
    fe last = v.back();
    for (std::size_t i = v.size(); i-- > 1;) v[i] = v[i - 1];
    v[0] = F.mul(lambda_eff, last);
}

QuotientElement consta_shift(const QuotientElement& a) {
    QuotientElement out = a;
    consta_shift_raw(*a.ctx.F, a.ctx.lambda_eff, out.c);
    return out;
}

Poly psi(const Fq& F, fe lambda, std::uint32_t alpha, std::uint32_t n) {
    if (alpha == 0 || n == 0) throw domain_error("psi: alpha and n must be positive");
    const fe root = F.cyclic_root(lambda, alpha); // checks gcd(alpha, t) = 1
    Poly out((alpha - 1) * n + 1, 0);
    fe pw = 1;
    for (std::uint32_t j = 0; j < alpha; ++j) {
        out[static_cast<std::size_t>(alpha - 1 - j) * n] = pw;
        pw = F.mul(pw, root);
    }
    return out;
}

Poly psi_plus(const Fq& F, fe lambda, std::uint32_t alpha, std::uint32_t n) {
    const fe c = F.cyclic_root(lambda, static_cast<std::uint64_t>(alpha) * n); // checks gcd(alpha n, t) = 1
    // phi_0(X/c) = c^{-1} X - 1
    Poly lin{F.neg(1), F.inv(c)};
    return poly_mul(F, lin, psi(F, lambda, alpha, n));
}

Poly sigma(const Fq& F, const Poly& f, fe lambda, std::uint32_t alpha, std::uint32_t n) {
    const fe c = F.cyclic_root(lambda, static_cast<std::uint64_t>(alpha) * n);
    const fe ci = F.inv(c);
    Poly out(f.size());
    fe pw = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        out[k] = F.mul(f[k], pw);
        pw = F.mul(pw, ci);
    }
    poly_trim(out);
    return out;
}

QuotientElement tau(const Factorization& factz, const QuotientElement& f, fe lambda,
                    std::uint32_t alpha) {
    const Fq& F = *f.ctx.F;
    const std::uint32_t n = factz.n;
    if (f.ctx.n_total != n || f.ctx.lambda_eff != 1)
        throw domain_error("tau: input must live in F[X]/(X^n - 1)");
    // domain check: e_I * f = f
    QuotientCtx rctx = f.ctx;
    QuotientElement eI = quotient_make(rctx, factz.e_I);
    QuotientElement proj = quotient_arith(eI, f, QuotOp::mul);
    if (proj.c != f.c) throw domain_error("tau: element is not in the ideal I");

    Poly fp(f.c);
    poly_trim(fp);
    Poly image = poly_mul(F, sigma(F, fp, lambda, alpha, n), psi(F, lambda, alpha, n));
    QuotientCtx tctx{f.ctx.F, alpha * n, lambda};
    return quotient_make(tctx, image); // degree < alpha*n, no folding occurs
}

bool in_ideal_psi_plus(const Fq& F, const QuotientElement& a, fe lambda, std::uint32_t alpha,
                       std::uint32_t n) {
    Poly fp(a.c);
    poly_trim(fp);
    return poly_divides(F, psi_plus(F, lambda, alpha, n), fp);
}

} // namespace dcc
