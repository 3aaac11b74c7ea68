#include "dcc/dcodes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

namespace dcc {

TwistParams make_twist_params(std::shared_ptr<const Fq> F, fe lambda, std::uint32_t alpha,
                              std::uint32_t alpha_prime, std::uint32_t n) {
    if (!F) throw domain_error("make_twist_params: null field");
    F->checked(lambda);
    if (lambda == 0) throw domain_error("make_twist_params: lambda must be a unit");
    if (alpha < 1 || alpha_prime < 1) throw domain_error("make_twist_params: alpha, alpha' >= 1");
    if (n < 2) throw domain_error("make_twist_params: n >= 2");
    TwistParams p;
    p.F = F;
    p.lambda = lambda;
    p.t = F->mult_order(lambda);
    p.alpha = alpha;
    p.alpha_prime = alpha_prime;
    p.alpha_min = std::min(alpha, alpha_prime);
    p.n = n;
    if (gcd_u64(n, F->q()) != 1 || gcd_u64(n, p.t) != 1)
        throw domain_error("make_twist_params: gcd(n, q t) != 1");
    if (p.t > 1 && gcd_u64(alpha % p.t, p.t) != 1)
        throw domain_error("make_twist_params: gcd(alpha, t) != 1");
    if (alpha % p.t != alpha_prime % p.t)
        throw domain_error("make_twist_params: alpha' != alpha (mod t)");
    p.factz = factorization_cached(F, n);
    return p;
}

FMatrix ideal_basis(const TwistParams& p) {
    const Fq& F = *p.F;
    const std::uint32_t n = p.n;
    std::vector<fe> cur(n, 0);
    for (std::size_t i = 0; i < p.factz->e_I.size(); ++i) cur[i] = p.factz->e_I[i];
    EchelonAccum acc(F);
    FMatrix out;
    for (std::uint32_t j = 0; j < n && out.size() < n - 1; ++j) {
        if (acc.add(cur)) out.push_back(cur);
        consta_shift_raw(F, 1, cur);
    }
    if (out.size() != n - 1) throw domain_error("ideal_basis: dim I != n-1"); // unreachable
    return out;
}

std::pair<QuotientElement, QuotientElement> sample_pair(const TwistParams& p, std::uint64_t seed,
                                                        std::uint64_t stream) {
    const Fq& F = *p.F;
    CounterRng rng(seed, stream);
    std::vector<fe> eI(p.n, 0);
    for (std::size_t i = 0; i < p.factz->e_I.size(); ++i) eI[i] = p.factz->e_I[i];
    auto draw = [&](std::uint32_t alpha) {
        std::vector<fe> u(p.n);
        for (auto& x : u) x = static_cast<fe>(rng.below(F.q()));
        QuotientElement b{p.ring_ctx(), quotient_mul_raw(F, p.n, 1, eI, u)};
        return tau(*p.factz, b, p.lambda, alpha);
    };
    QuotientElement ap = draw(p.alpha_prime);
    QuotientElement a = draw(p.alpha);
    return {std::move(ap), std::move(a)};
}

DoubleTwistedCode build_code(const TwistParams& p, const QuotientElement& a_prime,
                             const QuotientElement& a) {
    const Fq& F = *p.F;
    if (!a_prime.ctx.same(p.ctx_alpha_prime()) || !a.ctx.same(p.ctx_alpha()))
        throw domain_error("build_code: generator contexts do not match the parameters");
    if (!in_ideal_psi_plus(F, a_prime, p.lambda, p.alpha_prime, p.n))
        throw domain_error("build_code: a' is not in I_{lambda,alpha'}");
    if (!in_ideal_psi_plus(F, a, p.lambda, p.alpha, p.n))
        throw domain_error("build_code: a is not in I_{lambda,alpha}");

    DoubleTwistedCode code;
    code.params = p;
    code.a_prime = a_prime;
    code.a = a;

    const std::uint32_t np = p.alpha_prime * p.n;
    const std::uint32_t na = p.alpha * p.n;
    EchelonAccum acc(F);
    for (const auto& fb : ideal_basis(p)) {
        Poly fp(fb);
        poly_trim(fp);
        Poly sg = sigma(F, fp, p.lambda, p.alpha, p.n); // 1/alpha' = 1/alpha mod t
        std::vector<fe> sv(std::max(np, na), 0);
        std::copy(sg.begin(), sg.end(), sv.begin());
        std::vector<fe> left = quotient_mul_raw(F, np, p.lambda,
                                                std::vector<fe>(sv.begin(), sv.begin() + np),
                                                a_prime.c);
        std::vector<fe> right = quotient_mul_raw(F, na, p.lambda,
                                                 std::vector<fe>(sv.begin(), sv.begin() + na),
                                                 a.c);
        FRow row;
        row.reserve(np + na);
        row.insert(row.end(), left.begin(), left.end());
        row.insert(row.end(), right.begin(), right.end());
        acc.add(row);
        code.gen_rows.push_back(std::move(row));
    }
    code.basis = acc.rows();
    code.dim = acc.rank();
    return code;
}

std::optional<std::uint64_t> pow_checked(std::uint64_t q, std::uint32_t k, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (v > cap / q) return std::nullopt;
        v *= q;
        if (v > cap) return std::nullopt;
    }
    return v;
}

std::uint64_t hamming_weight(const std::vector<fe>& v) {
    std::uint64_t w = 0;
    for (fe x : v) w += x != 0;
    return w;
}

namespace {

std::uint64_t min_weight_q2(const FMatrix& basis) {
    const std::size_t k = basis.size();
    const std::size_t N = basis[0].size();
    const std::size_t W = (N + 63) / 64;
    std::vector<std::uint64_t> rows(k * W, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (basis[i][j]) rows[i * W + j / 64] |= 1ull << (j % 64);
    std::vector<std::uint64_t> cur(W, 0);
    std::uint64_t best = ~0ull;
    const std::uint64_t total = 1ull << k;
    if (W == 1) {
        std::uint64_t c = 0;
        for (std::uint64_t i = 1; i < total; ++i) {
            c ^= rows[static_cast<std::size_t>(std::countr_zero(i))];
            const auto w = static_cast<std::uint64_t>(std::popcount(c));
            if (w < best) best = w;
        }
        return best;
    }
    for (std::uint64_t i = 1; i < total; ++i) {
        const std::size_t j = static_cast<std::size_t>(std::countr_zero(i));
        std::uint64_t w = 0;
        for (std::size_t t = 0; t < W; ++t) {
            cur[t] ^= rows[j * W + t];
            w += static_cast<std::uint64_t>(std::popcount(cur[t]));
        }
        if (w < best) best = w;
    }
    return best;
}

// Modular q-ary Gray walk: at step i the digit with index val_q(i) is
// incremented (mod q), so exactly one basis row gets added per step and every
// combination is visited once.
template <typename Fn>
void gray_walk(const Fq& F, const FMatrix& basis, Fn&& on_step) {
    const std::size_t k = basis.size();
    const std::size_t N = basis[0].size();
    const std::uint64_t q = F.q();
    std::vector<std::vector<std::pair<std::uint32_t, fe>>> nz(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < N; ++j)
            if (basis[i][j]) nz[i].emplace_back(j, basis[i][j]);
    std::vector<std::uint32_t> digits(k, 0);
    std::vector<fe> cur(N, 0);
    std::int64_t w = 0;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= q;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::size_t z = 0;
        while (digits[z] == q - 1) {
            digits[z] = 0;
            ++z;
        }
        ++digits[z];
        for (const auto& [pos, val] : nz[z]) {
            const fe old = cur[pos];
            const fe nw = F.add(old, val);
            w += (nw != 0) - (old != 0);
            cur[pos] = nw;
        }
        on_step(cur, static_cast<std::uint64_t>(w));
    }
}

} // namespace

std::uint64_t min_weight_exact(const Fq& F, const FMatrix& basis) {
    if (basis.empty()) throw domain_error("min_weight_exact: zero code has no minimum weight");
    if (F.q() == 2) return min_weight_q2(basis);
    std::uint64_t best = ~0ull;
    gray_walk(F, basis, [&](const std::vector<fe>&, std::uint64_t w) {
        if (w < best) best = w;
    });
    return best;
}

void gray_steps(std::uint64_t q, std::uint32_t k,
                const std::function<void(std::size_t)>& on_digit) {
    std::vector<std::uint32_t> digits(k, 0);
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) total *= q;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::size_t z = 0;
        while (digits[z] == q - 1) {
            digits[z] = 0;
            ++z;
        }
        ++digits[z];
        on_digit(z);
    }
}

void enumerate_rowspace(const Fq& F, const FMatrix& basis,
                        const std::function<void(const std::vector<fe>&)>& fn) {
    if (basis.empty()) {
        fn({});
        return;
    }
    std::vector<fe> zero(basis[0].size(), 0);
    fn(zero);
    gray_walk(F, basis, [&](const std::vector<fe>& word, std::uint64_t) { fn(word); });
}

CodeReport min_weight(const DoubleTwistedCode& code, std::uint64_t budget, CounterRng* sampler) {
    const Fq& F = *code.params.F;
    const double L = code.params.code_len();
    CodeReport rep;
    rep.dim = code.dim;
    rep.rate = code.dim / L;
    if (code.dim == 0) return rep; // zero code: min_wt absent
    if (pow_checked(F.q(), code.dim, budget)) {
        rep.min_wt = min_weight_exact(F, code.basis);
        rep.exact = true;
    } else {
        CounterRng local(0, 0);
        CounterRng& rng = sampler ? *sampler : local;
        const std::size_t N = code.basis[0].size();
        std::uint64_t best = ~0ull;
        std::vector<fe> word(N);
        for (std::uint64_t s = 0; s < budget; ++s) {
            bool nonzero = false;
            std::vector<fe> coef(code.basis.size());
            while (!nonzero) {
                for (auto& c : coef) {
                    c = static_cast<fe>(rng.below(F.q()));
                    nonzero |= c != 0;
                }
            }
            std::fill(word.begin(), word.end(), 0);
            for (std::size_t i = 0; i < coef.size(); ++i) {
                if (coef[i] == 0) continue;
                for (std::size_t j = 0; j < N; ++j)
                    word[j] = F.add(word[j], F.mul(coef[i], code.basis[i][j]));
            }
            best = std::min(best, hamming_weight(word));
        }
        rep.min_wt = best;
        rep.exact = false;
    }
    rep.delta = static_cast<double>(*rep.min_wt) / L;
    return rep;
}

BalancedWitness balanced_witness(const QuotientCtx& ctx, const FMatrix& gen_rows) {
    const Fq& F = *ctx.F;
    const std::uint32_t N = ctx.n_total;
    EchelonAccum acc(F);
    for (const auto& row : gen_rows) {
        if (row.size() != N) throw domain_error("balanced_witness: row length != N");
        acc.add(row);
    }
    for (const auto& row : acc.rows()) {
        FRow shifted = row;
        consta_shift_raw(F, ctx.lambda_eff, shifted);
        if (!acc.contains(shifted))
            throw domain_error("balanced_witness: input code is not shift-closed");
    }
    const std::uint32_t k = acc.rank();
    BalancedWitness w;
    w.info_sets.assign(N, {});
    w.t_cover = k == 0 ? 0 : k;
    if (k == 0) return w;

    const auto& I1 = acc.pivots();
    for (std::uint32_t j = 0; j < N; ++j) {
        std::vector<std::uint32_t> set;
        set.reserve(k);
        for (auto i : I1) set.push_back((i + N - j) % N);
        std::sort(set.begin(), set.end());
        w.info_sets[j] = std::move(set);
    }

    // every projection must be a bijection C -> F^{I_j}
    for (const auto& set : w.info_sets) {
        FMatrix sub(k, FRow(k, 0));
        for (std::uint32_t r = 0; r < k; ++r)
            for (std::uint32_t c = 0; c < k; ++c) sub[r][c] = acc.rows()[r][set[c]];
        if (rank(F, sub) != k)
            throw domain_error("balanced_witness: rotated set fails full rank");
    }
    std::vector<std::uint32_t> cover(N, 0);
    for (const auto& set : w.info_sets)
        for (auto i : set) ++cover[i];
    for (auto c : cover)
        if (c != k) throw domain_error("balanced_witness: coverage is not uniform");
    return w;
}

double entropy(double delta, std::uint64_t q) {
    if (q < 2) throw domain_error("entropy: q must be >= 2");
    const double ub = 1.0 - 1.0 / static_cast<double>(q);
    if (delta < -1e-12 || delta > ub + 1e-12)
        throw domain_error("entropy: delta outside [0, 1-1/q]");
    delta = std::clamp(delta, 0.0, ub);
    if (delta == 0.0) return 0.0;
    const double lnq = std::log(static_cast<double>(q));
    double h = delta * std::log(static_cast<double>(q - 1)) / lnq;
    h -= delta * std::log(delta) / lnq;
    if (delta < 1.0) h -= (1.0 - delta) * std::log1p(-delta) / lnq;
    return h;
}

std::uint64_t low_weight_count(const Fq& F, const FMatrix& basis, std::uint32_t N, double delta,
                               std::uint64_t budget) {
    const double ub = 1.0 - 1.0 / static_cast<double>(F.q());
    if (delta <= 0.0 || delta >= ub)
        throw domain_error("low_weight_count: delta outside (0, 1-1/q)");
    const auto Wmax = static_cast<std::uint64_t>(std::floor(delta * N + 1e-9));
    if (basis.empty()) return 1; // the zero codeword
    if (!pow_checked(F.q(), static_cast<std::uint32_t>(basis.size()), budget))
        throw budget_error("low_weight_count: enumeration budget exceeded");
    std::uint64_t count = 1; // zero word
    gray_walk(F, basis, [&](const std::vector<fe>&, std::uint64_t w) {
        if (w <= Wmax) ++count;
    });
    return count;
}

double expectation_bound(const TwistParams& p, std::uint32_t d_f, double delta) {
    const double q = static_cast<double>(p.F->q());
    const double ub = 1.0 - 1.0 / q;
    if (delta <= 0.0 || delta >= ub) throw domain_error("expectation_bound: delta outside (0, 1-1/q)");
    const double x = (p.alpha_prime + p.alpha) * delta / (2.0 * p.alpha_min);
    if (x > ub + 1e-12) throw domain_error("expectation_bound: entropy argument out of range");
    const double lnq = std::log(q);
    const double expo = -2.0 * d_f + 2.0 * d_f * entropy(x, p.F->q()) +
                        std::log(static_cast<double>(p.code_len())) / lnq;
    return std::exp(expo * lnq);
}

TotalBound total_expectation_bound(const TwistParams& p, double delta) {
    const double q = static_cast<double>(p.F->q());
    const double ub = 1.0 - 1.0 / q;
    if (delta <= 0.0 || delta >= ub)
        throw domain_error("total_expectation_bound: delta outside (0, 1-1/q)");
    const double x = (p.alpha_prime + p.alpha) * delta / (2.0 * p.alpha_min);
    if (x > ub) return {false, 0.0}; // h_q(x) would already exceed 1/2 at x = ub
    const double h = entropy(x, p.F->q());
    const double lnq = std::log(q);
    const double lgn = std::log(static_cast<double>(p.n)) / lnq;
    const double mu = p.factz->mu;
    if (0.5 - h - lgn / (2.0 * mu) <= 0.0) return {false, 0.0};
    const double expo = -2.0 * mu * (0.5 - h - 3.0 * lgn / (2.0 * mu)) +
                        std::log(static_cast<double>(p.alpha_prime + p.alpha)) / lnq;
    return {true, std::exp(expo * lnq)};
}

FullDimBound full_dim_prob_lower_bound(const TwistParams& p) {
    const double q = static_cast<double>(p.F->q());
    const double lgn = std::log(static_cast<double>(p.n)) / std::log(q);
    const double mu = p.factz->mu;
    if (!(mu > lgn)) throw domain_error("full_dim_prob_lower_bound: needs mu(n) > log_q n");
    FullDimBound out;
    out.bound = std::pow(0.25, 1.0 / mu);
    out.exact_ratio = 1.0;
    for (std::size_t i = 1; i < p.factz->degrees.size(); ++i)
        out.exact_ratio *= 1.0 - std::pow(q, -static_cast<double>(p.factz->degrees[i]));
    return out;
}

TinyOracleReport exact_tiny_oracle(const TwistParams& p, double delta, std::uint64_t budget) {
    if (delta <= 0.0 || delta > 1.0) throw domain_error("exact_tiny_oracle: delta outside (0, 1]");
    const Fq& F = *p.F;
    const std::uint32_t n = p.n;
    const std::uint32_t kI = n - 1;
    const auto pairs_opt = pow_checked(F.q(), 2 * kI, budget);
    if (!pairs_opt) throw budget_error("exact_tiny_oracle: q^{2(n-1)} exceeds the budget");
    const std::uint64_t pairs = *pairs_opt;
    const auto count = *pow_checked(F.q(), kI, budget); // q^{n-1}

    const FMatrix basisI = ideal_basis(p);
    std::vector<std::vector<fe>> elems;
    elems.reserve(count);
    enumerate_rowspace(F, basisI, [&](const std::vector<fe>& v) { elems.push_back(v); });

    // component support of each element of I over factors 1..m
    const std::size_t m = p.factz->factors.size() - 1;
    if (m >= 30) throw budget_error("exact_tiny_oracle: too many components");
    std::vector<std::uint32_t> support(count, 0);
    std::vector<std::uint32_t> dim_f(count, 0);
    for (std::size_t e = 0; e < count; ++e) {
        Poly fp(elems[e]);
        poly_trim(fp);
        for (std::size_t i = 1; i <= m; ++i) {
            if (!poly_mod(F, fp, p.factz->factors[i]).empty()) {
                support[e] |= 1u << (i - 1);
                dim_f[e] += p.factz->degrees[i];
            }
        }
        if (!fp.empty() && !poly_mod(F, fp, p.factz->factors[0]).empty())
            throw domain_error("exact_tiny_oracle: element outside I"); // unreachable
    }

    // tau images and per-(f, generator) weights
    const std::uint32_t np = p.alpha_prime * n, na = p.alpha * n;
    std::vector<std::vector<fe>> taup(count), taua(count), sig(count);
    for (std::size_t e = 0; e < count; ++e) {
        QuotientElement fq{p.ring_ctx(), elems[e]};
        taup[e] = tau(*p.factz, fq, p.lambda, p.alpha_prime).c;
        taua[e] = tau(*p.factz, fq, p.lambda, p.alpha).c;
        Poly fp(elems[e]);
        poly_trim(fp);
        sig[e] = sigma(F, fp, p.lambda, p.alpha, n);
    }
    auto weight_of_product = [&](const std::vector<fe>& s, const std::vector<fe>& gen,
                                 std::uint32_t N) {
        std::vector<fe> sv(N, 0);
        std::copy(s.begin(), s.end(), sv.begin());
        return static_cast<std::uint32_t>(hamming_weight(quotient_mul_raw(F, N, p.lambda, sv, gen)));
    };
    std::vector<std::uint32_t> w1(count * count), w2(count * count);
    for (std::size_t f = 0; f < count; ++f)
        for (std::size_t g = 0; g < count; ++g) {
            w1[f * count + g] = weight_of_product(sig[f], taup[g], np);
            w2[f * count + g] = weight_of_product(sig[f], taua[g], na);
        }

    const std::uint32_t L = p.code_len();
    const auto Wmax = static_cast<std::uint64_t>(std::floor(delta * L + 1e-9));

    TinyOracleReport rep;
    rep.pairs = pairs;
    rep.ideal_size = count;

    for (std::size_t f = 1; f < count; ++f) {
        std::uint64_t cnt = 0;
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j) {
                const std::uint64_t w = w1[f * count + i] + w2[f * count + j];
                if (w > 0 && w <= Wmax) ++cnt;
            }
        rep.per_f.emplace_back(dim_f[f], cnt);
        rep.ey_sum += cnt;
    }

    const std::uint32_t full_mask = m == 0 ? 0 : (1u << m) - 1;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            bool low = false;
            for (std::size_t f = 1; f < count && !low; ++f) {
                const std::uint64_t w = w1[f * count + i] + w2[f * count + j];
                low = w > 0 && w <= Wmax;
            }
            rep.delta_le_count += low;
            rep.full_dim_count += (support[i] | support[j]) == full_mask;
        }

    rep.exact_E_Y = static_cast<double>(rep.ey_sum) / static_cast<double>(pairs);
    rep.exact_pr_delta_le = static_cast<double>(rep.delta_le_count) / static_cast<double>(pairs);
    rep.exact_pr_full_dim = static_cast<double>(rep.full_dim_count) / static_cast<double>(pairs);

    // Omega_d and C* from component supports
    std::map<std::uint32_t, std::uint64_t> omega; // d -> |Omega_d|
    std::map<std::uint32_t, std::uint64_t> cstar_by_mask;
    for (std::uint32_t mask = 1; mask <= full_mask && full_mask; ++mask) {
        std::uint32_t d = 0;
        for (std::size_t i = 1; i <= m; ++i)
            if (mask & (1u << (i - 1))) d += p.factz->degrees[i];
        ++omega[d];
        cstar_by_mask[mask] = 0;
    }
    bool partition_ok = true;
    for (std::size_t f = 1; f < count; ++f) {
        if (support[f] == 0) {
            partition_ok = false; // a nonzero element with empty support would break the partition
            continue;
        }
        std::uint32_t memberships = 0;
        for (auto& [mask, c] : cstar_by_mask) {
            const bool in_c = (support[f] & ~mask) == 0; // f in C
            const bool generates = support[f] == mask;   // R f = C
            if (in_c && generates) {
                ++c;
                ++memberships;
            } else if (generates && !in_c) {
                partition_ok = false;
            }
        }
        if (memberships != 1) partition_ok = false;
    }
    for (const auto& [mask, c] : cstar_by_mask) rep.cstar_total += c;
    partition_ok = partition_ok && rep.cstar_total == count - 1;
    rep.partition_ok = partition_ok;

    rep.omega_bound_ok = true;
    const double mu = p.factz->mu;
    for (const auto& [d, cnt] : omega) {
        rep.omega_sizes.emplace_back(d, cnt);
        const double bound = std::pow(static_cast<double>(n), d / mu);
        if (static_cast<double>(cnt) > bound + 1e-9) rep.omega_bound_ok = false;
    }
    return rep;
}

} // namespace dcc
