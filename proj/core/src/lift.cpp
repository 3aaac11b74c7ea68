#include "dcc/lift.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace dcc {

RingPairConfig make_ring_pair(const ChainRing& R, const ChainRing& R_prime, re lambda) {
    if (!R.maps_onto(R_prime))
        throw domain_error("make_ring_pair: no canonical epimorphism R -> R'");
    R.checked(lambda);
    if (!R.is_unit(lambda)) throw domain_error("make_ring_pair: lambda must be a unit of R");
    RingPairConfig cfg;
    cfg.R = R;
    cfg.R_prime = R_prime;
    cfg.lambda = lambda;
    cfg.lambda_prime = epimorphism(R, lambda, R_prime);
    cfg.F = R.residue_field();
    cfg.t = cfg.F->mult_order(R.residue(lambda));
    return cfg;
}

std::vector<re> eta_alpha(const QuotientElement& f, const ChainRing& R, re lambda) {
    if (!R.is_unit(lambda)) throw domain_error("eta_alpha: lambda must be a unit");
    if (!f.ctx.F->same_field(*R.residue_field()))
        throw domain_error("eta_alpha: field does not match the ring's residue field");
    if (R.residue(lambda) != f.ctx.lambda_eff)
        throw domain_error("eta_alpha: residue(lambda) differs from the field-side constant");
    std::vector<re> out(f.c.size());
    for (std::size_t j = 0; j < f.c.size(); ++j) out[j] = eta_embed(R, f.c[j]);
    return out;
}

std::vector<re> eta_reduce_poly(const ChainRing& R, re lambda, std::uint32_t N, const Poly& f) {
    std::vector<re> c(std::max<std::size_t>(N, f.size()), 0);
    for (std::size_t j = 0; j < f.size(); ++j) c[j] = eta_embed(R, f[j]);
    for (std::size_t k = c.size(); k-- > N;) {
        if (c[k] == 0) continue;
        c[k - N] = R.add(c[k - N], R.mul(lambda, c[k]));
        c[k] = 0;
    }
    c.resize(N);
    return c;
}

LiftedCode lift_code(const DoubleTwistedCode& code, const RingPairConfig& cfg) {
    if (!cfg.F->same_field(*code.params.F))
        throw domain_error("lift_code: residue field does not match the source code's field");
    if (cfg.R.residue(cfg.lambda) != code.params.lambda)
        throw domain_error("lift_code: residue(lambda) differs from the source twist constant");
    LiftedCode out;
    out.source = code;
    out.cfg = cfg;
    const std::uint32_t np = code.params.alpha_prime * code.params.n;
    for (const auto& row : code.basis) {
        std::vector<re> left(np), right(row.size() - np);
        for (std::uint32_t j = 0; j < np; ++j) left[j] = eta_embed(cfg.R_prime, row[j]);
        for (std::size_t j = np; j < row.size(); ++j)
            right[j - np] = eta_embed(cfg.R, row[j]);
        out.rows_prime.push_back(std::move(left));
        out.rows.push_back(std::move(right));
    }
    return out;
}

namespace {

std::uint64_t ring_weight(const std::vector<re>& v) {
    std::uint64_t w = 0;
    for (re x : v) w += x != 0;
    return w;
}

} // namespace

LiftedReport lifted_report(const LiftedCode& code, std::uint64_t min_wt_budget) {
    const TwistParams& p = code.source.params;
    const Fq& F = *p.F;
    const std::uint64_t np = static_cast<std::uint64_t>(p.alpha_prime) * p.n;
    const std::uint64_t na = static_cast<std::uint64_t>(p.alpha) * p.n;
    LiftedReport rep;
    rep.length = np * code.cfg.R_prime.ell() + na * code.cfg.R.ell();
    rep.log_q_size = code.source.dim;
    rep.rate = static_cast<double>(rep.log_q_size) / static_cast<double>(rep.length);
    if (code.source.dim == 0) {
        rep.exact = true;
        rep.delta_rescale_check = true;
        return rep;
    }
    const std::uint32_t k = code.source.dim;
    if (pow_checked(F.q(), k, min_wt_budget)) {
        // walk source and lifted words in lockstep; weights must agree everywhere
        std::vector<fe> cur(code.source.basis[0].size(), 0);
        std::vector<re> curL(np, 0), curR(na, 0);
        bool preserved = true;
        std::uint64_t best = ~0ull;
        gray_steps(F.q(), k, [&](std::size_t z) {
            const auto& row = code.source.basis[z];
            for (std::size_t j = 0; j < cur.size(); ++j) cur[j] = F.add(cur[j], row[j]);
            const auto& lrow = code.rows_prime[z];
            for (std::size_t j = 0; j < np; ++j)
                curL[j] = code.cfg.R_prime.add(curL[j], lrow[j]);
            const auto& rrow = code.rows[z];
            for (std::size_t j = 0; j < na; ++j) curR[j] = code.cfg.R.add(curR[j], rrow[j]);
            const std::uint64_t ws = hamming_weight(cur);
            const std::uint64_t wl = ring_weight(curL) + ring_weight(curR);
            preserved = preserved && ws == wl;
            best = std::min(best, wl);
        });
        rep.min_wt = best;
        rep.exact = true;
        rep.delta_rescale_check = preserved;
    } else {
        CodeReport src = min_weight(code.source, min_wt_budget);
        rep.min_wt = src.min_wt;
        rep.exact = src.exact;
        bool rowwise = true;
        for (std::size_t i = 0; i < code.rows.size(); ++i) {
            const std::uint64_t ws = hamming_weight(code.source.basis[i]);
            const std::uint64_t wl = ring_weight(code.rows_prime[i]) + ring_weight(code.rows[i]);
            rowwise = rowwise && ws == wl;
        }
        rep.delta_rescale_check = rowwise;
    }
    rep.delta = static_cast<double>(*rep.min_wt) / static_cast<double>(rep.length);
    return rep;
}

re MixedModuleSolver::entry_mul(std::uint32_t col, re x, re scalar_in_R) const {
    if (is_left(col)) return Rp_->mul(x, scalar_in_R % Rp_->size()); // act through rho
    return R_->mul(x, scalar_in_R);
}

std::uint32_t MixedModuleSolver::val_at(std::uint32_t col, re x) const {
    const ChainRing& ring = is_left(col) ? *Rp_ : *R_;
    if (x == 0) return ring.ell();
    std::uint32_t v = 0;
    while (ring.residue(x) == 0) {
        x = ring.divide_by_pi(x);
        ++v;
    }
    return v;
}

re MixedModuleSolver::exact_div_pi(std::uint32_t col, re x, std::uint32_t k) const {
    const ChainRing& ring = is_left(col) ? *Rp_ : *R_;
    for (std::uint32_t i = 0; i < k; ++i) x = ring.divide_by_pi(x);
    return x;
}

re MixedModuleSolver::unit_inv_at(std::uint32_t col, re u) const {
    return (is_left(col) ? *Rp_ : *R_).unit_inv(u);
}

MixedModuleSolver::MixedModuleSolver(const ChainRing& R_prime, const ChainRing& R,
                                     const std::vector<std::vector<re>>& left_rows,
                                     const std::vector<std::vector<re>>& right_rows)
    : Rp_(&R_prime), R_(&R) {
    if (!R.maps_onto(R_prime)) throw domain_error("MixedModuleSolver: incompatible ring pair");
    if (left_rows.size() != right_rows.size())
        throw domain_error("MixedModuleSolver: segment row counts differ");
    nl_ = left_rows.empty() ? 0 : static_cast<std::uint32_t>(left_rows[0].size());
    nr_ = right_rows.empty() ? 0 : static_cast<std::uint32_t>(right_rows[0].size());
    for (std::size_t i = 0; i < left_rows.size(); ++i) {
        std::vector<re> row;
        row.reserve(nl_ + nr_);
        row.insert(row.end(), left_rows[i].begin(), left_rows[i].end());
        row.insert(row.end(), right_rows[i].begin(), right_rows[i].end());
        insert(std::move(row));
    }
}

void MixedModuleSolver::insert(std::vector<re> first) {
    std::deque<std::vector<re>> queue;
    queue.push_back(std::move(first));
    while (!queue.empty()) {
        std::vector<re> row = std::move(queue.front());
        queue.pop_front();
        std::uint32_t c = 0;
        const std::uint32_t ncols = nl_ + nr_;
        while (c < ncols) {
            if (row[c] == 0) {
                ++c;
                continue;
            }
            auto it = std::lower_bound(basis_.begin(), basis_.end(), c,
                                       [](const PivotRow& pr, std::uint32_t col) { return pr.col < col; });
            if (it == basis_.end() || it->col != c) {
                // new pivot: normalize the leading entry to pi^e
                const std::uint32_t e = val_at(c, row[c]);
                const re u = exact_div_pi(c, row[c], e);
                const re s = unit_inv_at(c, u); // canonical section makes this an R-scalar
                for (std::uint32_t j = c; j < ncols; ++j) row[j] = entry_mul(j, row[j], s);
                PivotRow pr{std::move(row), c, e};
                // pi-saturation keeps the reduction complete
                std::vector<re> sat(pr.v.size());
                bool nonzero = false;
                for (std::uint32_t j = 0; j < ncols; ++j) {
                    sat[j] = entry_mul(j, pr.v[j], R_->ell() == 1 ? 0 : R_->pi());
                    nonzero |= sat[j] != 0;
                }
                basis_.insert(it, std::move(pr));
                if (nonzero) queue.push_back(std::move(sat));
                break;
            }
            const std::uint32_t vr = val_at(c, row[c]);
            if (vr >= it->val) {
                const re factor = exact_div_pi(c, row[c], it->val);
                for (std::uint32_t j = c; j < ncols; ++j) {
                    const ChainRing& ring = is_left(j) ? *Rp_ : *R_;
                    row[j] = ring.sub(row[j], entry_mul(j, it->v[j], factor));
                }
                // row[c] is now zero; continue right
            } else {
                // the new row has the smaller valuation: swap it in as the pivot
                const re u = exact_div_pi(c, row[c], vr);
                const re s = unit_inv_at(c, u);
                for (std::uint32_t j = c; j < ncols; ++j) row[j] = entry_mul(j, row[j], s);
                std::vector<re> old = std::move(it->v);
                it->v = std::move(row);
                it->val = vr;
                std::vector<re> sat(it->v.size());
                bool nonzero = false;
                for (std::uint32_t j = 0; j < ncols; ++j) {
                    sat[j] = entry_mul(j, it->v[j], R_->ell() == 1 ? 0 : R_->pi());
                    nonzero |= sat[j] != 0;
                }
                if (nonzero) queue.push_back(std::move(sat));
                queue.push_back(std::move(old));
                break;
            }
        }
    }
}

bool MixedModuleSolver::contains(std::vector<re> left, std::vector<re> right) const {
    if (left.size() != nl_ || right.size() != nr_)
        throw domain_error("MixedModuleSolver: vector shape mismatch");
    std::vector<re> v;
    v.reserve(nl_ + nr_);
    v.insert(v.end(), left.begin(), left.end());
    v.insert(v.end(), right.begin(), right.end());
    const std::uint32_t ncols = nl_ + nr_;
    std::size_t bi = 0;
    for (std::uint32_t c = 0; c < ncols; ++c) {
        while (bi < basis_.size() && basis_[bi].col < c) ++bi;
        if (v[c] == 0) continue;
        if (bi == basis_.size() || basis_[bi].col != c) return false;
        const std::uint32_t vv = val_at(c, v[c]);
        if (vv < basis_[bi].val) return false;
        const re factor = exact_div_pi(c, v[c], basis_[bi].val);
        for (std::uint32_t j = c; j < ncols; ++j) {
            const ChainRing& ring = is_left(j) ? *Rp_ : *R_;
            v[j] = ring.sub(v[j], entry_mul(j, basis_[bi].v[j], factor));
        }
    }
    return std::all_of(v.begin(), v.end(), [](re x) { return x == 0; });
}

bool verify_rr_closure(const LiftedCode& code) {
    if (code.rows.empty()) return true;
    MixedModuleSolver solver(code.cfg.R_prime, code.cfg.R, code.rows_prime, code.rows);
    for (std::size_t i = 0; i < code.rows.size(); ++i) {
        std::vector<re> left = code.rows_prime[i];
        std::vector<re> right = code.rows[i];
        if (!left.empty()) {
            re last = left.back();
            for (std::size_t j = left.size(); j-- > 1;) left[j] = left[j - 1];
            left[0] = code.cfg.R_prime.mul(code.cfg.lambda_prime, last);
        }
        if (!right.empty()) {
            re last = right.back();
            for (std::size_t j = right.size(); j-- > 1;) right[j] = right[j - 1];
            right[0] = code.cfg.R.mul(code.cfg.lambda, last);
        }
        if (!solver.contains(std::move(left), std::move(right))) return false;
    }
    return true;
}

std::uint64_t lifted_module_size_recount(const LiftedCode& code, std::uint64_t budget) {
    const Fq& F = *code.source.params.F;
    const std::uint32_t k = code.source.dim;
    if (!pow_checked(F.q(), k, budget))
        throw budget_error("lifted_module_size_recount: budget exceeded");
    if (k == 0) return 1;
    const std::size_t np = code.rows_prime[0].size();
    const std::size_t na = code.rows[0].size();
    std::vector<re> curL(np, 0), curR(na, 0);
    std::set<std::vector<re>> words;
    std::vector<re> cat(np + na, 0);
    words.insert(cat);
    gray_steps(F.q(), k, [&](std::size_t z) {
        for (std::size_t j = 0; j < np; ++j)
            curL[j] = code.cfg.R_prime.add(curL[j], code.rows_prime[z][j]);
        for (std::size_t j = 0; j < na; ++j) curR[j] = code.cfg.R.add(curR[j], code.rows[z][j]);
        std::copy(curL.begin(), curL.end(), cat.begin());
        std::copy(curR.begin(), curR.end(), cat.begin() + static_cast<std::ptrdiff_t>(np));
        words.insert(cat);
    });
    return words.size();
}

} // namespace dcc
