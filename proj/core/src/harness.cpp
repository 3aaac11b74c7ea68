#include "dcc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

namespace dcc {

std::vector<SearchRow> search_n(std::uint64_t q, std::uint64_t t, std::uint32_t n_max) {
    if (q < 2) throw domain_error("search_n: q must be >= 2");
    if (t < 1) throw domain_error("search_n: t must be >= 1");
    std::vector<SearchRow> out;
    const double lnq = std::log(static_cast<double>(q));
    for (std::uint32_t n = 2; n <= n_max; ++n) {
        if (gcd_u64(n, q) != 1 || gcd_u64(n, t) != 1) continue;
        const std::uint32_t mu = mu_from_cosets(q, n);
        const double lgn = std::log(static_cast<double>(n)) / lnq;
        if (!(mu > lgn)) continue;
        out.push_back({n, mu, lgn, mu / lgn});
    }
    return out;
}

json search_rows_json(const std::vector<SearchRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(json{{"n", r.n}, {"mu", r.mu}, {"log_q_n", r.log_q_n}, {"ratio", r.ratio}});
    return arr;
}

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

TrialRow run_one_trial(const TwistParams& params, const ExperimentConfig& cfg,
                       std::uint64_t trial) {
    const std::uint64_t stream = 2 * trial;
    auto [ap, a] = sample_pair(params, cfg.seed, stream);
    DoubleTwistedCode code = build_code(params, ap, a);
    CounterRng sampler(cfg.seed, stream + 1);
    CodeReport rep = min_weight(code, cfg.budget, &sampler);
    TrialRow row;
    row.stream = stream;
    row.n = params.n;
    row.alpha = params.alpha;
    row.alpha_prime = params.alpha_prime;
    row.lambda = params.lambda;
    row.dim = rep.dim;
    row.min_wt = rep.min_wt;
    row.exact = rep.exact;
    row.delta_observed = rep.delta;
    row.is_full_dim = rep.dim == params.n - 1;
    return row;
}

} // namespace

McResult run_mc(const ExperimentConfig& cfg) {
    if (!cfg.F) throw domain_error("run_mc: null field");
    McResult res;
    res.cfg = cfg;
    std::uint32_t nthreads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;

    for (const std::uint32_t n : cfg.ns) {
        TwistParams params = make_twist_params(cfg.F, cfg.lambda, cfg.alpha, cfg.alpha_prime, n);
        std::vector<TrialRow> rows(cfg.trials);
        if (cfg.trials > 0) {
            std::vector<std::thread> pool;
            std::uint32_t workers = static_cast<std::uint32_t>(
                std::min<std::uint64_t>(nthreads, cfg.trials));
            for (std::uint32_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w]() {
                    for (std::uint64_t i = w; i < cfg.trials; i += workers)
                        rows[i] = run_one_trial(params, cfg, i);
                });
            }
            for (auto& th : pool) th.join();
        }

        const std::uint32_t L = params.code_len();
        for (const double delta : cfg.deltas) {
            const auto wmax = static_cast<std::uint64_t>(std::floor(delta * L + 1e-9));
            std::uint64_t le = 0, full = 0;
            for (const auto& row : rows) {
                le += row.min_wt && *row.min_wt <= wmax;
                full += row.is_full_dim;
            }
            McSummary s;
            s.n = n;
            s.delta = delta;
            s.trials = cfg.trials;
            if (cfg.trials > 0) {
                const double pr_le = static_cast<double>(le) / cfg.trials;
                s.pr_delta_gt = 1.0 - pr_le;
                s.pr_full_dim = static_cast<double>(full) / cfg.trials;
                s.radius3_delta = 3.0 * std::sqrt(pr_le * (1.0 - pr_le) / cfg.trials);
                s.radius3_fulldim =
                    3.0 * std::sqrt(s.pr_full_dim * (1.0 - s.pr_full_dim) / cfg.trials);
            }
            TotalBound tb = total_expectation_bound(params, delta);
            s.bound_ey_ok = tb.hypothesis_ok;
            s.bound_ey = tb.value;
            s.bound_fulldim = full_dim_prob_lower_bound(params).bound;
            res.summaries.push_back(s);
        }
        res.rows.insert(res.rows.end(), rows.begin(), rows.end());
    }
    return res;
}

std::string mc_csv(const McResult& res) {
    std::string out = "seed,n,alpha,alpha_prime,lambda,dim,min_wt,exact,delta_threshold,is_full_dim\n";
    for (const auto& r : res.rows) {
        out += std::to_string(r.stream);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.alpha);
        out += ',';
        out += std::to_string(r.alpha_prime);
        out += ',';
        out += std::to_string(r.lambda);
        out += ',';
        out += std::to_string(r.dim);
        out += ',';
        if (r.min_wt) out += std::to_string(*r.min_wt);
        out += ',';
        out += r.exact ? '1' : '0';
        out += ',';
        out += fmt_double(r.delta_observed);
        out += ',';
        out += r.is_full_dim ? '1' : '0';
        out += '\n';
    }
    return out;
}

json mc_summary_json(const McResult& res) {
    json arr = json::array();
    for (const auto& s : res.summaries) {
        json j{{"n", s.n},
               {"delta", s.delta},
               {"pr_delta_gt", s.pr_delta_gt},
               {"pr_full_dim", s.pr_full_dim},
               {"bound_EY", s.bound_ey_ok ? json(s.bound_ey) : json(nullptr)},
               {"bound_EY_ok", s.bound_ey_ok},
               {"bound_fulldim", s.bound_fulldim},
               {"trials", s.trials},
               {"radius3_delta", s.radius3_delta},
               {"radius3_fulldim", s.radius3_fulldim}};
        arr.push_back(j);
    }
    return json{{"seed", res.cfg.seed},
                {"alpha", res.cfg.alpha},
                {"alpha_prime", res.cfg.alpha_prime},
                {"lambda", res.cfg.lambda},
                {"summaries", arr}};
}

json oracle_tiny_json(const TwistParams& p, double delta, std::uint64_t budget) {
    TinyOracleReport rep = exact_tiny_oracle(p, delta, budget);
    bool chain_pr_le_ey = rep.delta_le_count <= rep.ey_sum;
    bool chain_eyf = true;
    const double q = static_cast<double>(p.F->q());
    const double ub = 1.0 - 1.0 / q;
    const double arg = (p.alpha_prime + p.alpha) * delta / (2.0 * p.alpha_min);
    const bool eyf_applicable = delta > 0.0 && delta < ub && arg <= ub + 1e-12;
    if (eyf_applicable) {
        for (const auto& [d_f, cnt] : rep.per_f) {
            const double lhs = static_cast<double>(cnt) / static_cast<double>(rep.pairs);
            if (lhs > expectation_bound(p, d_f, delta) + 1e-12) chain_eyf = false;
        }
    }
    TotalBound tb{};
    bool chain_total = true;
    if (delta > 0.0 && delta < ub) {
        tb = total_expectation_bound(p, delta);
        if (tb.hypothesis_ok && rep.exact_E_Y > tb.value + 1e-12) chain_total = false;
    }
    json omega = json::array();
    for (const auto& [d, cnt] : rep.omega_sizes) omega.push_back(json{{"d", d}, {"count", cnt}});
    json per_f = json::array();
    for (const auto& [d_f, cnt] : rep.per_f) per_f.push_back(json{{"d_f", d_f}, {"count", cnt}});
    return json{{"pairs", rep.pairs},
                {"delta", delta},
                {"exact_E_Y", rep.exact_E_Y},
                {"ey_numerator", rep.ey_sum},
                {"exact_pr_delta_le", rep.exact_pr_delta_le},
                {"pr_delta_numerator", rep.delta_le_count},
                {"exact_pr_full_dim", rep.exact_pr_full_dim},
                {"full_dim_numerator", rep.full_dim_count},
                {"ideal_size", rep.ideal_size},
                {"cstar_total", rep.cstar_total},
                {"partition_ok", rep.partition_ok},
                {"omega_bound_ok", rep.omega_bound_ok},
                {"omega_sizes", omega},
                {"per_f", per_f},
                {"chain_pr_le_ey", chain_pr_le_ey},
                {"chain_eyf_le_bound", chain_eyf},
                {"chain_ey_le_total_bound", chain_total},
                {"total_bound_ok", tb.hypothesis_ok},
                {"total_bound", tb.hypothesis_ok ? json(tb.value) : json(nullptr)}};
}

json lift_demo_json(const LiftDemoConfig& cfg) {
    const RingPairConfig& rp = cfg.ring_pair;
    const fe lambda_bar = rp.R.residue(cfg.ring_pair.lambda);
    TwistParams params = make_twist_params(rp.F, lambda_bar, cfg.alpha, cfg.alpha_prime, cfg.n);
    DoubleTwistedCode code;
    std::uint32_t tries = 0;
    bool found = false;
    for (; tries < cfg.max_resample; ++tries) {
        auto [ap, a] = sample_pair(params, cfg.seed, 2 * tries);
        code = build_code(params, ap, a);
        if (code.dim == params.n - 1) {
            found = true;
            ++tries;
            break;
        }
    }
    if (!found) throw budget_error("lift_demo: resampling cap exceeded without a full-dimension code");
    LiftedCode lifted = lift_code(code, rp);
    LiftedReport rep = lifted_report(lifted, cfg.budget);
    const std::uint64_t denom = static_cast<std::uint64_t>(cfg.alpha_prime) * rp.R_prime.ell() +
                                static_cast<std::uint64_t>(cfg.alpha) * rp.R.ell();
    json out = lifted_report_to_json(rep);
    out["ring"] = ring_to_json(rp.R);
    out["ring_prime"] = ring_to_json(rp.R_prime);
    out["lambda"] = ring_elem_to_json(rp.R, rp.lambda);
    out["lambda_prime"] = ring_elem_to_json(rp.R_prime, rp.lambda_prime);
    out["n"] = cfg.n;
    out["dim"] = code.dim;
    out["resamples"] = tries;
    out["closure"] = verify_rr_closure(lifted);
    out["rescale_factor_num"] = cfg.alpha_prime + cfg.alpha;
    out["rescale_factor_den"] = denom;
    out["rescale_factor"] = static_cast<double>(cfg.alpha_prime + cfg.alpha) /
                            static_cast<double>(denom);
    return out;
}

} // namespace dcc
