// Command-line harness for constructing double constacyclic codes, running
// the Monte Carlo experiments, and dumping the exact desk-scale oracles.
//
// Exit codes: 0 success, 2 usage/parameter error, 3 budget error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dcc/harness.hpp"

namespace {

using dcc::fe;

std::shared_ptr<const dcc::Fq> make_field(std::uint64_t q, std::uint32_t p, std::uint32_t r) {
    if (q != 0 && (p != 0 || r != 0))
        throw dcc::domain_error("give either --q or --p/--r, not both");
    if (q != 0) return std::make_shared<const dcc::Fq>(dcc::Fq::from_order(q));
    if (p == 0) throw dcc::domain_error("field required: --q or --p (with optional --r)");
    return dcc::field_new(p, r == 0 ? 1 : r);
}

// lambda: a plain integer k means g^k for the deterministic generator g; a
// bracketed or comma-separated list is a coefficient vector.
fe parse_lambda(const dcc::Fq& F, const std::string& s) {
    if (s.empty()) throw dcc::domain_error("--lambda: empty value");
    const bool vector_form = s.front() == '[' || s.find(',') != std::string::npos;
    if (!vector_form) return F.pow(F.generator(), std::stoull(s));
    std::string body = s;
    if (body.front() == '[') {
        if (body.back() != ']') throw dcc::domain_error("--lambda: unbalanced brackets");
        body = body.substr(1, body.size() - 2);
    }
    dcc::FieldElement x;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) x.c.push_back(std::stoi(tok));
    return F.encode(x);
}

// ring spec: zp:<p>:<s> or fqu:<p>:<r>:<ell>
dcc::ChainRing parse_ring(const std::string& s) {
    std::stringstream ss(s);
    std::string tok;
    std::vector<std::string> parts;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.empty()) throw dcc::domain_error("empty ring spec");
    if (parts[0] == "zp" && parts.size() == 3)
        return dcc::ChainRing::zp_pow(std::stoul(parts[1]), std::stoul(parts[2]));
    if (parts[0] == "fqu" && parts.size() == 4)
        return dcc::ChainRing::fq_u(dcc::field_new(std::stoul(parts[1]), std::stoul(parts[2])),
                                    std::stoul(parts[3]));
    throw dcc::domain_error("ring spec must be zp:<p>:<s> or fqu:<p>:<r>:<ell>");
}

dcc::re parse_ring_elem(const dcc::ChainRing& R, const std::string& s) {
    if (R.family() == dcc::ChainRing::Family::ZpPow) return R.checked(std::stoull(s));
    std::string body = s;
    if (!body.empty() && body.front() == '[') body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    dcc::re out = 0, mul = 1;
    std::uint32_t i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i++ >= R.ell()) throw dcc::domain_error("ring element: too many u-coefficients");
        out += R.residue_field()->checked(std::stoull(tok)) * mul;
        mul *= R.residue_field()->q();
    }
    return R.checked(out);
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw dcc::domain_error("cannot open output file " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"double constacyclic code construction and experiments"};
    app.require_subcommand(1);

    std::uint64_t q = 0;
    std::uint32_t p = 0, r = 0, alpha = 1, alpha_prime = 1;
    std::vector<std::uint32_t> ns;
    std::vector<double> deltas;
    std::string lambda_str = "0";
    std::uint64_t trials = 0, seed = 0, budget = 1ull << 20;
    std::string out_path, ring_str, ring_prime_str;

    auto add_field_opts = [&](CLI::App* cmd) {
        cmd->add_option("--q", q, "field order q = p^r");
        cmd->add_option("--p", p, "field characteristic");
        cmd->add_option("--r", r, "extension degree");
    };
    auto add_twist_opts = [&](CLI::App* cmd) {
        cmd->add_option("--lambda", lambda_str,
                        "twist constant: generator exponent or coefficient vector");
        cmd->add_option("--alpha", alpha, "cycle ratio denominator alpha");
        cmd->add_option("--alpha-prime", alpha_prime, "cycle ratio numerator alpha'");
    };

    auto* c_factor = app.add_subcommand("factor", "factor X^n - 1 over GF(q) with idempotents");
    add_field_opts(c_factor);
    c_factor->add_option("--n", ns, "length n")->required();
    c_factor->add_option("--out", out_path, "output path (default stdout)");

    auto* c_search = app.add_subcommand("search-n", "lengths with mu(n) > log_q n");
    add_field_opts(c_search);
    c_search->add_option("--lambda", lambda_str, "twist constant (sets t)");
    c_search->add_option("--n", ns, "maximum n")->required();
    c_search->add_option("--out", out_path, "output path");

    auto* c_build = app.add_subcommand("build", "sample a generator pair and build the code");
    add_field_opts(c_build);
    add_twist_opts(c_build);
    c_build->add_option("--n", ns, "length n")->required();
    c_build->add_option("--seed", seed, "rng seed");
    c_build->add_option("--out", out_path, "output path");

    auto* c_minwt = app.add_subcommand("minwt", "build a code and report its minimum weight");
    add_field_opts(c_minwt);
    add_twist_opts(c_minwt);
    c_minwt->add_option("--n", ns, "length n")->required();
    c_minwt->add_option("--seed", seed, "rng seed");
    c_minwt->add_option("--budget", budget, "max enumerations");
    c_minwt->add_option("--out", out_path, "output path");

    auto* c_mc = app.add_subcommand("mc", "Monte Carlo experiment over seeded trials");
    add_field_opts(c_mc);
    add_twist_opts(c_mc);
    c_mc->add_option("--n", ns, "lengths n (repeatable)")->required();
    c_mc->add_option("--delta", deltas, "relative-distance thresholds (repeatable)");
    c_mc->add_option("--trials", trials, "trials per n");
    c_mc->add_option("--seed", seed, "rng seed");
    c_mc->add_option("--budget", budget, "max enumerations per trial");
    c_mc->add_option("--out", out_path, "CSV path; summary goes to <out>.summary.json");

    auto* c_oracle = app.add_subcommand("oracle", "exact tiny-instance oracle");
    add_field_opts(c_oracle);
    add_twist_opts(c_oracle);
    c_oracle->add_option("--n", ns, "length n")->required();
    c_oracle->add_option("--delta", deltas, "threshold delta")->required();
    c_oracle->add_option("--budget", budget, "max pair enumerations");
    c_oracle->add_option("--out", out_path, "output path");

    auto* c_lift = app.add_subcommand("lift", "lift a full-dimension code to a chain-ring pair");
    c_lift->add_option("--ring", ring_str, "source ring R: zp:<p>:<s> | fqu:<p>:<r>:<ell>")
        ->required();
    c_lift->add_option("--ring-prime", ring_prime_str, "target ring R'")->required();
    c_lift->add_option("--lambda", lambda_str, "unit of R (integer / u-coefficient list)");
    c_lift->add_option("--alpha", alpha, "alpha");
    c_lift->add_option("--alpha-prime", alpha_prime, "alpha'");
    c_lift->add_option("--n", ns, "length n")->required();
    c_lift->add_option("--seed", seed, "rng seed");
    c_lift->add_option("--budget", budget, "max enumerations");
    c_lift->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*c_factor) {
            auto F = make_field(q, p, r);
            auto fz = dcc::factor_xn_minus_1(*F, ns.at(0));
            dcc::json j = dcc::factorization_to_json(*F, fz);
            j["field"] = dcc::field_to_json(*F);
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_search) {
            auto F = make_field(q, p, r);
            const fe lambda = parse_lambda(*F, lambda_str);
            const std::uint64_t t = lambda == 0 ? 1 : F->mult_order(lambda);
            auto rows = dcc::search_n(F->q(), t, ns.at(0));
            dcc::json j{{"q", F->q()}, {"t", t}, {"rows", dcc::search_rows_json(rows)}};
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_build) {
            auto F = make_field(q, p, r);
            const fe lambda = parse_lambda(*F, lambda_str);
            auto params = dcc::make_twist_params(F, lambda, alpha, alpha_prime, ns.at(0));
            auto [ap, a] = dcc::sample_pair(params, seed);
            auto code = dcc::build_code(params, ap, a);
            dcc::json j{{"n", params.n},
                        {"dim", code.dim},
                        {"lambda", dcc::element_to_json(*F, lambda)},
                        {"a_prime", dcc::poly_to_json(*F, dcc::Poly(ap.c))},
                        {"a", dcc::poly_to_json(*F, dcc::Poly(a.c))}};
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_minwt) {
            auto F = make_field(q, p, r);
            const fe lambda = parse_lambda(*F, lambda_str);
            auto params = dcc::make_twist_params(F, lambda, alpha, alpha_prime, ns.at(0));
            auto [ap, a] = dcc::sample_pair(params, seed);
            auto code = dcc::build_code(params, ap, a);
            dcc::CounterRng sampler(seed, 1);
            auto rep = dcc::min_weight(code, budget, &sampler);
            write_out(out_path, dcc::code_report_to_json(rep).dump(2) + "\n");
        } else if (*c_mc) {
            auto F = make_field(q, p, r);
            dcc::ExperimentConfig cfg;
            cfg.F = F;
            cfg.lambda = parse_lambda(*F, lambda_str);
            cfg.alpha = alpha;
            cfg.alpha_prime = alpha_prime;
            cfg.ns = ns;
            cfg.deltas = deltas;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.budget = budget;
            auto res = dcc::run_mc(cfg);
            const std::string csv = dcc::mc_csv(res);
            const std::string summary = dcc::mc_summary_json(res).dump(2) + "\n";
            if (out_path.empty()) {
                std::fwrite(csv.data(), 1, csv.size(), stdout);
                std::fputc('\n', stdout);
                std::fwrite(summary.data(), 1, summary.size(), stdout);
            } else {
                write_out(out_path, csv);
                write_out(out_path + ".summary.json", summary);
            }
        } else if (*c_oracle) {
            auto F = make_field(q, p, r);
            const fe lambda = parse_lambda(*F, lambda_str);
            auto params = dcc::make_twist_params(F, lambda, alpha, alpha_prime, ns.at(0));
            auto j = dcc::oracle_tiny_json(params, deltas.at(0), budget);
            write_out(out_path, j.dump(2) + "\n");
        } else if (*c_lift) {
            dcc::ChainRing R = parse_ring(ring_str);
            dcc::ChainRing Rp = parse_ring(ring_prime_str);
            dcc::re lambda = lambda_str == "0" ? R.one() : parse_ring_elem(R, lambda_str);
            dcc::LiftDemoConfig cfg;
            cfg.ring_pair = dcc::make_ring_pair(R, Rp, lambda);
            cfg.alpha = alpha;
            cfg.alpha_prime = alpha_prime;
            cfg.n = ns.at(0);
            cfg.seed = seed;
            cfg.budget = budget;
            auto j = dcc::lift_demo_json(cfg);
            write_out(out_path, j.dump(2) + "\n");
        }
    } catch (const dcc::budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
