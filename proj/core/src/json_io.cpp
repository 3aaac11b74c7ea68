#include "dcc/json_io.hpp"

namespace dcc {

json field_to_json(const Fq& F) {
    return json{{"p", F.p()}, {"r", F.r()}, {"modulus", F.modulus()}};
}

std::shared_ptr<const Fq> field_from_json(const json& j) {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto r = j.at("r").get<std::uint32_t>();
    if (j.contains("modulus")) {
        auto mod = j.at("modulus").get<std::vector<std::uint32_t>>();
        return std::make_shared<const Fq>(p, r, std::move(mod));
    }
    return field_new(p, r);
}

json element_to_json(const Fq& F, fe a) { return json(F.decode(a).c); }

fe element_from_json(const Fq& F, const json& j) {
    FieldElement x;
    x.c = j.get<std::vector<std::int32_t>>();
    return F.encode(x);
}

json poly_to_json(const Fq& F, const Poly& f) {
    json out = json::array();
    for (fe c : f) out.push_back(element_to_json(F, c));
    return out;
}

Poly poly_from_json(const Fq& F, const json& j) {
    Poly f;
    for (const auto& c : j) f.push_back(element_from_json(F, c));
    poly_trim(f);
    return f;
}

json factorization_to_json(const Fq& F, const Factorization& fz) {
    json factors = json::array(), idem = json::array();
    for (const auto& f : fz.factors) factors.push_back(poly_to_json(F, f));
    for (const auto& e : fz.idempotents) idem.push_back(poly_to_json(F, e));
    return json{{"n", fz.n},
                {"factors", factors},
                {"degrees", fz.degrees},
                {"mu", fz.mu},
                {"idempotents", idem}};
}

json ring_to_json(const ChainRing& R) {
    if (R.family() == ChainRing::Family::ZpPow)
        return json{{"family", "zp_pow"}, {"p", R.zp_p()}, {"s", R.ell()}};
    return json{{"family", "fq_u"}, {"field", field_to_json(*R.residue_field())}, {"ell", R.ell()}};
}

ChainRing ring_from_json(const json& j) {
    const auto family = j.at("family").get<std::string>();
    if (family == "zp_pow")
        return ChainRing::zp_pow(j.at("p").get<std::uint32_t>(), j.at("s").get<std::uint32_t>());
    if (family == "fq_u")
        return ChainRing::fq_u(field_from_json(j.at("field")), j.at("ell").get<std::uint32_t>());
    throw domain_error("ring_from_json: unknown family " + family);
}

json ring_elem_to_json(const ChainRing& R, re a) {
    R.checked(a);
    if (R.family() == ChainRing::Family::ZpPow) return json(a);
    const Fq& F = *R.residue_field();
    json out = json::array();
    re v = a;
    for (std::uint32_t i = 0; i < R.ell(); ++i) {
        out.push_back(element_to_json(F, static_cast<fe>(v % F.q())));
        v /= F.q();
    }
    return out;
}

re ring_elem_from_json(const ChainRing& R, const json& j) {
    if (R.family() == ChainRing::Family::ZpPow) return R.checked(j.get<std::uint64_t>());
    const Fq& F = *R.residue_field();
    if (!j.is_array() || j.size() != R.ell())
        throw domain_error("ring element: expected a list of ell field elements");
    re out = 0, mul = 1;
    for (std::uint32_t i = 0; i < R.ell(); ++i) {
        out += static_cast<re>(element_from_json(F, j[i])) * mul;
        mul *= F.q();
    }
    return out;
}

json code_report_to_json(const CodeReport& rep) {
    json out{{"dim", rep.dim}, {"exact", rep.exact}, {"delta", rep.delta}, {"rate", rep.rate}};
    if (rep.min_wt) out["min_wt"] = *rep.min_wt;
    return out;
}

json lifted_report_to_json(const LiftedReport& rep) {
    json out{{"length", rep.length},
             {"log_q_size", rep.log_q_size},
             {"delta", rep.delta},
             {"rate", rep.rate},
             {"delta_rescale_check", rep.delta_rescale_check}};
    if (rep.min_wt) out["min_wt"] = *rep.min_wt;
    out["exact"] = rep.exact;
    return out;
}

} // namespace dcc
