#pragma once

#include <json.hpp>

#include "dcc/chain_ring.hpp"
#include "dcc/dcodes.hpp"
#include "dcc/lift.hpp"
#include "dcc/polyring.hpp"

namespace dcc {

using json = nlohmann::json;

// field: {"p":..., "r":..., "modulus":[c0,...,cr]}
json field_to_json(const Fq& F);
std::shared_ptr<const Fq> field_from_json(const json& j);

// element: [c0,...,c_{r-1}]
json element_to_json(const Fq& F, fe a);
fe element_from_json(const Fq& F, const json& j);

// polynomial: list of elements, little-endian
json poly_to_json(const Fq& F, const Poly& f);
Poly poly_from_json(const Fq& F, const json& j);

// {"n":..., "factors":[...], "degrees":[...], "mu":..., "idempotents":[...]}
json factorization_to_json(const Fq& F, const Factorization& fz);

// {"family":"zp_pow","p":...,"s":...} | {"family":"fq_u","field":...,"ell":...}
json ring_to_json(const ChainRing& R);
ChainRing ring_from_json(const json& j);

// zp_pow element: integer; fq_u element: list of field elements (u-coefficients)
json ring_elem_to_json(const ChainRing& R, re a);
re ring_elem_from_json(const ChainRing& R, const json& j);

json code_report_to_json(const CodeReport& rep);
json lifted_report_to_json(const LiftedReport& rep);

} // namespace dcc
