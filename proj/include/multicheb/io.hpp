#pragma once

// JSON forms of the library's data. Output objects use insertion-ordered keys
// so every dump is byte-stable.

#include "json.hpp"
#include "multicheb/certify.hpp"
#include "multicheb/construct.hpp"
#include "multicheb/domain.hpp"
#include "multicheb/examples.hpp"
#include "multicheb/minimax.hpp"
#include "multicheb/poly.hpp"

namespace multicheb {

using Json = nlohmann::ordered_json;

// Elements are [exponents, coeff] for a single term, or a list of such
// pairs for a multi-term element.
Json basis_to_json(const Basis& b);
BasisPtr basis_from_json(const Json& j);

Json domain_to_json(const Domain& d);
Domain domain_from_json(const Json& j);

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json points_to_json(const Domain& d, const IndexSet& idx);
Json solution_to_json(const Instance& inst, const Solution& s);
Json certificate_to_json(const Instance& inst, const Certificate& c);
Json dimensions_to_json(const Instance& inst, const DimensionReport& r);
Json containment_to_json(const Instance& inst, const ContainmentReport& r);

Json bump_spec_to_json(const BumpSpec& s);
BumpSpec bump_spec_from_json(const Json& j);

Json report_to_json(const InstanceReport& r);
Json report_to_json(const RunReport& r);
Json refinement_to_json(const std::vector<RefinementRow>& rows);

// Parses a JSON array of numbers; InputError otherwise.
std::vector<double> coeffs_from_json(const Json& j);

// Replaces -0.0 by 0.0 so dumps never show a signed zero.
double clean_zero(double x);

}  // namespace multicheb
