#pragma once

#include "json.hpp"
#include "ptower/solver.hpp"
#include "ptower/wach.hpp"

namespace ptw {

using Json = nlohmann::ordered_json;

// scalar wire format: null (exact zero), integer, decimal string, or
// [valuation, "unit", ...] with one unit digit string per unramified coordinate
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Context& c, const Json& j);

ContextParams context_params_from_json(const Json& j);

// {"phi": [[scalar]], "weights": [...], "d_prime": optional}
PhiModule module_from_json(const Context& c, const Json& j);

// per component: list of [exponent, scalar]; exponents as integers or strings
SparseDatum datum_from_json(const Context& c, const Json& j, int rank);

std::vector<Scalar> poly_from_json(const Context& c, const Json& j);

WachData wach_data_from_json(const Context& c, const Json& j);

Json cyclo_to_json(const CycloElement& x);
Json tangent_to_json(const TangentVector& tv);
Json series_to_json(const PowerSeries& f);
PowerSeries series_from_json(const Context& c, const Json& j, int cap);

}  // namespace ptw
