#pragma once

#include <json.hpp>

#include "fraylab/complex.hpp"
#include "fraylab/hochschild.hpp"
#include "fraylab/qseries.hpp"
#include "fraylab/ssbim.hpp"

namespace fraylab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "fraylab/1";

Json to_json(const MultiDegree& d);
MultiDegree degree_from_json(const Json& j);

/// [block, k, primed, power] for e-generators; other symbols append a kind tag.
Json to_json(const Monomial& m);
Monomial monomial_from_json(const Json& j);
/// List of {monomial, coeff: "p/q"}.
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json to_json(const Window& w);
Window window_from_json(const Json& j);
/// {window, terms: [{a, q, t, coeff}]} sorted by (a, q, t).
Json to_json(const TriSeries& s);
TriSeries series_from_json(const Json& j);

Json to_json(const Composition& c);
Json to_json(const CurvedComplex& c);
Json to_json(const FrayedProjector& p);
Json to_json(const UnknotReport& r);
Json to_json(const Mismatch& m);

}  // namespace fraylab
