#pragma once

#include <json.hpp>

#include "logfirm/campana.hpp"
#include "logfirm/firmament.hpp"
#include "logfirm/lift.hpp"

namespace logfirm {

using Json = nlohmann::json;

// Integers are JSON numbers when they fit in 64 bits and decimal strings
// otherwise; both forms are accepted on input.
Json int_to_json(const Int& x);
Int int_from_json(const Json& j);
Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
/// `cols` is used when the matrix has no rows.
IntMatrix matrix_from_json(const Json& j, std::size_t cols = 0);
Json rational_to_json(const Rational& q);  // integer, or "p/q"

/// {"rank": d, "generators": [[...], ...]}; the monoid is the saturation.
Json monoid_to_json(const AffineMonoid& m);
AffineMonoid monoid_from_json(const Json& j);
/// {"source", "target", "matrix"}. The matrix is on ambient lattices unless
/// "coordinates" is "group".
Json hom_to_json(const MonoidHom& h);
MonoidHom hom_from_json(const Json& j);
Json face_to_json(const AffineMonoid& m, const Face& f);

/// {"base": monoid, "components": [hom, ...]}; a component may omit "source".
FiberProblem problem_from_json(const Json& j);

/// {"ambient_rank": d, "scale": k, "cones": [{"rays": [[...]]}, ...]}.
/// Only maximal cones are written.
Json fan_to_json(const ConeComplex& c);
ConeComplex fan_from_json(const Json& j);
Json point_to_json(const IntegralPoint& p);

/// A firmament from a fiber problem, a chart {"chart": [[...]]} or a map of
/// fans {"source": fan, "target": fan, "maps": [{"target": i, "matrix": ...}]}.
Firmament firmament_from_json(const Json& j);

Json ideal_to_json(const MonomialIdeal& i);
MonomialIdeal ideal_from_json(const Json& j);

Json lift_to_json(const LiftSolution& l);

}  // namespace logfirm
