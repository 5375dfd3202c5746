#include "logfirm/json_io.hpp"

#include <limits>

namespace logfirm {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t size_from_json(const Json& j, const char* what) {
    Int x = int_from_json(j);
    if (x < 0 || x > 64) throw Error(ErrorCode::InvalidInput, std::string(what) + " out of range");
    return x.convert_to<std::size_t>();
}

std::vector<IntVector> vectors_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected a list of vectors");
    std::vector<IntVector> out;
    for (const auto& v : j) {
        out.push_back(vector_from_json(v));
        if (out.back().size() != dim) throw Error(ErrorCode::InvalidInput, "vector has the wrong length");
    }
    return out;
}

}  // namespace

Json int_to_json(const Int& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return x.convert_to<long long>();
    return x.str();
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw Error(ErrorCode::InvalidInput, "expected an integer, got " + j.dump());
}

Json vector_to_json(const IntVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(int_to_json(x));
    return out;
}

IntVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected an integer vector, got " + j.dump());
    IntVector out;
    for (const auto& x : j) out.push_back(int_from_json(x));
    return out;
}

Json matrix_to_json(const IntMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
    return out;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected a matrix, got " + j.dump());
    std::vector<IntVector> rows;
    for (const auto& r : j) rows.push_back(vector_from_json(r));
    if (!rows.empty()) cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw Error(ErrorCode::InvalidInput, "matrix rows have different lengths");
    return IntMatrix::from_rows(rows, cols);
}

Json rational_to_json(const Rational& q) {
    if (denominator(q) == 1) return int_to_json(numerator(q));
    return numerator(q).str() + "/" + denominator(q).str();
}

Json monoid_to_json(const AffineMonoid& m) {
    Json gens = Json::array();
    for (const auto& h : m.hilbert_ambient()) gens.push_back(vector_to_json(h));
    return {{"rank", m.ambient_rank()}, {"generators", gens}};
}

AffineMonoid monoid_from_json(const Json& j) {
    std::size_t d = size_from_json(field(j, "rank"), "rank");
    return AffineMonoid::saturate(d, vectors_from_json(field(j, "generators"), d));
}

Json hom_to_json(const MonoidHom& h) {
    return {{"source", monoid_to_json(h.source())},
            {"target", monoid_to_json(h.target())},
            {"matrix", matrix_to_json(h.matrix())},
            {"coordinates", "group"}};
}

MonoidHom hom_from_json(const Json& j) {
    auto source = monoid_from_json(field(j, "source"));
    auto target = monoid_from_json(field(j, "target"));
    std::string coords = j.value("coordinates", "ambient");
    if (coords == "group") return MonoidHom(source, target, matrix_from_json(field(j, "matrix"), source.rank()));
    if (coords != "ambient") throw Error(ErrorCode::InvalidInput, "coordinates must be \"ambient\" or \"group\"");
    return MonoidHom::from_ambient(source, target, matrix_from_json(field(j, "matrix"), source.ambient_rank()));
}

Json face_to_json(const AffineMonoid& m, const Face& f) {
    auto hil = m.hilbert_ambient();
    Json gens = Json::array();
    for (auto i : f.generator_subset) gens.push_back(vector_to_json(hil[i]));
    return {{"dim", f.dim}, {"generators", gens}};
}

FiberProblem problem_from_json(const Json& j) {
    auto base = monoid_from_json(field(j, "base"));
    std::vector<MonoidHom> comps;
    const auto& cs = field(j, "components");
    if (!cs.is_array()) throw Error(ErrorCode::InvalidInput, "components must be a list");
    for (auto c : cs) {
        if (!c.contains("source")) c["source"] = field(j, "base");
        comps.push_back(hom_from_json(c));
    }
    return make_fiber_problem(base, comps);
}

Json fan_to_json(const ConeComplex& c) {
    if (!c.embedded()) throw Error(ErrorCode::InvalidInput, "only embedded fans have a JSON form");
    Json cones = Json::array();
    for (auto i : c.maximal_cones()) {
        Json rays = Json::array();
        for (const auto& r : c.cones[i].rays) rays.push_back(vector_to_json(r));
        cones.push_back({{"rays", rays}});
    }
    return {{"ambient_rank", *c.ambient_rank}, {"scale", int_to_json(c.scale)}, {"cones", cones}};
}

ConeComplex fan_from_json(const Json& j) {
    std::size_t d = size_from_json(field(j, "ambient_rank"), "ambient_rank");
    Int scale = j.contains("scale") ? int_from_json(j.at("scale")) : Int(1);
    if (scale < 1) throw Error(ErrorCode::InvalidInput, "scale must be positive");
    std::vector<std::vector<IntVector>> cones;
    const auto& cs = field(j, "cones");
    if (!cs.is_array()) throw Error(ErrorCode::InvalidInput, "cones must be a list");
    for (const auto& c : cs) cones.push_back(vectors_from_json(field(c, "rays"), d));
    return embedded_fan(d, cones, scale);
}

Json point_to_json(const IntegralPoint& p) { return {{"cone", p.cone}, {"coords", vector_to_json(p.coords)}}; }

Firmament firmament_from_json(const Json& j) {
    if (j.is_array()) return firmament_of_chart(matrix_from_json(j));
    if (j.contains("chart")) return firmament_of_chart(matrix_from_json(j.at("chart")));
    if (j.contains("base")) return firmament_of(problem_from_json(j));
    auto source = fan_from_json(field(j, "source"));
    auto target = fan_from_json(field(j, "target"));
    const auto& ms = field(j, "maps");
    if (!ms.is_array() || ms.size() != field(j, "source").at("cones").size())
        throw Error(ErrorCode::InvalidInput, "one map entry per source cone is required");
    std::vector<std::size_t> tc;
    std::vector<IntMatrix> mats;
    for (const auto& m : ms) {
        Int t = int_from_json(field(m, "target"));
        if (t < 0 || t >= Int(target.cones.size())) throw Error(ErrorCode::InvalidInput, "map target out of range");
        tc.push_back(t.convert_to<std::size_t>());
        mats.push_back(matrix_from_json(field(m, "matrix"), *source.ambient_rank));
    }
    auto map = make_map(source, target, tc, mats);
    return make_firmament(std::move(source), std::move(target), std::move(map));
}

Json ideal_to_json(const MonomialIdeal& i) {
    Json gens = Json::array();
    for (const auto& g : i.generators) gens.push_back(vector_to_json(g));
    return {{"vars", i.vars}, {"generators", gens}};
}

MonomialIdeal ideal_from_json(const Json& j) {
    std::size_t n = size_from_json(field(j, "vars"), "vars");
    return make_ideal(n, vectors_from_json(field(j, "generators"), n));
}

Json lift_to_json(const LiftSolution& l) {
    Json c = Json::array();
    for (const auto& row : l.units.c) {
        Json r = Json::array();
        for (const auto& q : row) r.push_back(rational_to_json(q));
        c.push_back(r);
    }
    Json orders = Json::array(), primes = Json::array(), rel = Json::array();
    for (const auto& x : l.units.root_orders) orders.push_back(int_to_json(x));
    for (const auto& p : l.ramification_primes) primes.push_back(int_to_json(p));
    for (const auto& w : l.units.unit_constraints) rel.push_back(vector_to_json(w));
    Json out = {{"exponents", vector_to_json(l.exponents)},
                {"unit_matrix", c},
                {"root_orders", orders},
                {"unit_constraints", rel},
                {"ramification_primes", primes}};
    out["etale"] = l.etale ? Json(*l.etale) : Json(nullptr);
    return out;
}

}  // namespace logfirm
