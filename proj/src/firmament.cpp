#include "logfirm/firmament.hpp"

namespace logfirm {

DualDescription dual_cone(const AffineMonoid& m) {
    if (!m.sharp()) throw Error(ErrorCode::NotSharp, "dual cone of a non-sharp monoid");
    return dual_description_from_rays(m.rank(), m.cone().facets);
}

ConeComplex sigma_of(const AffineMonoid& p) { return embedded_fan(p.rank(), {dual_cone(p).rays}); }

Firmament make_firmament(ConeComplex source, ConeComplex target, ConeComplexMap map) {
    if (source.scale != 1 || target.scale != 1)
        throw Error(ErrorCode::InvalidInput, "firmaments are taken on unscaled lattices");
    if (map.target_cone.size() != source.cones.size())
        throw Error(ErrorCode::InvalidInput, "map does not cover the source complex");
    for (auto t : map.target_cone)
        if (t >= target.cones.size()) throw Error(ErrorCode::InvalidInput, "map points outside the target complex");
    return {std::move(source), std::move(target), std::move(map)};
}

Firmament firmament_of(const FiberProblem& prob) {
    std::vector<DualDescription> duals;
    std::vector<IntMatrix> mats;
    for (const auto& th : prob.components) {
        duals.push_back(dual_cone(th.target()));
        mats.push_back(th.matrix().transpose());
    }
    auto source = cone_union(duals);
    auto target = sigma_of(prob.base);
    auto map = make_map(source, target, std::vector<std::size_t>(mats.size(), 0), mats);
    return make_firmament(std::move(source), std::move(target), std::move(map));
}

Firmament firmament_of_chart(const IntMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) < 0) throw Error(ErrorCode::InvalidInput, "monomial chart has a negative exponent");
    auto source = cone_union({dual_description_from_rays(a.cols(), IntMatrix::identity(a.cols()).row_list())});
    auto target = orthant(a.rows());
    auto map = make_map(source, target, {0}, {a});
    return make_firmament(std::move(source), std::move(target), std::move(map));
}

ContactOrder contact_order(const AffineMonoid& p, const std::map<IntVector, Int>& vals) {
    const auto hil = p.hilbert_ambient();
    if (vals.size() != hil.size()) throw Error(ErrorCode::InvalidInput, "one valuation per Hilbert basis element is required");
    IntVector rhs;
    for (const auto& h : hil) {
        auto it = vals.find(h);
        if (it == vals.end()) throw Error(ErrorCode::InvalidInput, "no valuation given for " + to_string(h));
        if (it->second < 0) throw Error(ErrorCode::InvalidInput, "valuations are nonnegative");
        rhs.push_back(it->second);
    }
    auto u = hil.empty() ? std::optional<LatticeSolutionSet>(LatticeSolutionSet{IntVector(p.rank()), {}})
                         : solve_lattice(IntMatrix::from_rows(p.hilbert(), p.rank()), rhs);
    if (!u) throw Error(ErrorCode::NotAdditive, "valuations do not respect the relations of P");
    return {canonicalize_point(sigma_of(p), {0, u->particular})};
}

ContactOrder contact_order(const MonoidHom& psi) {
    if (psi.target().rank() != 1 || !(psi.target().cone().rays == std::vector<IntVector>{make_vector({1})}))
        throw Error(ErrorCode::InvalidInput, "contact orders are defined for points with monoid N");
    return {canonicalize_point(sigma_of(psi.source()), {0, psi.matrix().row(0)})};
}

bool firmament_member(const Firmament& g, const IntegralPoint& n, const IlpOptions& options) {
    auto canon = canonicalize_point(g.target, n);
    for (auto s : g.source.maximal_cones()) {
        std::size_t t = g.map.target_cone[s];
        const FaceMap* fm = nullptr;
        for (const auto* f : g.target.faces_of(t))
            if (f->face == canon.cone) fm = f;
        if (!fm) continue;
        IntVector y = fm->matrix * canon.coords;
        const auto& cone = g.source.cones[s];
        const auto& m = g.map.matrix[s];
        std::vector<IntVector> eq = cone.dd.equations;
        IntVector rhs(eq.size());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            eq.push_back(m.row(i));
            rhs.push_back(y[i]);
        }
        IlpProblem ilp;
        ilp.num_vars = cone.lattice_rank;
        ilp.eq = IntMatrix::from_rows(eq, cone.lattice_rank);
        ilp.eq_rhs = rhs;
        if (!cone.dd.facets.empty()) {
            ilp.ineq = IntMatrix::from_rows(cone.dd.facets, cone.lattice_rank);
            ilp.ineq_rhs = IntVector(cone.dd.facets.size());
        }
        if (ilp_feasible(ilp, options)) return true;
    }
    return false;
}

std::vector<IntegralPoint> firmament_enumerate_box(const Firmament& g, long bound) {
    std::vector<IntegralPoint> out;
    for (const auto& p : lattice_points_box(g.target, bound))
        if (firmament_member(g, p)) out.push_back(p);
    return out;
}

bool lies_in_firmament(const Firmament& g, const ContactOrder& c) {
    if (!g.target.embedded()) return firmament_member(g, c.point);
    // The contact order lives in sigma_of(P); re-locate its coordinates in
    // the target fan.
    for (std::size_t i = 0; i < g.target.cones.size(); ++i)
        if (g.target.cones[i].dd.contains(c.point.coords)) return firmament_member(g, {i, c.point.coords});
    return false;
}

}  // namespace logfirm
