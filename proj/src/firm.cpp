#include "logfirm/firm.hpp"

#include <algorithm>

namespace logfirm {

FiberProblem make_fiber_problem(AffineMonoid base, std::vector<MonoidHom> components) {
    if (!base.sharp()) throw Error(ErrorCode::NotSharp, "base monoid must be sharp");
    for (const auto& c : components) {
        if (!(c.source() == base)) throw Error(ErrorCode::InvalidInput, "component chart does not start at the base");
        if (!c.target().sharp()) throw Error(ErrorCode::NotSharp, "component monoid must be sharp");
    }
    return {std::move(base), std::move(components)};
}

LogPointQuery make_query(MonoidHom psi) {
    if (!psi.source().sharp() || !psi.target().sharp())
        throw Error(ErrorCode::NotSharp, "query monoids must be sharp");
    if (!is_local(psi)) throw Error(ErrorCode::InvalidInput, "query map is not local");
    return {std::move(psi)};
}

bool verify_witness(const FiberProblem& prob, const LogPointQuery& q, const FirmnessWitness& w) {
    if (w.component >= prob.components.size()) return false;
    const auto& theta = prob.components[w.component];
    if (!(w.h.source() == theta.target()) || !(w.h.target() == q.psi.target())) return false;
    if (!(w.h.matrix() * theta.matrix() == q.psi.matrix())) return false;
    // The map must send every generator into R.
    for (const auto& g : theta.target().hilbert())
        if (!q.psi.target().contains(w.h.apply(g))) return false;
    return kernel_face(w.h).generator_subset == w.induced_face.generator_subset;
}

std::optional<FirmnessWitness> firm_check(const FiberProblem& prob, const LogPointQuery& q,
                                          const IlpOptions& options) {
    if (!(q.psi.source() == prob.base)) throw Error(ErrorCode::InvalidInput, "query does not start at the base");
    for (std::size_t i = 0; i < prob.components.size(); ++i) {
        auto h = find_factorization(prob.components[i], q.psi, options);
        if (!h) continue;
        FirmnessWitness w{i, *h, kernel_face(*h)};
        if (!verify_witness(prob, q, w)) throw Error(ErrorCode::InvalidInput, "internal: witness failed verification");
        return w;
    }
    return std::nullopt;
}

PushoutFirmness firm_check_pushout(const FiberProblem& prob, const LogPointQuery& q, const IlpOptions& options) {
    if (!(q.psi.source() == prob.base)) throw Error(ErrorCode::InvalidInput, "query does not start at the base");
    const auto& r = q.psi.target();
    for (std::size_t i = 0; i < prob.components.size(); ++i) {
        auto po = fs_pushout(prob.components[i], q.psi);
        const auto& leg = po.leg2;
        for (const auto& g : faces(po.characteristic)) {
            // Points over s: no nonzero element of R lands in G.
            bool over_s = std::all_of(r.hilbert().begin(), r.hilbert().end(),
                                      [&](const IntVector& x) { return dot(g.normal, leg.apply(x)) > 0; });
            if (!over_s) continue;
            auto loc = face_localization(po.characteristic, g);
            auto t = find_retraction(loc.projection.after(leg), options);
            if (t) return {true, i, g, *t};
        }
    }
    return {};
}

IntSatEvidence probe_evidence(const MonoidHom& theta, std::size_t bound) {
    if (is_integral(theta, bound).refuted || is_saturated(theta, bound).refuted) return {};
    return {EvidenceKind::SemiDecision, bound};
}

DichotomyResult dichotomy(const MonoidHom& theta, const IntSatEvidence& evidence) {
    if (evidence.kind == EvidenceKind::None || (evidence.kind == EvidenceKind::SemiDecision && evidence.bound < 6))
        throw Error(ErrorCode::EvidenceMissing, "integral and saturated evidence is required");
    DichotomyResult out;
    if (!is_local(theta)) {
        out.boundary_face = kernel_face(theta);
        return out;
    }
    out.retraction = find_retraction(theta);
    if (!out.retraction)
        throw Error(ErrorCode::EvidenceMissing, "local map has no retraction, so the supplied evidence is wrong");
    return out;
}

namespace {

// Matrix X with X . e_src = target_side, where e_src is a surjective quotient
// matrix whose kernel is annihilated by target_side.
IntMatrix descend(const IntMatrix& e_src, const IntMatrix& target_side) {
    IntMatrix right_inverse(e_src.cols(), e_src.rows());
    for (std::size_t j = 0; j < e_src.rows(); ++j) {
        IntVector ej(e_src.rows());
        ej[j] = 1;
        auto s = solve_lattice(e_src, ej);
        if (!s) throw Error(ErrorCode::InvalidInput, "internal: quotient map is not surjective");
        for (std::size_t i = 0; i < e_src.cols(); ++i) right_inverse(i, j) = s->particular[i];
    }
    IntMatrix x = target_side * right_inverse;
    if (!(x * e_src == target_side)) throw Error(ErrorCode::InvalidInput, "internal: map does not descend to the quotient");
    return x;
}

Face preimage_face(const MonoidHom& h, const Face& f) {
    Face g;
    const auto& hil = h.source().hilbert();
    for (std::size_t i = 0; i < hil.size(); ++i)
        if (dot(f.normal, h.apply(hil[i])) == 0) g.generator_subset.push_back(i);
    return validate_face(h.source(), g);
}

}  // namespace

bool verify_generalized(const GeneralizedWitness& g) {
    const auto& h = g.witness.h;
    if (!(h.source() == g.theta.target()) || !(h.target() == g.psi.target())) return false;
    if (!(g.theta.source() == g.psi.source())) return false;
    if (!(h.matrix() * g.theta.matrix() == g.psi.matrix())) return false;
    if (!is_local(g.psi)) return false;
    return kernel_face(h).generator_subset == g.witness.induced_face.generator_subset;
}

std::vector<GeneralizedWitness> generization_witnesses(const FiberProblem& prob, const LogPointQuery& q,
                                                       const FirmnessWitness& w) {
    if (!verify_witness(prob, q, w)) throw Error(ErrorCode::InvalidInput, "witness does not verify");
    const auto& p = prob.base;
    const auto& r = q.psi.target();
    const auto& theta = prob.components[w.component];
    std::vector<GeneralizedWitness> out;
    for (const auto& f : faces(r)) {
        Face fp = preimage_face(q.psi, f);
        // Generizing all the way to the open stratum of P leaves no log data.
        if (p.rank() > 0 && fp.dim == p.rank() && f.dim > 0) continue;
        Face fq = preimage_face(w.h, f);
        auto lr = face_localization(r, f);
        auto lp = face_localization(p, fp);
        auto lq = face_localization(theta.target(), fq);
        IntMatrix psi_m = descend(lp.projection.matrix(), lr.projection.matrix() * q.psi.matrix());
        IntMatrix theta_m = descend(lp.projection.matrix(), lq.projection.matrix() * theta.matrix());
        IntMatrix h_m = descend(lq.projection.matrix(), lr.projection.matrix() * w.h.matrix());
        GeneralizedWitness g;
        g.face = f;
        g.psi = MonoidHom(lp.quotient, lr.quotient, psi_m);
        g.theta = MonoidHom(lp.quotient, lq.quotient, theta_m);
        MonoidHom hh(lq.quotient, lr.quotient, h_m);
        g.witness = {w.component, hh, kernel_face(hh)};
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace logfirm
