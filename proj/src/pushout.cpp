#include "logfirm/monoid.hpp"

#include <algorithm>
#include <set>

namespace logfirm {

namespace {

IntVector block_column_image(const IntMatrix& coords, std::size_t offset, const IntVector& x) {
    IntVector full(coords.cols());
    for (std::size_t i = 0; i < x.size(); ++i) full[offset + i] = x[i];
    return coords * full;
}

IntMatrix column_block(const IntMatrix& m, std::size_t row_count, std::size_t col_begin, std::size_t col_count) {
    IntMatrix out(row_count, col_count);
    for (std::size_t i = 0; i < row_count; ++i)
        for (std::size_t j = 0; j < col_count; ++j) out(i, j) = m(i, col_begin + j);
    return out;
}

}  // namespace

GroupElement PushoutResult::reduce(GroupElement g) const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        g.torsion[i] %= torsion[i];
        if (g.torsion[i] < 0) g.torsion[i] += torsion[i];
    }
    return g;
}

GroupElement PushoutResult::image1(const IntVector& q1) const {
    IntVector y = block_column_image(coordinates, 0, q1);
    GroupElement g{IntVector(y.begin(), y.begin() + free_rank), IntVector(y.begin() + free_rank, y.end())};
    return reduce(std::move(g));
}

GroupElement PushoutResult::image2(const IntVector& q2) const {
    IntVector y = block_column_image(coordinates, split, q2);
    GroupElement g{IntVector(y.begin(), y.begin() + free_rank), IntVector(y.begin() + free_rank, y.end())};
    return reduce(std::move(g));
}

bool PushoutResult::in_saturation(const GroupElement& g) const { return saturation_cone.contains(g.free); }

bool PushoutResult::in_amalgam(const GroupElement& g, const IlpOptions& options) const {
    const std::size_t m = amalgam_generators.size();
    const std::size_t t = torsion.size();
    IlpProblem p;
    p.num_vars = m + t;
    if (p.num_vars == 0) return is_zero(g.free) && is_zero(g.torsion);
    p.eq = IntMatrix(free_rank + t, m + t);
    p.eq_rhs = IntVector(free_rank + t);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < free_rank; ++i) p.eq(i, j) = amalgam_generators[j].free[i];
        for (std::size_t i = 0; i < t; ++i) p.eq(free_rank + i, j) = amalgam_generators[j].torsion[i];
    }
    for (std::size_t i = 0; i < t; ++i) p.eq(free_rank + i, m + i) = -torsion[i];
    for (std::size_t i = 0; i < free_rank; ++i) p.eq_rhs[i] = g.free[i];
    for (std::size_t i = 0; i < t; ++i) p.eq_rhs[free_rank + i] = g.torsion[i];
    if (p.eq.rows() == 0) {
        p.eq = IntMatrix();
        p.eq_rhs.clear();
    }
    if (m > 0) {
        p.ineq = IntMatrix(m, m + t);
        p.ineq_rhs = IntVector(m);
        for (std::size_t j = 0; j < m; ++j) p.ineq(j, j) = 1;
    }
    return ilp_feasible(p, options).has_value();
}

std::vector<GroupElement> PushoutResult::saturation_generators() const {
    std::vector<GroupElement> out;
    const IntVector no_torsion(torsion.size());
    for (const auto& h : characteristic.hilbert()) {
        auto lift = solve_lattice(sharpening, h);
        out.push_back({lift->particular, no_torsion});
    }
    for (const auto& u : unit_lattice) {
        out.push_back({u, no_torsion});
        out.push_back({scale(u, Int(-1)), no_torsion});
    }
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        IntVector e(torsion.size());
        e[i] = 1;
        out.push_back({IntVector(free_rank), e});
    }
    return out;
}

PushoutResult fs_pushout(const MonoidHom& f, const MonoidHom& g) {
    if (!(f.source() == g.source())) throw Error(ErrorCode::InvalidInput, "pushout legs have different sources");
    const auto& q1 = f.target();
    const auto& q2 = g.target();
    const std::size_t r1 = q1.rank(), r2 = q2.rank(), rp = f.source().rank();
    const std::size_t n = r1 + r2;

    // Relations (f(p), -g(p)) as columns.
    IntMatrix rel(n, rp);
    for (std::size_t j = 0; j < rp; ++j) {
        for (std::size_t i = 0; i < r1; ++i) rel(i, j) = f.matrix()(i, j);
        for (std::size_t i = 0; i < r2; ++i) rel(r1 + i, j) = -g.matrix()(i, j);
    }
    auto snf = smith_normal_form(rel);

    PushoutResult out;
    out.free_rank = n - snf.rank;
    std::vector<std::size_t> row_order;
    for (std::size_t i = snf.rank; i < n; ++i) row_order.push_back(i);
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.divisors[i] > 1) {
            row_order.push_back(i);
            out.torsion.push_back(snf.divisors[i]);
        }
    out.coordinates = IntMatrix(row_order.size(), n);
    for (std::size_t k = 0; k < row_order.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) out.coordinates(k, j) = snf.U(row_order[k], j);

    out.split = r1;
    for (const auto& h : q1.hilbert()) out.amalgam_generators.push_back(out.image1(h));
    for (const auto& h : q2.hilbert()) out.amalgam_generators.push_back(out.image2(h));

    std::vector<IntVector> free_parts;
    for (const auto& a : out.amalgam_generators)
        if (!is_zero(a.free)) free_parts.push_back(a.free);
    out.saturation_cone = dual_description_from_rays(out.free_rank, free_parts);
    out.unit_lattice = out.saturation_cone.lineality;

    out.sharpening = quotient_map(out.free_rank, out.unit_lattice, free_parts);
    std::vector<IntVector> images;
    for (const auto& v : free_parts) images.push_back(out.sharpening * v);
    out.characteristic = AffineMonoid::saturate(out.sharpening.rows(), images);
    if (!(out.characteristic.group_basis() == IntMatrix::identity(out.sharpening.rows())))
        throw Error(ErrorCode::InvalidInput, "internal: pushout generators do not span the group");

    IntMatrix free_coords = column_block(out.coordinates, out.free_rank, 0, n);
    IntMatrix to_char = out.sharpening * free_coords;
    out.leg1 = MonoidHom(q1, out.characteristic, column_block(to_char, to_char.rows(), 0, r1));
    out.leg2 = MonoidHom(q2, out.characteristic, column_block(to_char, to_char.rows(), r1, r2));
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphism searches

std::optional<MonoidHom> find_factorization(const MonoidHom& theta, const MonoidHom& psi, const IlpOptions& options) {
    if (!(theta.source() == psi.source()))
        throw Error(ErrorCode::InvalidInput, "factorization needs maps with a common source");
    const auto& q = theta.target();
    const auto& r = psi.target();
    if (!r.sharp()) throw Error(ErrorCode::NotSharp, "factorization target must be sharp");
    const std::size_t rr = r.rank(), rq = q.rank(), rp = theta.source().rank();
    const auto& qgens = q.hilbert();
    const std::size_t nv = rr * rq;

    if (nv == 0) {
        if (!psi.matrix().is_zero()) return std::nullopt;
        return MonoidHom(q, r, IntMatrix(rr, rq));
    }

    // Unknown H, row-major: variable i*rq + j is H(i, j).
    IlpProblem p;
    p.num_vars = nv;
    if (rr * rp > 0) {
        p.eq = IntMatrix(rr * rp, nv);
        p.eq_rhs = IntVector(rr * rp);
        for (std::size_t i = 0; i < rr; ++i)
            for (std::size_t k = 0; k < rp; ++k) {
                std::size_t row = i * rp + k;
                for (std::size_t j = 0; j < rq; ++j) p.eq(row, i * rq + j) = theta.matrix()(j, k);
                p.eq_rhs[row] = psi.matrix()(i, k);
            }
    }
    std::vector<IntVector> ineq;
    for (const auto& phi : r.cone().facets)
        for (const auto& g : qgens) {
            IntVector row(nv);
            for (std::size_t i = 0; i < rr; ++i)
                for (std::size_t j = 0; j < rq; ++j) row[i * rq + j] = phi[i] * g[j];
            ineq.push_back(std::move(row));
        }
    if (!ineq.empty()) {
        p.ineq = IntMatrix::from_rows(ineq, nv);
        p.ineq_rhs = IntVector(ineq.size());
    }
    auto sol = ilp_feasible(p, options);
    if (!sol) return std::nullopt;
    IntMatrix h(rr, rq);
    for (std::size_t i = 0; i < rr; ++i)
        for (std::size_t j = 0; j < rq; ++j) h(i, j) = (*sol)[i * rq + j];
    MonoidHom out(q, r, h);
    if (!(h * theta.matrix() == psi.matrix()))
        throw Error(ErrorCode::InvalidInput, "internal: factorization failed verification");
    return out;
}

std::optional<MonoidHom> find_retraction(const MonoidHom& theta, const IlpOptions& options) {
    return find_factorization(theta, MonoidHom::identity(theta.source()), options);
}

// ---------------------------------------------------------------------------
// Semi-decisions

namespace {

std::vector<IntVector> elements_up_to(const AffineMonoid& m, std::size_t bound) {
    std::set<IntVector> seen{IntVector(m.rank())};
    std::vector<IntVector> layer{IntVector(m.rank())};
    for (std::size_t d = 0; d < bound; ++d) {
        std::vector<IntVector> next;
        for (const auto& x : layer)
            for (const auto& h : m.hilbert()) {
                IntVector y = add(x, h);
                if (seen.insert(y).second) next.push_back(y);
            }
        layer = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

bool share_summand(const AffineMonoid& m, const IntVector& a, const IntVector& b) {
    for (const auto& h : m.hilbert())
        if (m.contains(sub(a, h)) && m.contains(sub(b, h))) return true;
    return false;
}

// Inequality rows  facets * (x + shift) >= 0  written as facets * x >= -facets * shift.
void add_cone_rows(const DualDescription& cone, const IntMatrix& map, const IntVector& shift, bool negate,
                   std::vector<IntVector>& rows, IntVector& rhs) {
    for (const auto& f : cone.facets) {
        IntVector row(map.cols());
        for (std::size_t j = 0; j < map.cols(); ++j)
            for (std::size_t i = 0; i < map.rows(); ++i) row[j] += f[i] * map(i, j);
        if (negate) row = scale(row, Int(-1));
        rows.push_back(std::move(row));
        rhs.push_back(-dot(f, shift));
    }
}

}  // namespace

SemiDecision is_integral(const MonoidHom& theta, std::size_t bound) {
    const auto& p = theta.source();
    const auto& q = theta.target();
    SemiDecision out;
    out.bound = bound;
    const std::size_t rp = p.rank();
    auto pe = elements_up_to(p, bound);
    auto qe = elements_up_to(q, bound);
    const IntMatrix id = IntMatrix::identity(rp);

    for (std::size_t i = 0; i < pe.size(); ++i)
        for (std::size_t j = i + 1; j < pe.size(); ++j) {
            const auto& a1 = pe[i];
            const auto& a2 = pe[j];
            if (p.contains(sub(a1, a2)) || p.contains(sub(a2, a1))) continue;
            if (share_summand(p, a1, a2)) continue;
            IntVector shift = sub(theta.apply(a1), theta.apply(a2));
            for (const auto& b1 : qe) {
                IntVector b2 = add(shift, b1);
                if (!q.contains(b2)) continue;
                if (share_summand(q, b1, b2)) continue;
                // a3 in P, a1 + a3 - a2 in P, b1 - theta(a3) in Q.
                std::vector<IntVector> rows;
                IntVector rhs;
                add_cone_rows(p.cone(), id, IntVector(rp), false, rows, rhs);
                add_cone_rows(p.cone(), id, sub(a1, a2), false, rows, rhs);
                add_cone_rows(q.cone(), theta.matrix(), scale(b1, Int(-1)), true, rows, rhs);
                IlpProblem prob;
                prob.num_vars = rp;
                prob.ineq = IntMatrix::from_rows(rows, rp);
                prob.ineq_rhs = rhs;
                if (!ilp_feasible(prob)) {
                    out.refuted = true;
                    out.witness = {a1, a2, b1, b2};
                    out.explanation = "theta(a1) + b1 = theta(a2) + b2 has no common decomposition";
                    return out;
                }
            }
        }
    out.explanation = "no violation among elements with at most " + std::to_string(bound) + " Hilbert summands";
    return out;
}

SemiDecision is_saturated(const MonoidHom& theta, std::size_t bound) {
    const auto& p = theta.source();
    SemiDecision out;
    out.bound = bound;
    auto probe = [&](const MonoidHom& other, const std::string& name) {
        auto po = fs_pushout(theta, other);
        for (const auto& g : po.saturation_generators())
            if (!po.in_amalgam(g)) {
                out.refuted = true;
                out.witness = {g.free, g.torsion};
                out.explanation = "pushout along " + name + " is not saturated";
                return true;
            }
        return false;
    };
    for (std::size_t k = 2; k <= bound; ++k) {
        IntMatrix mk = IntMatrix::identity(p.rank());
        for (std::size_t i = 0; i < p.rank(); ++i) mk(i, i) = Int(k);
        if (probe(MonoidHom(p, p, mk), "multiplication by " + std::to_string(k))) return out;
    }
    if (probe(theta, "itself")) return out;
    out.explanation = "pushouts along multiplication by k <= " + std::to_string(bound) + " and the self pushout are saturated";
    return out;
}

}  // namespace logfirm
