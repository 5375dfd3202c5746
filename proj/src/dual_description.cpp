#include "logfirm/intlinalg.hpp"

#include <algorithm>

#include <boost/dynamic_bitset.hpp>

namespace logfirm {

namespace {

struct DdRay {
    IntVector v;
    boost::dynamic_bitset<> zeros;
};

struct DdResult {
    std::vector<IntVector> lineality;
    std::vector<IntVector> rays;
};

// Double description: minimal generators (lineality basis + extreme rays) of
// { x in R^dim : <a, x> >= 0 for every a in constraints }.
DdResult double_description(std::size_t dim, const std::vector<IntVector>& constraints) {
    const std::size_t m = constraints.size();
    std::vector<IntVector> lin;
    for (std::size_t i = 0; i < dim; ++i) {
        IntVector e(dim);
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<DdRay> rays;

    for (std::size_t k = 0; k < m; ++k) {
        const IntVector& a = constraints[k];
        auto lit = std::find_if(lin.begin(), lin.end(), [&](const IntVector& l) { return dot(a, l) != 0; });
        if (lit != lin.end()) {
            IntVector l = *lit;
            lin.erase(lit);
            Int al = dot(a, l);
            if (al < 0) {
                l = scale(l, Int(-1));
                al = -al;
            }
            for (auto& other : lin) {
                Int ao = dot(a, other);
                if (ao != 0) other = primitive(sub(scale(other, al), scale(l, ao)));
            }
            for (auto& r : rays) {
                Int ar = dot(a, r.v);
                if (ar != 0) r.v = primitive(sub(scale(r.v, al), scale(l, ar)));
                r.zeros.resize(m);
                r.zeros.set(k);
            }
            DdRay nr{primitive(l), boost::dynamic_bitset<>(m)};
            for (std::size_t j = 0; j < k; ++j) nr.zeros.set(j);
            rays.push_back(std::move(nr));
            continue;
        }

        std::vector<Int> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            rays[i].zeros.resize(m);
            val[i] = dot(a, rays[i].v);
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
        }
        std::vector<DdRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0) continue;
            DdRay r = rays[i];
            if (val[i] == 0) r.zeros.set(k);
            next.push_back(std::move(r));
        }
        const std::size_t pointed_dim = dim - lin.size();
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                auto common = rays[p].zeros & rays[q].zeros;
                if (pointed_dim >= 2 && common.count() + 2 < pointed_dim) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == q) continue;
                    if (common.is_subset_of(rays[o].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                IntVector c = primitive(sub(scale(rays[q].v, val[p]), scale(rays[p].v, val[q])));
                common.set(k);
                next.push_back({std::move(c), std::move(common)});
            }
        rays = std::move(next);
    }

    DdResult out;
    out.lineality = std::move(lin);
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

// Orthogonal projection of v onto the complement of span(basis), scaled to a
// primitive integer vector. `ortho` must be an orthogonal basis of that span.
IntVector project_out(const IntVector& v, const std::vector<RationalVector>& ortho) {
    if (ortho.empty()) return primitive(v);
    RationalVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rational(v[i]);
    for (const auto& b : ortho) {
        Rational num = 0, den = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            num += w[i] * b[i];
            den += b[i] * b[i];
        }
        Rational f = num / den;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * b[i];
    }
    Int l = 1;
    for (const auto& x : w) l = lcm(l, boost::multiprecision::denominator(x));
    IntVector out(v.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = boost::multiprecision::numerator(w[i] * Rational(l));
    return primitive(out);
}

std::vector<RationalVector> gram_schmidt(const std::vector<IntVector>& basis) {
    std::vector<RationalVector> out;
    for (const auto& v : basis) {
        RationalVector w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rational(v[i]);
        for (const auto& b : out) {
            Rational num = 0, den = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                num += w[i] * b[i];
                den += b[i] * b[i];
            }
            Rational f = num / den;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * b[i];
        }
        if (std::any_of(w.begin(), w.end(), [](const Rational& x) { return x != 0; })) out.push_back(std::move(w));
    }
    return out;
}

std::vector<IntVector> canonical_vectors(const std::vector<IntVector>& vs, const std::vector<IntVector>& modulo) {
    auto ortho = gram_schmidt(modulo);
    std::vector<IntVector> out;
    for (const auto& v : vs) {
        IntVector c = project_out(v, ortho);
        if (!is_zero(c)) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Canonical basis of a linear subspace given by spanning vectors: the Hermite
// basis of its saturated lattice.
std::vector<IntVector> canonical_subspace(std::size_t dim, const std::vector<IntVector>& span) {
    if (span.empty()) return {};
    // Saturated lattice = kernel of the kernel.
    auto perp = solve_lattice(IntMatrix::from_rows(span, dim), IntVector(span.size()))->kernel_basis;
    if (perp.empty()) {
        std::vector<IntVector> id;
        for (std::size_t i = 0; i < dim; ++i) {
            IntVector e(dim);
            e[i] = 1;
            id.push_back(std::move(e));
        }
        return id;
    }
    return solve_lattice(IntMatrix::from_rows(perp, dim), IntVector(perp.size()))->kernel_basis;
}

std::vector<IntVector> with_negations(const std::vector<IntVector>& vs) {
    std::vector<IntVector> out;
    for (const auto& v : vs) {
        out.push_back(v);
        out.push_back(scale(v, Int(-1)));
    }
    return out;
}

}  // namespace

std::size_t DualDescription::cone_dim() const { return dim - equations.size(); }

bool DualDescription::contains(const IntVector& x) const {
    for (const auto& e : equations)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets)
        if (dot(f, x) < 0) return false;
    return true;
}

bool DualDescription::contains_interior(const IntVector& x) const {
    for (const auto& e : equations)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets)
        if (dot(f, x) <= 0) return false;
    return true;
}

DualDescription dual_description_from_rays(std::size_t dim, const std::vector<IntVector>& generators,
                                           const std::vector<IntVector>& lineality) {
    for (const auto& g : generators)
        if (g.size() != dim) throw Error(ErrorCode::InvalidInput, "generator has wrong dimension");
    std::vector<IntVector> cons = generators;
    for (const auto& l : with_negations(lineality)) cons.push_back(l);
    auto dual = double_description(dim, cons);

    DualDescription out;
    out.dim = dim;
    out.equations = canonical_subspace(dim, dual.lineality);
    out.facets = canonical_vectors(dual.rays, out.equations);

    std::vector<IntVector> back = out.facets;
    for (const auto& e : with_negations(out.equations)) back.push_back(e);
    auto primal = double_description(dim, back);
    out.lineality = canonical_subspace(dim, primal.lineality);
    out.rays = canonical_vectors(primal.rays, out.lineality);
    return out;
}

DualDescription dual_description_from_facets(std::size_t dim, const std::vector<IntVector>& facets,
                                             const std::vector<IntVector>& equations) {
    for (const auto& f : facets)
        if (f.size() != dim) throw Error(ErrorCode::InvalidInput, "inequality has wrong dimension");
    std::vector<IntVector> cons = facets;
    for (const auto& e : with_negations(equations)) cons.push_back(e);
    auto primal = double_description(dim, cons);
    return dual_description_from_rays(dim, primal.rays, primal.lineality);
}

}  // namespace logfirm
