#include "logfirm/monoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace logfirm {

namespace {

// Lattice coordinates of x with respect to the columns of a basis matrix of
// full column rank.
std::optional<IntVector> coordinates_in(const IntMatrix& basis, const IntVector& x) {
    if (basis.cols() == 0) {
        if (is_zero(x)) return IntVector{};
        return std::nullopt;
    }
    auto sol = solve_lattice(basis, x);
    if (!sol) return std::nullopt;
    return sol->particular;
}

Int degree(const DualDescription& cone, const IntVector& x) {
    Int d = 0;
    for (const auto& f : cone.facets) d += dot(f, x);
    return d;
}

constexpr double kMaxHilbertBox = 2.0e7;

// Irreducible elements of a pointed full-dimensional cone in Z^r. Every
// Hilbert basis element lies in the zonotope spanned by the extreme rays, so
// the zonotope's bounding box is searched.
std::vector<IntVector> compute_hilbert(const DualDescription& cone) {
    const std::size_t r = cone.dim;
    if (r == 0) return {};
    IntVector lo(r), hi(r);
    for (const auto& ray : cone.rays)
        for (std::size_t j = 0; j < r; ++j) {
            if (ray[j] < 0) lo[j] += ray[j];
            else hi[j] += ray[j];
        }
    double volume = 1;
    for (std::size_t j = 0; j < r; ++j) volume *= (hi[j] - lo[j] + 1).convert_to<double>();
    if (volume > kMaxHilbertBox) throw ResourceLimit("Hilbert basis search box too large");
    std::vector<Int> cap;
    for (const auto& f : cone.facets) {
        Int c = 0;
        for (const auto& ray : cone.rays) c += dot(f, ray);
        cap.push_back(c);
    }

    std::vector<std::pair<Int, IntVector>> candidates;
    IntVector x = lo;
    for (;;) {
        bool ok = !is_zero(x);
        for (std::size_t i = 0; ok && i < cone.facets.size(); ++i) {
            Int v = dot(cone.facets[i], x);
            if (v < 0 || v > cap[i]) ok = false;
        }
        if (ok) candidates.emplace_back(degree(cone, x), x);
        std::size_t j = 0;
        while (j < r && x[j] == hi[j]) {
            x[j] = lo[j];
            ++j;
        }
        if (j == r) break;
        x[j] += 1;
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<IntVector> basis;
    for (const auto& [deg, c] : candidates) {
        bool reducible = std::any_of(basis.begin(), basis.end(), [&](const IntVector& h) {
            return cone.contains(sub(c, h));
        });
        if (!reducible) basis.push_back(c);
    }
    return basis;
}

std::vector<IntVector> identity_rows(std::size_t n) {
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return rows;
}

}  // namespace

// Rows spanning the integer functionals that vanish on `span`; a surjection
// Z^n -> Z^(n - rank span) with kernel exactly the saturation of span. Rows
// that are nonpositive on all of `positive` are flipped.
IntMatrix quotient_map(std::size_t n, const std::vector<IntVector>& span, const std::vector<IntVector>& positive) {
    std::vector<IntVector> rows;
    if (span.empty() || std::all_of(span.begin(), span.end(), [](const IntVector& v) { return is_zero(v); }))
        rows = identity_rows(n);
    else
        rows = solve_lattice(IntMatrix::from_rows(span, n), IntVector(span.size()))->kernel_basis;
    for (auto& row : rows) {
        bool has_neg = false, has_pos = false;
        for (const auto& p : positive) {
            Int v = dot(row, p);
            if (v < 0) has_neg = true;
            if (v > 0) has_pos = true;
        }
        if (has_neg && !has_pos) row = scale(row, Int(-1));
    }
    IntMatrix e(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) e(i, j) = rows[i][j];
    return e;
}

// ---------------------------------------------------------------------------
// AffineMonoid

AffineMonoid AffineMonoid::build(std::size_t ambient_rank, IntMatrix basis, std::vector<IntVector> generators,
                                 DualDescription cone) {
    AffineMonoid m;
    m.ambient_rank_ = ambient_rank;
    m.basis_ = std::move(basis);
    m.generators_ = std::move(generators);
    m.cone_ = std::move(cone);
    if (m.cone_.pointed()) {
        auto h = compute_hilbert(m.cone_);
        std::vector<std::pair<IntVector, IntVector>> keyed;
        for (auto& v : h) keyed.emplace_back(m.basis_ * v, v);
        std::sort(keyed.begin(), keyed.end());
        for (auto& [amb, v] : keyed) m.hilbert_.push_back(std::move(v));
    }
    return m;
}

AffineMonoid AffineMonoid::saturate(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
    for (const auto& g : generators)
        if (g.size() != ambient_rank) throw Error(ErrorCode::InvalidInput, "generator has wrong length");
    auto cols = lattice_basis(generators, ambient_rank);
    IntMatrix basis = cols.empty() ? IntMatrix(ambient_rank, 0) : IntMatrix::from_columns(cols, ambient_rank);
    std::vector<IntVector> local;
    for (const auto& g : generators)
        if (!is_zero(g)) local.push_back(*coordinates_in(basis, g));
    auto cone = dual_description_from_rays(basis.cols(), local);
    return build(ambient_rank, std::move(basis), generators, std::move(cone));
}

AffineMonoid AffineMonoid::from_cone(const DualDescription& cone) {
    const std::size_t d = cone.dim;
    IntMatrix basis = IntMatrix::identity(d);
    if (!cone.equations.empty()) {
        auto ker = solve_lattice(IntMatrix::from_rows(cone.equations, d), IntVector(cone.equations.size()))->kernel_basis;
        auto cols = lattice_basis(ker, d);
        basis = cols.empty() ? IntMatrix(d, 0) : IntMatrix::from_columns(cols, d);
    }
    std::vector<IntVector> rays, lin, gens;
    for (const auto& r : cone.rays) {
        rays.push_back(*coordinates_in(basis, r));
        gens.push_back(r);
    }
    for (const auto& l : cone.lineality) {
        lin.push_back(*coordinates_in(basis, l));
        gens.push_back(l);
        gens.push_back(scale(l, Int(-1)));
    }
    auto local = dual_description_from_rays(basis.cols(), rays, lin);
    return build(d, std::move(basis), std::move(gens), std::move(local));
}

AffineMonoid AffineMonoid::free(std::size_t rank) { return saturate(rank, identity_rows(rank)); }

AffineMonoid AffineMonoid::trivial(std::size_t ambient_rank) { return saturate(ambient_rank, {}); }

const std::vector<IntVector>& AffineMonoid::hilbert() const {
    if (!sharp()) throw Error(ErrorCode::NotSharp, "monoid has nontrivial units");
    return hilbert_;
}

std::vector<IntVector> AffineMonoid::hilbert_ambient() const {
    std::vector<IntVector> out;
    for (const auto& h : hilbert()) out.push_back(to_ambient(h));
    return out;
}

bool AffineMonoid::contains_ambient(const IntVector& x) const {
    auto g = to_group(x);
    return g && contains(*g);
}

std::optional<IntVector> AffineMonoid::to_group(const IntVector& ambient) const {
    if (ambient.size() != ambient_rank_) throw Error(ErrorCode::InvalidInput, "vector has wrong length");
    return coordinates_in(basis_, ambient);
}

std::vector<IntVector> hilbert_basis(const AffineMonoid& m) { return m.hilbert_ambient(); }

// ---------------------------------------------------------------------------
// MonoidHom

MonoidHom::MonoidHom(AffineMonoid source, AffineMonoid target, IntMatrix group_matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(group_matrix)) {
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
        throw Error(ErrorCode::InvalidInput, "homomorphism matrix has the wrong shape");
    for (const auto& r : source_.cone().rays)
        if (!target_.contains(matrix_ * r))
            throw Error(ErrorCode::InvalidInput, "matrix does not map the source monoid into the target");
    for (const auto& l : source_.cone().lineality) {
        IntVector img = matrix_ * l;
        if (!target_.contains(img) || !target_.contains(scale(img, Int(-1))))
            throw Error(ErrorCode::InvalidInput, "matrix does not map the source monoid into the target");
    }
}

MonoidHom MonoidHom::from_ambient(AffineMonoid source, AffineMonoid target, const IntMatrix& ambient_matrix) {
    if (ambient_matrix.rows() != target.ambient_rank() || ambient_matrix.cols() != source.ambient_rank())
        throw Error(ErrorCode::InvalidInput, "homomorphism matrix has the wrong shape");
    IntMatrix img = ambient_matrix * source.group_basis();
    IntMatrix x(target.rank(), source.rank());
    for (std::size_t j = 0; j < img.cols(); ++j) {
        auto y = target.to_group(img.col(j));
        if (!y) throw Error(ErrorCode::InvalidInput, "matrix does not map the source group into the target group");
        for (std::size_t i = 0; i < y->size(); ++i) x(i, j) = (*y)[i];
    }
    return MonoidHom(std::move(source), std::move(target), std::move(x));
}

MonoidHom MonoidHom::identity(const AffineMonoid& m) { return MonoidHom(m, m, IntMatrix::identity(m.rank())); }

MonoidHom MonoidHom::zero(const AffineMonoid& source, const AffineMonoid& target) {
    return MonoidHom(source, target, IntMatrix(target.rank(), source.rank()));
}

std::vector<IntVector> MonoidHom::hilbert_images_ambient() const {
    std::vector<IntVector> out;
    for (const auto& h : source_.hilbert()) out.push_back(target_.to_ambient(apply(h)));
    return out;
}

MonoidHom MonoidHom::after(const MonoidHom& first) const {
    if (!(first.target() == source_)) throw Error(ErrorCode::InvalidInput, "homomorphisms are not composable");
    return MonoidHom(first.source(), target_, matrix_ * first.matrix());
}

// ---------------------------------------------------------------------------
// Faces

std::vector<Face> faces(const AffineMonoid& m) {
    if (!m.sharp()) throw Error(ErrorCode::NotSharp, "faces requires a sharp monoid");
    const auto& cone = m.cone();
    const auto& hil = m.hilbert();
    const std::size_t r = m.rank();
    const std::size_t k = cone.rays.size();

    using RaySet = std::vector<bool>;
    std::vector<RaySet> facet_sets;
    for (const auto& f : cone.facets) {
        RaySet s(k);
        for (std::size_t i = 0; i < k; ++i) s[i] = dot(f, cone.rays[i]) == 0;
        facet_sets.push_back(std::move(s));
    }
    std::set<RaySet> found{RaySet(k, true)};
    std::vector<RaySet> queue{RaySet(k, true)};
    while (!queue.empty()) {
        RaySet cur = queue.back();
        queue.pop_back();
        for (const auto& fs : facet_sets) {
            RaySet next(k);
            for (std::size_t i = 0; i < k; ++i) next[i] = cur[i] && fs[i];
            if (found.insert(next).second) queue.push_back(next);
        }
    }

    std::vector<Face> out;
    for (const auto& s : found) {
        IntVector normal(r);
        for (std::size_t j = 0; j < cone.facets.size(); ++j) {
            bool contains_face = true;
            for (std::size_t i = 0; i < k; ++i)
                if (s[i] && !facet_sets[j][i]) contains_face = false;
            if (contains_face) normal = add(normal, cone.facets[j]);
        }
        normal = primitive(normal);
        Face f;
        f.normal = normal;
        std::vector<IntVector> rays;
        for (std::size_t i = 0; i < k; ++i)
            if (s[i]) rays.push_back(cone.rays[i]);
        f.dim = rays.empty() ? 0 : rank(IntMatrix::from_rows(rays, r));
        for (std::size_t i = 0; i < hil.size(); ++i)
            if (dot(normal, hil[i]) == 0) f.generator_subset.push_back(i);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.generator_subset < b.generator_subset;
    });
    return out;
}

Face validate_face(const AffineMonoid& m, const Face& f) {
    const auto& hil = m.hilbert();
    std::vector<std::size_t> subset = f.generator_subset;
    if (!f.normal.empty()) {
        if (f.normal.size() != m.rank()) throw Error(ErrorCode::NotAFace, "face normal has the wrong length");
        subset.clear();
        for (std::size_t i = 0; i < hil.size(); ++i) {
            Int v = dot(f.normal, hil[i]);
            if (v < 0) throw Error(ErrorCode::NotAFace, "normal is negative on the monoid");
            if (v == 0) subset.push_back(i);
        }
    }
    std::sort(subset.begin(), subset.end());
    for (const auto& g : faces(m))
        if (g.generator_subset == subset) return g;
    throw Error(ErrorCode::NotAFace, "generator subset is not a face");
}

Face face_containing(const AffineMonoid& m, const std::vector<IntVector>& elements) {
    for (const auto& e : elements)
        if (!m.contains(e)) throw Error(ErrorCode::InvalidInput, "element is not in the monoid");
    for (const auto& f : faces(m))
        if (std::all_of(elements.begin(), elements.end(), [&](const IntVector& e) { return dot(f.normal, e) == 0; }))
            return f;
    throw Error(ErrorCode::InvalidInput, "no face contains the elements");
}

AffineMonoid face_monoid(const AffineMonoid& m, const Face& f) {
    Face g = validate_face(m, f);
    std::vector<IntVector> gens;
    for (std::size_t i : g.generator_subset) gens.push_back(m.to_ambient(m.hilbert()[i]));
    return AffineMonoid::saturate(m.ambient_rank(), gens);
}

Localization face_localization(const AffineMonoid& m, const Face& f) {
    Face g = validate_face(m, f);
    if (g.dim == 0) return {m, MonoidHom::identity(m)};
    const auto& hil = m.hilbert();
    std::vector<IntVector> span;
    for (std::size_t i : g.generator_subset) span.push_back(hil[i]);
    IntMatrix e = quotient_map(m.rank(), span, hil);
    std::vector<IntVector> images;
    for (const auto& h : hil) images.push_back(e * h);
    AffineMonoid q = AffineMonoid::saturate(e.rows(), images);
    if (!(q.group_basis() == IntMatrix::identity(e.rows())))
        throw Error(ErrorCode::InvalidInput, "internal: quotient map is not surjective");
    MonoidHom proj(m, q, e);
    return {std::move(q), std::move(proj)};
}

AffineMonoid dual(const AffineMonoid& m) {
    if (!m.sharp()) throw Error(ErrorCode::NotSharp, "dual requires a sharp monoid");
    return AffineMonoid::from_cone(dual_description_from_rays(m.rank(), m.cone().facets));
}

// ---------------------------------------------------------------------------
// Isomorphism

std::optional<IntMatrix> find_isomorphism(const AffineMonoid& a, const AffineMonoid& b) {
    if (!a.sharp() || !b.sharp()) throw Error(ErrorCode::NotSharp, "isomorphism test requires sharp monoids");
    const std::size_t r = a.rank();
    if (b.rank() != r || a.hilbert().size() != b.hilbert().size() ||
        a.cone().rays.size() != b.cone().rays.size())
        return std::nullopt;
    if (r == 0) return IntMatrix(0, 0);

    // r independent extreme rays of a.
    std::vector<std::size_t> chosen;
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < a.cone().rays.size() && chosen.size() < r; ++i) {
        rows.push_back(a.cone().rays[i]);
        if (rank(IntMatrix::from_rows(rows, r)) == rows.size()) chosen.push_back(i);
        else rows.pop_back();
    }
    IntMatrix src = IntMatrix::from_columns(rows, r);
    auto inv = rational_inverse(src);
    std::set<IntVector> target_hilbert(b.hilbert().begin(), b.hilbert().end());

    const auto& brays = b.cone().rays;
    std::vector<std::size_t> pick(r, 0);
    for (;;) {
        std::set<std::size_t> distinct(pick.begin(), pick.end());
        if (distinct.size() == r) {
            // X = T * src^{-1}
            IntMatrix x(r, r);
            bool integral = true;
            for (std::size_t i = 0; i < r && integral; ++i)
                for (std::size_t j = 0; j < r && integral; ++j) {
                    Rational s = 0;
                    for (std::size_t k = 0; k < r; ++k) s += Rational(brays[pick[k]][i]) * inv[k][j];
                    if (boost::multiprecision::denominator(s) != 1) integral = false;
                    else x(i, j) = boost::multiprecision::numerator(s);
                }
            if (integral && abs(determinant(x)) == 1) {
                bool onto = true;
                for (const auto& h : a.hilbert())
                    if (!target_hilbert.count(x * h)) {
                        onto = false;
                        break;
                    }
                if (onto) return x;
            }
        }
        std::size_t j = 0;
        while (j < r && pick[j] + 1 == brays.size()) pick[j++] = 0;
        if (j == r) break;
        ++pick[j];
    }
    return std::nullopt;
}

bool isomorphic(const AffineMonoid& a, const AffineMonoid& b) { return find_isomorphism(a, b).has_value(); }

bool is_local(const MonoidHom& h) {
    for (const auto& g : h.source().hilbert())
        if (is_zero(h.apply(g))) return false;
    return true;
}

Face kernel_face(const MonoidHom& h) {
    Face f;
    const auto& hil = h.source().hilbert();
    for (std::size_t i = 0; i < hil.size(); ++i)
        if (is_zero(h.apply(hil[i]))) f.generator_subset.push_back(i);
    return validate_face(h.source(), f);
}

}  // namespace logfirm
