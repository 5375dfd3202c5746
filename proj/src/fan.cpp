#include "logfirm/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace logfirm {

namespace {

ComplexCone make_cone(std::size_t lattice_rank, const std::vector<IntVector>& rays) {
    ComplexCone c;
    c.lattice_rank = lattice_rank;
    c.dd = dual_description_from_rays(lattice_rank, rays);
    if (!c.dd.pointed()) throw Error(ErrorCode::NotSharp, "cone is not pointed");
    c.rays = c.dd.rays;
    return c;
}

// Ray subsets (as index lists into dd.rays) of all faces, zero face included.
std::vector<std::vector<std::size_t>> face_ray_sets(const DualDescription& dd) {
    std::vector<std::size_t> all(dd.rays.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::vector<std::size_t>> zero_sets;
    for (const auto& f : dd.facets) {
        std::vector<std::size_t> z;
        for (std::size_t i = 0; i < dd.rays.size(); ++i)
            if (dot(f, dd.rays[i]) == 0) z.push_back(i);
        zero_sets.push_back(std::move(z));
    }
    std::set<std::vector<std::size_t>> seen{all};
    std::vector<std::vector<std::size_t>> queue{all};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& z : zero_sets) {
            std::vector<std::size_t> meet;
            std::set_intersection(queue[q].begin(), queue[q].end(), z.begin(), z.end(), std::back_inserter(meet));
            if (seen.insert(meet).second) queue.push_back(meet);
        }
    }
    std::vector<std::vector<std::size_t>> out(seen.begin(), seen.end());
    return out;
}

std::vector<IntVector> pick(const std::vector<IntVector>& rays, const std::vector<std::size_t>& idx) {
    std::vector<IntVector> out;
    for (auto i : idx) out.push_back(rays[i]);
    return out;
}

void require_embedded(const ConeComplex& c, const char* what) {
    if (!c.embedded()) throw Error(ErrorCode::InvalidInput, std::string(what) + " needs an embedded fan");
}

bool in_support(const ConeComplex& c, const std::vector<std::size_t>& maximal, const IntVector& x) {
    return std::any_of(maximal.begin(), maximal.end(), [&](std::size_t i) { return c.cones[i].dd.contains(x); });
}

bool contained_in(const ComplexCone& small, const ComplexCone& big) {
    return std::all_of(small.rays.begin(), small.rays.end(), [&](const IntVector& r) { return big.dd.contains(r); });
}

void for_each_box_point(std::size_t d, const Int& lo, const Int& hi, const std::function<void(const IntVector&)>& f) {
    if (hi < lo) return;
    IntVector x(d, lo);
    while (true) {
        f(x);
        std::size_t i = 0;
        while (i < d && x[i] == hi) x[i++] = lo;
        if (i == d) return;
        ++x[i];
    }
}

// Every probe point of |a| lies in |b|: lattice points of the box
// [-radius, radius]^d and small nonnegative combinations of rays.
bool support_contains(const ConeComplex& a, const ConeComplex& b, long radius) {
    auto ma = a.maximal_cones();
    auto mb = b.maximal_cones();
    std::size_t d = *a.ambient_rank;
    bool ok = true;
    for_each_box_point(d, -radius, radius, [&](const IntVector& x) {
        if (ok && in_support(a, ma, x) && !in_support(b, mb, x)) ok = false;
    });
    if (!ok) return false;
    for (auto i : ma) {
        const auto& rays = a.cones[i].rays;
        std::vector<int> coef(rays.size(), 0);
        while (true) {
            IntVector x(d);
            for (std::size_t j = 0; j < rays.size(); ++j) x = add(x, scale(rays[j], coef[j]));
            if (!in_support(b, mb, x)) return false;
            std::size_t j = 0;
            while (j < coef.size() && coef[j] == 2) coef[j++] = 0;
            if (j == coef.size()) break;
            ++coef[j];
        }
    }
    return true;
}

}  // namespace

std::vector<std::size_t> ConeComplex::maximal_cones() const {
    std::vector<bool> proper(cones.size(), false);
    for (const auto& fm : face_maps)
        if (fm.face != fm.cone) proper[fm.face] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (!proper[i]) out.push_back(i);
    return out;
}

std::vector<const FaceMap*> ConeComplex::faces_of(std::size_t cone) const {
    std::vector<const FaceMap*> out;
    for (const auto& fm : face_maps)
        if (fm.cone == cone) out.push_back(&fm);
    return out;
}

ConeComplex embedded_fan(std::size_t ambient_rank, const std::vector<std::vector<IntVector>>& cone_rays,
                         const Int& scale_, bool check) {
    if (scale_ < 1) throw Error(ErrorCode::InvalidInput, "lattice scale must be positive");
    ConeComplex c;
    c.ambient_rank = ambient_rank;
    c.scale = scale_;
    std::map<std::vector<IntVector>, std::size_t> index;
    for (const auto& rays : cone_rays) {
        auto cone = make_cone(ambient_rank, rays);
        if (!index.emplace(cone.rays, c.cones.size()).second)
            throw Error(ErrorCode::InvalidInput, "cone listed twice");
        c.cones.push_back(std::move(cone));
    }
    auto id = IntMatrix::identity(ambient_rank);
    for (std::size_t i = 0; i < c.cones.size(); ++i) {
        for (const auto& f : face_ray_sets(c.cones[i].dd)) {
            auto rays = pick(c.cones[i].rays, f);
            auto it = index.find(rays);
            std::size_t j;
            if (it == index.end()) {
                j = c.cones.size();
                index.emplace(rays, j);
                c.cones.push_back(make_cone(ambient_rank, rays));
            } else {
                j = it->second;
            }
            c.face_maps.push_back({j, i, id});
        }
    }
    if (check && !is_well_formed(c)) throw Error(ErrorCode::InvalidInput, "cones do not meet along faces");
    return c;
}

ConeComplex orthant(std::size_t r) {
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < r; ++i) {
        IntVector e(r);
        e[i] = 1;
        rays.push_back(e);
    }
    return embedded_fan(r, {rays});
}

ConeComplex cone_union(const std::vector<DualDescription>& input) {
    ConeComplex c;
    for (const auto& dd : input) c.cones.push_back(make_cone(dd.dim, dd.rays));
    std::size_t n = c.cones.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t L = c.cones[i].lattice_rank;
        auto id = IntMatrix::identity(L);
        std::map<std::vector<std::size_t>, std::size_t> local;
        auto sets = face_ray_sets(c.cones[i].dd);
        for (const auto& f : sets) {
            if (f.size() == c.cones[i].rays.size()) {
                local[f] = i;
                continue;
            }
            local[f] = c.cones.size();
            c.cones.push_back(make_cone(L, pick(c.cones[i].rays, f)));
        }
        // tau <= sigma inside this block when the ray sets are nested.
        for (const auto& [fs, fi] : local)
            for (const auto& [gs, gi] : local)
                if (std::includes(gs.begin(), gs.end(), fs.begin(), fs.end())) c.face_maps.push_back({fi, gi, id});
    }
    return c;
}

bool is_well_formed(const ConeComplex& c) {
    for (const auto& fm : c.face_maps) {
        const auto& tau = c.cones[fm.face];
        const auto& sigma = c.cones[fm.cone];
        std::vector<IntVector> img;
        for (const auto& r : tau.rays) img.push_back(fm.matrix * r);
        auto dd = dual_description_from_rays(sigma.lattice_rank, img);
        bool is_face = false;
        for (const auto& f : face_ray_sets(sigma.dd))
            if (pick(sigma.rays, f) == dd.rays) is_face = true;
        if (!is_face) return false;
    }
    if (!c.embedded()) return true;
    std::map<std::vector<IntVector>, std::size_t> index;
    for (std::size_t i = 0; i < c.cones.size(); ++i) index[c.cones[i].rays] = i;
    auto maximal = c.maximal_cones();
    std::size_t d = *c.ambient_rank;
    for (std::size_t a = 0; a < maximal.size(); ++a) {
        for (std::size_t b = a + 1; b < maximal.size(); ++b) {
            const auto& s = c.cones[maximal[a]].dd;
            const auto& t = c.cones[maximal[b]].dd;
            auto facets = s.facets;
            facets.insert(facets.end(), t.facets.begin(), t.facets.end());
            auto eqs = s.equations;
            eqs.insert(eqs.end(), t.equations.begin(), t.equations.end());
            auto meet = dual_description_from_facets(d, facets, eqs);
            auto it = index.find(meet.rays);
            if (it == index.end()) return false;
            bool fa = false, fb = false;
            for (const auto& fm : c.face_maps) {
                if (fm.face != it->second) continue;
                fa = fa || fm.cone == maximal[a];
                fb = fb || fm.cone == maximal[b];
            }
            if (!fa || !fb) return false;
        }
    }
    return true;
}

IntegralPoint canonicalize_point(const ConeComplex& c, const IntegralPoint& p) {
    if (p.cone >= c.cones.size()) throw Error(ErrorCode::InvalidInput, "cone index out of range");
    const auto& sigma = c.cones[p.cone];
    if (p.coords.size() != sigma.lattice_rank) throw Error(ErrorCode::InvalidInput, "point has wrong dimension");
    if (!sigma.dd.contains(p.coords)) throw Error(ErrorCode::PointOutsideCone, "point " + to_string(p.coords) + " is not in the cone");
    IntegralPoint best = p;
    std::size_t best_dim = sigma.dim();
    for (const auto* fm : c.faces_of(p.cone)) {
        const auto& tau = c.cones[fm->face];
        if (tau.dim() >= best_dim) continue;
        IntVector y;
        if (fm->matrix == IntMatrix::identity(tau.lattice_rank)) {
            y = p.coords;
        } else {
            auto s = solve_lattice(fm->matrix, p.coords);
            if (!s) continue;
            y = s->particular;
        }
        if (tau.dd.contains(y)) {
            best = {fm->face, y};
            best_dim = tau.dim();
        }
    }
    return best;
}

ConeComplexMap make_map(const ConeComplex& source, const ConeComplex& target,
                        const std::vector<std::size_t>& target_cone, const std::vector<IntMatrix>& matrix) {
    if (target_cone.size() != matrix.size() || target_cone.size() > source.cones.size())
        throw Error(ErrorCode::InvalidInput, "map needs one assignment per listed cone");
    ConeComplexMap f;
    f.target_cone.assign(source.cones.size(), 0);
    f.matrix.assign(source.cones.size(), IntMatrix());
    std::vector<bool> set(source.cones.size(), false);
    for (std::size_t i = 0; i < target_cone.size(); ++i) {
        if (target_cone[i] >= target.cones.size()) throw Error(ErrorCode::InvalidInput, "target cone index out of range");
        const auto& m = matrix[i];
        if (m.rows() != target.cones[target_cone[i]].lattice_rank || m.cols() != source.cones[i].lattice_rank)
            throw Error(ErrorCode::InvalidInput, "map matrix has wrong shape");
        f.target_cone[i] = target_cone[i];
        f.matrix[i] = m;
        set[i] = true;
    }
    for (std::size_t i = target_cone.size(); i < source.cones.size(); ++i) {
        for (const auto& fm : source.face_maps) {
            if (fm.face != i || fm.cone >= target_cone.size()) continue;
            f.target_cone[i] = f.target_cone[fm.cone];
            f.matrix[i] = f.matrix[fm.cone] * fm.matrix;
            set[i] = true;
            break;
        }
        if (!set[i]) throw Error(ErrorCode::InvalidInput, "cone without a map assignment");
    }
    for (std::size_t i = 0; i < source.cones.size(); ++i)
        for (const auto& r : source.cones[i].rays)
            if (!target.cones[f.target_cone[i]].dd.contains(f.matrix[i] * r))
                throw Error(ErrorCode::InvalidInput, "map sends a ray outside its target cone");
    for (const auto& fm : source.face_maps) {
        for (const auto& r : source.cones[fm.face].rays) {
            auto direct = map_point(target, f, {fm.face, r});
            auto via = map_point(target, f, {fm.cone, fm.matrix * r});
            if (!(direct == via)) throw Error(ErrorCode::InvalidInput, "map does not commute with face maps");
        }
    }
    return f;
}

IntegralPoint map_point(const ConeComplex& target, const ConeComplexMap& f, const IntegralPoint& p) {
    if (p.cone >= f.target_cone.size()) throw Error(ErrorCode::InvalidInput, "cone index out of range");
    return canonicalize_point(target, {f.target_cone[p.cone], f.matrix[p.cone] * p.coords});
}

ConeComplexMap compose(const ConeComplexMap& g, const ConeComplexMap& f) {
    ConeComplexMap h;
    for (std::size_t i = 0; i < f.target_cone.size(); ++i) {
        std::size_t j = f.target_cone[i];
        h.target_cone.push_back(g.target_cone.at(j));
        h.matrix.push_back(g.matrix.at(j) * f.matrix[i]);
    }
    return h;
}

ConeComplexMap subdivision_map(const ConeComplex& fine, const ConeComplex& coarse) {
    require_embedded(fine, "subdivision_map");
    require_embedded(coarse, "subdivision_map");
    if (*fine.ambient_rank != *coarse.ambient_rank || fine.scale != coarse.scale)
        throw Error(ErrorCode::InvalidInput, "fans live in different lattices");
    ConeComplexMap f;
    auto id = IntMatrix::identity(*fine.ambient_rank);
    for (const auto& cone : fine.cones) {
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < coarse.cones.size(); ++j)
            if (contained_in(cone, coarse.cones[j]) && (!best || coarse.cones[j].dim() < coarse.cones[*best].dim()))
                best = j;
        if (!best) throw Error(ErrorCode::InvalidInput, "cone is not contained in any cone of the coarse fan");
        f.target_cone.push_back(*best);
        f.matrix.push_back(id);
    }
    return f;
}

Subdivision star_subdivision(const ConeComplex& c, const IntVector& v) {
    require_embedded(c, "star_subdivision");
    if (v.size() != *c.ambient_rank) throw Error(ErrorCode::InvalidInput, "vector has wrong dimension");
    if (content(v) != 1) throw Error(ErrorCode::NotPrimitive, to_string(v) + " is not primitive");
    auto maximal = c.maximal_cones();
    if (!in_support(c, maximal, v)) throw Error(ErrorCode::OutsideSupport, to_string(v) + " is outside the support");
    std::vector<std::vector<IntVector>> cones;
    for (auto i : maximal) {
        const auto& s = c.cones[i];
        if (!s.dd.contains(v)) {
            cones.push_back(s.rays);
            continue;
        }
        for (const auto& f : s.dd.facets) {
            if (dot(f, v) == 0) continue;
            std::vector<IntVector> rays{v};
            for (const auto& r : s.rays)
                if (dot(f, r) == 0) rays.push_back(r);
            cones.push_back(rays);
        }
    }
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    Subdivision out;
    out.fine = embedded_fan(*c.ambient_rank, cones, c.scale, false);
    out.map = subdivision_map(out.fine, c);
    return out;
}

ConeComplex common_refinement(const ConeComplex& a, const ConeComplex& b, long probe_radius) {
    require_embedded(a, "common_refinement");
    require_embedded(b, "common_refinement");
    if (*a.ambient_rank != *b.ambient_rank || a.scale != b.scale)
        throw Error(ErrorCode::InvalidInput, "fans live in different lattices");
    if (!support_contains(a, b, probe_radius) || !support_contains(b, a, probe_radius))
        throw Error(ErrorCode::SupportMismatch, "fans have different supports");
    std::size_t d = *a.ambient_rank;
    std::vector<ComplexCone> pieces;
    for (auto i : a.maximal_cones()) {
        for (auto j : b.maximal_cones()) {
            const auto& s = a.cones[i].dd;
            const auto& t = b.cones[j].dd;
            auto facets = s.facets;
            facets.insert(facets.end(), t.facets.begin(), t.facets.end());
            auto eqs = s.equations;
            eqs.insert(eqs.end(), t.equations.begin(), t.equations.end());
            auto meet = dual_description_from_facets(d, facets, eqs);
            pieces.push_back(make_cone(d, meet.rays));
        }
    }
    std::vector<std::vector<IntVector>> keep;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pieces.size() && !dominated; ++j) {
            if (i == j || !contained_in(pieces[i], pieces[j])) continue;
            // Equal pieces: keep the first copy only.
            dominated = pieces[i].rays != pieces[j].rays || j < i;
        }
        if (!dominated) keep.push_back(pieces[i].rays);
    }
    std::sort(keep.begin(), keep.end());
    return embedded_fan(d, keep, a.scale, false);
}

ConeComplex root_rescale(const ConeComplex& c, const Int& k) {
    if (k < 1) throw Error(ErrorCode::InvalidInput, "rescaling factor must be positive");
    ConeComplex out = c;
    out.scale *= k;
    return out;
}

bool is_refinement(const ConeComplex& fine, const ConeComplex& coarse, long probe_radius) {
    require_embedded(fine, "is_refinement");
    require_embedded(coarse, "is_refinement");
    if (*fine.ambient_rank != *coarse.ambient_rank) return false;
    if (fine.scale % coarse.scale != 0) return false;
    auto mc = coarse.maximal_cones();
    for (auto i : fine.maximal_cones()) {
        bool inside = std::any_of(mc.begin(), mc.end(), [&](std::size_t j) { return contained_in(fine.cones[i], coarse.cones[j]); });
        if (!inside) return false;
    }
    return support_contains(coarse, fine, probe_radius);
}

std::vector<IntegralPoint> lattice_points_box(const ConeComplex& c, long bound) {
    require_embedded(c, "lattice_points_box");
    if (bound < 0) throw Error(ErrorCode::InvalidInput, "box bound must be nonnegative");
    std::vector<std::size_t> order(c.cones.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c.cones[a].dim() < c.cones[b].dim(); });
    std::vector<IntegralPoint> out;
    for_each_box_point(*c.ambient_rank, 0, c.scale * bound, [&](const IntVector& x) {
        for (auto i : order) {
            if (c.cones[i].dd.contains(x)) {
                out.push_back({i, x});
                return;
            }
        }
    });
    return out;
}

}  // namespace logfirm
