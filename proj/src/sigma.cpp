#include <algorithm>
#include <map>
#include <set>

#include "logfirm/fan.hpp"

namespace logfirm {

namespace {

std::vector<IntVector> primitive_vectors(std::size_t r, std::size_t n) {
    std::vector<IntVector> out;
    IntVector x(r, 0);
    while (true) {
        std::size_t i = 0;
        while (i < r && x[i] == Int(n)) x[i++] = 0;
        if (i == r) break;
        ++x[i];
        if (content(x) == 1) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ConeComplex rank_two(std::size_t n) {
    auto rays = primitive_vectors(2, n);
    // Order by slope from (1,0) towards (0,1).
    std::sort(rays.begin(), rays.end(), [](const IntVector& u, const IntVector& v) { return u[1] * v[0] < v[1] * u[0]; });
    std::vector<std::vector<IntVector>> cones;
    for (std::size_t i = 0; i + 1 < rays.size(); ++i) cones.push_back({rays[i], rays[i + 1]});
    return embedded_fan(2, cones, 1, false);
}

// Rank three: subdividing at x and then at y makes cone(x, y) a wall, so
// the walls of all ordered stellar subdivisions together are the 2-cones
// spanned by any two of the vectors. The common refinement is the
// arrangement of those segments in the triangle {x >= 0, x0 + x1 + x2 = 1}.
// Points of the triangle are stored by their last two barycentric
// coordinates.

using Pt = std::pair<Rational, Rational>;

Rational cross(const Pt& a, const Pt& b) { return a.first * b.second - a.second * b.first; }
Pt minus(const Pt& a, const Pt& b) { return {a.first - b.first, a.second - b.second}; }

Pt project(const IntVector& x) {
    Int s = x[0] + x[1] + x[2];
    return {Rational(x[1], s), Rational(x[2], s)};
}

IntVector lift(const Pt& p) {
    Rational c0 = 1 - p.first - p.second;
    Int den = lcm(lcm(denominator(c0), denominator(p.first)), denominator(p.second));
    IntVector v{numerator(Rational(c0 * den)), numerator(Rational(p.first * den)), numerator(Rational(p.second * den))};
    return primitive(v);
}

int half(const Pt& d) { return (d.second > 0 || (d.second == 0 && d.first > 0)) ? 0 : 1; }

ConeComplex rank_three(std::size_t n) {
    auto vecs = primitive_vectors(3, n);
    std::vector<std::pair<IntVector, IntVector>> segs;
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i + 1; j < vecs.size(); ++j) segs.push_back({vecs[i], vecs[j]});
    if (segs.size() > 2500) throw ResourceLimit("sigma_n arrangement has too many walls");

    std::vector<Pt> a(segs.size()), b(segs.size());
    for (std::size_t s = 0; s < segs.size(); ++s) {
        a[s] = project(segs[s].first);
        b[s] = project(segs[s].second);
    }
    std::map<Pt, std::size_t> vid;
    std::vector<Pt> verts;
    auto vertex = [&](const Pt& p) {
        auto [it, fresh] = vid.emplace(p, verts.size());
        if (fresh) verts.push_back(p);
        return it->second;
    };
    std::vector<std::vector<std::size_t>> on(segs.size());
    for (std::size_t s = 0; s < segs.size(); ++s) {
        on[s].push_back(vertex(a[s]));
        on[s].push_back(vertex(b[s]));
    }
    auto within = [&](std::size_t s, const Pt& p) {
        Pt r = minus(b[s], a[s]), q = minus(p, a[s]);
        if (cross(r, q) != 0) return false;
        Rational t = r.first * q.first + r.second * q.second;
        return t >= 0 && t <= r.first * r.first + r.second * r.second;
    };
    for (std::size_t s = 0; s < segs.size(); ++s) {
        Pt r = minus(b[s], a[s]);
        for (std::size_t t = s + 1; t < segs.size(); ++t) {
            Pt u = minus(b[t], a[t]);
            Rational den = cross(r, u);
            Pt qp = minus(a[t], a[s]);
            if (den == 0) {
                if (cross(qp, r) != 0) continue;
                for (const Pt* p : {&a[t], &b[t]})
                    if (within(s, *p)) on[s].push_back(vertex(*p));
                for (const Pt* p : {&a[s], &b[s]})
                    if (within(t, *p)) on[t].push_back(vertex(*p));
                continue;
            }
            Rational lam = cross(qp, u) / den, mu = cross(qp, r) / den;
            if (lam < 0 || lam > 1 || mu < 0 || mu > 1) continue;
            auto v = vertex({a[s].first + lam * r.first, a[s].second + lam * r.second});
            on[s].push_back(v);
            on[t].push_back(v);
        }
    }
    std::vector<std::set<std::size_t>> adj(verts.size());
    for (std::size_t s = 0; s < segs.size(); ++s) {
        Pt r = minus(b[s], a[s]);
        auto& list = on[s];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        std::sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) {
            Pt px = minus(verts[x], a[s]), py = minus(verts[y], a[s]);
            return r.first * px.first + r.second * px.second < r.first * py.first + r.second * py.second;
        });
        for (std::size_t i = 0; i + 1 < list.size(); ++i) {
            adj[list[i]].insert(list[i + 1]);
            adj[list[i + 1]].insert(list[i]);
        }
    }
    // Neighbours in counterclockwise order.
    std::vector<std::vector<std::size_t>> nb(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v) {
        nb[v].assign(adj[v].begin(), adj[v].end());
        std::sort(nb[v].begin(), nb[v].end(), [&](std::size_t x, std::size_t y) {
            Pt dx = minus(verts[x], verts[v]), dy = minus(verts[y], verts[v]);
            int hx = half(dx), hy = half(dy);
            if (hx != hy) return hx < hy;
            return cross(dx, dy) > 0;
        });
    }
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::vector<std::vector<IntVector>> cones;
    for (std::size_t u0 = 0; u0 < verts.size(); ++u0) {
        for (auto v0 : nb[u0]) {
            if (used.count({u0, v0})) continue;
            std::vector<std::size_t> face;
            std::size_t u = u0, v = v0;
            do {
                used.insert({u, v});
                face.push_back(u);
                const auto& around = nb[v];
                auto pos = std::find(around.begin(), around.end(), u) - around.begin();
                std::size_t w = around[(pos + around.size() - 1) % around.size()];
                u = v;
                v = w;
            } while (u != u0 || v != v0);
            Rational area = 0;
            for (std::size_t i = 0; i < face.size(); ++i)
                area += cross(verts[face[i]], verts[face[(i + 1) % face.size()]]);
            if (area <= 0) continue;  // the outer face
            std::vector<IntVector> rays;
            for (auto f : face) rays.push_back(lift(verts[f]));
            cones.push_back(dual_description_from_rays(3, rays).rays);
        }
    }
    std::sort(cones.begin(), cones.end());
    return embedded_fan(3, cones, 1, false);
}

}  // namespace

ConeComplex sigma_n(std::size_t r, std::size_t n) {
    if (r == 0 || n == 0) throw Error(ErrorCode::InvalidInput, "sigma_n needs r >= 1 and n >= 1");
    if (r == 1) return orthant(1);
    if (r == 2) return rank_two(n);
    if (r == 3) return rank_three(n);
    throw Error(ErrorCode::RankUnsupported, "sigma_n is implemented for rank at most 3");
}

}  // namespace logfirm
