#include "logfirm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace logfirm {

namespace {

constexpr double kUnit = 40;  // pixels per lattice unit

struct Canvas {
    double lo = 0, hi = 0;
    std::ostringstream body;

    double px(double x) const { return kUnit * (x - lo + 1); }
    double py(double y) const { return kUnit * (hi - y + 1); }
    long size() const { return static_cast<long>(kUnit * (hi - lo + 2)); }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return buf;
    }

    void line(double x1, double y1, double x2, double y2, const char* style) {
        body << "<line x1=\"" << num(px(x1)) << "\" y1=\"" << num(py(y1)) << "\" x2=\"" << num(px(x2)) << "\" y2=\""
             << num(py(y2)) << "\" " << style << "/>\n";
    }

    void dot(double x, double y, bool filled) {
        body << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"5\" "
             << (filled ? "fill=\"black\"" : "fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"") << "/>\n";
    }

    void axes() {
        const char* style = "stroke=\"#999\" stroke-width=\"1\"";
        line(lo, 0, hi, 0, style);
        line(0, lo, 0, hi, style);
    }

    // Segment from the origin along r to the edge of the box.
    void ray(const IntVector& r) {
        double t = -1;
        for (int i = 0; i < 2; ++i) {
            double c = static_cast<double>(r[i]);
            if (c == 0) continue;
            double s = (c > 0 ? hi : -lo) / std::abs(c);
            if (t < 0 || s < t) t = s;
        }
        if (t <= 0) return;
        line(0, 0, t * static_cast<double>(r[0]), t * static_cast<double>(r[1]),
             "stroke=\"black\" stroke-width=\"2\"");
    }

    std::string finish() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size() << "\" height=\"" << size()
            << "\" viewBox=\"0 0 " << size() << " " << size() << "\">\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

void require_plane(const ConeComplex& c) {
    if (!c.embedded() || *c.ambient_rank != 2)
        throw Error(ErrorCode::RankUnsupported, "only rank-2 embedded fans can be drawn");
}

std::vector<IntVector> sorted_rays(const ConeComplex& c) {
    std::vector<IntVector> rays;
    for (const auto& cone : c.cones)
        if (cone.dim() == 1) rays.push_back(cone.rays[0]);
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

}  // namespace

std::string fan_svg(const ConeComplex& fan, long bound) {
    require_plane(fan);
    if (bound < 1) throw Error(ErrorCode::InvalidInput, "box bound must be positive");
    auto rays = sorted_rays(fan);
    bool negative = false;
    for (const auto& r : rays) negative = negative || r[0] < 0 || r[1] < 0;
    Canvas cv;
    cv.lo = negative ? -bound : 0;
    cv.hi = static_cast<double>(bound);
    cv.axes();
    for (const auto& r : rays) cv.ray(r);
    const Int s = fan.scale;
    const long lo = negative ? -bound : 0;
    for (Int x = lo * s; x <= bound * s; ++x)
        for (Int y = lo * s; y <= bound * s; ++y) {
            IntVector p{x, y};
            bool inside = std::any_of(fan.cones.begin(), fan.cones.end(), [&](const ComplexCone& c) { return c.dd.contains(p); });
            if (inside) cv.dot(static_cast<double>(x) / static_cast<double>(s), static_cast<double>(y) / static_cast<double>(s), true);
        }
    return cv.finish();
}

std::string firmament_svg(const Firmament& g, long bound) {
    require_plane(g.target);
    if (g.target.scale != 1) throw Error(ErrorCode::InvalidInput, "firmament target must be unscaled");
    if (bound < 1) throw Error(ErrorCode::InvalidInput, "box bound must be positive");
    Canvas cv;
    cv.hi = static_cast<double>(bound);
    cv.axes();
    for (const auto& r : sorted_rays(g.target)) cv.ray(r);
    for (const auto& p : lattice_points_box(g.target, bound))
        cv.dot(static_cast<double>(p.coords[0]), static_cast<double>(p.coords[1]), firmament_member(g, p));
    return cv.finish();
}

}  // namespace logfirm
