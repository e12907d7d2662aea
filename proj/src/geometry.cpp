#include "stablelab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace stablelab {

namespace {

double point_segment_dist(Vec p, Vec a, Vec b) {
    Vec ab = b - a;
    double L2 = norm2(ab);
    if (L2 == 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / L2, 0.0, 1.0);
    return dist(p, a + t * ab);
}

double cross2(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }

bool strictly_inside_convex(const std::vector<Vec>& poly, Vec p) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        Vec a = poly[i], b = poly[(i + 1) % n];
        if (cross2(b - a, p - a) <= 0.0) return false;
    }
    return true;
}

// Parameter interval of the line a + t(b-a) strictly inside the convex poly.
std::optional<std::pair<double, double>> line_clip_convex(
    const std::vector<Vec>& poly, Vec a, Vec b) {
    double t0 = 0.0, t1 = 1.0;
    Vec d = b - a;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        Vec p = poly[i], q = poly[(i + 1) % n];
        Vec e = q - p;
        double denom = cross2(e, d);
        double num = cross2(e, a - p);
        // inside means cross2(e, x - p) > 0
        if (denom == 0.0) {
            if (num <= 0.0) return std::nullopt;  // parallel and outside/on edge
            continue;
        }
        double t = -num / denom;
        if (denom > 0.0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
        if (t0 >= t1) return std::nullopt;
    }
    return std::make_pair(t0, t1);
}

}  // namespace

Domain Domain::ball(Vec center, double radius, int dim, FatCharacteristics fc) {
    if (!(radius > 0.0)) throw std::invalid_argument("Domain::ball: radius <= 0");
    if (dim != 2 && dim != 3) throw std::invalid_argument("Domain::ball: dim must be 2 or 3");
    Domain d;
    d.shape_ = Shape::Ball;
    d.dim_ = dim;
    d.center_ = center;
    d.radius_ = radius;
    d.x0_ = center;
    d.fat_ = fc;
    d.diameter_ = 2.0 * radius;
    return d;
}

Domain Domain::slitted_rectangle(int k_max, FatCharacteristics fc,
                                 std::optional<Vec> anchor) {
    if (k_max < 3)
        throw std::invalid_argument("slitted_rectangle: k_max must be >= 3");
    Domain d;
    d.shape_ = Shape::SlittedRectangle;
    d.dim_ = 2;
    d.k_max_ = k_max;
    d.x0_ = anchor.value_or(Vec{0.0, 0.75, 0.0});
    d.fat_ = fc;
    d.diameter_ = std::sqrt(5.0);
    if (!d.contains(d.x0_))
        throw std::invalid_argument("slitted_rectangle: anchor not interior");
    return d;
}

Domain Domain::polygon_union(std::vector<std::vector<Vec>> polys, Vec anchor,
                             FatCharacteristics fc) {
    if (polys.empty()) throw std::invalid_argument("polygon_union: no polygons");
    Domain d;
    d.shape_ = Shape::PolygonUnion;
    d.dim_ = 2;
    d.polys_ = std::move(polys);
    d.x0_ = anchor;
    d.fat_ = fc;
    for (auto& p : d.polys_) {
        if (p.size() < 3) throw std::invalid_argument("polygon_union: degenerate polygon");
        double area2 = 0.0;
        for (size_t i = 0; i < p.size(); ++i)
            area2 += cross2(p[i], p[(i + 1) % p.size()]);
        if (area2 < 0.0) std::reverse(p.begin(), p.end());  // enforce CCW
    }
    double dmax = 0.0;
    for (auto& p : d.polys_)
        for (auto& q : d.polys_)
            for (auto& u : p)
                for (auto& v : q) dmax = std::max(dmax, dist(u, v));
    d.diameter_ = dmax;

    // Exposed boundary: each edge minus the open sub-intervals covered by the
    // strict interior of another polygon.
    for (size_t pi = 0; pi < d.polys_.size(); ++pi) {
        const auto& poly = d.polys_[pi];
        for (size_t i = 0; i < poly.size(); ++i) {
            Vec a = poly[i], b = poly[(i + 1) % poly.size()];
            std::vector<std::pair<double, double>> covered;
            for (size_t qi = 0; qi < d.polys_.size(); ++qi) {
                if (qi == pi) continue;
                if (auto iv = line_clip_convex(d.polys_[qi], a, b))
                    covered.push_back(*iv);
            }
            std::sort(covered.begin(), covered.end());
            double t = 0.0;
            std::vector<std::pair<double, double>> exposed;
            for (auto& iv : covered) {
                if (iv.first > t) exposed.push_back({t, iv.first});
                t = std::max(t, iv.second);
            }
            if (t < 1.0) exposed.push_back({t, 1.0});
            for (auto& iv : exposed) {
                Vec u = a + iv.first * (b - a);
                Vec v = a + iv.second * (b - a);
                double len = dist(u, v);
                if (len > 1e-14 * d.diameter_) {
                    d.boundary_segs_.push_back({u, v, len});
                    d.boundary_len_ += len;
                }
            }
        }
    }
    if (!d.contains(anchor))
        throw std::invalid_argument("polygon_union: anchor not interior");
    return d;
}

Vec Domain::ball_center() const {
    if (shape_ != Shape::Ball) throw BadGeometry("not a ball domain");
    return center_;
}

double Domain::ball_radius() const {
    if (shape_ != Shape::Ball) throw BadGeometry("not a ball domain");
    return radius_;
}

bool Domain::contains(Vec x) const {
    switch (shape_) {
        case Shape::Ball:
            return dist(x, center_) < radius_;
        case Shape::SlittedRectangle: {
            if (!(x.x > -1.0 && x.x < 1.0 && x.y > 0.0 && x.y < 1.0)) return false;
            for (int k = 1; k <= k_max_; ++k)
                if (x.y == std::ldexp(1.0, -k)) return false;
            return true;
        }
        case Shape::PolygonUnion:
            for (auto& p : polys_)
                if (strictly_inside_convex(p, x)) return true;
            return false;
    }
    return false;
}

double Domain::dist_to_complement(Vec x) const {
    if (!contains(x)) return 0.0;
    switch (shape_) {
        case Shape::Ball:
            return radius_ - dist(x, center_);
        case Shape::SlittedRectangle: {
            double d = std::min({x.x + 1.0, 1.0 - x.x, x.y, 1.0 - x.y});
            for (int k = 1; k <= k_max_; ++k)
                d = std::min(d, std::abs(x.y - std::ldexp(1.0, -k)));
            return d;
        }
        case Shape::PolygonUnion:
            return polygon_union_dist(x);
    }
    return 0.0;
}

double Domain::polygon_union_dist(Vec x) const {
    double d = std::numeric_limits<double>::infinity();
    for (auto& s : boundary_segs_) d = std::min(d, point_segment_dist(x, s.a, s.b));
    return d;
}

Vec Domain::boundary_point(double u, double v) const {
    u -= std::floor(u);
    switch (shape_) {
        case Shape::Ball: {
            if (dim_ == 2) {
                double t = 2.0 * M_PI * u;
                return center_ + radius_ * Vec{std::cos(t), std::sin(t), 0.0};
            }
            double c = 2.0 * v - 1.0;
            double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            double t = 2.0 * M_PI * u;
            return center_ + radius_ * Vec{s * std::cos(t), s * std::sin(t), c};
        }
        case Shape::SlittedRectangle: {
            double total = 6.0 + 2.0 * k_max_;
            double s = u * total;
            if (s < 2.0) return {s - 1.0, 0.0, 0.0};            // bottom
            s -= 2.0;
            if (s < 1.0) return {1.0, s, 0.0};                  // right
            s -= 1.0;
            if (s < 2.0) return {1.0 - s, 1.0, 0.0};            // top
            s -= 2.0;
            if (s < 1.0) return {-1.0, 1.0 - s, 0.0};           // left
            s -= 1.0;
            int k = 1 + static_cast<int>(s / 2.0);
            k = std::min(k, k_max_);
            double t = s - 2.0 * (k - 1);
            return {t - 1.0, std::ldexp(1.0, -k), 0.0};         // slit k
        }
        case Shape::PolygonUnion: {
            double s = u * boundary_len_;
            for (auto& seg : boundary_segs_) {
                if (s <= seg.len) return seg.a + (s / seg.len) * (seg.b - seg.a);
                s -= seg.len;
            }
            return boundary_segs_.back().b;
        }
    }
    return {};
}

bool Domain::on_boundary(Vec z, double tol) const {
    switch (shape_) {
        case Shape::Ball:
            return std::abs(dist(z, center_) - radius_) <= tol;
        case Shape::SlittedRectangle: {
            bool in_closure = z.x >= -1.0 - tol && z.x <= 1.0 + tol &&
                              z.y >= -tol && z.y <= 1.0 + tol;
            if (!in_closure) return false;
            if (std::abs(z.x + 1.0) <= tol || std::abs(z.x - 1.0) <= tol ||
                std::abs(z.y) <= tol || std::abs(z.y - 1.0) <= tol)
                return true;
            for (int k = 1; k <= k_max_; ++k)
                if (std::abs(z.y - std::ldexp(1.0, -k)) <= tol) return true;
            return false;
        }
        case Shape::PolygonUnion:
            for (auto& s : boundary_segs_)
                if (point_segment_dist(z, s.a, s.b) <= tol) return true;
            return false;
    }
    return false;
}

Vec Domain::grid_search_corkscrew(Vec z, double r) const {
    // Deterministic coarse-to-fine maximization of
    //   clearance(a) = min(delta_D(a), r - |a - z|) over B(z, r).
    // Scan order is y-major ascending with strict improvement, so the lowest
    // maximizer wins ties.
    auto clearance = [&](Vec a) {
        return std::min(dist_to_complement(a), r - dist(a, z));
    };
    Vec best{};
    double best_val = -1.0;
    Vec c = z;
    double half = r;
    int cells = 32;
    for (int level = 0; level < 3; ++level) {
        for (int iy = 0; iy <= cells; ++iy) {
            for (int ix = 0; ix <= cells; ++ix) {
                Vec a{c.x - half + 2.0 * half * ix / cells,
                      c.y - half + 2.0 * half * iy / cells, 0.0};
                double v = clearance(a);
                if (v > best_val) {
                    best_val = v;
                    best = a;
                }
            }
        }
        c = best;
        half = 4.0 * half / cells;
        cells = 16;
    }
    if (best_val < fat_.kappa * r * (1.0 - 1e-6) - 1e-12 * diameter_)
        throw NoCorkscrew("corkscrew search failed: best clearance ratio " +
                          std::to_string(best_val / r));
    return best;
}

Vec Domain::corkscrew_point(Vec z, double r) const {
    if (!(r > 0.0) || r >= fat_.R)
        throw std::invalid_argument("corkscrew_point: r must lie in (0, R)");
    double tol = 1e-12 * diameter_;
    if (!on_boundary(z, tol)) throw BadGeometry("corkscrew_point: z not on boundary");
    if (shape_ == Shape::Ball) {
        Vec u = (1.0 / dist(z, center_)) * (z - center_);
        return z - (0.5 * r) * u;
    }
    return grid_search_corkscrew(z, r);
}

std::vector<Vec> Domain::corkscrew_sequence(Vec z, int count) const {
    if (count < 1) throw std::invalid_argument("corkscrew_sequence: count < 1");
    std::vector<Vec> out;
    out.reserve(count);
    for (int k = 1; k <= count; ++k)
        out.push_back(corkscrew_point(z, fat_.R * std::ldexp(1.0, -k)));
    return out;
}

bool stolz_contains(const Domain& d, const StolzParams& sp, Vec y) {
    double lo = (1.0 - d.fat().kappa) / d.fat().kappa;
    if (!(sp.beta > lo))
        throw BadGeometry("stolz_contains: beta must exceed (1-kappa)/kappa");
    double dy = d.dist_to_complement(y);
    if (!(dy > 0.0)) return false;
    double cap = std::min(d.dist_to_complement(sp.x0) / 3.0, d.fat().R);
    return dy < cap && dist(y, sp.z) < sp.beta * dy;
}

FatnessReport verify_kappa_fat(const Domain& d, int boundary_samples,
                               const std::vector<double>& radii) {
    FatnessReport rep;
    rep.samples = boundary_samples;
    for (int i = 0; i < boundary_samples; ++i) {
        double u = (i + 0.5) / boundary_samples;
        double v = d.dim() == 3 ? std::fmod(0.61803398875 * i, 1.0) : 0.5;
        Vec z = d.boundary_point(u, v);
        for (double r : radii) {
            ++rep.trials;
            try {
                Vec a = d.corkscrew_point(z, r);
                double clr = std::min(d.dist_to_complement(a), r - dist(a, z));
                if (clr < d.fat().kappa * r * (1.0 - 1e-6))
                    rep.failures.push_back({z, r, clr / r});
            } catch (const Error&) {
                rep.failures.push_back({z, r, 0.0});
            }
        }
    }
    return rep;
}

}  // namespace stablelab
