#pragma once

#include <optional>
#include <vector>

#include "stablelab/common.hpp"

namespace stablelab {

// Declared kappa-fatness characteristics: every boundary ball B(z,r) with
// r < R contains an interior ball of radius kappa*r.
struct FatCharacteristics {
    double kappa;
    double R;

    FatCharacteristics(double k, double r) : kappa(k), R(r) {
        if (!(k > 0.0) || !(k <= 0.5))
            throw std::invalid_argument("FatCharacteristics: kappa must be in (0,1/2]");
        if (!(r > 0.0))
            throw std::invalid_argument("FatCharacteristics: R must be > 0");
    }
};

struct StolzParams {
    Vec z;
    double beta;
    Vec x0;
};

// Bounded open set with exact distance queries and a parameterized boundary.
// Shapes: Ball (n = 2 or 3), SlittedRectangle ((-1,1)x(0,1) minus the
// horizontal slits y = 2^-k, k = 1..k_max), PolygonUnion (union of open
// convex polygons, n = 2).
class Domain {
  public:
    enum class Shape { Ball, SlittedRectangle, PolygonUnion };

    static Domain ball(Vec center, double radius, int dim, FatCharacteristics fc);
    static Domain slitted_rectangle(int k_max, FatCharacteristics fc,
                                    std::optional<Vec> anchor = std::nullopt);
    static Domain polygon_union(std::vector<std::vector<Vec>> polys, Vec anchor,
                                FatCharacteristics fc);

    Shape shape() const { return shape_; }
    int dim() const { return dim_; }
    Vec anchor() const { return x0_; }
    const FatCharacteristics& fat() const { return fat_; }
    double diameter() const { return diameter_; }

    // Ball-only accessors.
    Vec ball_center() const;
    double ball_radius() const;
    int slit_count() const { return k_max_; }

    bool contains(Vec x) const;

    // dist(x, D^c); exactly 0 outside D. Closed form per shape.
    double dist_to_complement(Vec x) const;

    // Boundary point from u in [0,1); v picks the latitude for 3-d balls.
    Vec boundary_point(double u, double v = 0.5) const;
    bool on_boundary(Vec z, double tol) const;

    // Center a of a ball B(a, kappa r) inside B(z,r) cap D. Radial formula
    // for balls, deterministic coarse-to-fine grid search otherwise.
    Vec corkscrew_point(Vec z, double r) const;
    std::vector<Vec> corkscrew_sequence(Vec z, int count) const;

  private:
    Domain() : fat_(0.5, 1.0) {}

    double polygon_union_dist(Vec x) const;
    Vec grid_search_corkscrew(Vec z, double r) const;

    Shape shape_ = Shape::Ball;
    int dim_ = 2;
    Vec x0_;
    FatCharacteristics fat_;
    double diameter_ = 0.0;

    Vec center_;
    double radius_ = 0.0;
    int k_max_ = 0;

    std::vector<std::vector<Vec>> polys_;
    // Exposed boundary pieces (segments on the union boundary), with
    // cumulative length for the boundary parameterization.
    struct Seg {
        Vec a, b;
        double len;
    };
    std::vector<Seg> boundary_segs_;
    double boundary_len_ = 0.0;
};

// true iff delta_D(y) < min(delta_D(x0)/3, R) and |y-z| < beta delta_D(y).
// Requires beta > (1-kappa)/kappa for the domain's declared kappa.
bool stolz_contains(const Domain& d, const StolzParams& sp, Vec y);

struct FatnessReport {
    struct Failure {
        Vec z;
        double r;
        double best_kappa;  // best clearance ratio the search achieved
    };
    int samples = 0;
    int trials = 0;
    std::vector<Failure> failures;
    bool consistent() const { return failures.empty(); }
};

FatnessReport verify_kappa_fat(const Domain& d, int boundary_samples,
                               const std::vector<double>& radii);

}  // namespace stablelab
