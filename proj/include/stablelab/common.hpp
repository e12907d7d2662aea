#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stablelab {

// Point in R^n, n in {2, 3}. The z component is ignored (and kept at 0)
// when the ambient dimension is 2.
struct Vec {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec operator*(double s, Vec a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(Vec a) { return dot(a, a); }
inline double norm(Vec a) { return std::sqrt(norm2(a)); }
inline double dist(Vec a, Vec b) { return norm(a - b); }

// Isotropic stable process parameters: ambient dimension n >= 2 and
// stability index alpha in (0, 2). Characteristic exponent |xi|^alpha.
struct StableParams {
    int n;
    double alpha;

    StableParams(int n_, double alpha_) : n(n_), alpha(alpha_) {
        if (n < 2 || n > 3)
            throw std::invalid_argument("StableParams: n must be 2 or 3");
        if (!(alpha > 0.0) || !(alpha < 2.0))
            throw std::invalid_argument("StableParams: alpha must be in (0,2)");
    }
};

struct BallSpec {
    Vec center;
    double radius;

    BallSpec(Vec c, double r) : center(c), radius(r) {
        if (!(r > 0.0)) throw std::invalid_argument("BallSpec: radius must be > 0");
    }
};

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct SingularPoint : Error      { using Error::Error; };
struct BadGeometry : Error        { using Error::Error; };
struct QuadratureFailure : Error  { using Error::Error; };
struct NoCorkscrew : Error        { using Error::Error; };
struct RejectionOverflow : Error  { using Error::Error; };
struct EnvelopeViolation : Error  { using Error::Error; };
struct PathDeadAtStart : Error    { using Error::Error; };
struct LogDomain : Error          { using Error::Error; };
struct NotContractive : Error     { using Error::Error; };
struct UnboundedRatio : Error     { using Error::Error; };

// Surface area of the unit sphere S^{n-1}.
inline double sphere_area(int n) {
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace stablelab
