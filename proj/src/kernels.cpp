#include "stablelab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace stablelab {

double riesz_constant(const StableParams& p) {
    return std::tgamma(0.5 * (p.n - p.alpha)) /
           (std::pow(2.0, p.alpha) * std::pow(M_PI, 0.5 * p.n) *
            std::tgamma(0.5 * p.alpha));
}

double free_green(const StableParams& p, Vec x, Vec y) {
    double r = dist(x, y);
    if (r == 0.0) throw SingularPoint("free_green: x == y");
    return riesz_constant(p) * std::pow(r, p.alpha - p.n);
}

double poisson_ball_constant(const StableParams& p) {
    return std::tgamma(0.5 * p.n) * std::pow(M_PI, -0.5 * p.n - 1.0) *
           std::sin(0.5 * M_PI * p.alpha);
}

double ball_exit_density(const StableParams& p, const BallSpec& b, Vec x, Vec y) {
    double dx = dist(x, b.center);
    double dy = dist(y, b.center);
    double r = b.radius;
    if (dx >= r) throw BadGeometry("ball_exit_density: x not inside ball");
    if (dy <= r) throw BadGeometry("ball_exit_density: y not outside ball");
    double ratio = (r * r - dx * dx) / (dy * dy - r * r);
    return poisson_ball_constant(p) * std::pow(ratio, 0.5 * p.alpha) *
           std::pow(dist(x, y), -static_cast<double>(p.n));
}

double ball_green(const StableParams& p, const BallSpec& b, Vec x, Vec y) {
    double r = b.radius;
    double dx = dist(x, b.center);
    double dy = dist(y, b.center);
    if (dx >= r || dy >= r) throw BadGeometry("ball_green: point not inside ball");
    double xy = dist(x, y);
    if (xy == 0.0) throw SingularPoint("ball_green: x == y");
    double w = (r * r - dx * dx) * (r * r - dy * dy) / (r * r * xy * xy);
    double s = w / (1.0 + w);
    return riesz_constant(p) * std::pow(xy, p.alpha - p.n) *
           reg_inc_beta(0.5 * p.alpha, 0.5 * (p.n - p.alpha), s);
}

namespace {

// Int_B1 G_B1(x,y) dy by polar quadrature around x; the radial substitution
// s = smax u^{1/alpha} absorbs the s^{alpha-1} weight exactly.
double unit_ball_time_integral(const StableParams& p, Vec x) {
    BallSpec unit({0, 0, 0}, 1.0);
    double a = p.alpha;
    auto radial = [&](Vec e) {
        double xe = dot(x, e);
        double smax = -xe + std::sqrt(std::max(0.0, 1.0 - norm2(x) + xe * xe));
        if (smax <= 0.0) return 0.0;
        auto g = [&](double u) {
            double s = smax * std::pow(u, 1.0 / a);
            Vec y = x + s * e;
            if (dist(y, unit.center) >= 1.0) return 0.0;
            double xy = std::max(s, 1e-300);
            double w = (1.0 - norm2(x)) * (1.0 - norm2(y)) / (xy * xy);
            return reg_inc_beta(0.5 * a, 0.5 * (p.n - a), w / (1.0 + w));
        };
        return (std::pow(smax, a) / a) * riesz_constant(p) *
               integrate(g, 0.0, 1.0, {1e-10, 1e-8});
    };
    if (p.n == 2) {
        auto f = [&](double t) { return radial({std::cos(t), std::sin(t), 0.0}); };
        return integrate(f, 0.0, 2.0 * M_PI, {1e-10, 1e-8});
    }
    // n = 3: axial symmetry around the direction of x.
    double nx = norm(x);
    Vec u1 = nx > 0 ? (1.0 / nx) * x : Vec{0, 0, 1};
    Vec u2 = std::abs(u1.x) < 0.9 ? Vec{1, 0, 0} : Vec{0, 1, 0};
    Vec w2 = u2 - dot(u2, u1) * u1;
    w2 = (1.0 / norm(w2)) * w2;
    auto f = [&](double th) {
        Vec e = std::cos(th) * u1 + std::sin(th) * w2;
        return 2.0 * M_PI * std::sin(th) * radial(e);
    };
    return integrate(f, 0.0, M_PI, {1e-10, 1e-8});
}

}  // namespace

double unit_ball_center_exit_time(const StableParams& p) {
    return unit_ball_time_integral(p, {0, 0, 0});
}

double ball_expected_exit_time(const StableParams& p, const BallSpec& b, Vec x) {
    double dx = dist(x, b.center);
    if (dx >= b.radius) throw BadGeometry("ball_expected_exit_time: x not inside");
    Vec xs = (1.0 / b.radius) * (x - b.center);
    return std::pow(b.radius, p.alpha) * unit_ball_time_integral(p, xs);
}

double ball_martin(const StableParams& p, Vec x, Vec z) {
    double nx2 = norm2(x);
    if (nx2 >= 1.0) throw BadGeometry("ball_martin: |x| >= 1");
    if (std::abs(norm(z) - 1.0) > 1e-9)
        throw BadGeometry("ball_martin: |z| != 1");
    return std::pow(1.0 - nx2, 0.5 * p.alpha) *
           std::pow(dist(x, z), -static_cast<double>(p.n));
}

double jump_constant(const StableParams& p) {
    return p.alpha * std::pow(2.0, p.alpha - 1.0) *
           std::tgamma(0.5 * (p.alpha + p.n)) /
           (std::pow(M_PI, 0.5 * p.n) * std::tgamma(1.0 - 0.5 * p.alpha));
}

double jump_kernel_density(const StableParams& p, Vec x, Vec y) {
    double r = dist(x, y);
    if (r == 0.0) throw SingularPoint("jump_kernel_density: x == y");
    return jump_constant(p) * std::pow(r, -p.alpha - p.n);
}

double transition_density_oracle(const StableParams& p, double t, double r) {
    if (!(t > 0.0)) throw BadGeometry("transition_density_oracle: t <= 0");
    double a = p.alpha;
    if (r == 0.0) {
        return std::pow(2.0 * M_PI, -static_cast<double>(p.n)) * sphere_area(p.n) *
               std::tgamma(p.n / a) / (a * std::pow(t, p.n / a));
    }
    // p(t,r) = (2 pi)^{-n/2} r^{1-n/2} Int_0^inf e^{-t s^a} s^{n/2} J_{n/2-1}(rs) ds,
    // summed over half-period blocks of the oscillation until the tail is small.
    double nu = 0.5 * p.n - 1.0;
    auto f = [&](double s) {
        return std::exp(-t * std::pow(s, a)) * std::pow(s, 0.5 * p.n) *
               bessel_j(nu, r * s);
    };
    double block = M_PI / r;
    double cut = std::pow(745.0 / t, 1.0 / a);  // e^{-t s^a} underflows past here
    double sum = 0.0, s0 = 0.0;
    double last = 1e300;
    int k = 0;
    for (; s0 < cut && k < 100000; ++k) {
        double s1 = std::min(s0 + block, cut);
        double piece = integrate(f, s0, s1, {1e-13, 1e-10});
        sum += piece;
        last = std::abs(piece);
        s0 = s1;
        if (s0 > 2.0 * block && last < 1e-13 * std::max(1.0, std::abs(sum))) break;
    }
    if (s0 < cut && last > 1e-9 * std::max(1.0, std::abs(sum)))
        throw QuadratureFailure("transition density inversion did not settle");
    return std::pow(2.0 * M_PI, -0.5 * p.n) * std::pow(r, 1.0 - 0.5 * p.n) * sum;
}

double psi_relativistic(const StableParams& p, double r) {
    double nu = 0.5 * (p.n + p.alpha);
    auto f = [&](double s) {
        return std::pow(s, nu - 1.0) * std::exp(-0.25 * s - r * r / s);
    };
    double v = integrate_to_inf(f, 0.0, {1e-12, 1e-10});
    return std::pow(2.0, -(p.n + p.alpha)) / std::tgamma(nu) * v;
}

namespace {

// Angular measure of directions e for which x + s e lies inside B(c0, R),
// given d = |x - c0| < R. Full sphere for s <= R-d, empty for s >= R+d.
double direction_measure(int n, double d, double R, double s) {
    double full = n == 2 ? 2.0 * M_PI : 4.0 * M_PI;
    if (s <= 0.0 || d + s <= R) return full;
    if (d == 0.0) return s < R ? full : 0.0;
    double c = std::clamp((s * s + d * d - R * R) / (2.0 * s * d), -1.0, 1.0);
    if (n == 2) return 2.0 * std::acos(c);
    return 2.0 * M_PI * (1.0 - c);
}

}  // namespace

RelativisticIngredients relativistic_ingredients(const StableParams& p, double m,
                                                 const BallSpec& domain) {
    if (!(m > 0.0)) throw BadGeometry("relativistic_ingredients: m <= 0");
    RelativisticIngredients out;
    double minv = std::pow(m, 1.0 / p.alpha);
    out.psi = [p](double r) { return psi_relativistic(p, r); };
    out.F_m = [p, minv](Vec x, Vec y) {
        return psi_relativistic(p, minv * dist(x, y)) - 1.0;
    };

    // A(n,-a) Int_{R^n} F_m |y|^{-a-n} dy, via u = m^{1/a} s. Scales linearly in m.
    double a = p.alpha;
    auto shift_integrand = [p](double u) {
        return (psi_relativistic(p, u) - 1.0) * std::pow(u, -1.0 - p.alpha);
    };
    double head = integrate_singular(shift_integrand, 0.0, 1.0, {1e-11, 1e-9});
    auto tail_sub = [&](double v) {  // u = v^{-1/a} maps (0,1] onto [1,inf)
        return (psi_relativistic(p, std::pow(v, -1.0 / a)) - 1.0) / a;
    };
    double tail = integrate(tail_sub, 0.0, 1.0, {1e-11, 1e-9});
    out.levy_mass_shift = jump_constant(p) * sphere_area(p.n) * m * (head + tail);

    double R = domain.radius;
    Vec c0 = domain.center;
    auto drift = [p, minv, R, c0, a](Vec x) {
        double d = dist(x, c0);
        if (d >= R) throw BadGeometry("drift_compensator: x not inside domain");
        auto f = [&](double s) {
            double Fm = psi_relativistic(p, minv * s) - 1.0;
            return Fm * std::pow(s, p.n - 2.0 - a) * direction_measure(p.n, d, R, s);
        };
        // integrand ~ s^{n+1-a-n} = s^{1-a} near 0: integrable endpoint.
        double inner = integrate_singular(f, 0.0, std::max(R - d, 0.0), {1e-11, 1e-9});
        double outer = (R - d < R + d)
                           ? integrate(f, std::max(R - d, 0.0), R + d, {1e-11, 1e-9})
                           : 0.0;
        return jump_constant(p) * (inner + outer);
    };
    out.drift_compensator = drift;
    double shift = out.levy_mass_shift;
    out.q = [drift, shift](Vec x) { return shift - drift(x); };
    return out;
}

}  // namespace stablelab
