#pragma once

#include <functional>

#include "stablelab/common.hpp"
#include "stablelab/quadrature.hpp"

namespace stablelab {

// Constant A(n,alpha) making A(n,alpha)|x-y|^{alpha-n} the 0-potential
// density of the process with symbol |xi|^alpha.
double riesz_constant(const StableParams& p);

// Free-space Green function A(n,alpha)|x-y|^{alpha-n}.
double free_green(const StableParams& p, Vec x, Vec y);

// Poisson kernel of a ball: density of the exit position at y (strictly
// outside the closed ball) started from x (strictly inside).
//   C(n,alpha) [ (r^2-|x-c|^2)/(|y-c|^2-r^2) ]^{alpha/2} |x-y|^{-n},
//   C(n,alpha) = Gamma(n/2) pi^{-n/2-1} sin(pi alpha/2).
double ball_exit_density(const StableParams& p, const BallSpec& b, Vec x, Vec y);
double poisson_ball_constant(const StableParams& p);

// Green function of the ball,
//   G_B(x,y) = A(n,alpha) |x-y|^{alpha-n} I_s(alpha/2, (n-alpha)/2),
// s = w/(1+w), w = (r^2-|x-c|^2)(r^2-|y-c|^2)/(r^2 |x-y|^2). The regularized
// incomplete beta factor lies in [0,1], so G_B <= free_green always.
double ball_green(const StableParams& p, const BallSpec& b, Vec x, Vec y);

// E_x[tau_B] as the quadrature of ball_green over the ball; scales as r^alpha.
double ball_expected_exit_time(const StableParams& p, const BallSpec& b, Vec x);

// Same quantity at the ball center for a unit ball; cached by callers that
// accumulate expected time along walks (value * (lambda delta)^alpha).
double unit_ball_center_exit_time(const StableParams& p);

// Martin kernel of the unit ball with anchor x0 = 0:
//   M_B(x,z) = (1-|x|^2)^{alpha/2} / |x-z|^n,  |x|<1, |z|=1.
double ball_martin(const StableParams& p, Vec x, Vec z);

// Levy jump constant A(n,-alpha) and density A(n,-alpha)|x-y|^{-alpha-n}.
double jump_constant(const StableParams& p);
double jump_kernel_density(const StableParams& p, Vec x, Vec y);

// p(t, x) at |x| = r via inversion of the radial Fourier transform of
// e^{-t|xi|^alpha}. Slow; test/oracle use only.
double transition_density_oracle(const StableParams& p, double t, double r);

// Ingredients of the mass-m relativistic transform on a ball domain D:
//   psi(r)   = 2^{-(n+alpha)} Gamma((n+alpha)/2)^{-1}
//              Int_0^inf s^{(n+alpha)/2-1} e^{-s/4 - r^2/s} ds
//   F_m(x,y) = psi(m^{1/alpha}|x-y|) - 1              (-1 < F_m <= 0)
//   drift_compensator(x) = A(n,-alpha) Int_D  F_m(x,y)|x-y|^{-alpha-n} dy
//   q(x)                 = A(n,-alpha) Int_D^c F_m(x,y)|x-y|^{-alpha-n} dy
// The two integrals sum to the x-independent total levy_mass_shift; q is
// evaluated through that identity.
struct RelativisticIngredients {
    std::function<double(double)> psi;
    std::function<double(Vec, Vec)> F_m;
    std::function<double(Vec)> q;
    std::function<double(Vec)> drift_compensator;
    double levy_mass_shift;  // A(n,-alpha) Int_{R^n} F_m(0,y)|y|^{-alpha-n} dy
};

RelativisticIngredients relativistic_ingredients(const StableParams& p, double m,
                                                 const BallSpec& domain);

double psi_relativistic(const StableParams& p, double r);

}  // namespace stablelab
