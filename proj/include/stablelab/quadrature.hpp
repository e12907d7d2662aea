#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace stablelab {

// Default quadrature targets: absolute 1e-9, relative 1e-7.
struct QuadTol {
    double abs = 1e-9;
    double rel = 1e-7;
};

// Adaptive Gauss-Kronrod on a finite interval. Throws QuadratureFailure when
// the error estimate stays far above the requested tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadTol tol = {});

// tanh-sinh rule; use for integrable endpoint singularities.
double integrate_singular(const std::function<double(double)>& f, double a,
                          double b, QuadTol tol = {});

// exp-sinh rule on (a, +inf).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        QuadTol tol = {});

// Regularized incomplete beta I_x(a,b) and complete beta B(a,b).
double reg_inc_beta(double a, double b, double x);
double beta_fn(double a, double b);

// Solves I_x(a,b) = p for x by bracketed root-finding, relative 1e-12.
double reg_inc_beta_inv(double a, double b, double p);

// Modified Bessel function K_nu(x), x > 0.
double bessel_k(double nu, double x);

// Bessel J_nu(x).
double bessel_j(double nu, double x);

// Gauss-Legendre nodes/weights on [0,1]; n in {8, 16, 32}.
const std::vector<std::pair<double, double>>& gauss_legendre_01(int n);

}  // namespace stablelab
