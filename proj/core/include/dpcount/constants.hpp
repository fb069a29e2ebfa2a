#pragma once

// Numerical evaluation of the conjectural leading constants: the archimedean
// density integrals for the A1 degree-6 surface and the diagonal cubic, Euler
// products with rigorous tail bounds, the Delta(n) partial sums, and
// least-squares fits of counts against c B (log B)^(rho-1).

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dpcount/arith.hpp"

namespace dpc::constants {

struct RegionIntegral {
    int dimension = 0;
    std::function<bool(const std::vector<double>&)> member;
    std::string method;  // "adaptive-quadrature" or "quasi-monte-carlo"
    double tolerance = 1e-4;
};

struct IntegralValue {
    double value = 0;
    double error_bar = 0;
    double cross_value = 0;  // the independent second method
    std::string method;
};

// The two density regions as membership descriptors.
RegionIntegral a1_density_region(double tol = 1e-4);      // coordinates (u, t, v)
RegionIntegral fermat_density_region(double tol = 1e-4);  // coordinates (x1, x2, x3)

// F1(u,v) = length{t > 0 : u t^2 <= 1, |t v (t - v)| <= 1}
double a1_region_F1(double u, double v);
// F2(u) = area{(t,v) : t > 0, u t^2 <= 1, u v^2 <= 1, |t v (t-v)| <= 1}
double a1_region_F2(double u);

// sigma_infty for the A1 surface: 6 * integral_0^1 F2(u) du.  Computed by
// nested adaptive quadrature and cross-checked by quasi-Monte-Carlo; throws
// if the two disagree beyond 3*tol (relative).
IntegralValue sigma_infty_a1(double tol = 1e-4);

// sigma_infty for the diagonal cubic with a = (1,1,1):
//   (1/6) * integral over [-1,1]^3 with |x1^3+x2^3+x3^3| <= 1 of
//   |x1^3+x2^3+x3^3|^(-2/3).
// The integrable singularity is handled by an exclusion band |g| < eps with
// eps-refinement; the cross-check is Monte-Carlo over (x1,x2) with the inner
// integral computed by a singularity-removing substitution.
IntegralValue sigma_infty_fermat(double tol = 1e-4);

// integrand of the Fermat density (without the height cutoff), for tests
double fermat_density_integrand(double x1, double x2, double x3);
// inner kernel K(c) = integral over x3 of the density at fixed c = x1^3+x2^3
double fermat_inner_kernel(double c, double eps = 0.0);

struct EulerProduct {
    std::function<Rat(std::uint64_t)> local_factor;      // factor at a generic prime
    std::vector<std::pair<std::uint64_t, Rat>> special;  // exceptional factors
    std::function<bool(std::uint64_t)> applies;          // prime filter (may be null)
    double kappa = 2.0;   // factor = 1 + O(p^-kappa) after acceleration
    double tail_C = 0.0;  // frozen |log of the accelerated factor| <= C p^-kappa
    // Convergence acceleration: with log f_p = -m/p^2 + O(p^-3), the product
    // of f_p (1-p^-2)^-m converges one order faster, and the split-off
    // product of (1-p^-2)^m over the prime class has the closed value below.
    int accel_m = 0;
    double accel_constant = 1.0;
};

struct EulerValue {
    double value = 0;
    double tail_bound = 0;  // relative bound on the missing tail
};

EulerValue euler_product(const EulerProduct& e, std::uint64_t prime_bound);

// prod_p (1-1/p)^4 (1 + 4/p + 1/p^2)
EulerProduct e2_zero_product();
// the two products of the Fermat constant, p = 1 mod 3 and p = 2 mod 3
EulerProduct fermat_product_split();
EulerProduct fermat_product_inert();
// G_p(4) factors (with G_3(4) = 16/27 inserted as the exceptional factor)
Rat g4_factor(std::uint64_t p);

struct ConstantValue {
    double value = 0;
    double error_bar = 0;
    std::string detail;
};

// c1 = sigma_infty / 144 * prod_p (1-1/p)^4 (1+4/p+1/p^2)
ConstantValue c1_a1(double tol = 1e-4, std::uint64_t prime_bound = 100'000);
// c1 = sigma_infty 2^4 pi^3 sqrt(3) / (3! 3^8) * (split product) * (inert product)
ConstantValue c1_fermat(double tol = 1e-4, std::uint64_t prime_bound = 100'000);

double dirichlet_L1_closed();                       // pi sqrt(3) / 9
double dirichlet_L1_series(std::uint64_t terms);    // sum lambda(n)/n

// Delta(n) = sum over n = s0^3 s1^2 s2^2 s3^2 (s1,s2,s3 pairwise coprime) of
// theta(s0,s) / (s1 s2 s3)^(1/3), theta = phi*(s0) phi*(s1 s2 s3)
// prod_{p | s0, p not | s1 s2 s3} (1 - 2/p).
double delta_fn(std::uint64_t n);
Rat theta_weight(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3);
double delta_partial_sum(std::uint64_t X);

// local factor of the Dirichlet series D(s + 1/3) at p as a power series in
// x = p^-s: both the closed form and the direct enumeration, as exact
// rational coefficient lists (ascending), up to x^max_pow
std::vector<Rat> ap_series_closed(std::uint64_t p, int max_pow);
std::vector<Rat> ap_series_enumerated(std::uint64_t p, int max_pow);

struct FitResult {
    double leading = 0;
    std::vector<double> coefficients;  // highest degree first
    double residual = 0;
};

// least squares of N/B against (log B)^j for j = rho-1 down to min_degree
FitResult fit_leading(const std::vector<std::pair<double, double>>& counts, int rho,
                      int min_degree = 0);

}  // namespace dpc::constants
