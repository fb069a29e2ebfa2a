#include "dpcount/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpc::constants {

namespace {

const double kGx8[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                        0.7966664774136267,  0.9602898564975363};
const double kGw8[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                        0.2223810344533745, 0.1012285362903763};

// 8-point Gauss-Legendre on [a, b]
template <typename F>
double gauss8(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 8; ++i) s += kGw8[i] * f(mid + half * kGx8[i]);
    return s * half;
}

// Composite Gauss on dyadic panels accumulating toward the endpoint `sing`
// of [a, b]; handles integrable endpoint singularities and interior kinks.
template <typename F>
double gauss_geometric(F&& f, double a, double b, bool sing_at_a, int levels, int splits = 2) {
    if (b <= a) return 0;
    double total = 0;
    double span = b - a;
    for (int k = 0; k < levels; ++k) {
        double hi_frac = std::pow(0.5, k);
        double lo_frac = (k == levels - 1) ? 0.0 : std::pow(0.5, k + 1);
        double pa, pb;
        if (sing_at_a) { pa = a + span * lo_frac; pb = a + span * hi_frac; }
        else { pa = b - span * hi_frac; pb = b - span * lo_frac; }
        for (int s = 0; s < splits; ++s) {
            double qa = pa + (pb - pa) * s / splits;
            double qb = pa + (pb - pa) * (s + 1) / splits;
            total += gauss8(f, qa, qb);
        }
    }
    return total;
}

// length of {v in [lo, hi] : |t v (t - v)| <= 1} for fixed t > 0:
// g(v) = t^2 v - t v^2 is a downward parabola with apex t^3/4 at v = t/2.
double v_measure(double t, double lo, double hi) {
    if (lo >= hi) return 0;
    // g >= -1 always bounds v to [s1, s2]
    double disc_lo = t * t * t * t + 4 * t;
    double rt = std::sqrt(disc_lo);
    double s1 = (t * t - rt) / (2 * t), s2 = (t * t + rt) / (2 * t);
    lo = std::max(lo, s1);
    hi = std::min(hi, s2);
    if (lo >= hi) return 0;
    // g <= 1 cuts out the interval (r1, r2) when the apex exceeds 1
    if (t * t * t > 4) {
        double disc_hi = t * t * t * t - 4 * t;
        double rh = std::sqrt(disc_hi);
        double r1 = (t * t - rh) / (2 * t), r2 = (t * t + rh) / (2 * t);
        double cut_lo = std::max(lo, r1), cut_hi = std::min(hi, r2);
        double cut = std::max(0.0, cut_hi - cut_lo);
        return (hi - lo) - cut;
    }
    return hi - lo;
}

}  // namespace

double a1_region_F1(double u, double v) {
    if (u <= 0) throw std::invalid_argument("a1_region_F1: u > 0 required");
    // length in t of {t in (0, 1/sqrt(u)] : |t v (t - v)| <= 1}
    double tmax = 1.0 / std::sqrt(u);
    auto inside = [&](double t) { return std::fabs(t * v * (t - v)) <= 1.0; };
    // integrate the indicator by fine subdivision (cheap; used in tests only)
    int n = 20000;
    double h = tmax / n;
    double len = 0;
    for (int i = 0; i < n; ++i) {
        double t = (i + 0.5) * h;
        if (inside(t)) len += h;
    }
    return len;
}

double a1_region_F2(double u) {
    if (u <= 0) throw std::invalid_argument("a1_region_F2: u > 0 required");
    double tmax = 1.0 / std::sqrt(u);
    double vmax = 1.0 / std::sqrt(u);
    // The v-measure is piecewise smooth in t with a few kinks (interval
    // endpoints crossing +-vmax, the apex passing 1); composite Gauss on a
    // geometric subdivision is accurate and has bounded cost for any u.
    auto m = [&](double t) { return v_measure(t, -vmax, vmax); };
    return gauss_geometric(m, 0.0, tmax, /*sing_at_a=*/true, 50, 8);
}

namespace {

// deterministic low-discrepancy sequence (Halton)
double halton(std::uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

}  // namespace

RegionIntegral a1_density_region(double tol) {
    RegionIntegral r;
    r.dimension = 3;
    r.method = "quasi-monte-carlo";
    r.tolerance = tol;
    r.member = [](const std::vector<double>& p) {
        double u = p[0], t = p[1], v = p[2];
        return u > 0 && u <= 1 && t > 0 && u * t * t <= 1 && u * v * v <= 1 &&
               std::fabs(t * v * (t - v)) <= 1;
    };
    return r;
}

RegionIntegral fermat_density_region(double tol) {
    RegionIntegral r;
    r.dimension = 3;
    r.method = "adaptive-quadrature";
    r.tolerance = tol;
    r.member = [](const std::vector<double>& p) {
        for (double c : p)
            if (std::fabs(c) > 1) return false;
        double g = p[0] * p[0] * p[0] + p[1] * p[1] * p[1] + p[2] * p[2] * p[2];
        return std::fabs(g) <= 1;
    };
    return r;
}

namespace {

// QMC volume of the (u, t, v) region, mapped to the unit cube by
// t = x/(1-x), v = sgn(w) |w|/(1-|w|); Halton bases (2, 3, 5).
double sigma_a1_qmc(std::uint64_t n, std::uint64_t shift) {
    RegionIntegral region = a1_density_region();
    double acc = 0;
    std::vector<double> pt(3);
    for (std::uint64_t i = 1; i <= n; ++i) {
        double u = halton(i + shift, 5);
        double x = halton(i + shift, 2);
        double y = halton(i + shift, 3);
        if (u <= 0 || x <= 0 || x >= 1 || y <= 0 || y >= 1) continue;
        double t = x / (1 - x);
        double w = 2 * y - 1;
        double aw = std::fabs(w);
        if (aw >= 1) continue;
        double v = (w < 0 ? -1 : 1) * aw / (1 - aw);
        pt[0] = u;
        pt[1] = t;
        pt[2] = v;
        if (!region.member(pt)) continue;
        double jac_t = 1.0 / ((1 - x) * (1 - x));
        double jac_v = 2.0 / ((1 - aw) * (1 - aw));
        acc += jac_t * jac_v;
    }
    return 6.0 * acc / static_cast<double>(n);
}

}  // namespace

IntegralValue sigma_infty_a1(double tol) {
    if (tol < 1e-6 || tol > 1e-2) throw std::invalid_argument("sigma_infty_a1: tol in [1e-6, 1e-2]");
    IntegralValue out;
    out.method = "adaptive-quadrature vs quasi-monte-carlo";
    // u -> F2(u) is bounded on (0,1] and smooth away from u = 0; the cost of
    // one evaluation grows only logarithmically as u -> 0
    auto f = [&](double u) { return a1_region_F2(std::max(u, 1e-14)); };
    double quad = 6.0 * gauss_geometric(f, 0.0, 1.0, /*sing_at_a=*/true, 44, 4);
    std::uint64_t N = 4'000'000;
    double q1 = sigma_a1_qmc(N, 0);
    double q2 = sigma_a1_qmc(N, 977);
    double qmc = 0.5 * (q1 + q2);
    out.value = quad;
    out.cross_value = qmc;
    out.error_bar = std::fabs(quad - qmc) + std::fabs(q1 - q2);
    if (std::fabs(quad - qmc) > 3 * tol * std::max(1.0, std::fabs(quad)))
        throw std::runtime_error("sigma_infty_a1: quadrature and QMC disagree beyond 3*tol");
    return out;
}

double fermat_density_integrand(double x1, double x2, double x3) {
    double g = x1 * x1 * x1 + x2 * x2 * x2 + x3 * x3 * x3;
    return std::pow(std::fabs(g), -2.0 / 3.0) / 6.0;
}

// K(c) = int_{x3 in [-1,1], eps <= |c + x3^3| <= 1} |c + x3^3|^(-2/3) dx3.
// Substituting s = c + x3^3 turns this into
//   (1/3) int |s|^(-2/3) |s - c|^(-2/3) ds
// whose endpoint singularities at s = 0 and s = c are removed by cubic
// substitutions; each smooth piece is integrated by Gauss-Legendre.
double fermat_inner_kernel(double c, double eps) {
    static const double gl_x[16] = {
        -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
        -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
        0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
        0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
    static const double gl_w[16] = {
        0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
        0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    double lo = std::max(-1.0, c - 1.0), hi = std::min(1.0, c + 1.0);
    if (lo >= hi) return 0;
    auto h = [&](double s) {
        double v = std::fabs(s);
        if (v < eps || v > 1.0) return 0.0;
        double w = std::fabs(s - c);
        if (w == 0) return 0.0;
        double cv = std::cbrt(v), cw = std::cbrt(w);  // x^(-2/3) = cbrt(x)^(-2)
        return 1.0 / (3.0 * cv * cv * cw * cw);
    };
    // split at the singular points 0 and c
    std::vector<double> cuts = {lo, hi};
    if (0 > lo && 0 < hi) cuts.push_back(0);
    if (c > lo && c < hi) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    double total = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double a = cuts[k], b = cuts[k + 1];
        if (b - a < 1e-300) continue;
        double m = 0.5 * (a + b);
        // [a, m] with possible singularity at a: s = a + w^3
        double wa = std::cbrt(m - a);
        for (int i = 0; i < 16; ++i) {
            double w = 0.5 * wa * (gl_x[i] + 1);
            double s = a + w * w * w;
            total += 0.5 * wa * gl_w[i] * h(s) * 3 * w * w;
        }
        // [m, b] with possible singularity at b: s = b - w^3
        double wb = std::cbrt(b - m);
        for (int i = 0; i < 16; ++i) {
            double w = 0.5 * wb * (gl_x[i] + 1);
            double s = b - w * w * w;
            total += 0.5 * wb * gl_w[i] * h(s) * 3 * w * w;
        }
    }
    return total;
}

namespace {

// integral over x2 in [-1,1] of K(x1^3 + x2^3); the kernel behaves like
// |x2 + x1|^(-1/3) near the zero of c, so panels accumulate there
double fermat_outer_inner(double x1, double eps) {
    auto f = [&](double x2) {
        return fermat_inner_kernel(x1 * x1 * x1 + x2 * x2 * x2, eps);
    };
    double xs = -x1;  // c vanishes here
    if (xs <= -1) return gauss_geometric(f, -1.0, 1.0, true, 36, 2);
    if (xs >= 1) return gauss_geometric(f, -1.0, 1.0, false, 36, 2);
    return gauss_geometric(f, -1.0, xs, false, 36, 2) + gauss_geometric(f, xs, 1.0, true, 36, 2);
}

}  // namespace

IntegralValue sigma_infty_fermat(double tol) {
    if (tol < 1e-6 || tol > 1e-2) throw std::invalid_argument("sigma_infty_fermat: tol in [1e-6, 1e-2]");
    // method 1: geometric-panel quadrature of the inner kernel with an
    // exclusion band |g| < eps.  The excised mass scales like eps^(1/3), so
    // halving per refinement step; Richardson extrapolation removes it, and
    // refinement continues until successive extrapolants differ by < tol/2.
    auto outer = [&](double eps) {
        auto I = [&](double x1) { return fermat_outer_inner(x1, eps); };
        // logarithmic singularity of I at x1 = 0
        return (gauss_geometric(I, -1.0, 0.0, false, 32, 2) +
                gauss_geometric(I, 0.0, 1.0, true, 32, 2)) / 6.0;
    };
    double eps = 1e-3;
    double i_prev = outer(eps);
    double i_cur = outer(eps / 8);
    double cur = 2 * i_cur - i_prev;  // mass(eps/8) = mass(eps)/2
    for (int it = 0; it < 5; ++it) {
        eps /= 8;
        double i_next = outer(eps / 8);
        double rich = 2 * i_next - i_cur;
        bool done = std::fabs(rich - cur) < tol / 2;
        i_prev = i_cur;
        i_cur = i_next;
        cur = rich;
        if (done) break;
    }
    // method 2: Monte-Carlo with importance sampling x_i = xi_i^3 pulling
    // samples toward the singular set (finite variance in these coordinates)
    std::uint64_t N = 4'000'000;
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto rng = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) / 9007199254740992.0;
    };
    double sum = 0, sumsq = 0;
    for (std::uint64_t i = 0; i < N; ++i) {
        double xi1 = 2 * rng() - 1, xi2 = 2 * rng() - 1;
        double x1 = xi1 * xi1 * xi1, x2 = xi2 * xi2 * xi2;
        double w = 9.0 * xi1 * xi1 * xi2 * xi2;
        double v = fermat_inner_kernel(x1 * x1 * x1 + x2 * x2 * x2, 0.0) * w * 4.0 / 6.0;
        sum += v;
        sumsq += v * v;
    }
    double mc = sum / N;
    double sd = std::sqrt(std::max(0.0, sumsq / N - mc * mc) / N);
    IntegralValue out;
    out.method = "geometric-quadrature+excision vs importance-sampled monte-carlo";
    out.value = cur;
    out.cross_value = mc;
    out.error_bar = std::fabs(cur - mc) + 3 * sd;
    if (std::fabs(cur - mc) > std::max(3 * tol * std::max(1.0, std::fabs(cur)), 4 * sd))
        throw std::runtime_error("sigma_infty_fermat: quadrature and Monte-Carlo disagree");
    return out;
}

namespace {

// prod over primes p = 1 mod 3 (P1) resp. p = 2 mod 3 (P2) of (1 - p^-2),
// via zeta(2), L(2, lambda) and the fast quartic product over p = 2 mod 3.
std::pair<double, double> restricted_zeta2_products() {
    static const std::pair<double, double> cached = [] {
        double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
        // L(2, lambda) by paired summation, tail O(K^-2)
        double L2 = 0;
        for (std::int64_t k = 200000; k >= 0; --k) {
            double a = 3.0 * k + 1, b = 3.0 * k + 2;
            L2 += 1.0 / (a * a) - 1.0 / (b * b);
        }
        double Q4 = 1.0;  // prod_{p = 2 mod 3} (1 - p^-4)
        for (std::uint32_t p : arith::primes()) {
            if (p > 100000) break;
            if (p % 3 == 2) Q4 *= 1.0 - 1.0 / (static_cast<double>(p) * p * p * p);
        }
        // P1 P2 = 9/(8 zeta2); 1/L2 = P1 (1 + p^-2 over p = 2 mod 3) = P1 Q4 / P2,
        // hence P1^2 = 9 / (8 zeta2 L2 Q4)
        double p1 = std::sqrt(9.0 / (8.0 * zeta2 * L2 * Q4));
        double p2 = 9.0 / (8.0 * zeta2) / p1;
        return std::make_pair(p1, p2);
    }();
    return cached;
}

}  // namespace

EulerValue euler_product(const EulerProduct& e, std::uint64_t prime_bound) {
    if (prime_bound < 100) throw std::invalid_argument("euler_product: prime bound >= 100");
    if (e.kappa < 2.0) throw std::invalid_argument("euler_product: kappa >= 2 required for tail bounding");
    if (static_cast<std::uint64_t>(arith::primes().back()) < prime_bound)
        arith::set_sieve_bound(prime_bound + 1000);
    double v = e.accel_constant;
    for (std::uint32_t p : arith::primes()) {
        if (p > prime_bound) break;
        bool handled = false;
        for (const auto& [sp, val] : e.special) {
            if (sp == p) {
                v *= static_cast<double>(val);
                handled = true;
            }
        }
        if (handled) continue;
        if (e.applies && !e.applies(p)) continue;
        Rat f = e.local_factor(p);
        if (e.accel_m != 0) {
            Rat comp(Int(p) * p, Int(p) * p - 1);  // (1 - p^-2)^-1
            for (int i = 0; i < e.accel_m; ++i) f *= comp;
        }
        v *= static_cast<double>(f);
    }
    // sum_{p > P} C p^-kappa <= C integral_P^inf t^-kappa dt = C P^(1-kappa)/(kappa-1)
    double logtail = e.tail_C * std::pow(static_cast<double>(prime_bound), 1.0 - e.kappa) / (e.kappa - 1.0);
    EulerValue out;
    out.value = v;
    out.tail_bound = std::exp(logtail) - 1.0;
    return out;
}

EulerProduct e2_zero_product() {
    EulerProduct e;
    e.local_factor = [](std::uint64_t p) -> Rat {
        Rat q(1, Int(p));
        Rat f = (1 - q) * (1 - q) * (1 - q) * (1 - q) * (1 + 4 * q + q * q);
        return f;
    };
    // log f_p = -9/p^2 + O(p^-3); accelerate with (1 - p^-2)^9 whose full
    // product is zeta(2)^-9
    e.accel_m = 9;
    e.accel_constant = std::pow(6.0 / (std::numbers::pi * std::numbers::pi), 9);
    e.kappa = 3.0;
    // |log(f_p (1-p^-2)^-9)| <= 21/p^3 (checked across the sieve in tests)
    e.tail_C = 21.0;
    return e;
}

Rat g4_factor(std::uint64_t p) {
    Rat q(1, Int(p));
    if (p == 3) return Rat(16, 27);
    if (p % 3 == 1) {
        Rat f = 1 - q;
        Rat f7 = f * f * f * f * f * f * f;
        return f7 * (1 + 7 * q + q * q);
    }
    Rat f = (1 - q);
    Rat g = (1 + q);
    return f * f * f * f * g * g * g * (1 + q + q * q);
}

EulerProduct fermat_product_split() {
    EulerProduct e;
    e.local_factor = [](std::uint64_t p) -> Rat {
        Rat q(1, Int(p));
        Rat f = 1 - q;
        Rat f7 = f * f * f * f * f * f * f;
        return f7 * (1 + 7 * q + q * q);
    };
    e.applies = [](std::uint64_t p) { return p % 3 == 1; };
    // log f_p = -27/p^2 + 105/p^3 + O(p^-4); accelerated with (1 - p^-2)^27
    // over the class p = 1 mod 3
    e.accel_m = 27;
    e.accel_constant = std::pow(restricted_zeta2_products().first, 27);
    e.kappa = 3.0;
    e.tail_C = 110.0;
    return e;
}

EulerProduct fermat_product_inert() {
    EulerProduct e;
    e.local_factor = [](std::uint64_t p) -> Rat {
        Rat q(1, Int(p));
        Rat a = 1 - q * q * q;
        Rat b = 1 - q * q;
        return a * b * b * b;
    };
    e.applies = [](std::uint64_t p) { return p % 3 == 2; };
    // log f_p = -3/p^2 - 1/p^3 + O(p^-4); accelerated with (1 - p^-2)^3
    // over the class p = 2 mod 3
    e.accel_m = 3;
    e.accel_constant = std::pow(restricted_zeta2_products().second, 3);
    e.kappa = 3.0;
    e.tail_C = 2.0;
    return e;
}

ConstantValue c1_a1(double tol, std::uint64_t prime_bound) {
    IntegralValue s = sigma_infty_a1(tol);
    EulerValue e = euler_product(e2_zero_product(), prime_bound);
    ConstantValue out;
    out.value = s.value / 144.0 * e.value;
    out.error_bar = out.value * (s.error_bar / std::max(1e-12, s.value) + e.tail_bound);
    out.detail = "sigma_infty/144 * E2(0)";
    return out;
}

ConstantValue c1_fermat(double tol, std::uint64_t prime_bound) {
    IntegralValue s = sigma_infty_fermat(tol);
    EulerValue e1 = euler_product(fermat_product_split(), prime_bound);
    EulerValue e2 = euler_product(fermat_product_inert(), prime_bound);
    double pi3 = std::pow(std::numbers::pi, 3);
    double front = 16.0 * pi3 * std::numbers::sqrt3 / (6.0 * 6561.0);
    ConstantValue out;
    out.value = s.value * front * e1.value * e2.value;
    out.error_bar = out.value * (s.error_bar / std::max(1e-12, s.value) + e1.tail_bound + e2.tail_bound);
    out.detail = "sigma_infty 2^4 pi^3 sqrt(3)/(3! 3^8) * split * inert";
    return out;
}

double dirichlet_L1_closed() { return std::numbers::pi * std::numbers::sqrt3 / 9.0; }

double dirichlet_L1_series(std::uint64_t terms) {
    double s = 0;
    for (std::uint64_t n = 1; n <= terms; ++n) {
        int r = static_cast<int>(n % 3);
        if (r == 1) s += 1.0 / static_cast<double>(n);
        else if (r == 2) s -= 1.0 / static_cast<double>(n);
    }
    return s;
}

Rat theta_weight(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3) {
    if (std::gcd(s1, s2) != 1 || std::gcd(s1, s3) != 1 || std::gcd(s2, s3) != 1) return Rat(0);
    Rat th = arith::phi_star(s0) * arith::phi_star(s1) * arith::phi_star(s2) * arith::phi_star(s3);
    for (auto [p, e] : arith::factorize(s0).factors) {
        (void)e;
        if (s1 % p != 0 && s2 % p != 0 && s3 % p != 0) th *= Rat(Int(p) - 2, Int(p));
    }
    return th;
}

double delta_fn(std::uint64_t n) {
    double total = 0;
    for (std::uint64_t s0 = 1; s0 * s0 * s0 <= n; ++s0) {
        if (n % (s0 * s0 * s0) != 0) continue;
        std::uint64_t m = n / (s0 * s0 * s0);
        std::uint64_t k = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(m))));
        while (k > 0 && k * k > m) --k;
        while ((k + 1) * (k + 1) <= m) ++k;
        if (k * k != m) continue;
        // ordered factorizations k = s1 s2 s3 with pairwise coprime parts
        for (std::uint64_t s1 = 1; s1 <= k; ++s1) {
            if (k % s1 != 0) continue;
            std::uint64_t k2 = k / s1;
            for (std::uint64_t s2 = 1; s2 <= k2; ++s2) {
                if (k2 % s2 != 0) continue;
                std::uint64_t s3 = k2 / s2;
                Rat th = theta_weight(s0, s1, s2, s3);
                if (th == 0) continue;
                total += static_cast<double>(th) / std::cbrt(static_cast<double>(k));
            }
        }
    }
    return total;
}

double delta_partial_sum(std::uint64_t X) {
    // enumerate quadruples with s0^3 s1^2 s2^2 s3^2 <= X directly
    std::uint64_t K = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X))) + 2;
    while (K * K > X) --K;
    // phi* as double for the s_i range
    std::vector<double> phistar(K + 1, 1.0);
    {
        std::vector<std::uint32_t> spf(K + 1, 0);
        for (std::uint64_t i = 2; i <= K; ++i) {
            if (spf[i] == 0)
                for (std::uint64_t j = i; j <= K; j += i)
                    if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        }
        for (std::uint64_t i = 2; i <= K; ++i) {
            std::uint64_t m = i;
            double v = 1.0;
            while (m > 1) {
                std::uint32_t p = spf[m];
                v *= 1.0 - 1.0 / p;
                while (m % p == 0) m /= p;
            }
            phistar[i] = v;
        }
    }
    long double total = 0;
    for (std::uint64_t s0 = 1; s0 * s0 * s0 <= X; ++s0) {
        std::uint64_t lim0 = X / (s0 * s0 * s0);
        auto s0fac = arith::factorize(s0);
        for (std::uint64_t s1 = 1; s1 * s1 <= lim0; ++s1) {
            std::uint64_t lim1 = lim0 / (s1 * s1);
            for (std::uint64_t s2 = 1; s2 * s2 <= lim1; ++s2) {
                if (std::gcd(s1, s2) != 1) continue;
                std::uint64_t lim2 = lim1 / (s2 * s2);
                double f12 = phistar[s0] * phistar[s1] * phistar[s2];
                for (std::uint64_t s3 = 1; s3 * s3 <= lim2; ++s3) {
                    if (std::gcd(s3, s1) != 1 || std::gcd(s3, s2) != 1) continue;
                    double th = f12 * phistar[s3];
                    for (auto [p, e] : s0fac.factors) {
                        (void)e;
                        if (s1 % p != 0 && s2 % p != 0 && s3 % p != 0)
                            th *= 1.0 - 2.0 / static_cast<double>(p);
                    }
                    total += th / std::cbrt(static_cast<double>(s1 * s2 * s3));
                }
            }
        }
    }
    return static_cast<double>(total);
}

namespace {

// multiply ascending rational series, truncated
std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, int max_pow) {
    std::vector<Rat> r(max_pow + 1, Rat(0));
    for (int i = 0; i <= max_pow && i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= max_pow && j < static_cast<int>(b.size()); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

// 1 / (1 - c x^k) up to max_pow
std::vector<Rat> series_geom(const Rat& c, int k, int max_pow) {
    std::vector<Rat> r(max_pow + 1, Rat(0));
    Rat pw = 1;
    for (int i = 0; i * k <= max_pow; ++i) {
        r[i * k] = pw;
        pw *= c;
    }
    return r;
}

}  // namespace

std::vector<Rat> ap_series_closed(std::uint64_t p, int max_pow) {
    // a_p(s) = 1 + 3(1-1/p) x^2/p / (1 - x^2/p)
    //            + (1-1/p)(1-2/p) x^3/p / (1 - x^3/p)
    //            + 3(1-1/p)^2 x^5/p^2 / ((1 - x^2/p)(1 - x^3/p)),  x = p^(-s)
    Rat ip(1, Int(p));
    std::vector<Rat> out(max_pow + 1, Rat(0));
    out[0] = 1;
    auto add = [&](const std::vector<Rat>& t) {
        for (int i = 0; i <= max_pow; ++i) out[i] += t[i];
    };
    auto g2 = series_geom(ip, 2, max_pow);
    auto g3 = series_geom(ip, 3, max_pow);
    {
        std::vector<Rat> t(max_pow + 1, Rat(0));
        if (max_pow >= 2) t[2] = 3 * (1 - ip) * ip;
        add(series_mul(t, g2, max_pow));
    }
    {
        std::vector<Rat> t(max_pow + 1, Rat(0));
        if (max_pow >= 3) t[3] = (1 - ip) * (1 - 2 * ip) * ip;
        add(series_mul(t, g3, max_pow));
    }
    {
        std::vector<Rat> t(max_pow + 1, Rat(0));
        if (max_pow >= 5) t[5] = 3 * (1 - ip) * (1 - ip) * ip * ip;
        add(series_mul(series_mul(t, g2, max_pow), g3, max_pow));
    }
    return out;
}

std::vector<Rat> ap_series_enumerated(std::uint64_t p, int max_pow) {
    // direct sum over local exponents: s0 = p^e0 and at most one of s1,s2,s3
    // equal to p^e (pairwise coprimality); contribution
    //   theta_p * x^(3 e0 + 2 e) / p^(e0 + e)
    std::vector<Rat> out(max_pow + 1, Rat(0));
    Rat ip(1, Int(p));
    for (int e0 = 0; 3 * e0 <= max_pow; ++e0) {
        for (int e = 0; 3 * e0 + 2 * e <= max_pow; ++e) {
            int pow = 3 * e0 + 2 * e;
            int mult = (e > 0) ? 3 : 1;  // which of s1, s2, s3 carries p
            Rat theta = 1;
            if (e0 > 0 && e > 0) theta = (1 - ip) * (1 - ip);
            else if (e0 > 0) theta = (1 - ip) * (1 - 2 * ip);
            else if (e > 0) theta = (1 - ip);
            Rat scale = 1;
            for (int i = 0; i < e0 + e; ++i) scale *= ip;
            out[pow] += mult * theta * scale;
        }
    }
    return out;
}

FitResult fit_leading(const std::vector<std::pair<double, double>>& counts, int rho,
                      int min_degree) {
    if (rho < 1) throw std::invalid_argument("fit_leading: rho >= 1");
    int top = rho - 1;
    if (min_degree < 0 || min_degree > top) throw std::invalid_argument("fit_leading: bad degree range");
    int ncols = top - min_degree + 1;
    if (static_cast<int>(counts.size()) < ncols)
        throw std::invalid_argument("fit_leading: not enough sample points");
    // least squares on y = N/B against (log B)^j via normal equations
    std::vector<std::vector<long double>> ata(ncols, std::vector<long double>(ncols, 0));
    std::vector<long double> atb(ncols, 0);
    for (const auto& [B, N] : counts) {
        if (B <= 1) throw std::invalid_argument("fit_leading: B > 1 required");
        long double lb = std::log(static_cast<long double>(B));
        long double y = static_cast<long double>(N) / static_cast<long double>(B);
        std::vector<long double> row(ncols);
        for (int j = 0; j < ncols; ++j) row[j] = std::pow(lb, top - j);
        for (int i = 0; i < ncols; ++i) {
            for (int j = 0; j < ncols; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * y;
        }
    }
    // solve
    for (int c = 0; c < ncols; ++c) {
        int piv = c;
        for (int r = c + 1; r < ncols; ++r)
            if (std::fabs(static_cast<double>(ata[r][c])) > std::fabs(static_cast<double>(ata[piv][c]))) piv = r;
        std::swap(ata[c], ata[piv]);
        std::swap(atb[c], atb[piv]);
        if (ata[c][c] == 0) throw std::invalid_argument("fit_leading: degenerate design matrix");
        for (int r = 0; r < ncols; ++r) {
            if (r == c) continue;
            long double f = ata[r][c] / ata[c][c];
            for (int j = 0; j < ncols; ++j) ata[r][j] -= f * ata[c][j];
            atb[r] -= f * atb[c];
        }
    }
    FitResult res;
    res.coefficients.resize(ncols);
    for (int j = 0; j < ncols; ++j) res.coefficients[j] = static_cast<double>(atb[j] / ata[j][j]);
    res.leading = res.coefficients[0];
    double ss = 0;
    for (const auto& [B, N] : counts) {
        double lb = std::log(B);
        double fitv = 0;
        for (int j = 0; j < ncols; ++j) fitv += res.coefficients[j] * std::pow(lb, top - j);
        double r = N / B - fitv;
        ss += r * r;
    }
    res.residual = std::sqrt(ss);
    return res;
}

}  // namespace dpc::constants
