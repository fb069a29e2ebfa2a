#include "dpcount/gon.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dpcount/arith.hpp"

namespace dpc::gon {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;

i64 iabs(i64 x) { return x < 0 ? -x : x; }

i64 isqrt_floor(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

void BoxCountInstance::validate() const {
    if (degree != 1 && degree != 2) throw std::invalid_argument("count_Md: degree must be 1 or 2");
    i64 g = std::gcd(std::gcd(iabs(a[0]), iabs(a[1])), iabs(a[2]));
    if (a[0] == 0 || a[1] == 0 || a[2] == 0) throw std::invalid_argument("count_Md: a_i must be nonzero");
    if (g != 1) throw std::invalid_argument("count_Md: a must be primitive");
    if (degree == 2) {
        if (std::gcd(iabs(a[0]), iabs(a[1])) != 1 || std::gcd(iabs(a[0]), iabs(a[2])) != 1 ||
            std::gcd(iabs(a[1]), iabs(a[2])) != 1)
            throw std::invalid_argument("count_Md: pairwise coprime a required for d = 2");
    }
    for (double b : bounds)
        if (!(b > 0)) throw std::invalid_argument("count_Md: bounds must be positive");
}

std::uint64_t count_Md(const BoxCountInstance& inst, std::uint64_t budget) {
    inst.validate();
    i64 B1 = static_cast<i64>(std::floor(inst.bounds[0]));
    i64 B2 = static_cast<i64>(std::floor(inst.bounds[1]));
    i64 B3 = static_cast<i64>(std::floor(inst.bounds[2]));
    if (B1 < 0 || B2 < 0 || B3 < 0) return 0;
    double steps = (2.0 * B1 + 1) * (2.0 * B2 + 1);
    if (steps > static_cast<double>(budget)) throw std::invalid_argument("count_Md: budget exceeded");
    u64 count = 0;
    auto consider = [&](i64 x1, i64 x2, i64 x3) {
        if (iabs(x3) > B3) return;
        if (x1 == 0 && x2 == 0 && x3 == 0) return;
        i64 g = std::gcd(std::gcd(iabs(x1), iabs(x2)), iabs(x3));
        if (g == 1) ++count;
    };
    for (i64 x1 = -B1; x1 <= B1; ++x1) {
        for (i64 x2 = -B2; x2 <= B2; ++x2) {
            if (inst.degree == 1) {
                i64 num = -(inst.a[0] * x1 + inst.a[1] * x2);
                if (num % inst.a[2] != 0) continue;
                consider(x1, x2, num / inst.a[2]);
            } else {
                i64 num = -(inst.a[0] * x1 * x1 + inst.a[1] * x2 * x2);
                if (num % inst.a[2] != 0) continue;
                i64 sq = num / inst.a[2];
                if (sq < 0) continue;
                i64 r = isqrt_floor(sq);
                if (r * r != sq) continue;
                consider(x1, x2, r);
                if (r != 0) consider(x1, x2, -r);
            }
        }
    }
    return count;
}

double line_bound(const BoxCountInstance& inst) {
    double m = 0;
    for (int i = 0; i < 3; ++i)
        m = std::max(m, static_cast<double>(iabs(inst.a[i])) * inst.bounds[i]);
    return 1.0 + inst.bounds[0] * inst.bounds[1] * inst.bounds[2] / m;
}

double conic_bound(const BoxCountInstance& inst) {
    double prod = static_cast<double>(iabs(inst.a[0])) * iabs(inst.a[1]) * iabs(inst.a[2]);
    double tau = static_cast<double>(
        arith::tau(static_cast<u64>(iabs(inst.a[0] * inst.a[1] * inst.a[2]))));
    return std::cbrt(1.0 + inst.bounds[0] * inst.bounds[1] * inst.bounds[2] / prod) * tau;
}

namespace {

i64 draw_coeff(std::mt19937_64& rng, i64 max_abs) {
    std::uniform_int_distribution<i64> mag(1, max_abs);
    std::uniform_int_distribution<int> sg(0, 1);
    return (sg(rng) ? 1 : -1) * mag(rng);
}

double draw_bound(std::mt19937_64& rng) {
    // log-uniform in [0.5, 160]
    std::uniform_real_distribution<double> u(std::log(0.5), std::log(160.0));
    return std::exp(u(rng));
}

}  // namespace

BoxCountInstance random_line_instance(std::mt19937_64& rng) {
    // heights up to 10^5 exercise the large-|a| regime of the bound
    static const i64 scales[4] = {9, 50, 1000, 100000};
    while (true) {
        BoxCountInstance inst;
        inst.degree = 1;
        std::uniform_int_distribution<int> si(0, 3);
        for (int i = 0; i < 3; ++i) inst.a[i] = draw_coeff(rng, scales[si(rng)]);
        i64 g = std::gcd(std::gcd(iabs(inst.a[0]), iabs(inst.a[1])), iabs(inst.a[2]));
        for (auto& c : inst.a) c /= g;
        for (int i = 0; i < 3; ++i) inst.bounds[i] = draw_bound(rng);
        return inst;
    }
}

BoxCountInstance random_conic_instance(std::mt19937_64& rng) {
    while (true) {
        BoxCountInstance inst;
        inst.degree = 2;
        for (int i = 0; i < 3; ++i) inst.a[i] = draw_coeff(rng, 60);
        if (std::gcd(iabs(inst.a[0]), iabs(inst.a[1])) != 1 ||
            std::gcd(iabs(inst.a[0]), iabs(inst.a[2])) != 1 ||
            std::gcd(iabs(inst.a[1]), iabs(inst.a[2])) != 1)
            continue;
        for (int i = 0; i < 3; ++i) inst.bounds[i] = draw_bound(rng);
        return inst;
    }
}

namespace {

SweepReport sweep_bound(const std::string& lemma, u64 samples, u64 seed, bool keep_rows,
                        double frozen,
                        BoxCountInstance (*gen)(std::mt19937_64&),
                        double (*bound)(const BoxCountInstance&)) {
    std::mt19937_64 rng(seed);
    SweepReport rep;
    rep.lemma = lemma;
    for (u64 i = 0; i < samples; ++i) {
        BoxCountInstance inst = gen(rng);
        u64 cnt = count_Md(inst);
        double b = bound(inst);
        double ratio = static_cast<double>(cnt) / b;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > frozen) ++rep.violations;
        ++rep.instances;
        if (keep_rows) {
            std::ostringstream os;
            os << inst.a[0] << ";" << inst.a[1] << ";" << inst.a[2] << ";" << inst.bounds[0] << ";"
               << inst.bounds[1] << ";" << inst.bounds[2] << "," << cnt << "," << b << "," << ratio;
            rep.rows.push_back(os.str());
        }
    }
    return rep;
}

}  // namespace

SweepReport check_line_bound(u64 samples, u64 seed, bool keep_rows) {
    return sweep_bound("line", samples, seed, keep_rows, kLineBoundConstant,
                       random_line_instance, line_bound);
}

SweepReport check_conic_bound(u64 samples, u64 seed, bool keep_rows) {
    return sweep_bound("conic", samples, seed, keep_rows, kConicBoundConstant,
                       random_conic_instance, conic_bound);
}

int kronecker_symbol(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int r = 1;
    while (n % 2 == 0) {
        n /= 2;
        i64 am = ((a % 8) + 8) % 8;
        if (am % 2 == 0) return 0;
        if (am == 3 || am == 5) r = -r;
    }
    a = ((a % n) + n) % n;
    // Jacobi symbol for odd n >= 1
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 nm = n % 8;
            if (nm == 3 || nm == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    if (n != 1) return 0;
    return sign * r * t;
}

std::uint64_t rho_congruence(u64 q, i64 a, i64 b) {
    if (q == 0) throw std::invalid_argument("rho_congruence: q >= 1 required");
    u64 count = 0;
    for (u64 t = 0; t < q; ++t) {
        i64 v = (a % static_cast<i64>(q)) * static_cast<i64>(t % q) % static_cast<i64>(q) *
                    static_cast<i64>(t % q) % static_cast<i64>(q) +
                b % static_cast<i64>(q);
        if (((v % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q) == 0) ++count;
    }
    return count;
}

std::int64_t rho_divisor_bound(u64 q, i64 a, i64 b) {
    i64 s = 0;
    for (u64 d : arith::divisors(q)) {
        if (arith::mobius(d) == 0) continue;
        s += kronecker_symbol(-a * b, static_cast<i64>(d));
    }
    return s;
}

SweepReport check_rho_bound(u64 samples, u64 seed, bool keep_rows) {
    // Instances follow the shape in which the bound is applied: modulus
    // a3 c3^2 with a3 odd squarefree, a = a1 b1, b = a2 b2, where the a_i are
    // pairwise coprime with squarefree product, hcf(a3, b1, b2) = 1 and
    // hcf(c3, 2 a1 a2 b1 b2) = 1.
    std::mt19937_64 rng(seed);
    SweepReport rep;
    rep.lemma = "rho";
    std::uniform_int_distribution<i64> small(1, 30);
    std::uniform_int_distribution<int> sg(0, 1);
    while (rep.instances < samples) {
        i64 a1 = draw_coeff(rng, 30), a2 = draw_coeff(rng, 30), a3 = small(rng) * 2 - 1;
        if (!arith::factorize(static_cast<u64>(iabs(a1 * a2 * a3))).squarefree()) continue;
        if (std::gcd(iabs(a1), iabs(a2)) != 1 || std::gcd(iabs(a1), iabs(a3)) != 1 ||
            std::gcd(iabs(a2), iabs(a3)) != 1)
            continue;
        i64 b1 = draw_coeff(rng, 40), b2 = draw_coeff(rng, 40);
        if (std::gcd(iabs(a3), std::gcd(iabs(b1), iabs(b2))) != 1) continue;
        i64 c3 = small(rng);
        if (std::gcd(c3, 2 * iabs(a1 * a2) * std::max<i64>(iabs(b1 * b2), 1)) != 1) continue;
        u64 q = static_cast<u64>(iabs(a3)) * static_cast<u64>(c3) * static_cast<u64>(c3);
        i64 a = a1 * b1, b = a2 * b2;
        u64 rho = rho_congruence(q, a, b);
        i64 bnd = rho_divisor_bound(q, a, b);
        double ratio = bnd > 0 ? static_cast<double>(rho) / static_cast<double>(bnd)
                               : (rho == 0 ? 0.0 : 1e9);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > kRhoBoundConstant) ++rep.violations;
        ++rep.instances;
        if (keep_rows) {
            std::ostringstream os;
            os << q << ";" << a << ";" << b << "," << rho << "," << bnd << "," << ratio;
            rep.rows.push_back(os.str());
        }
    }
    return rep;
}

bool conic_search(const std::array<i64, 3>& a, const std::array<i64, 3>& b, i64 cap) {
    i64 d1 = a[0] * b[0], d2 = a[1] * b[1], d3 = a[2] * b[2];
    if (d1 == 0 || d2 == 0 || d3 == 0) throw std::invalid_argument("conic_search: zero coefficient");
    // no real point when all signs agree
    if ((d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0)) return false;
    double prod = std::fabs(static_cast<double>(d1)) * std::fabs(static_cast<double>(d2)) *
                  std::fabs(static_cast<double>(d3));
    i64 climit = static_cast<i64>(std::min(4.0 * std::sqrt(prod) + 1, static_cast<double>(cap)));
    for (i64 c1 = 1; c1 <= climit; ++c1) {
        for (i64 c2 = -climit; c2 <= climit; ++c2) {
            if (c2 == 0 || std::gcd(c1, iabs(c2)) != 1) continue;
            i64 num = -(d1 * c1 * c1 + d2 * c2 * c2);
            if (num % d3 != 0) continue;
            i64 sq = num / d3;
            if (sq <= 0) continue;
            i64 c3 = isqrt_floor(sq);
            if (c3 == 0 || c3 * c3 != sq) continue;
            if (std::gcd(c1, c3) != 1 || std::gcd(iabs(c2), c3) != 1) continue;
            bool cop = true;
            std::array<i64, 3> cs{c1, c2, c3};
            for (int i = 0; i < 3 && cop; ++i)
                for (int j = 0; j < 3 && cop; ++j)
                    if (std::gcd(iabs(a[i]), iabs(cs[j])) != 1) cop = false;
            if (cop) return true;
        }
    }
    return false;
}

SerreReport conic_solvability_stats(double A, double B, u64 sample_size, u64 seed) {
    if (A < 2 || B < 2) throw std::invalid_argument("conic_solvability_stats: A, B >= 2");
    std::mt19937_64 rng(seed);
    SerreReport rep;
    rep.A = A;
    rep.B = B;
    auto draw_dyadic = [&](double top) {
        std::uniform_int_distribution<i64> mag(static_cast<i64>(top / 2) + 1, static_cast<i64>(top));
        std::uniform_int_distribution<int> sg2(0, 1);
        return (sg2(rng) ? 1 : -1) * mag(rng);
    };
    double weighted = 0;
    for (u64 it = 0; it < sample_size; ++it) {
        ++rep.samples;
        std::array<i64, 3> a{draw_dyadic(A), draw_dyadic(A), draw_dyadic(A)};
        std::array<i64, 3> b{draw_dyadic(B), draw_dyadic(B), draw_dyadic(B)};
        if (!arith::factorize(static_cast<u64>(iabs(a[0] * a[1] * a[2]))).squarefree()) continue;
        bool side = true;
        for (int i = 0; i < 3 && side; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            if (std::gcd(iabs(a[i]), std::gcd(iabs(b[j]), iabs(b[k]))) != 1) side = false;
        }
        if (!side) continue;
        ++rep.valid;
        bool found = conic_search(a, b);
        if (found) {
            ++rep.soluble;
            weighted += std::pow(
                2.0, arith::omega(static_cast<u64>(iabs(a[0] * a[1] * a[2]))) +
                         arith::omega(static_cast<u64>(std::max<i64>(iabs(b[0] * b[1] * b[2]), 1))));
        }
    }
    // Sampling is uniform over the +-(A/2, A] dyadic boxes, which contain
    // A^3 B^3 = (A1 A2 A3)(B1 B2 B3) tuples, so the 2^omega-weighted soluble
    // count scaled to the box and divided by A1 A2 A3 B1 B2 B3 is simply the
    // weighted sample mean.
    rep.weighted_ratio = weighted / static_cast<double>(sample_size);
    return rep;
}

}  // namespace dpc::gon
