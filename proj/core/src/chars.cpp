#include "dpcount/chars.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace dpc::chars {

namespace {

std::uint64_t powmod_u(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>(static_cast<__uint128_t>(r) * a % m);
        a = static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * a % m);
        e >>= 1;
    }
    return r;
}

}  // namespace

std::complex<double> Eisenstein::to_complex() const {
    // w = (-1 + sqrt(-3))/2
    double ad = static_cast<double>(a), bd = static_cast<double>(b);
    return {ad - bd / 2.0, bd * std::numbers::sqrt3 / 2.0};
}

Eisenstein Eisenstein::omega_pow(int e) {
    e = ((e % 3) + 3) % 3;
    if (e == 0) return {1, 0};
    if (e == 1) return {0, 1};
    return {-1, -1};  // w^2 = -1 - w
}

Eisenstein CubicCharacter::value(std::uint64_t x) const {
    int e = exponent[x % p];
    if (e < 0) return {0, 0};
    return Eisenstein::omega_pow(e * conjugate_power);
}

std::uint64_t least_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    auto fac = arith::factorize(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac.factors) {
            (void)e;
            if (powmod_u(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

std::pair<CubicCharacter, CubicCharacter> cubic_characters(std::uint64_t p) {
    if (!arith::is_prime(p) || p % 3 != 1)
        throw std::invalid_argument("cubic_characters: p must be a prime = 1 mod 3");
    std::uint64_t g = least_primitive_root(p);
    CubicCharacter chi;
    chi.p = p;
    chi.conjugate_power = 1;
    chi.exponent.assign(p, -1);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < p - 1; ++k) {
        chi.exponent[x] = static_cast<int>(k % 3);
        x = static_cast<std::uint64_t>(static_cast<__uint128_t>(x) * g % p);
    }
    CubicCharacter bar = chi;
    bar.conjugate_power = 2;
    return {chi, bar};
}

Eisenstein jacobi_sum_j0(const std::vector<const CubicCharacter*>& chars) {
    if (chars.size() < 2) throw std::invalid_argument("jacobi_sum_j0: r >= 2 required");
    std::uint64_t p = chars[0]->p;
    for (const auto* c : chars)
        if (c->p != p) throw std::invalid_argument("jacobi_sum_j0: mixed moduli");
    std::size_t r = chars.size();
    // iterate over (t_1, ..., t_{r-1}); t_r is forced
    std::vector<std::uint64_t> t(r - 1, 0);
    Eisenstein total{0, 0};
    while (true) {
        std::uint64_t s = 0;
        for (auto v : t) s += v;
        std::uint64_t tr = (p - s % p) % p;
        Eisenstein prod = chars[r - 1]->value(tr);
        for (std::size_t i = 0; i + 1 < r && !(prod == Eisenstein{0, 0}); ++i)
            prod = prod * chars[i]->value(t[i]);
        total = total + prod;
        std::size_t i = 0;
        while (i < r - 1 && ++t[i] == p) t[i++] = 0;
        if (i == r - 1) break;
    }
    return total;
}

std::vector<std::uint64_t> bad_primes(const std::array<std::int64_t, 4>& a) {
    std::set<std::uint64_t> s{3};
    for (auto c : a) {
        if (c == 0) throw std::invalid_argument("bad_primes: zero coefficient");
        for (auto [p, e] : arith::factorize(static_cast<std::uint64_t>(c < 0 ? -c : c)).factors) {
            (void)e;
            s.insert(p);
        }
    }
    return {s.begin(), s.end()};
}

bool is_good_prime(const std::array<std::int64_t, 4>& a, std::uint64_t p) {
    if (p == 3) return false;
    for (auto c : a)
        if (static_cast<std::uint64_t>(c < 0 ? -c : c) % p == 0) return false;
    return true;
}

int delta_p(const std::array<std::int64_t, 4>& a, std::uint64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("delta_p: p prime required");
    if (!is_good_prime(a, p)) throw std::invalid_argument("delta_p: p is a bad prime for a");
    if (p % 3 == 2) return 0;
    auto [chi, bar] = cubic_characters(p);
    auto inv = [&](std::uint64_t x) { return powmod_u(x % p, p - 2, p); };
    auto ratio = [&](int i, int j, int k) {
        // a_1 a_i / (a_j a_k) mod p  (indices 1-based into a)
        auto red = [&](std::int64_t v) {
            std::int64_t m = v % static_cast<std::int64_t>(p);
            if (m < 0) m += static_cast<std::int64_t>(p);
            return static_cast<std::uint64_t>(m);
        };
        std::uint64_t num = red(a[0]) * red(a[i - 1]) % p;
        std::uint64_t den = red(a[j - 1]) * red(a[k - 1]) % p;
        return num * inv(den) % p;
    };
    // nu_p = #{i in {2,3,4}} with ratio a cube
    int nu = 0;
    Eisenstein cs{0, 0};
    for (auto [i, j, k] : {std::array<int, 3>{2, 3, 4}, {3, 2, 4}, {4, 2, 3}}) {
        std::uint64_t r = ratio(i, j, k);
        if (chi.is_cube(r)) ++nu;
        cs = cs + chi.value(r) + bar.value(r);
    }
    int delta = 3 * nu - 3;
    // the character-sum evaluation must agree exactly
    if (!(cs == Eisenstein{Int(delta), Int(0)}))
        throw std::logic_error("delta_p: character sum disagrees with the cube count");
    return delta;
}

LocalTable local_counts(const std::array<std::int64_t, 4>& a, std::uint64_t q, std::uint64_t budget) {
    if (q == 0) throw std::invalid_argument("local_counts: q >= 1 required");
    LocalTable t;
    t.a = a;
    t.q = q;
    if (q == 1) {
        t.N = t.Nstar = 1;
        return t;
    }
    if (q * q * q > budget) throw std::invalid_argument("local_counts: q^3 beyond budget");
    auto red = [&](std::int64_t v) {
        std::int64_t m = v % static_cast<std::int64_t>(q);
        if (m < 0) m += static_cast<std::int64_t>(q);
        return static_cast<std::uint64_t>(m);
    };
    // cube residue tables
    std::vector<std::uint64_t> cube(q);
    for (std::uint64_t x = 0; x < q; ++x)
        cube[x] = static_cast<std::uint64_t>(static_cast<__uint128_t>(x) * x % q * x % q);
    // cnt[c] = #{x mod q : a4 x^3 = c}
    std::vector<std::uint32_t> cnt(q, 0);
    std::uint64_t a4 = red(a[3]);
    for (std::uint64_t x = 0; x < q; ++x)
        cnt[static_cast<std::uint64_t>(static_cast<__uint128_t>(a4) * cube[x] % q)]++;
    std::uint64_t a1 = red(a[0]), a2 = red(a[1]), a3 = red(a[2]);
    std::uint64_t N = 0;
    for (std::uint64_t x1 = 0; x1 < q; ++x1) {
        std::uint64_t s1 = static_cast<std::uint64_t>(static_cast<__uint128_t>(a1) * cube[x1] % q);
        for (std::uint64_t x2 = 0; x2 < q; ++x2) {
            std::uint64_t s2 = (s1 + static_cast<std::uint64_t>(static_cast<__uint128_t>(a2) * cube[x2] % q)) % q;
            for (std::uint64_t x3 = 0; x3 < q; ++x3) {
                std::uint64_t s3 = (s2 + static_cast<std::uint64_t>(static_cast<__uint128_t>(a3) * cube[x3] % q)) % q;
                N += cnt[(q - s3) % q];
            }
        }
    }
    t.N = N;
    // N*(q) = sum_{d | rad(q)} mu(d) (g/d)^4 N(q/g), g = gcd(d^3, q):
    // vectors divisible by d are d*y with y mod q/d, and d^3 C(y) = 0 mod q
    // collapses to C(y) = 0 mod q/g.
    std::uint64_t rad = 1;
    for (auto [p, e] : arith::factorize(q).factors) {
        (void)e;
        rad *= p;
    }
    std::int64_t nstar = 0;
    for (std::uint64_t d : arith::divisors(rad)) {
        int mu = arith::mobius(d);
        if (mu == 0) continue;
        std::uint64_t d3 = d * d * d;
        std::uint64_t g = std::gcd(d3, q);
        std::uint64_t sub;
        if (q / g == 1) sub = 1;
        else if (q / g == q && d == 1) sub = N;
        else sub = local_counts(a, q / g, budget).N;
        std::uint64_t mult = 1;
        std::uint64_t gd = g / d;
        for (int i = 0; i < 4; ++i) mult *= gd;
        nstar += mu * static_cast<std::int64_t>(mult * sub);
    }
    if (nstar < 0) throw std::logic_error("local_counts: negative N*");
    t.Nstar = static_cast<std::uint64_t>(nstar);
    return t;
}

bool hensel_check(const std::array<std::int64_t, 4>& a, std::uint64_t p, int e, std::uint64_t budget) {
    if (!is_good_prime(a, p)) throw std::invalid_argument("hensel_check: p must be a good prime");
    if (e < 1) throw std::invalid_argument("hensel_check: e >= 1 required");
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    LocalTable big = local_counts(a, pe, budget);
    LocalTable one = local_counts(a, p, budget);
    std::uint64_t scale = 1;
    for (int i = 0; i < 3 * (e - 1); ++i) scale *= p;
    return big.Nstar == scale * one.Nstar;
}

std::complex<double> exp_sum_T(const std::array<std::int64_t, 4>& a, std::uint64_t aa, std::uint64_t q) {
    if (q == 0 || aa == 0 || aa > q) throw std::invalid_argument("exp_sum_T: 1 <= aa <= q required");
    // T factors over the four coordinates of the diagonal form
    std::complex<double> prod{1.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        std::complex<double> s{0.0, 0.0};
        for (std::uint64_t r = 0; r < q; ++r) {
            std::uint64_t c = static_cast<std::uint64_t>(static_cast<__uint128_t>(r) * r % q * r % q);
            std::int64_t ai = a[i] % static_cast<std::int64_t>(q);
            if (ai < 0) ai += static_cast<std::int64_t>(q);
            std::uint64_t num = static_cast<std::uint64_t>(static_cast<__uint128_t>(aa) *
                                                           static_cast<std::uint64_t>(ai) % q *
                                                           c % q);
            double ang = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(q);
            s += std::complex<double>{std::cos(ang), std::sin(ang)};
        }
        prod *= s;
    }
    return prod;
}

std::complex<double> exp_sum_S(const std::array<std::int64_t, 4>& a, std::uint64_t q) {
    std::complex<double> s{0.0, 0.0};
    for (std::uint64_t aa = 1; aa <= q; ++aa)
        if (std::gcd(aa, q) == 1) s += exp_sum_T(a, aa, q);
    return s;
}

SqIdentityReport sq_identity_check(const std::array<std::int64_t, 4>& a, std::uint64_t p, int e,
                                   std::uint64_t budget) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    std::complex<double> S = exp_sum_S(a, pe);
    double Npe = static_cast<double>(local_counts(a, pe, budget).N);
    double Npe1 = e >= 2 ? static_cast<double>(local_counts(a, pe / p, budget).N) : 1.0;
    double rhs = static_cast<double>(pe) * Npe - std::pow(static_cast<double>(p), 3 + e) * Npe1;
    SqIdentityReport rep;
    rep.S_q = S.real();
    rep.rhs = rhs;
    double scale = std::max({std::fabs(rhs), std::fabs(S.real()), 1.0});
    rep.rel_error = (std::fabs(S.real() - rhs) + std::fabs(S.imag())) / scale;
    rep.ok = rep.rel_error < 1e-6;
    return rep;
}

EmReport em_lattice_check(double z, std::int64_t P, std::int64_t r,
                          const std::array<std::int64_t, 4>& a,
                          const std::array<std::int64_t, 4>& residues) {
    if (r < 1 || r > P) throw std::invalid_argument("em_lattice_check: 1 <= r <= P required");
    auto cube = [](double x) { return x * x * x; };
    // lattice sum over x = residues mod r in the box
    std::complex<double> lattice{0.0, 0.0};
    std::array<std::vector<std::int64_t>, 4> coords;
    for (int i = 0; i < 4; ++i) {
        std::int64_t rr = ((residues[i] % r) + r) % r;
        std::int64_t v0 = -P;
        while (((v0 % r) + r) % r != rr) ++v0;
        for (std::int64_t v = v0; v <= P; v += r) coords[i].push_back(v);
    }
    // The diagonal form makes both the sum and the integral products of
    // one-dimensional factors.
    std::complex<double> prod_sum{1.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        std::complex<double> s{0.0, 0.0};
        for (std::int64_t v : coords[i]) {
            double ang = 2.0 * std::numbers::pi * z * static_cast<double>(a[i]) * cube(static_cast<double>(v));
            s += std::complex<double>{std::cos(ang), std::sin(ang)};
        }
        prod_sum *= s;
    }
    lattice = prod_sum;
    // 1D oscillatory integrals by fine Simpson; integrand is smooth at the
    // scales used (|z| <= P^-2 so the phase varies by O(P)).
    auto integral_1d = [&](double ai) {
        int n = 20000;
        double h = 2.0 * static_cast<double>(P) / n;
        std::complex<double> acc{0.0, 0.0};
        for (int k = 0; k <= n; ++k) {
            double x = -static_cast<double>(P) + k * h;
            double ang = 2.0 * std::numbers::pi * z * ai * cube(x);
            std::complex<double> f{std::cos(ang), std::sin(ang)};
            double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            acc += w * f;
        }
        return acc * (h / 3.0);
    };
    std::complex<double> box{1.0, 0.0};
    for (int i = 0; i < 4; ++i) box *= integral_1d(static_cast<double>(a[i]));
    double r4 = std::pow(static_cast<double>(r), 4);
    box /= r4;
    double amax = 0;
    for (auto c : a) amax = std::max(amax, std::fabs(static_cast<double>(c)));
    double MF = 3.0 * std::fabs(z) * amax * static_cast<double>(P) * static_cast<double>(P) * 2.0 * std::numbers::pi;
    double scale = std::pow(static_cast<double>(P), 3) * (1.0 + static_cast<double>(P) * MF) /
                   std::pow(static_cast<double>(r), 3);
    EmReport rep;
    rep.lattice_sum = lattice;
    rep.box_integral = box;
    rep.difference = std::abs(lattice - box);
    rep.error_scale = scale;
    rep.ratio = rep.difference / scale;
    return rep;
}

}  // namespace dpc::chars
