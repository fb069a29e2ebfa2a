#pragma once

// Cubic characters on F_p, generalized Jacobi sums, local solution counts
// N(q), N*(q) for diagonal cubic forms, the character-sum quantity
// delta_p(a), and the complete exponential sums T(a,q), S_q of the circle
// method, together with their defining identities.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "dpcount/arith.hpp"

namespace dpc::chars {

// Exact element of Z[w], w = primitive cube root of unity (w^2 = -1 - w).
struct Eisenstein {
    Int a{0}, b{0};  // a + b w

    Eisenstein() = default;
    Eisenstein(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
    Eisenstein operator+(const Eisenstein& o) const { return {a + o.a, b + o.b}; }
    Eisenstein operator-(const Eisenstein& o) const { return {a - o.a, b - o.b}; }
    Eisenstein operator*(const Eisenstein& o) const {
        // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w
        return {a * o.a - b * o.b, a * o.b + b * o.a - b * o.b};
    }
    Eisenstein conj() const { return {a - b, -b}; }
    Int norm() const { return a * a - a * b + b * b; }  // |z|^2
    bool operator==(const Eisenstein&) const = default;
    std::complex<double> to_complex() const;

    static Eisenstein omega_pow(int e);  // w^e, e mod 3
};

// Non-trivial cubic character mod p (p = 1 mod 3) determined by
// chi(g^k) = w^(k mod 3) for the least primitive root g.  Values are stored
// as exponents; chi(0) = 0 is encoded by -1.
struct CubicCharacter {
    std::uint64_t p = 0;
    int conjugate_power = 1;       // 1 for chi, 2 for the conjugate
    std::vector<int> exponent;     // exponent[a] in {0,1,2}, exponent[0] = -1

    Eisenstein value(std::uint64_t a) const;
    bool is_cube(std::uint64_t a) const { return a % p != 0 && exponent[a % p] == 0; }
};

// The pair (chi, conjugate chi); requires p = 1 mod 3.
std::pair<CubicCharacter, CubicCharacter> cubic_characters(std::uint64_t p);

std::uint64_t least_primitive_root(std::uint64_t p);

// J_0(chi_1,...,chi_r) = sum over tuples with t_1 + ... + t_r = 0 mod p,
// computed by brute force; exact.
Eisenstein jacobi_sum_j0(const std::vector<const CubicCharacter*>& chars);

// Bad primes {3} union {p | a1 a2 a3 a4}.
std::vector<std::uint64_t> bad_primes(const std::array<std::int64_t, 4>& a);
bool is_good_prime(const std::array<std::int64_t, 4>& a, std::uint64_t p);

// delta_p(a) for good p: 0 for p = 2 mod 3, else 3 nu_p(a) - 3 where nu_p
// counts cube ratios; cross-computed from the character-sum definition.
int delta_p(const std::array<std::int64_t, 4>& a, std::uint64_t p);

struct LocalTable {
    std::array<std::int64_t, 4> a;
    std::uint64_t q = 0;
    std::uint64_t N = 0;       // solutions of the congruence mod q
    std::uint64_t Nstar = 0;   // with gcd(q, x) = 1
};

// Exact N(q), N*(q) for the diagonal cubic with coefficients a; cost O(q^3).
LocalTable local_counts(const std::array<std::int64_t, 4>& a, std::uint64_t q,
                        std::uint64_t budget = 40'000'000ull);

// N*(p^e) = p^(3e-3) N*(p) for good p.
bool hensel_check(const std::array<std::int64_t, 4>& a, std::uint64_t p, int e,
                  std::uint64_t budget = 40'000'000ull);

// T(aa, q) = sum_{r mod q} e(aa C(r)/q); evaluated through the per-coordinate
// factorization of the diagonal form, cost O(q).
std::complex<double> exp_sum_T(const std::array<std::int64_t, 4>& a, std::uint64_t aa,
                               std::uint64_t q);

// S_q = sum_{aa <= q, gcd(aa,q)=1} T(aa, q).
std::complex<double> exp_sum_S(const std::array<std::int64_t, 4>& a, std::uint64_t q);

struct SqIdentityReport {
    double S_q;       // real part of the computed sum (imag checked small)
    double rhs;       // p^e N(p^e) - p^(3+e) N(p^(e-1))
    double rel_error;
    bool ok;
};

SqIdentityReport sq_identity_check(const std::array<std::int64_t, 4>& a, std::uint64_t p, int e,
                                   std::uint64_t budget = 40'000'000ull);

struct EmReport {
    std::complex<double> lattice_sum;   // sum over x = residues (mod r) in [-P,P]^4
    std::complex<double> box_integral;  // r^{-4} * integral over the box
    double difference;
    double error_scale;                 // P^3 (1 + P M_F) / r^3
    double ratio;
};

// Compares the congruence-restricted exponential sum of e(z C(x)) over
// [-P,P]^4 with the volume integral; the difference divided by
// P^3(1+P M_F)/r^3 stays bounded.
EmReport em_lattice_check(double z, std::int64_t P, std::int64_t r,
                          const std::array<std::int64_t, 4>& a,
                          const std::array<std::int64_t, 4>& residues);

// Frozen constant for the ratio above: grid-sweep maximum 35.3, doubled.
inline constexpr double kEmRatioConstant = 72.0;

}  // namespace dpc::chars
