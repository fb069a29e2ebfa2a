#pragma once

// Exact number-theoretic kernel: primes, factorization, multiplicative
// functions, Mobius-sieved primitive counting.  All operations are pure and
// exact; nothing here ever rounds to floating point.

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dpc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

namespace arith {

// (prime, exponent) pairs with primes strictly increasing; the product of
// p^e reconstructs the input.
struct Factorization {
    std::vector<std::pair<std::uint64_t, int>> factors;

    std::uint64_t value() const;
    int omega() const { return static_cast<int>(factors.size()); }
    std::uint64_t tau() const;
    bool squarefree() const;
};

// Shared prime table.  Sieve bound is configurable; inputs whose unfactored
// part exceeds bound^2 fall back to deterministic Miller-Rabin.
void set_sieve_bound(std::uint64_t bound);
const std::vector<std::uint32_t>& primes();

bool is_prime(std::uint64_t n);
Factorization factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

int mobius(std::uint64_t n);
int omega(std::uint64_t n);
std::uint64_t tau(std::uint64_t n);

// n = u * v^2 with u squarefree; the decomposition is unique.
std::pair<std::uint64_t, std::uint64_t> squarefree_decompose(std::uint64_t n);

// phi*(n) = prod_{p | n} (1 - 1/p), phi*(1) = 1.
Rat phi_star(std::uint64_t n);
Rat phi_star(const Factorization& f);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::int64_t gcd_vec(std::span<const std::int64_t> v);

// #{x in S : gcd of components = 1}.  Both the direct gcd filter and the
// Mobius-sum evaluation are computed and must agree; zero vectors are
// rejected (their gcd is 0, and the Mobius sum does not terminate on them).
std::uint64_t primitive_count(const std::vector<std::vector<std::int64_t>>& S);

// #{n in (a, b] : gcd(n, m) = 1}, exact via Mobius over divisors of m.
std::int64_t coprime_count_interval(std::int64_t a, std::int64_t b, std::uint64_t m);

}  // namespace arith
}  // namespace dpc
