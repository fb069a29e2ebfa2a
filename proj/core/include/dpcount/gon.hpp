#pragma once

// Geometry-of-numbers counting experiments: uniform box counts M_d for
// primitive points on diagonal lines (d = 1) and conics (d = 2), the
// congruence-root bound, and conic-solvability statistics.
//
// The lemma-shaped bounds carry implied constants; each check compares the
// exact count against the bound with a constant frozen after an oracle sweep
// (see the constants below).

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dpc::gon {

struct BoxCountInstance {
    int degree = 1;                      // 1 or 2
    std::array<std::int64_t, 3> a{};     // primitive, all nonzero; pairwise coprime for d = 2
    std::array<double, 3> bounds{};      // B1, B2, B3 > 0

    void validate() const;
};

// #{x in Z^3 primitive : a1 x1^d + a2 x2^d + a3 x3^d = 0, |x_i| <= B_i}
std::uint64_t count_Md(const BoxCountInstance& inst, std::uint64_t budget = 2'000'000'000ull);

// Frozen implied constants: the maximum ratio observed in a 10^4-instance
// oracle sweep (gon sweep --lemma ...), doubled and committed.
// Observed maxima: line 3.85, conic 3.57, rho 1.00 (seed 12345).
inline constexpr double kLineBoundConstant = 8.0;
inline constexpr double kConicBoundConstant = 8.0;
inline constexpr double kRhoBoundConstant = 2.0;
inline constexpr double kSerreBoundConstant = 64.0;

double line_bound(const BoxCountInstance& inst);   // 1 + B1B2B3 / max |a_i| B_i
double conic_bound(const BoxCountInstance& inst);  // (1 + B1B2B3/|a1a2a3|)^(1/3) tau(|a1a2a3|)

struct SweepReport {
    std::string lemma;
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;  // ratio above the frozen constant
    double max_ratio = 0;
    std::vector<std::string> rows;  // CSV: instance,count,bound,ratio
};

BoxCountInstance random_line_instance(std::mt19937_64& rng);
BoxCountInstance random_conic_instance(std::mt19937_64& rng);

SweepReport check_line_bound(std::uint64_t samples, std::uint64_t seed, bool keep_rows = false);
SweepReport check_conic_bound(std::uint64_t samples, std::uint64_t seed, bool keep_rows = false);

// #{t mod q : a t^2 + b = 0 (mod q)}
std::uint64_t rho_congruence(std::uint64_t q, std::int64_t a, std::int64_t b);
// sum_{d | q} mu(d)^2 kronecker(-ab, d)
std::int64_t rho_divisor_bound(std::uint64_t q, std::int64_t a, std::int64_t b);
int kronecker_symbol(std::int64_t a, std::int64_t n);

SweepReport check_rho_bound(std::uint64_t samples, std::uint64_t seed, bool keep_rows = false);

struct SerreReport {
    double A = 0, B = 0;
    std::uint64_t samples = 0;
    std::uint64_t valid = 0;    // satisfying the coprimality/squarefree side conditions
    std::uint64_t soluble = 0;  // conic had a point within the search box
    double weighted_ratio = 0;  // estimated 2^omega-weighted soluble count / (A B)
};

// Searches for a nonzero solution of a1 b1 c1^2 + a2 b2 c2^2 + a3 b3 c3^2 = 0
// with pairwise coprime c_i and hcf(a_i, c_j) = 1, within
// |c_i| <= min(4 sqrt(|a1 a2 a3 b1 b2 b3|), cap).  A negative result means
// only that the search box contained no point.
bool conic_search(const std::array<std::int64_t, 3>& a, const std::array<std::int64_t, 3>& b,
                  std::int64_t cap = 320);

// Samples (a, b) in the dyadic boxes (A/2, A] x (B/2, B] (componentwise, both
// signs) subject to |mu(a1 a2 a3)| = 1 and hcf(a_i, b_j, b_k) = 1, and runs
// conic_search on each.
SerreReport conic_solvability_stats(double A, double B, std::uint64_t sample_size,
                                    std::uint64_t seed);

}  // namespace dpc::gon
