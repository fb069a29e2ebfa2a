#include <doctest.h>

#include <numeric>
#include <random>

#include "dpcount/arith.hpp"
#include "dpcount/gon.hpp"

using namespace dpc;
using namespace dpc::gon;

TEST_CASE("box counts on hand instances") {
    CHECK(count_Md({1, {1, 1, 1}, {1, 1, 1}}) == 6);          // signed permutations of (1,-1,0)
    CHECK(count_Md({2, {1, 1, -2}, {1, 1, 1}}) == 8);         // all sign patterns of (1,1,1)
    CHECK(count_Md({1, {1, 1, 1}, {0.5, 0.5, 0.5}}) == 0);    // no nonzero integers in range
    CHECK(count_Md({1, {1000000, 1, 1}, {10, 10, 10}}) == 2); // +-(0,1,-1) only at this height
}

TEST_CASE("M_d symmetry under permuting (a_i, B_i) and negating a_i") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dc(1, 20);
    std::uniform_real_distribution<double> db(0.5, 20.0);
    int done = 0;
    while (done < 60) {
        BoxCountInstance inst;
        inst.degree = (done % 2) + 1;
        for (int i = 0; i < 3; ++i) inst.a[i] = dc(rng) * (rng() % 2 ? 1 : -1);
        std::int64_t g = std::gcd(std::gcd(std::abs(inst.a[0]), std::abs(inst.a[1])), std::abs(inst.a[2]));
        for (auto& c : inst.a) c /= g;
        if (inst.degree == 2 &&
            (std::gcd(std::abs(inst.a[0]), std::abs(inst.a[1])) != 1 ||
             std::gcd(std::abs(inst.a[0]), std::abs(inst.a[2])) != 1 ||
             std::gcd(std::abs(inst.a[1]), std::abs(inst.a[2])) != 1))
            continue;
        for (int i = 0; i < 3; ++i) inst.bounds[i] = db(rng);
        ++done;
        auto base = count_Md(inst);
        BoxCountInstance perm = inst;
        std::swap(perm.a[0], perm.a[2]);
        std::swap(perm.bounds[0], perm.bounds[2]);
        CHECK(count_Md(perm) == base);
        // negating all coefficients preserves the solution set; for lines a
        // single sign flip is absorbed by x_i -> -x_i
        BoxCountInstance neg = inst;
        for (auto& c : neg.a) c = -c;
        CHECK(count_Md(neg) == base);
        if (inst.degree == 1) {
            BoxCountInstance neg1 = inst;
            neg1.a[1] = -neg1.a[1];
            CHECK(count_Md(neg1) == base);
        }
    }
}

TEST_CASE("line and conic bounds hold with the frozen constants") {
    auto line = check_line_bound(1000, 2024);
    CHECK(line.violations == 0);
    CHECK(line.max_ratio <= kLineBoundConstant);
    auto conic = check_conic_bound(1000, 2024);
    CHECK(conic.violations == 0);
    CHECK(conic.max_ratio <= kConicBoundConstant);
    // the worked ratio 6/2 = 3 from the all-ones instance stays below the constant
    BoxCountInstance ones{1, {1, 1, 1}, {1, 1, 1}};
    CHECK(static_cast<double>(count_Md(ones)) / line_bound(ones) == doctest::Approx(3.0));
    CHECK(3.0 <= kLineBoundConstant);
}

TEST_CASE("congruence root counts") {
    CHECK(rho_congruence(7, 1, 1) == 0);   // -1 is not a square mod 7
    CHECK(rho_congruence(5, 1, 1) == 2);   // t = 2, 3
    CHECK(rho_congruence(1, 3, 9) == 1);   // everything is 0 mod 1
    CHECK(rho_congruence(12, 1, -1) == 4); // t = 1, 5, 7, 11
}

TEST_CASE("kronecker symbol basics") {
    CHECK(kronecker_symbol(-1, 7) == -1);
    CHECK(kronecker_symbol(-1, 5) == 1);
    CHECK(kronecker_symbol(2, 7) == 1);
    CHECK(kronecker_symbol(2, 3) == -1);
    CHECK(kronecker_symbol(6, 3) == 0);
    CHECK(kronecker_symbol(1, 2) == 1);
    CHECK(kronecker_symbol(7, 2) == 1);
    CHECK(kronecker_symbol(3, 2) == -1);
}

TEST_CASE("rho bound on the in-context generator, exact for clean moduli") {
    auto rep = check_rho_bound(1000, 55);
    CHECK(rep.violations == 0);
    // for odd q coprime to 2ab the divisor sum is an upper bound with constant 1
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> dq(1, 400);
    std::uniform_int_distribution<std::int64_t> dab(1, 50);
    int done = 0;
    while (done < 400) {
        std::uint64_t q = dq(rng) * 2 + 1;
        std::int64_t a = dab(rng) * (rng() % 2 ? 1 : -1);
        std::int64_t b = dab(rng) * (rng() % 2 ? 1 : -1);
        if (std::gcd(q, static_cast<std::uint64_t>(std::abs(2 * a * b))) != 1) continue;
        ++done;
        CHECK(static_cast<std::int64_t>(rho_congruence(q, a, b)) <= rho_divisor_bound(q, a, b));
    }
}

TEST_CASE("conic solvability search") {
    // x1^2 + x2^2 + x3^2 = 0 has no real point
    CHECK(!conic_search({1, 1, 1}, {1, 1, 1}));
    // x1^2 + x2^2 - 2 x3^2 = 0 is found by search
    CHECK(conic_search({1, 1, -1}, {1, 1, 2}));
    CHECK(conic_search({1, 1, -2}, {1, 1, 1}));
    auto rep = conic_solvability_stats(16, 16, 400, 99);
    CHECK(rep.samples == 400);
    CHECK(rep.weighted_ratio <= kSerreBoundConstant);
}
