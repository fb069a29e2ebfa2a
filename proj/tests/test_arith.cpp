#include <doctest.h>

#include <numeric>
#include <random>

#include "dpcount/arith.hpp"

using namespace dpc;
using namespace dpc::arith;

TEST_CASE("mobius three-case definition") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(49) == 0);
    CHECK_THROWS_AS(mobius(0), std::invalid_argument);
}

TEST_CASE("mobius is multiplicative on coprime arguments") {
    for (std::uint64_t m = 1; m <= 200; ++m)
        for (std::uint64_t n = 1; n <= 200; ++n) {
            if (std::gcd(m, n) != 1) continue;
            CHECK(mobius(m * n) == mobius(m) * mobius(n));
        }
}

TEST_CASE("squarefree decomposition") {
    CHECK(squarefree_decompose(12) == std::pair<std::uint64_t, std::uint64_t>(3, 2));
    CHECK(squarefree_decompose(1) == std::pair<std::uint64_t, std::uint64_t>(1, 1));
    CHECK(squarefree_decompose(360) == std::pair<std::uint64_t, std::uint64_t>(10, 6));
    // uniqueness / reconstruction on a range
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        auto [u, v] = squarefree_decompose(n);
        CHECK(u * v * v == n);
        CHECK(factorize(u).squarefree());
    }
}

TEST_CASE("phi_star values and functional equation") {
    CHECK(phi_star(1) == Rat(1));
    CHECK(phi_star(12) == Rat(1, 3));
    CHECK(phi_star(7) == Rat(6, 7));
    for (std::uint64_t m = 1; m <= 200; ++m)
        for (std::uint64_t n = m; n <= 200; n += 7) {
            Rat lhs = phi_star(m * n) * phi_star(std::gcd(m, n));
            CHECK(lhs == phi_star(m) * phi_star(n));
        }
}

TEST_CASE("coprime counting in an interval is within 2^omega of the density") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> da(1, 10000);
    std::uniform_int_distribution<std::int64_t> dx(-100000, 100000);
    std::uniform_int_distribution<std::int64_t> dl(1, 5000);
    for (int it = 0; it < 300; ++it) {
        std::uint64_t a = da(rng);
        std::int64_t x = dx(rng), L = dl(rng);
        std::int64_t cnt = coprime_count_interval(x, x + L, a);
        double expect = static_cast<double>(phi_star(a)) * static_cast<double>(L);
        double bound = std::pow(2.0, omega(a));
        CHECK(std::fabs(static_cast<double>(cnt) - expect) <= bound + 1e-9);
    }
}

TEST_CASE("primitive_count spec values") {
    CHECK(primitive_count({{2, 4}, {1, 2}, {3, 3}}) == 1);
    CHECK(primitive_count({}) == 0);
    std::vector<std::vector<std::int64_t>> box;
    for (std::int64_t x = -2; x <= 2; ++x)
        for (std::int64_t y = -2; y <= 2; ++y)
            if (x || y) box.push_back({x, y});
    CHECK(primitive_count(box) == 16);
}

TEST_CASE("primitive_count on random finite sets (Mobius sum asserted internally)") {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> dim(1, 4), size(0, 40);
    std::uniform_int_distribution<std::int64_t> coord(-30, 30);
    for (int it = 0; it < 500; ++it) {
        int n = dim(rng);
        std::vector<std::vector<std::int64_t>> S;
        int sz = size(rng);
        for (int i = 0; i < sz; ++i) {
            std::vector<std::int64_t> v(n);
            bool zero = true;
            for (auto& c : v) {
                c = coord(rng);
                if (c) zero = false;
            }
            if (zero) v[0] = 1;
            S.push_back(std::move(v));
        }
        CHECK_NOTHROW(primitive_count(S));  // throws if the two evaluations disagree
    }
}

TEST_CASE("factorization invariants") {
    for (std::uint64_t n : {2ull, 97ull, 2048ull, 999983ull, 1000003ull, 600851475143ull}) {
        auto f = factorize(n);
        CHECK(f.value() == n);
        for (std::size_t i = 1; i < f.factors.size(); ++i)
            CHECK(f.factors[i - 1].first < f.factors[i].first);
        for (auto [p, e] : f.factors) {
            CHECK(is_prime(p));
            CHECK(e >= 1);
        }
    }
    CHECK(is_prime(1000003));
    CHECK(!is_prime(1000001));  // 101 * 9901
}
