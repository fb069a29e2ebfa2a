#include <doctest.h>

#include <random>

#include "dpcount/segre.hpp"
#include "dpcount/surfaces.hpp"

using namespace dpc;
using namespace dpc::picard;

namespace {

RatMatrix diag5(std::initializer_list<int> d) {
    RatMatrix m(5, std::vector<Rat>(5, Rat(0)));
    int i = 0;
    for (int v : d) m[i][i] = v, ++i;
    return m;
}

}  // namespace

TEST_CASE("characteristic polynomial on a known matrix") {
    auto M = diag5({1, 1, 2, 3, 3});
    auto cp = char_poly(M);
    // (x-1)^2 (x-2) (x-3)^2 = x^5 - 10x^4 + 38x^3 - 68x^2 + 57x - 18
    std::vector<Rat> want{Rat(-18), Rat(57), Rat(-68), Rat(38), Rat(-10), Rat(1)};
    CHECK(cp == want);
}

TEST_CASE("rational factorization handles roots, squares and irreducibles") {
    // x^2 (x-1) (x^2+1)
    std::vector<Rat> f{Rat(0), Rat(0), Rat(-1), Rat(1), Rat(-1), Rat(1)};
    auto fac = factor_poly_q(f);
    int linear = 0, quadratic = 0;
    int total_deg = 0;
    for (auto& [g, m] : fac) {
        total_deg += (static_cast<int>(g.size()) - 1) * m;
        if (g.size() == 2) ++linear;
        if (g.size() == 3) ++quadratic;
    }
    CHECK(total_deg == 5);
    CHECK(linear == 2);
    CHECK(quadratic == 1);
    // quadratic-times-quadratic split without rational roots
    std::vector<Rat> g{Rat(6), Rat(0), Rat(5), Rat(0), Rat(1)};  // (x^2+2)(x^2+3)
    auto fg = factor_poly_q(g);
    CHECK(fg.size() == 2);
    CHECK(fg[0].first.size() == 3);
    CHECK(fg[1].first.size() == 3);
}

TEST_CASE("worked pencil example has symbol (2,1,1,1)") {
    auto q1 = surfaces::HomogeneousForm::parse(5, "x1*x2+x3*x4");
    auto q2 = surfaces::HomogeneousForm::parse(5, "x1*x4+x2*x3+x3*x5+x4*x5");
    auto s = segre_symbol(quadric_matrix(q1), quadric_matrix(q2));
    CHECK(s.str() == "(2,1,1,1)");
    CHECK(classify_symbol(s).singularity == "A1");
}

TEST_CASE("nonsingular diagonal pencil has symbol (1,1,1,1,1)") {
    auto s = segre_symbol(diag5({1, 1, 1, 1, 1}), diag5({1, 2, 3, 4, 5}));
    CHECK(s.str() == "(1,1,1,1,1)");
    CHECK(classify_symbol(s).type == "nonsingular");
}

TEST_CASE("all fifteen catalogue rows match their types") {
    static const char* roman[15] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii",
                                    "ix", "x", "xi", "xii", "xiii", "xiv", "xv"};
    static const char* symbols[15] = {
        "(2,1,1,1)", "(2,2,1)", "((1,1),1,1,1)", "(3,1,1)", "((1,1),2,1)",
        "(3,2)", "(4,1)", "((2,1),1,1)", "((1,1),(1,1),1)", "((1,1),3)",
        "((2,1),2)", "(5)", "((3,1),1)", "((2,1),(1,1))", "((4,1))"};
    static const char* sing[15] = {"A1", "2A1", "2A1", "A2", "3A1", "A1+A2", "A3", "A3",
                                   "4A1", "2A1+A2", "A1+A3", "A4", "D4", "2A1+A3", "D5"};
    for (int i = 0; i < 15; ++i) {
        auto S = surfaces::builtin(std::string("dp4_") + roman[i]);
        auto cls = classify_dp4(S.forms[0], S.forms[1]);
        CHECK(cls.symbol.str() == symbols[i]);
        CHECK(cls.type == roman[i]);
        CHECK(cls.singularity == sing[i]);
    }
}

TEST_CASE("symbol invariant under swapping with a shifted member and congruence") {
    auto S = surfaces::builtin("dp4_xiii");
    auto A = quadric_matrix(S.forms[0]);
    auto B = quadric_matrix(S.forms[1]);
    auto base = segre_symbol(A, B);
    // swap (A, B) -> (B, A) does not change the pencil
    CHECK(segre_symbol(B, A) == base);
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> entry(-2, 2);
    int done = 0;
    while (done < 50) {
        RatMatrix P(5, std::vector<Rat>(5));
        for (auto& row : P)
            for (auto& v : row) v = entry(rng);
        if (char_poly(P)[0] == 0) continue;  // singular transform
        ++done;
        auto congr = [&](const RatMatrix& M) {
            RatMatrix R(5, std::vector<Rat>(5, Rat(0)));
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) {
                    if (M[a][b] == 0) continue;
                    for (int x = 0; x < 5; ++x)
                        for (int y = 0; y < 5; ++y) R[x][y] += P[a][x] * M[a][b] * P[b][y];
                }
            return R;
        };
        CHECK(segre_symbol(congr(A), congr(B)) == base);
    }
}

TEST_CASE("degenerate pencil is reported") {
    // both forms share a common kernel vector: every member is singular
    auto A = diag5({1, 1, 1, 1, 0});
    auto B = diag5({1, 2, 3, 4, 0});
    CHECK_THROWS_AS(segre_symbol(A, B), std::invalid_argument);
}

TEST_CASE("unknown symbol is rejected") {
    SegreSymbol s;
    s.groups = {{5}};
    CHECK_NOTHROW(classify_symbol(s));
    SegreSymbol bad;
    bad.groups = {{4}, {1}};  // (4,1) is type vii -- but (3,1,1) grouped oddly is not
    CHECK_NOTHROW(classify_symbol(bad));
    SegreSymbol really_bad;
    really_bad.groups = {{2}, {2}};  // total 4, not a quintic pencil symbol
    CHECK_THROWS_AS(classify_symbol(really_bad), std::invalid_argument);
}
