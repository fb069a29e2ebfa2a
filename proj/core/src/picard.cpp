#include "dpcount/picard.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace dpc::picard {

LineLabel LineLabel::from_id(int id) {
    if (id < 0 || id >= 27) throw std::invalid_argument("line id out of range");
    return LineLabel{static_cast<Family>(id / 9), (id / 3) % 3, id % 3};
}

std::string LineLabel::name() const {
    static const char* fam = "LMN";
    std::string s(1, fam[static_cast<int>(family)]);
    s += std::to_string(index);
    if (accent == 1) s += "'";
    if (accent == 2) s += "''";
    return s;
}

namespace {

int mod3(int x) { return ((x % 3) + 3) % 3; }

// Exponent triple of (a2/a1, a3/a1, a4/a1) at the prime p, mod 3.
std::array<int, 3> exponent_triple(const std::array<std::int64_t, 4>& a, std::uint64_t p) {
    auto vp = [&](std::int64_t n) {
        int v = 0;
        while (n % static_cast<std::int64_t>(p) == 0) { n /= static_cast<std::int64_t>(p); ++v; }
        return v;
    };
    int v1 = vp(a[0]);
    return {mod3(vp(a[1]) - v1), mod3(vp(a[2]) - v1), mod3(vp(a[3]) - v1)};
}

}  // namespace

GaloisGroup galois_group(const std::array<std::int64_t, 4>& a) {
    for (auto c : a)
        if (c < 1) throw std::invalid_argument("galois_group: a_i >= 1 required");
    // span over F_3 of the per-prime exponent triples
    std::set<std::uint64_t> ps;
    for (auto c : a)
        for (auto [p, e] : arith::factorize(static_cast<std::uint64_t>(c)).factors) {
            (void)e;
            ps.insert(p);
        }
    std::vector<std::array<int, 3>> basis;
    auto reduce = [&](std::array<int, 3> v) {
        for (const auto& b : basis) {
            // eliminate the leading coordinate of b from v
            int lead = -1;
            for (int i = 0; i < 3; ++i)
                if (b[i] != 0) { lead = i; break; }
            if (lead < 0) continue;
            // multiply b so its leading entry matches v's entry
            while (v[lead] != 0) {
                for (int i = 0; i < 3; ++i) v[i] = mod3(v[i] - b[i]);
            }
        }
        return v;
    };
    for (auto p : ps) {
        auto v = reduce(exponent_triple(a, p));
        if (v != std::array<int, 3>{0, 0, 0}) basis.push_back(v);
    }
    // enumerate the span
    std::set<std::array<int, 3>> span{{0, 0, 0}};
    for (const auto& b : basis) {
        std::set<std::array<int, 3>> next;
        for (const auto& v : span)
            for (int k = 0; k < 3; ++k)
                next.insert({mod3(v[0] + k * b[0]), mod3(v[1] + k * b[1]), mod3(v[2] + k * b[2])});
        span = std::move(next);
    }
    GaloisGroup G;
    for (const auto& v : span)
        for (bool c : {false, true}) G.elements.push_back({v, c});
    for (const auto& b : basis) G.generators.push_back({b, false});
    G.generators.push_back({{0, 0, 0}, true});
    return G;
}

std::array<int, 27> line_action(const GaloisElement& g) {
    std::array<int, 27> perm{};
    int e = g.shift[0], e1 = g.shift[1], e2 = g.shift[2];
    for (int id = 0; id < 27; ++id) {
        LineLabel l = LineLabel::from_id(id);
        int idx = l.index, acc = l.accent;
        // scaling the cube roots shifts the index by the family's root
        // exponent and the accent by the coefficient ratio's exponent
        switch (l.family) {
            case Family::L: idx = mod3(idx + e);  acc = mod3(acc + e2 - e1 - e); break;
            case Family::M: idx = mod3(idx + e1); acc = mod3(acc + e - e2 - e1); break;
            case Family::N: idx = mod3(idx + e2); acc = mod3(acc + e1 - e - e2); break;
        }
        if (g.conj) {
            idx = mod3(-idx);
            if (acc != 0) acc = 3 - acc;
        }
        perm[id] = LineLabel{l.family, acc, idx}.id();
    }
    return perm;
}

namespace {

// dictionary label -> named divisor; encoded as:
//   ('E', k), ('Q', k) for k = 1..6, ('L', 10*i + j) for L_{i,j}
struct NamedDivisor {
    char kind;
    int k;
};

const std::map<int, NamedDivisor>& dictionary() {
    static const std::map<int, NamedDivisor> dict = [] {
        std::map<int, NamedDivisor> d;
        auto put = [&](Family f, int acc, int idx, char kind, int k) {
            d[LineLabel{f, acc, idx}.id()] = NamedDivisor{kind, k};
        };
        put(Family::L, 0, 0, 'E', 1);
        put(Family::L, 0, 1, 'E', 2);
        put(Family::L, 0, 2, 'E', 3);
        put(Family::M, 0, 1, 'E', 4);
        put(Family::M, 1, 2, 'E', 5);
        put(Family::M, 2, 0, 'E', 6);
        put(Family::L, 1, 1, 'Q', 1);
        put(Family::L, 1, 2, 'Q', 2);
        put(Family::L, 1, 0, 'Q', 3);
        put(Family::M, 0, 0, 'Q', 4);
        put(Family::M, 1, 1, 'Q', 5);
        put(Family::M, 2, 2, 'Q', 6);
        put(Family::L, 2, 1, 'L', 12);
        put(Family::L, 2, 2, 'L', 23);
        put(Family::L, 2, 0, 'L', 13);
        put(Family::M, 2, 1, 'L', 45);
        put(Family::M, 0, 2, 'L', 56);
        put(Family::M, 1, 0, 'L', 46);
        put(Family::N, 0, 0, 'L', 14);
        put(Family::N, 0, 1, 'L', 15);
        put(Family::N, 0, 2, 'L', 16);
        put(Family::N, 1, 1, 'L', 24);
        put(Family::N, 1, 2, 'L', 25);
        put(Family::N, 1, 0, 'L', 26);
        put(Family::N, 2, 2, 'L', 34);
        put(Family::N, 2, 0, 'L', 35);
        put(Family::N, 2, 1, 'L', 36);
        if (d.size() != 27) throw std::logic_error("line dictionary incomplete");
        return d;
    }();
    return dict;
}

}  // namespace

DivisorClass class_of(const LineLabel& l) {
    NamedDivisor nd = dictionary().at(l.id());
    DivisorClass v{};
    for (auto& c : v) c = 0;
    if (nd.kind == 'E') {
        v[nd.k] = 1;
    } else if (nd.kind == 'Q') {
        // Q_i = 2 Lambda - sum_{j != i} E_j
        v[0] = 2;
        for (int j = 1; j <= 6; ++j) v[j] = (j == nd.k) ? 0 : -1;
    } else {
        // L_{i,j} = Lambda - E_i - E_j
        v[0] = 1;
        v[nd.k / 10] = -1;
        v[nd.k % 10] = -1;
    }
    return v;
}

LineLabel label_of_exceptional(int k) {
    static const LineLabel e[6] = {
        {Family::L, 0, 0}, {Family::L, 0, 1}, {Family::L, 0, 2},
        {Family::M, 0, 1}, {Family::M, 1, 2}, {Family::M, 2, 0},
    };
    if (k < 0 || k >= 6) throw std::invalid_argument("exceptional index out of range");
    return e[k];
}

std::array<std::array<Int, 7>, 7> pic_matrix(const GaloisElement& g) {
    auto perm = line_action(g);
    std::array<std::array<Int, 7>, 7> M{};
    auto image_of_label = [&](const LineLabel& l) { return class_of(LineLabel::from_id(perm[l.id()])); };
    // columns 1..6: images of E_1..E_6
    for (int k = 0; k < 6; ++k) {
        DivisorClass img = image_of_label(label_of_exceptional(k));
        for (int r = 0; r < 7; ++r) M[r][k + 1] = img[r];
    }
    // column 0: image of Lambda = [L_{1,2}] + [E1] + [E2]
    DivisorClass l12 = image_of_label(LineLabel{Family::L, 2, 1});
    DivisorClass ie1 = image_of_label(label_of_exceptional(0));
    DivisorClass ie2 = image_of_label(label_of_exceptional(1));
    for (int r = 0; r < 7; ++r) M[r][0] = l12[r] + ie1[r] + ie2[r];
    return M;
}

namespace {

// rank of an m x n rational matrix by Gaussian elimination
int rational_rank(std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rat f = m[r][c] / m[rank][c];
            for (int j = 0; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int picard_rank(const std::array<std::int64_t, 4>& a) {
    std::int64_t g = std::gcd(std::gcd(a[0], a[1]), std::gcd(a[2], a[3]));
    if (g != 1) throw std::invalid_argument("picard_rank: gcd(a) = 1 required");
    GaloisGroup G = galois_group(a);
    // stack (M_g - I) over the generators; fixed rank = 7 - rank(stack)
    std::vector<std::vector<Rat>> stacked;
    for (const auto& gen : G.generators) {
        auto M = pic_matrix(gen);
        for (int r = 0; r < 7; ++r) {
            std::vector<Rat> row(7);
            for (int c = 0; c < 7; ++c) row[c] = Rat(M[r][c] - (r == c ? 1 : 0));
            stacked.push_back(std::move(row));
        }
    }
    return 7 - rational_rank(std::move(stacked));
}

bool segre_criterion_rank1(const std::array<std::int64_t, 4>& a) {
    auto cube_ratio = [&](int i, int j, int k, int l) {
        // is (a_i a_j)/(a_k a_l) a rational cube?
        Int num = Int(a[i]) * a[j], den = Int(a[k]) * a[l];
        Int g = boost::multiprecision::gcd(num, den);
        num /= g;
        den /= g;
        auto is_cube = [](Int n) {
            Int lo = 0, hi = 1;
            while (hi * hi * hi < n) hi <<= 1;
            while (lo < hi) {
                Int mid = (lo + hi) / 2;
                if (mid * mid * mid < n) lo = mid + 1; else hi = mid;
            }
            return lo * lo * lo == n;
        };
        return is_cube(num) && is_cube(den);
    };
    // the three splittings {i,j | k,l}; the remaining permutations invert them
    return !cube_ratio(0, 1, 2, 3) && !cube_ratio(0, 2, 1, 3) && !cube_ratio(0, 3, 1, 2);
}

}  // namespace dpc::picard
