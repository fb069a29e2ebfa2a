#include "dpcount/surfaces.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

namespace dpc::surfaces {

using arith::gcd_vec;

int HomogeneousForm::degree() const {
    if (monomials.empty()) return 0;
    int d = 0;
    for (int e : monomials.front().first) d += e;
    return d;
}

void HomogeneousForm::validate() const {
    if (nvars < 1) throw std::invalid_argument("form: nvars >= 1 required");
    if (monomials.empty()) throw std::invalid_argument("form: no monomials");
    int d = degree();
    if (d < 1) throw std::invalid_argument("form: degree >= 1 required");
    std::set<std::vector<int>> seen;
    bool nonzero = false;
    for (const auto& [ev, c] : monomials) {
        if (static_cast<int>(ev.size()) != nvars) throw std::invalid_argument("form: exponent size mismatch");
        int s = 0;
        for (int e : ev) {
            if (e < 0) throw std::invalid_argument("form: negative exponent");
            s += e;
        }
        if (s != d) throw std::invalid_argument("form: mixed degrees");
        if (!seen.insert(ev).second) throw std::invalid_argument("form: duplicate exponent vector");
        if (c != 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("form: all coefficients zero");
}

Int HomogeneousForm::evaluate(std::span<const std::int64_t> x) const {
    if (static_cast<int>(x.size()) != nvars) throw std::invalid_argument("evaluate: dimension mismatch");
    Int total = 0;
    for (const auto& [ev, c] : monomials) {
        if (c == 0) continue;
        Int term = c;
        for (int i = 0; i < nvars; ++i)
            for (int k = 0; k < ev[i]; ++k) term *= x[i];
        total += term;
    }
    return total;
}

Int HomogeneousForm::evaluate_big(std::span<const Int> x) const {
    if (static_cast<int>(x.size()) != nvars) throw std::invalid_argument("evaluate: dimension mismatch");
    Int total = 0;
    for (const auto& [ev, c] : monomials) {
        if (c == 0) continue;
        Int term = c;
        for (int i = 0; i < nvars; ++i)
            for (int k = 0; k < ev[i]; ++k) term *= x[i];
        total += term;
    }
    return total;
}

HomogeneousForm HomogeneousForm::parse(int nvars, const std::string& text) {
    HomogeneousForm f;
    f.nvars = nvars;
    std::map<std::vector<int>, Int> acc;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    while (i < text.size()) {
        Int sign = 1;
        skip_ws();
        if (text[i] == '+') { ++i; }
        else if (text[i] == '-') { sign = -1; ++i; }
        skip_ws();
        Int coeff = 1;
        bool saw_digit = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (!saw_digit) coeff = 0;
            saw_digit = true;
            coeff = coeff * 10 + (text[i] - '0');
            ++i;
        }
        std::vector<int> ev(nvars, 0);
        bool saw_var = false;
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
            if (i >= text.size() || text[i] != 'x') break;
            ++i;
            int idx = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                idx = idx * 10 + (text[i] - '0');
                ++i;
            }
            if (idx < 1 || idx > nvars) throw std::invalid_argument("parse: bad variable index");
            int e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                e = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    e = e * 10 + (text[i] - '0');
                    ++i;
                }
            }
            ev[idx - 1] += e;
            saw_var = true;
        }
        if (!saw_digit && !saw_var) throw std::invalid_argument("parse: empty term");
        acc[ev] += sign * coeff;
        skip_ws();
    }
    for (auto& [ev, c] : acc)
        if (c != 0) f.monomials.emplace_back(ev, c);
    f.validate();
    return f;
}

bool LineLocus::contains(std::span<const std::int64_t> x) const {
    for (const auto& row : constraints) {
        Int s = 0;
        for (int i = 0; i < nvars; ++i) s += row[i] * x[i];
        if (s != 0) return false;
    }
    return true;
}

namespace {

// Exact kernel of an integer constraint matrix, returned as a basis of the
// saturated integer lattice (fraction-free RREF, then clear denominators and
// contents; saturation holds because each basis vector has a unit coordinate
// in its own free column).
std::vector<std::vector<Int>> integer_kernel(const std::vector<std::vector<Int>>& rows, int n) {
    std::vector<std::vector<Rat>> m;
    for (const auto& r : rows) {
        std::vector<Rat> rr(n);
        for (int i = 0; i < n; ++i) rr[i] = Rat(r[i]);
        m.push_back(std::move(rr));
    }
    int nrows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < nrows; ++c) {
        int piv = -1;
        for (int i = r; i < nrows; ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        Rat inv = m[r][c];
        for (int j = 0; j < n; ++j) m[r][j] /= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Int>> basis;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[c] = 1;
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = -m[i][c];
        // clear denominators
        Int den = 1;
        for (const auto& q : v) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(q));
        std::vector<Int> w(n);
        Int content = 0;
        for (int i = 0; i < n; ++i) {
            w[i] = boost::multiprecision::numerator(v[i]) * (den / boost::multiprecision::denominator(v[i]));
            content = boost::multiprecision::gcd(content, w[i]);
        }
        if (content > 1)
            for (auto& wi : w) wi /= content;
        basis.push_back(std::move(w));
    }
    return basis;
}

}  // namespace

std::vector<std::vector<Int>> LineLocus::lattice_basis() const {
    return integer_kernel(constraints, nvars);
}

bool SurfaceSpec::on_surface(std::span<const std::int64_t> x) const {
    for (const auto& f : forms)
        if (f.evaluate(x) != 0) return false;
    return true;
}

bool SurfaceSpec::on_excluded_line(std::span<const std::int64_t> x) const {
    for (const auto& l : line_loci)
        if (l.contains(x)) return true;
    return false;
}

namespace {

// Bivariate polynomial in (s,t) with Int coefficients, coeff[i][j] of s^i t^j.
using Poly2 = std::vector<std::vector<Int>>;

Poly2 poly2_const(const Int& c) { return {{c}}; }

Poly2 poly2_mul(const Poly2& a, const Poly2& b) {
    Poly2 r(a.size() + b.size() - 1);
    std::size_t bcols = 0;
    for (const auto& row : b) bcols = std::max(bcols, row.size());
    std::size_t acols = 0;
    for (const auto& row : a) acols = std::max(acols, row.size());
    for (auto& row : r) row.assign(acols + bcols - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t l = 0; l < b[k].size(); ++l)
                    if (b[k][l] != 0) r[i + k][j + l] += a[i][j] * b[k][l];
        }
    return r;
}

void poly2_add(Poly2& a, const Poly2& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (a[i].size() < b[i].size()) a[i].resize(b[i].size(), Int(0));
        for (std::size_t j = 0; j < b[i].size(); ++j) a[i][j] += b[i][j];
    }
}

bool poly2_zero(const Poly2& a) {
    for (const auto& row : a)
        for (const auto& c : row)
            if (c != 0) return false;
    return true;
}

// f(sP + tQ) as a polynomial in (s,t); exact.
Poly2 substitute_line(const HomogeneousForm& f, const std::vector<Int>& P, const std::vector<Int>& Q) {
    Poly2 total = poly2_const(0);
    for (const auto& [ev, c] : f.monomials) {
        if (c == 0) continue;
        Poly2 term = poly2_const(c);
        for (int i = 0; i < f.nvars; ++i) {
            Poly2 lin = {{Int(0), Q[i]}, {P[i]}};  // s*P_i + t*Q_i
            for (int k = 0; k < ev[i]; ++k) term = poly2_mul(term, lin);
        }
        poly2_add(total, term);
    }
    return total;
}

}  // namespace

void SurfaceSpec::validate() const {
    for (const auto& f : forms) f.validate();
    for (const auto& l : line_loci) {
        if (l.nvars != nvars) throw std::invalid_argument(id + ": locus dimension mismatch");
        auto basis = l.lattice_basis();
        if (basis.empty()) throw std::invalid_argument(id + ": empty line locus");
        if (basis.size() > 2) throw std::invalid_argument(id + ": locus is not a line or point");
        const std::vector<Int>& P = basis[0];
        std::vector<Int> Q(nvars, Int(0));
        if (basis.size() == 2) Q = basis[1];
        for (const auto& f : forms) {
            Poly2 sub = substitute_line(f, P, Q);
            if (!poly2_zero(sub))
                throw std::invalid_argument(id + ": excluded line is not contained in the surface");
        }
    }
    if (rho != -1 && (rho < 1 || rho > 9))
        throw std::invalid_argument(id + ": declared rank out of range");
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

using Mon = std::pair<std::vector<int>, Int>;

HomogeneousForm make_form(int nvars, std::vector<Mon> ms) {
    HomogeneousForm f;
    f.nvars = nvars;
    f.monomials = std::move(ms);
    f.validate();
    return f;
}

LineLocus locus(int nvars, std::vector<std::vector<std::int64_t>> rows) {
    LineLocus l;
    l.nvars = nvars;
    for (auto& r : rows) {
        std::vector<Int> rr(r.begin(), r.end());
        l.constraints.push_back(std::move(rr));
    }
    return l;
}

// coordinate axis row: x_i = 0
std::vector<std::int64_t> axis(int nvars, int i) {
    std::vector<std::int64_t> r(nvars, 0);
    r[i] = 1;
    return r;
}

bool is_perfect_cube(const Int& n, Int& root) {
    if (n < 0) return false;
    if (n == 0) { root = 0; return true; }
    Int lo = 0, hi = 1;
    while (hi * hi * hi < n) hi <<= 1;
    while (lo < hi) {
        Int mid = (lo + hi) / 2;
        if (mid * mid * mid < n) lo = mid + 1; else hi = mid;
    }
    root = lo;
    return lo * lo * lo == n;
}

// Rational cube root of num/den (positive), if it exists.
bool rational_cbrt(std::int64_t num, std::int64_t den, Int& rn, Int& rd) {
    Int n(num), d(den);
    Int g = boost::multiprecision::gcd(n, d);
    n /= g; d /= g;
    Int cn, cd;
    if (!is_perfect_cube(n, cn) || !is_perfect_cube(d, cd)) return false;
    rn = cn; rd = cd;
    return true;
}

// The 27 lines of a diagonal cubic are pairs of planes
//   x_u + theta^e * (p/q)^(1/3) x_v = 0.
// A rational point satisfies such an equation iff either the coefficient is
// rational (e = 0 mod 3 and p/q a cube) and the induced linear constraint
// holds, or x_u = x_v = 0.  Collecting constraints for the two planes of each
// line yields the rational locus of that line.
std::vector<LineLocus> diag_cubic_line_loci(const std::array<std::int64_t, 4>& a) {
    struct PlaneData {
        int u, v;           // 0-based coordinates
        std::int64_t p, q;  // coefficient is theta^e (p/q)^{1/3}
    };
    // family -> the two plane templates (exponent offsets handled below)
    // L_i^(acc): x1 + t^i a x2,        x3 + t^{i+acc} b x4,   a^3=a2/a1, b^3=a4/a3
    // M_i^(acc): x1 + t^i a' x3,       x4 + t^{i+acc} b' x2,  a'^3=a3/a1, b'^3=a2/a4
    // N_i^(acc): x1 + t^i a'' x4,      x2 + t^{i+acc} b'' x3, a''^3=a4/a1, b''^3=a3/a2
    const PlaneData fam[3][2] = {
        {{0, 1, a[1], a[0]}, {2, 3, a[3], a[2]}},
        {{0, 2, a[2], a[0]}, {3, 1, a[1], a[3]}},
        {{0, 3, a[3], a[0]}, {1, 2, a[2], a[1]}},
    };
    std::vector<LineLocus> loci;
    std::set<std::vector<std::vector<Int>>> seen;
    for (int family = 0; family < 3; ++family) {
        for (int acc = 0; acc < 3; ++acc) {
            for (int idx = 0; idx < 3; ++idx) {
                LineLocus l;
                l.nvars = 4;
                int exps[2] = {idx, (idx + acc) % 3};
                bool empty = false;
                for (int k = 0; k < 2; ++k) {
                    const PlaneData& pd = fam[family][k];
                    Int rn, rd;
                    if (exps[k] % 3 == 0 && rational_cbrt(pd.p, pd.q, rn, rd)) {
                        std::vector<Int> row(4, Int(0));
                        row[pd.u] = rd;
                        row[pd.v] = rn;
                        l.constraints.push_back(std::move(row));
                    } else {
                        std::vector<Int> r1(4, Int(0)), r2(4, Int(0));
                        r1[pd.u] = 1;
                        r2[pd.v] = 1;
                        l.constraints.push_back(std::move(r1));
                        l.constraints.push_back(std::move(r2));
                    }
                }
                if (integer_kernel(l.constraints, 4).empty()) empty = true;
                if (!empty && seen.insert(l.constraints).second) loci.push_back(std::move(l));
            }
        }
    }
    return loci;
}

SurfaceSpec make_diag_cubic(const std::string& id, const std::array<std::int64_t, 4>& a, int rho) {
    for (auto c : a)
        if (c < 1) throw std::invalid_argument("diagonal cubic: coefficients must be positive");
    std::int64_t g = std::gcd(std::gcd(a[0], a[1]), std::gcd(a[2], a[3]));
    if (g != 1) throw std::invalid_argument("diagonal cubic: gcd(a) = 1 required");
    SurfaceSpec S;
    S.id = id;
    S.nvars = 4;
    S.forms.push_back(make_form(4, {
        {{3, 0, 0, 0}, Int(a[0])},
        {{0, 3, 0, 0}, Int(a[1])},
        {{0, 0, 3, 0}, Int(a[2])},
        {{0, 0, 0, 3}, Int(a[3])},
    }));
    S.line_loci = diag_cubic_line_loci(a);
    S.lines_known = true;
    S.rho = rho;
    S.strategy = EnumStrategy::Hypersurface3;
    return S;
}

// The two quadric systems cutting out the degree-6 A1 surface, and the
// sign-flipped model used by the torsor parametrization.  eps gives the
// coordinate sign changes relating the two.
HomogeneousForm q2(int n, const std::string& s) { return HomogeneousForm::parse(n, s); }

SurfaceSpec make_dp6_a1(bool flipped) {
    SurfaceSpec S;
    S.id = flipped ? "dp6_a1t" : "dp6_a1";
    S.nvars = 7;
    const char* eqs_plain[9] = {
        "x1^2-x2*x4", "x1*x5-x3*x4", "x1*x3-x2*x5", "x1*x6-x3*x5",
        "x2*x6-x3^2", "x4*x6-x5^2", "x1^2+x1*x4+x5*x7",
        "x1*x2+x1^2+x3*x7", "x1*x3+x1*x5+x6*x7"};
    const char* eqs_flip[9] = {
        "x1^2-x2*x4", "x1*x5-x3*x4", "x1*x3-x2*x5", "x1*x6-x3*x5",
        "x2*x6-x3^2", "x4*x6-x5^2", "x1^2-x1*x4+x5*x7",
        "x1^2-x1*x2-x3*x7", "x1*x3-x1*x5+x6*x7"};
    for (int i = 0; i < 9; ++i) S.forms.push_back(q2(7, flipped ? eqs_flip[i] : eqs_plain[i]));
    if (!flipped) {
        S.line_loci = {
            locus(7, {axis(7, 0), axis(7, 1), axis(7, 2), axis(7, 4), axis(7, 5)}),
            locus(7, {axis(7, 0), axis(7, 2), axis(7, 3), axis(7, 4), axis(7, 5)}),
            locus(7, {axis(7, 2), axis(7, 4), axis(7, 5),
                      {1, 0, 0, 1, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0}}),
        };
    } else {
        // Images of the same lines under x -> (x1,-x2,-x3,-x4,x5,-x6,x7).
        S.line_loci = {
            locus(7, {axis(7, 0), axis(7, 1), axis(7, 2), axis(7, 4), axis(7, 5)}),
            locus(7, {axis(7, 0), axis(7, 2), axis(7, 3), axis(7, 4), axis(7, 5)}),
            locus(7, {axis(7, 2), axis(7, 4), axis(7, 5),
                      {1, 0, 0, -1, 0, 0, 0}, {1, -1, 0, 0, 0, 0, 0}}),
        };
    }
    S.lines_known = true;
    S.rho = 4;
    S.strategy = EnumStrategy::Dp6A1;
    return S;
}

SurfaceSpec make_dp6_a2() {
    SurfaceSpec S;
    S.id = "dp6_a2";
    S.nvars = 7;
    const char* eqs[9] = {
        "x1*x6-x4*x5", "x1*x7-x2*x5", "x1*x7-x3*x4", "x3*x7+x4*x5+x5^2",
        "x5*x7-x3*x4", "x2*x7+x4^2+x4*x5", "x4*x7-x2*x6",
        "x4*x6+x5*x6+x7^2", "x2*x3-x1*x4+x1*x5"};
    for (int i = 0; i < 9; ++i) S.forms.push_back(q2(7, eqs[i]));
    S.lines_known = false;
    S.rho = -1;
    S.strategy = EnumStrategy::BruteForce;
    return S;
}

SurfaceSpec make_dp3(const std::string& id, const std::string& eq,
                     std::vector<LineLocus> loci, bool lines_known, int rho) {
    SurfaceSpec S;
    S.id = id;
    S.nvars = 4;
    S.forms.push_back(HomogeneousForm::parse(4, eq));
    S.line_loci = std::move(loci);
    S.lines_known = lines_known;
    S.rho = rho;
    S.strategy = EnumStrategy::Hypersurface3;
    return S;
}

SurfaceSpec make_dp4(const std::string& id, const std::string& q1, const std::string& q2s) {
    SurfaceSpec S;
    S.id = id;
    S.nvars = 5;
    S.forms.push_back(q2(5, q1));
    S.forms.push_back(q2(5, q2s));
    S.lines_known = false;
    S.rho = 6;
    S.strategy = EnumStrategy::Dp4Pencil;
    return S;
}

}  // namespace

std::vector<std::string> builtin_ids() {
    std::vector<std::string> ids = {
        "fermat_cubic", "diag_cubic", "dp3_s2", "dp3_d4", "dp3_d4s3", "dp3_e6", "cayley",
        "dp6_a1", "dp6_a1t", "dp6_a2",
    };
    const char* roman[15] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii",
                             "ix", "x", "xi", "xii", "xiii", "xiv", "xv"};
    for (const char* r : roman) ids.push_back(std::string("dp4_") + r);
    return ids;
}

SurfaceSpec builtin(const std::string& id, std::optional<std::array<std::int64_t, 4>> diag_a) {
    SurfaceSpec S;
    if (id == "fermat_cubic") {
        S = make_diag_cubic(id, {1, 1, 1, 1}, 4);
    } else if (id == "diag_cubic") {
        if (!diag_a) throw std::invalid_argument("diag_cubic requires the coefficient vector a");
        S = make_diag_cubic(id, *diag_a, -1);
    } else if (id == "dp3_s2") {
        // x1 x2 (x1+x2) + x4 (x1+x2+x3)^2
        S = make_dp3(id, "x1^2*x2+x1*x2^2+x1^2*x4+x2^2*x4+x3^2*x4+2*x1*x2*x4+2*x1*x3*x4+2*x2*x3*x4",
                     {
                         locus(4, {axis(4, 0), axis(4, 3)}),
                         locus(4, {axis(4, 1), axis(4, 3)}),
                         locus(4, {{1, 1, 0, 0}, axis(4, 2)}),
                         locus(4, {{1, 1, 0, 0}, axis(4, 3)}),
                         locus(4, {axis(4, 0), {1, 1, 1, 0}}),
                         locus(4, {axis(4, 1), {1, 1, 1, 0}}),
                     },
                     true, 7);
    } else if (id == "dp3_d4") {
        // t1 t2 (t1+t2) = t3^2 t4
        S = make_dp3(id, "x1^2*x2+x1*x2^2-x3^2*x4",
                     {
                         locus(4, {axis(4, 0), axis(4, 2)}),
                         locus(4, {axis(4, 0), axis(4, 3)}),
                         locus(4, {axis(4, 1), axis(4, 2)}),
                         locus(4, {axis(4, 1), axis(4, 3)}),
                         locus(4, {{1, 1, 0, 0}, axis(4, 2)}),
                         locus(4, {{1, 1, 0, 0}, axis(4, 3)}),
                     },
                     true, 7);
    } else if (id == "dp3_d4s3") {
        S = make_dp3(id, "x1*x2*x3+x1^2*x4+x2^2*x4+x3^2*x4+2*x1*x2*x4+2*x1*x3*x4+2*x2*x3*x4",
                     {}, false, 7);
    } else if (id == "dp3_e6") {
        S = make_dp3(id, "x1^2*x3+x2*x3^2+x4^3",
                     {locus(4, {axis(4, 2), axis(4, 3)})}, true, 7);
    } else if (id == "cayley") {
        S = make_dp3(id, "x1*x2*x3+x1*x2*x4+x1*x3*x4+x2*x3*x4", {}, false, 7);
    } else if (id == "dp6_a1") {
        S = make_dp6_a1(false);
    } else if (id == "dp6_a1t") {
        S = make_dp6_a1(true);
    } else if (id == "dp6_a2") {
        S = make_dp6_a2();
    } else if (id.rfind("dp4_", 0) == 0) {
        static const std::map<std::string, std::pair<const char*, const char*>> table = {
            {"i", {"x1*x2-x3*x4", "x1*x4-x2*x3+x3*x5+x4*x5"}},
            {"ii", {"x1*x2-x3*x4", "x1*x4-x2*x3+x3*x5+x5^2"}},
            {"iii", {"x1*x2-x3^2", "x1*x3-x2*x3+x4*x5"}},
            {"iv", {"x1*x2-x3*x4", "x1*x5+x2*x5+x3*x5+x4*x5-x3*x4"}},
            {"v", {"x1*x2-x3^2", "x2*x3+x3^2+x4*x5"}},
            {"vi", {"x1*x2-x3*x4", "x1*x5+x2*x3+x4*x5"}},
            {"vii", {"x1*x2-x3*x4", "x1*x4+x2*x4+x3*x5"}},
            {"viii", {"x1*x4-x2*x5+x3*x5", "x1*x2+x1*x3+x2*x4+x3*x4+x2*x3"}},
            {"ix", {"x1*x2-x3^2", "x3^2-x4*x5"}},
            {"x", {"x1*x2-x3^2", "x2*x3-x4*x5"}},
            {"xi", {"x1*x4-x3*x5", "x1*x2+x2*x4+x3^2"}},
            {"xii", {"x1*x2-x3*x4", "x1*x5+x2*x3+x4^2"}},
            {"xiii", {"x1*x4-x2*x5", "x1*x2+x2*x4+x3^2"}},
            {"xiv", {"x1*x2-x3^2", "x1^2-x4*x5"}},
            {"xv", {"x1*x2-x3^2", "x1*x5+x2*x3+x4^2"}},
        };
        auto it = table.find(id.substr(4));
        if (it == table.end()) throw std::invalid_argument("unknown surface id: " + id);
        S = make_dp4(id, it->second.first, it->second.second);
    } else {
        throw std::invalid_argument("unknown surface id: " + id);
    }
    S.validate();
    return S;
}

bool normalize_point(std::vector<std::int64_t>& x) {
    std::int64_t g = gcd_vec(x);
    if (g == 0) return false;
    for (auto& c : x) c /= g;
    for (auto c : x) {
        if (c > 0) break;
        if (c < 0) {
            for (auto& d : x) d = -d;
            break;
        }
    }
    return true;
}

}  // namespace dpc::surfaces
