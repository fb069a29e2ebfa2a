#include "dpcount/segre.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

// Polynomial conventions in this file: coefficient vectors are ascending
// (c[0] + c[1] x + ...), normalized so the leading coefficient is nonzero.

namespace dpc::picard {

namespace {

using Poly = std::vector<Rat>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// division with remainder; b nonzero
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    if (deg(a) < deg(b)) return {{}, a};
    q.assign(a.size() - b.size() + 1, Rat(0));
    while (deg(a) >= deg(b) && !a.empty()) {
        Rat f = a.back() / b.back();
        int shift = deg(a) - deg(b);
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        trim(a);
    }
    return {q, a};
}

Poly monic(Poly p) {
    trim(p);
    if (p.empty()) return p;
    Rat lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

Poly gcd_poly(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<unsigned>(i)));
    trim(d);
    return d;
}

// Yun's squarefree decomposition: f = prod g_k^k with g_k squarefree and
// pairwise coprime; returns (g_k, k) for g_k nonconstant.
std::vector<std::pair<Poly, int>> squarefree_decomposition(Poly f) {
    f = monic(f);
    std::vector<std::pair<Poly, int>> out;
    if (deg(f) < 1) return out;
    Poly fp = derivative(f);
    Poly a = gcd_poly(f, fp);
    Poly b = divmod(f, a).first;
    Poly c = divmod(fp, a).first;
    Poly d = sub(c, derivative(b));
    int k = 1;
    while (deg(b) >= 1) {
        Poly g = gcd_poly(b, d);
        if (deg(g) >= 1) out.emplace_back(monic(g), k);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = sub(c, derivative(b));
        ++k;
    }
    return out;
}

// integer divisors (positive) of |n|
std::vector<Int> int_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d * d != n) ds.push_back(n / d);
        }
    }
    return ds;
}

// rational roots of a squarefree polynomial, removed from f in place
std::vector<Rat> extract_rational_roots(Poly& f) {
    std::vector<Rat> roots;
    trim(f);
    // clear denominators to a primitive integer polynomial
    Int den = 1;
    for (const auto& c : f) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
    std::vector<Int> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        g[i] = boost::multiprecision::numerator(f[i]) * (den / boost::multiprecision::denominator(f[i]));
    Int content = 0;
    for (const auto& c : g) content = boost::multiprecision::gcd(content, c);
    if (content > 1)
        for (auto& c : g) c /= content;
    while (g.size() > 1 && g.front() == 0) {
        roots.push_back(Rat(0));
        g.erase(g.begin());
    }
    if (g.size() <= 1) {
        f = Poly{Rat(1)};  // nothing left after dividing the roots out
        return roots;
    }
    bool found = true;
    while (found && g.size() > 1) {
        found = false;
        for (const Int& p : int_divisors(g.front())) {
            for (const Int& q : int_divisors(g.back())) {
                for (int sign : {1, -1}) {
                    Rat cand(sign * p, q);
                    // synthetic check
                    Rat v = 0;
                    for (auto it = g.rbegin(); it != g.rend(); ++it) v = v * cand + Rat(*it);
                    if (v != 0) continue;
                    roots.push_back(cand);
                    // divide (q x - sign p) out
                    Poly fq(g.size());
                    for (std::size_t i = 0; i < g.size(); ++i) fq[i] = Rat(g[i]);
                    Poly lin{-cand, Rat(1)};
                    fq = divmod(fq, lin).first;
                    // re-clear denominators
                    Int den2 = 1;
                    for (const auto& c : fq) den2 = boost::multiprecision::lcm(den2, boost::multiprecision::denominator(c));
                    g.resize(fq.size());
                    for (std::size_t i = 0; i < fq.size(); ++i)
                        g[i] = boost::multiprecision::numerator(fq[i]) * (den2 / boost::multiprecision::denominator(fq[i]));
                    Int cont2 = 0;
                    for (const auto& c : g) cont2 = boost::multiprecision::gcd(cont2, c);
                    if (cont2 > 1)
                        for (auto& c : g) c /= cont2;
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (found) break;
        }
    }
    Poly rest(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rest[i] = Rat(g[i]);
    f = monic(rest);
    return roots;
}

// Try to split a squarefree polynomial with no rational roots (degree 4 or 5)
// into quadratic * rest with rational coefficients.  The candidate constant
// terms of a monic quadratic factor x^2 + b x + c are rational roots of the
// resultant of the two division-remainder equations.
std::optional<std::pair<Poly, Poly>> quadratic_split(const Poly& f) {
    int n = deg(f);
    if (n != 4 && n != 5) return std::nullopt;
    // Divide f by x^2 + b x + c symbolically: remainder is R1(b,c) x + R0(b,c).
    // Represent polynomials in Q[b][c]: map from (i) -> Poly in c ... use a
    // direct approach: treat coefficients as polynomials in b whose
    // coefficients are polynomials in c.
    // Simpler: perform the division with entries in Q(b,c) is messy; instead
    // use the linear-algebra trick: for monic quadratic q = x^2 + b x + c,
    //   x^k mod q = u_k(b,c) x + v_k(b,c)
    // with u,v polynomial in b, c via the recurrence
    //   u_{k+1} = v_k - b u_k,  v_{k+1} = -c u_k,  u_1 = 1, v_1 = 0.
    // Then R1 = sum f_k u_k, R0 = sum f_k v_k (k >= 0 with u_0 = 0, v_0 = 1).
    // We need the common rational zeros (b, c).
    // Bivariate polynomials in (b, c) as maps (i,j) -> coeff.
    using BiPoly = std::map<std::pair<int, int>, Rat>;
    auto biadd = [](BiPoly& a, const BiPoly& b2, const Rat& scale) {
        for (const auto& [k, v] : b2) {
            a[k] += v * scale;
            if (a[k] == 0) a.erase(k);
        }
    };
    auto bimul_b = [](const BiPoly& a) {  // multiply by b
        BiPoly r;
        for (const auto& [k, v] : a) r[{k.first + 1, k.second}] = v;
        return r;
    };
    auto bimul_c = [](const BiPoly& a) {  // multiply by c
        BiPoly r;
        for (const auto& [k, v] : a) r[{k.first, k.second + 1}] = v;
        return r;
    };
    std::vector<BiPoly> u(n + 1), v(n + 1);
    v[0][{0, 0}] = 1;  // x^0 = 0*x + 1
    if (n >= 1) u[1][{0, 0}] = 1;
    for (int k = 1; k < n; ++k) {
        // x^{k+1} = x * (u_k x + v_k) = u_k x^2 + v_k x = u_k (-b x - c) + v_k x
        BiPoly nu = v[k];
        biadd(nu, bimul_b(u[k]), Rat(-1));
        BiPoly nv = bimul_c(u[k]);
        for (auto& [kk, vv] : nv) vv = -vv;
        u[k + 1] = std::move(nu);
        v[k + 1] = std::move(nv);
    }
    BiPoly R1, R0;
    for (int k = 0; k <= n; ++k) {
        if (f[k] == 0) continue;
        biadd(R1, u[k], f[k]);
        biadd(R0, v[k], f[k]);
    }
    // Eliminate b: compute the resultant of R1 and R0 viewed as polynomials
    // in b with coefficients in Q[c].  Degrees are small (<= 4), use the
    // Sylvester determinant with entries in Q[c].
    auto as_b_poly = [&](const BiPoly& P) {
        // vector over b-degree of Poly-in-c
        int db = 0, dc = 0;
        for (const auto& [k, vv] : P) {
            (void)vv;
            db = std::max(db, k.first);
            dc = std::max(dc, k.second);
        }
        std::vector<Poly> out(db + 1, Poly{});
        for (auto& p : out) p.assign(dc + 1, Rat(0));
        for (const auto& [k, vv] : P) out[k.first][k.second] = vv;
        for (auto& p : out) trim(p);
        return out;
    };
    auto A = as_b_poly(R1), Bv = as_b_poly(R0);
    int da = static_cast<int>(A.size()) - 1, db2 = static_cast<int>(Bv.size()) - 1;
    while (da >= 0 && A[da].empty()) --da;
    while (db2 >= 0 && Bv[db2].empty()) --db2;
    if (da < 0 || db2 < 0) return std::nullopt;
    int N = da + db2;
    if (N <= 0) return std::nullopt;
    // Sylvester matrix of size N with Poly-in-c entries.
    std::vector<std::vector<Poly>> syl(N, std::vector<Poly>(N, Poly{}));
    for (int i = 0; i < db2; ++i)
        for (int j = 0; j <= da; ++j) syl[i][i + j] = A[da - j];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db2; ++j) syl[db2 + i][i + j] = Bv[db2 - j];
    // determinant by fraction-free-ish expansion (N <= 7, entries tiny)
    std::function<Poly(std::vector<std::vector<Poly>>&)> det = [&](std::vector<std::vector<Poly>>& m) -> Poly {
        int sz = static_cast<int>(m.size());
        if (sz == 1) return m[0][0];
        Poly acc;
        for (int i = 0; i < sz; ++i) {
            if (m[i][0].empty()) continue;
            std::vector<std::vector<Poly>> minor;
            for (int r = 0; r < sz; ++r) {
                if (r == i) continue;
                std::vector<Poly> row(m[r].begin() + 1, m[r].end());
                minor.push_back(std::move(row));
            }
            Poly term = mul(m[i][0], det(minor));
            if (i % 2 == 1)
                for (auto& cc : term) cc = -cc;
            acc = sub(acc, Poly{});  // normalize size
            if (acc.empty()) acc = term;
            else {
                if (acc.size() < term.size()) acc.resize(term.size(), Rat(0));
                for (std::size_t t = 0; t < term.size(); ++t) acc[t] += term[t];
                trim(acc);
            }
        }
        return acc;
    };
    Poly res = det(syl);
    trim(res);
    if (res.empty()) {
        // R1, R0 share a factor for all c; fall back to scanning small b, c
        res = Poly{Rat(0)};
    }
    std::vector<Rat> cands;
    if (deg(res) >= 1) {
        Poly tmp = res;
        auto sq = squarefree_decomposition(tmp);
        for (auto& [g, k] : sq) {
            (void)k;
            Poly gg = g;
            for (const Rat& r : extract_rational_roots(gg)) cands.push_back(r);
        }
    }
    // Also try small integer c directly (covers the degenerate resultant).
    for (int c0 = -30; c0 <= 30; ++c0) cands.push_back(Rat(c0));
    for (const Rat& c : cands) {
        // with c fixed, R1 and R0 are polynomials in b; common roots
        Poly r1b, r0b;
        {
            auto inject = [&](const BiPoly& P) {
                Poly out;
                for (const auto& [k, vv] : P) {
                    Rat term = vv;
                    for (int t = 0; t < k.second; ++t) term *= c;
                    if (static_cast<int>(out.size()) <= k.first) out.resize(k.first + 1, Rat(0));
                    out[k.first] += term;
                }
                trim(out);
                return out;
            };
            r1b = inject(R1);
            r0b = inject(R0);
        }
        Poly g = gcd_poly(r1b, r0b);
        if (deg(g) < 1) continue;
        Poly gg = g;
        for (const Rat& b : extract_rational_roots(gg)) {
            Poly quad{c, b, Rat(1)};
            auto [q, r] = divmod(f, quad);
            trim(r);
            if (r.empty()) return std::make_pair(quad, monic(q));
        }
    }
    return std::nullopt;
}

// full irreducible factorization of a squarefree polynomial of degree <= 5
std::vector<Poly> factor_squarefree(Poly f) {
    std::vector<Poly> out;
    f = monic(f);
    std::vector<Rat> roots = extract_rational_roots(f);
    for (const Rat& r : roots) out.push_back(Poly{-r, Rat(1)});
    trim(f);
    while (deg(f) >= 4) {
        auto split = quadratic_split(f);
        if (!split) break;
        out.push_back(split->first);
        f = split->second;
    }
    if (deg(f) >= 1) out.push_back(f);
    return out;
}

RatMatrix mat_mul(const RatMatrix& A, const RatMatrix& B) {
    std::size_t n = A.size();
    RatMatrix C(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (A[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

int kernel_dim(RatMatrix m) {
    int n = static_cast<int>(m.size());
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rat f = m[r][c] / m[rank][c];
            for (int j = 0; j < n; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return n - rank;
}

std::optional<RatMatrix> invert(RatMatrix m) {
    int n = static_cast<int>(m.size());
    RatMatrix inv(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        Rat d = m[c][c];
        for (int j = 0; j < n; ++j) { m[c][j] /= d; inv[c][j] /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (int j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// evaluate a polynomial at the matrix M
RatMatrix poly_at_matrix(const Poly& p, const RatMatrix& M) {
    int n = static_cast<int>(M.size());
    RatMatrix R(n, std::vector<Rat>(n, Rat(0)));
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        R = mat_mul(R, M);
        for (int d = 0; d < n; ++d) R[d][d] += p[i];
    }
    return R;
}

SegreSymbol symbol_of_matrix(const RatMatrix& M) {
    Poly cp = char_poly(M);
    SegreSymbol sym;
    for (auto& [g, mult] : factor_poly_q(cp)) {
        int e = deg(g);
        // kernel dimensions of g(M)^j give the number of generalized Jordan
        // blocks of each size; all e conjugate eigenvalues share the pattern
        std::vector<int> dims{0};
        RatMatrix gM = poly_at_matrix(g, M);
        RatMatrix pw = gM;
        for (int j = 1; j <= mult; ++j) {
            dims.push_back(kernel_dim(pw));
            if (j < mult) pw = mat_mul(pw, gM);
        }
        std::vector<int> blocks;  // per conjugate eigenvalue
        // number of blocks of size >= j is (dims[j]-dims[j-1])/e
        std::vector<int> geq(mult + 1, 0);
        for (int j = 1; j <= mult; ++j) geq[j] = (dims[j] - dims[j - 1]) / e;
        for (int j = 1; j <= mult; ++j) {
            int exactly = geq[j] - (j + 1 <= mult ? geq[j + 1] : 0);
            for (int t = 0; t < exactly; ++t) blocks.push_back(j);
        }
        std::sort(blocks.rbegin(), blocks.rend());
        for (int copy = 0; copy < e; ++copy) sym.groups.push_back(blocks);
    }
    // canonical order: multi-block groups first (by total desc, then largest
    // block desc), then singleton blocks descending
    std::sort(sym.groups.begin(), sym.groups.end(), [](const auto& a, const auto& b) {
        bool am = a.size() > 1, bm = b.size() > 1;
        if (am != bm) return am;
        int ta = 0, tb = 0;
        for (int x : a) ta += x;
        for (int x : b) tb += x;
        if (ta != tb) return ta > tb;
        return a > b;
    });
    return sym;
}

}  // namespace

std::string SegreSymbol::str() const {
    std::string s = "(";
    bool first = true;
    for (const auto& g : groups) {
        if (!first) s += ",";
        first = false;
        if (g.size() > 1) {
            s += "(";
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(g[i]);
            }
            s += ")";
        } else {
            s += std::to_string(g[0]);
        }
    }
    s += ")";
    return s;
}

RatMatrix quadric_matrix(const surfaces::HomogeneousForm& q) {
    if (q.degree() != 2) throw std::invalid_argument("quadric_matrix: degree-2 form required");
    int n = q.nvars;
    RatMatrix A(n, std::vector<Rat>(n, Rat(0)));
    for (const auto& [ev, c] : q.monomials) {
        int i = -1, j = -1;
        for (int k = 0; k < n; ++k) {
            if (ev[k] == 2) { i = j = k; }
            else if (ev[k] == 1) { (i < 0 ? i : j) = k; }
        }
        if (i == j) A[i][i] += Rat(c);
        else {
            A[i][j] += Rat(c) / 2;
            A[j][i] += Rat(c) / 2;
        }
    }
    return A;
}

std::vector<Rat> char_poly(const RatMatrix& M) {
    // Newton's identities on the power traces; exact, fine for n <= 7.
    int n = static_cast<int>(M.size());
    std::vector<Rat> ptr(n + 1, Rat(0));  // ptr[k] = tr(M^k)
    RatMatrix P = M;
    for (int k = 1; k <= n; ++k) {
        Rat tr = 0;
        for (int i = 0; i < n; ++i) tr += P[i][i];
        ptr[k] = tr;
        if (k < n) P = mat_mul(P, M);
    }
    // e_k via Newton's identities; char poly = sum (-1)^k e_k x^{n-k}
    std::vector<Rat> e(n + 1, Rat(0));
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rat acc = 0;
        for (int i = 1; i <= k; ++i) acc += (i % 2 == 1 ? Rat(1) : Rat(-1)) * e[k - i] * ptr[i];
        e[k] = acc / k;
    }
    std::vector<Rat> cp(n + 1, Rat(0));
    for (int k = 0; k <= n; ++k) cp[n - k] = (k % 2 == 0 ? e[k] : -e[k]);
    return cp;
}

std::vector<std::pair<std::vector<Rat>, int>> factor_poly_q(std::vector<Rat> f) {
    std::vector<std::pair<Poly, int>> out;
    for (auto& [g, k] : squarefree_decomposition(std::move(f)))
        for (Poly& irr : factor_squarefree(std::move(g))) out.emplace_back(monic(irr), k);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.second > b.second;
    });
    return out;
}

SegreSymbol segre_symbol(const RatMatrix& A, const RatMatrix& B) {
    if (A.size() != 5 || B.size() != 5) throw std::invalid_argument("segre_symbol: 5x5 matrices required");
    std::optional<SegreSymbol> result;
    int checked = 0;
    for (int k = 0; k <= 25; ++k) {
        for (int sign : {1, -1}) {
            if (k == 0 && sign < 0) continue;
            Rat t(sign * k);
            RatMatrix P = A;
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) P[i][j] += t * B[i][j];
            auto inv = invert(P);
            if (!inv) continue;
            SegreSymbol s = symbol_of_matrix(mat_mul(*inv, B));
            if (!result) result = s;
            else if (!(*result == s))
                throw std::logic_error("segre_symbol: symbol depends on the pencil member");
            if (++checked >= 2) return *result;  // invariance across two members
        }
    }
    if (result) return *result;
    throw std::invalid_argument("segre_symbol: no invertible pencil member within |t| <= 25 (surface is a cone or pencil degenerate)");
}

namespace {

const std::map<std::string, Dp4Class>& dp4_table() {
    static const std::map<std::string, Dp4Class> table = [] {
        std::map<std::string, Dp4Class> t;
        auto put = [&](const char* sym, const char* type, const char* sing, int lines) {
            t[sym] = Dp4Class{SegreSymbol{}, type, sing, lines};
        };
        put("(2,1,1,1)", "i", "A1", 12);
        put("(2,2,1)", "ii", "2A1", 9);
        put("((1,1),1,1,1)", "iii", "2A1", 8);
        put("(3,1,1)", "iv", "A2", 8);
        put("((1,1),2,1)", "v", "3A1", 6);
        put("(3,2)", "vi", "A1+A2", 6);
        put("(4,1)", "vii", "A3", 5);
        put("((2,1),1,1)", "viii", "A3", 4);
        put("((1,1),(1,1),1)", "ix", "4A1", 4);
        put("((1,1),3)", "x", "2A1+A2", 4);
        put("((2,1),2)", "xi", "A1+A3", 3);
        put("(5)", "xii", "A4", 3);
        put("((3,1),1)", "xiii", "D4", 2);
        put("((2,1),(1,1))", "xiv", "2A1+A3", 2);
        put("((4,1))", "xv", "D5", 1);
        put("(1,1,1,1,1)", "nonsingular", "-", 16);
        return t;
    }();
    return table;
}

}  // namespace

Dp4Class classify_symbol(const SegreSymbol& s) {
    auto it = dp4_table().find(s.str());
    if (it == dp4_table().end())
        throw std::invalid_argument("Segre symbol " + s.str() + " is not that of a (possibly singular) quartic del Pezzo surface in the classification");
    Dp4Class c = it->second;
    c.symbol = s;
    return c;
}

Dp4Class classify_dp4(const surfaces::HomogeneousForm& Q1, const surfaces::HomogeneousForm& Q2) {
    return classify_symbol(segre_symbol(quadric_matrix(Q1), quadric_matrix(Q2)));
}

}  // namespace dpc::picard
