#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "dpcount/parallel.hpp"
#include "dpcount/surfaces.hpp"

// Counting engines: ambient projective counts, per-strategy surface
// enumeration, affine counts (nested loops and meet-in-the-middle), and
// exact counting of points on the excluded lines via lattice bases.

namespace dpc::surfaces {

namespace {

using i64 = std::int64_t;
using i128 = __int128_t;
using u64 = std::uint64_t;

void check_budget(double steps, const CountOptions& opt) {
    if (steps > static_cast<double>(opt.budget))
        throw BudgetExceeded("enumeration budget exceeded (" + std::to_string(steps) +
                             " steps > " + std::to_string(opt.budget) + ")");
}

i64 iabs(i64 x) { return x < 0 ? -x : x; }

// Integer roots of c0 + c1 x + c2 x^2 + c3 x^3 in [-B, B].  Returns false if
// the polynomial is identically zero (every x is a root).
bool integer_roots(i128 c0, i128 c1, i128 c2, i128 c3, i64 B, i64 out[3], int& nout) {
    nout = 0;
    auto push = [&](i64 r) {
        if (iabs(r) > B) return;
        i128 v = ((c3 * r + c2) * r + c1) * r + c0;
        if (v != 0) return;
        for (int i = 0; i < nout; ++i)
            if (out[i] == r) return;
        out[nout++] = r;
    };
    if (c3 == 0 && c2 == 0 && c1 == 0) {
        if (c0 == 0) return false;
        return true;
    }
    if (c3 == 0 && c2 == 0) {
        if (c0 % c1 == 0) push(static_cast<i64>(-c0 / c1));
        return true;
    }
    if (c3 == 0) {
        i128 disc = c1 * c1 - 4 * c2 * c0;
        if (disc < 0) return true;
        i128 r = static_cast<i128>(std::sqrt(static_cast<double>(disc)));
        while (r > 0 && r * r > disc) --r;
        while ((r + 1) * (r + 1) <= disc) ++r;
        if (r * r != disc) return true;
        for (i128 num : {-c1 + r, -c1 - r}) {
            if (num % (2 * c2) == 0) {
                i128 root = num / (2 * c2);
                if (root >= -B && root <= B) push(static_cast<i64>(root));
            }
        }
        return true;
    }
    if (c2 == 0 && c1 == 0) {
        // c3 x^3 = -c0
        if (c0 % c3 != 0) return true;
        i128 k = -c0 / c3;
        double approx = std::cbrt(static_cast<double>(k));
        i64 base = static_cast<i64>(std::llround(approx));
        for (i64 r = base - 2; r <= base + 2; ++r) push(r);
        return true;
    }
    // General cubic: locate real roots in double precision, verify exactly.
    double a = static_cast<double>(c3), b = static_cast<double>(c2);
    double c = static_cast<double>(c1), d = static_cast<double>(c0);
    // Roots of the derivative split the real line into monotone pieces.
    double crit[2];
    int ncrit = 0;
    double qa = 3 * a, qb = 2 * b, qc = c;
    double qd = qb * qb - 4 * qa * qc;
    if (qd > 0) {
        crit[ncrit++] = (-qb - std::sqrt(qd)) / (2 * qa);
        crit[ncrit++] = (-qb + std::sqrt(qd)) / (2 * qa);
        if (crit[0] > crit[1]) std::swap(crit[0], crit[1]);
    }
    double bound = 1.0 + std::max({std::fabs(b), std::fabs(c), std::fabs(d)}) / std::fabs(a);
    double lo = -bound, hi = bound;
    auto eval = [&](double x) { return ((a * x + b) * x + c) * x + d; };
    std::vector<double> bp = {lo};
    for (int i = 0; i < ncrit; ++i)
        if (crit[i] > lo && crit[i] < hi) bp.push_back(crit[i]);
    bp.push_back(hi);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double x0 = bp[i], x1 = bp[i + 1];
        double f0 = eval(x0), f1 = eval(x1);
        if (f0 == 0) push(static_cast<i64>(std::llround(x0)));
        if (f0 * f1 > 0) continue;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (x0 + x1);
            double fm = eval(mid);
            if (fm == 0) break;
            if (fm * f0 < 0) { x1 = mid; } else { x0 = mid; f0 = fm; }
        }
        i64 base = static_cast<i64>(std::llround(0.5 * (x0 + x1)));
        for (i64 r = base - 2; r <= base + 2; ++r) push(r);
    }
    return true;
}

bool is_normalized_primitive(std::span<const i64> x) {
    i64 g = arith::gcd_vec(x);
    if (g != 1) return false;
    for (i64 c : x) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Points on the excluded lines, by exact lattice counting.
// ---------------------------------------------------------------------------

struct LocusGeometry {
    std::vector<std::vector<Int>> basis;  // 1 vector = point locus, 2 = line
};

i64 to_i64(const Int& v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("coordinate overflow");
    return static_cast<i64>(v);
}

// #projective points of height <= B on the line {sP + tQ}.  P, Q is a basis
// of the saturated lattice, so primitivity of the point equals gcd(s,t)=1.
u64 count_line_points(const std::vector<Int>& Pb, const std::vector<Int>& Qb, i64 B) {
    int n = static_cast<int>(Pb.size());
    std::vector<i64> P(n), Q(n);
    for (int i = 0; i < n; ++i) { P[i] = to_i64(Pb[i]); Q[i] = to_i64(Qb[i]); }
    // bound |s| via an invertible 2x2 coordinate pair
    i64 smax = 0;
    {
        int i0 = -1, j0 = -1;
        i64 det = 0;
        for (int i = 0; i < n && i0 < 0; ++i)
            for (int j = 0; j < n; ++j) {
                i64 d = P[i] * Q[j] - P[j] * Q[i];
                if (d != 0) { i0 = i; j0 = j; det = d; break; }
            }
        if (i0 < 0) throw std::logic_error("degenerate line basis");
        // s = (x_i Q_j - x_j Q_i)/det with |x| <= B
        smax = (iabs(Q[j0]) + iabs(Q[i0])) * B / iabs(det) + 1;
    }
    u64 total = 0;
    for (i64 s = -smax; s <= smax; ++s) {
        // intersect the t-intervals |s P_i + t Q_i| <= B
        double lo = -1e30, hi = 1e30;
        bool empty = false;
        for (int i = 0; i < n; ++i) {
            if (Q[i] == 0) {
                if (iabs(s * P[i]) > B) { empty = true; break; }
                continue;
            }
            double a = (-static_cast<double>(B) - static_cast<double>(s) * P[i]) / Q[i];
            double b = (static_cast<double>(B) - static_cast<double>(s) * P[i]) / Q[i];
            if (a > b) std::swap(a, b);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        if (empty || lo > hi) continue;
        i64 tlo = static_cast<i64>(std::floor(lo)) - 1, thi = static_cast<i64>(std::ceil(hi)) + 1;
        // exact boundary fix
        auto ok = [&](i64 t) {
            for (int i = 0; i < n; ++i)
                if (iabs(s * P[i] + t * Q[i]) > B) return false;
            return true;
        };
        while (tlo <= thi && !ok(tlo)) ++tlo;
        while (thi >= tlo && !ok(thi)) --thi;
        if (tlo > thi) continue;
        if (s == 0) {
            // gcd(0, t) = |t|
            if (tlo <= 1 && 1 <= thi) ++total;
            if (tlo <= -1 && -1 <= thi) ++total;
        } else {
            total += static_cast<u64>(arith::coprime_count_interval(tlo - 1, thi, iabs(s)));
        }
    }
    return total / 2;
}

std::vector<i64> normalized_from_big(const std::vector<Int>& v) {
    std::vector<i64> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x[i] = to_i64(v[i]);
    normalize_point(x);
    return x;
}

// Exact count of rational points of height <= B lying on the union of the
// excluded-line loci.  Line loci are counted by lattice sweeps; every point
// shared by several loci (pairwise intersections, point loci) is restored to
// multiplicity one.
u64 line_union_count(const SurfaceSpec& S, i64 B) {
    if (S.line_loci.empty()) return 0;
    std::vector<LocusGeometry> geo;
    for (const auto& l : S.line_loci) geo.push_back({l.lattice_basis()});
    i64 total = 0;
    std::set<std::vector<i64>> special;
    for (std::size_t i = 0; i < geo.size(); ++i) {
        if (geo[i].basis.size() == 2)
            total += static_cast<i64>(count_line_points(geo[i].basis[0], geo[i].basis[1], B));
        else if (geo[i].basis.size() == 1)
            special.insert(normalized_from_big(geo[i].basis[0]));
    }
    for (std::size_t i = 0; i < S.line_loci.size(); ++i) {
        for (std::size_t j = i + 1; j < S.line_loci.size(); ++j) {
            std::vector<std::vector<Int>> rows = S.line_loci[i].constraints;
            rows.insert(rows.end(), S.line_loci[j].constraints.begin(), S.line_loci[j].constraints.end());
            LineLocus merged{S.nvars, rows};
            auto basis = merged.lattice_basis();
            if (basis.size() == 1) special.insert(normalized_from_big(basis[0]));
        }
    }
    for (const auto& p : special) {
        i64 h = 0;
        for (i64 c : p) h = std::max(h, iabs(c));
        if (h > B) continue;
        int lines_through = 0;
        for (std::size_t i = 0; i < S.line_loci.size(); ++i)
            if (geo[i].basis.size() == 2 && S.line_loci[i].contains(p)) ++lines_through;
        // counted lines_through times so far; it belongs exactly once
        total += 1 - lines_through;
    }
    if (total < 0) throw std::logic_error("line_union_count: negative total");
    return static_cast<u64>(total);
}

// ---------------------------------------------------------------------------
// Strategy enumerators.  Each produces candidate integer vectors, verified
// against every defining form before being counted.
// ---------------------------------------------------------------------------

struct Emit {
    const SurfaceSpec* S;
    Subset subset;
    bool collect;
    u64 count = 0;
    std::set<std::vector<i64>> points;

    void operator()(std::span<const i64> xs) {
        std::vector<i64> x(xs.begin(), xs.end());
        if (!is_normalized_primitive(x)) return;
        if (!S->on_surface(x)) return;
        if (subset == Subset::OpenU && S->on_excluded_line(x)) return;
        if (collect) points.insert(std::move(x));
        else ++count;
    }
};

// Hypersurface in P^3: sweep (x1,x2,x3), solve the last coordinate exactly.
// Degenerate fibres (the polynomial in x4 vanishing identically) are whole
// vertical lines and are enumerated directly.  The count-only path is
// partitioned over x1 with deterministic block reduction.
template <typename Visit>
void sweep_hypersurface3_range(const SurfaceSpec& S, i64 B, i64 x1_lo, i64 x1_hi, Visit&& visit) {
    const HomogeneousForm& f = S.forms.at(0);
    // coefficients of x4^k as forms in x1..x3
    HomogeneousForm part[4];
    for (int k = 0; k <= 3; ++k) part[k].nvars = 3;
    for (const auto& [ev, c] : f.monomials) {
        int k = ev[3];
        part[k].monomials.push_back({{ev[0], ev[1], ev[2]}, c});
    }
    auto eval_part = [&](int k, i64 a, i64 b, i64 c) -> i128 {
        i128 total = 0;
        for (const auto& [ev, coef] : part[k].monomials) {
            i128 t = static_cast<i64>(coef);
            for (int i = 0; i < ev[0]; ++i) t *= a;
            for (int i = 0; i < ev[1]; ++i) t *= b;
            for (int i = 0; i < ev[2]; ++i) t *= c;
            total += t;
        }
        return total;
    };
    for (i64 x1 = x1_lo; x1 <= x1_hi; ++x1)
        for (i64 x2 = -B; x2 <= B; ++x2)
            for (i64 x3 = -B; x3 <= B; ++x3) {
                i128 c0 = eval_part(0, x1, x2, x3);
                i128 c1 = eval_part(1, x1, x2, x3);
                i128 c2 = eval_part(2, x1, x2, x3);
                i128 c3 = eval_part(3, x1, x2, x3);
                i64 roots[3];
                int nr = 0;
                if (!integer_roots(c0, c1, c2, c3, B, roots, nr)) {
                    for (i64 x4 = -B; x4 <= B; ++x4) {
                        i64 x[4] = {x1, x2, x3, x4};
                        visit(x);
                    }
                } else {
                    for (int i = 0; i < nr; ++i) {
                        i64 x[4] = {x1, x2, x3, roots[i]};
                        visit(x);
                    }
                }
            }
}

void enum_hypersurface3(const SurfaceSpec& S, i64 B, const CountOptions& opt, Emit& emit) {
    check_budget(std::pow(2.0 * B + 1, 3), opt);
    sweep_hypersurface3_range(S, B, -B, B, [&](std::span<const i64> x) { emit(x); });
}

u64 count_hypersurface3_parallel(const SurfaceSpec& S, i64 B, Subset subset,
                                 const CountOptions& opt) {
    check_budget(std::pow(2.0 * B + 1, 3), opt);
    return parallel_block_sum<u64>(-B, B + 1, opt.workers, [&](i64 x1, u64& acc) {
        Emit emit{&S, subset, /*collect=*/false, 0, {}};
        sweep_hypersurface3_range(S, B, x1, x1, [&](std::span<const i64> x) { emit(x); });
        acc += emit.count;
    });
}

// Intersection of two quadrics in P^4: sweep (x1..x4), solve x5.
void enum_dp4(const SurfaceSpec& S, i64 B, const CountOptions& opt, Emit& emit) {
    check_budget(std::pow(2.0 * B + 1, 4), opt);
    const HomogeneousForm& f1 = S.forms.at(0);
    const HomogeneousForm& f2 = S.forms.at(1);
    auto coeffs = [&](const HomogeneousForm& f, i64 a, i64 b, i64 c, i64 d, i128 out[3]) {
        out[0] = out[1] = out[2] = 0;
        for (const auto& [ev, coef] : f.monomials) {
            i128 t = static_cast<i64>(coef);
            for (int i = 0; i < ev[0]; ++i) t *= a;
            for (int i = 0; i < ev[1]; ++i) t *= b;
            for (int i = 0; i < ev[2]; ++i) t *= c;
            for (int i = 0; i < ev[3]; ++i) t *= d;
            out[ev[4]] += t;
        }
    };
    for (i64 x1 = -B; x1 <= B; ++x1)
        for (i64 x2 = -B; x2 <= B; ++x2)
            for (i64 x3 = -B; x3 <= B; ++x3)
                for (i64 x4 = -B; x4 <= B; ++x4) {
                    i128 q1[3], q2c[3];
                    coeffs(f1, x1, x2, x3, x4, q1);
                    coeffs(f2, x1, x2, x3, x4, q2c);
                    i64 roots[3];
                    int nr = 0;
                    bool deg1 = !integer_roots(q1[0], q1[1], q1[2], 0, B, roots, nr);
                    if (!deg1) {
                        for (int i = 0; i < nr; ++i) {
                            i128 v = (q2c[2] * roots[i] + q2c[1]) * roots[i] + q2c[0];
                            if (v != 0) continue;
                            i64 x[5] = {x1, x2, x3, x4, roots[i]};
                            emit(x);
                        }
                    } else {
                        // first quadric vanishes identically; roots come from the second
                        i64 r2[3];
                        int n2 = 0;
                        if (!integer_roots(q2c[0], q2c[1], q2c[2], 0, B, r2, n2)) {
                            for (i64 x5 = -B; x5 <= B; ++x5) {
                                i64 x[5] = {x1, x2, x3, x4, x5};
                                emit(x);
                            }
                        } else {
                            for (int i = 0; i < n2; ++i) {
                                i64 x[5] = {x1, x2, x3, x4, r2[i]};
                                emit(x);
                            }
                        }
                    }
                }
}

// Full box scan; only for tiny B.
void enum_brute(const SurfaceSpec& S, i64 B, const CountOptions& opt, Emit& emit) {
    int n = S.nvars;
    check_budget(std::pow(2.0 * B + 1, n), opt);
    std::vector<i64> x(n, -B);
    while (true) {
        emit(x);
        int i = 0;
        while (i < n && ++x[i] > B) x[i++] = -B;
        if (i == n) break;
    }
}

// Degree-6 A1 surface in the sign-normalized model
//   x1^2=x2x4, x1x5=x3x4, x1x3=x2x5, x1x6=x3x5, x2x6=x3^2, x4x6=x5^2,
//   x1^2-x1x4+x5x7=0, x1^2-x1x2-x3x7=0, x1x3-x1x5+x6x7=0.
// Dense points have x1..x6 nonzero and are parametrized by (x2,x4,sgn x1,x3);
// the strata with x2=0 or x4=0 are plane conics plus the excluded lines.
void enum_dp6a1_model(i64 B, const CountOptions& opt, bool include_lines,
                      const std::function<void(std::array<i64, 7>)>& sink) {
    check_budget(24.0 * B * std::sqrt(static_cast<double>(B)) * std::log(B + 2.0) + 64 * B * B, opt);
    // main branch
    for (i64 x2 = -B; x2 <= B; ++x2) {
        if (x2 == 0) continue;
        for (i64 x4 = (x2 > 0 ? 1 : -B); x4 <= (x2 > 0 ? B : -1); ++x4) {
            i64 prod = x2 * x4;
            i64 w = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(prod))));
            while (w > 0 && w * w > prod) --w;
            while ((w + 1) * (w + 1) <= prod) ++w;
            if (w * w != prod || w == 0) continue;
            for (i64 x1 : {w, -w}) {
                for (i64 x3 = -B; x3 <= B; ++x3) {
                    if (x3 == 0) continue;
                    if ((x3 * x3) % x2 != 0) continue;
                    i64 x6 = (x3 * x3) / x2;
                    if (iabs(x6) > B) continue;
                    if ((x1 * x3) % x2 != 0) continue;
                    i64 x5 = (x1 * x3) / x2;
                    if (iabs(x5) > B) continue;
                    if ((x2 * (x4 - x1)) % x3 != 0) continue;
                    i64 x7 = (x2 * (x4 - x1)) / x3;
                    if (iabs(x7) > B) continue;
                    sink({x1, x2, x3, x4, x5, x6, x7});
                }
            }
        }
    }
    // stratum x2 = 0 (forces x1 = x3 = 0): x4 x6 = x5^2, x5 x7 = x6 x7 = 0
    for (i64 x4 = -B; x4 <= B; ++x4) {
        if (x4 == 0) continue;
        for (i64 x5 = -B; x5 <= B; ++x5) {
            if ((x5 * x5) % x4 != 0) continue;
            i64 x6 = (x5 * x5) / x4;
            if (iabs(x6) > B) continue;
            sink({0, 0, 0, x4, x5, x6, 0});
        }
    }
    sink({0, 0, 0, 0, 0, 1, 0});
    sink({0, 0, 0, 0, 0, -1, 0});
    // stratum x4 = 0, x2 != 0 (forces x1 = x5 = 0): x2 x6 = x3^2, x3 x7 = x6 x7 = 0
    for (i64 x2 = -B; x2 <= B; ++x2) {
        if (x2 == 0) continue;
        for (i64 x3 = -B; x3 <= B; ++x3) {
            if ((x3 * x3) % x2 != 0) continue;
            i64 x6 = (x3 * x3) / x2;
            if (iabs(x6) > B) continue;
            sink({0, x2, x3, 0, 0, x6, 0});
        }
    }
    if (include_lines) {
        for (i64 s = -B; s <= B; ++s)
            for (i64 t = -B; t <= B; ++t) {
                if (s == 0 && t == 0) continue;
                sink({0, 0, 0, s, 0, 0, t});   // line 1
                sink({0, s, 0, 0, 0, 0, t});   // line 2
                sink({s, s, 0, s, 0, 0, t});   // line 3
            }
    }
}

void enum_dp6a1(const SurfaceSpec& S, i64 B, const CountOptions& opt, bool include_lines, Emit& emit) {
    bool flipped_model = (S.id == "dp6_a1t");
    // sign change relating the two models; heights and zero patterns agree
    const i64 eps[7] = {1, -1, -1, -1, 1, -1, 1};
    enum_dp6a1_model(B, opt, include_lines, [&](std::array<i64, 7> y) {
        if (!flipped_model)
            for (int i = 0; i < 7; ++i) y[i] *= eps[i];
        emit(y);
    });
}

bool splits_two_two(const HomogeneousForm& f) {
    if (f.nvars != 4) return false;
    for (const auto& [ev, c] : f.monomials) {
        (void)c;
        bool left = ev[0] || ev[1], right = ev[2] || ev[3];
        if (left && right) return false;
    }
    return true;
}

}  // namespace

u64 count_ambient(int n, i64 B, const CountOptions& opt) {
    if (n < 2) throw std::invalid_argument("count_ambient: n >= 2 required");
    if (B <= 0) return 0;
    check_budget(std::pow(2.0 * B + 1, n - 1), opt);
    // c[g] = #{t in [-B,B] : gcd(t,g) = 1}; c[0] counts t = +-1.
    std::vector<i64> c(B + 1, 0);
    {
        // mobius via sieve
        std::vector<int> mu(B + 1, 1);
        std::vector<bool> comp(B + 1, false);
        std::vector<i64> pr;
        for (i64 i = 2; i <= B; ++i) {
            if (!comp[i]) { pr.push_back(i); mu[i] = -1; }
            for (i64 p : pr) {
                if (i * p > B) break;
                comp[i * p] = true;
                if (i % p == 0) { mu[i * p] = 0; break; }
                mu[i * p] = -mu[i];
            }
        }
        for (i64 d = 1; d <= B; ++d) {
            if (mu[d] == 0) continue;
            i64 cnt = 2 * (B / d) + 1;
            for (i64 g = d; g <= B; g += d) c[g] += mu[d] * cnt;
        }
    }
    auto cval = [&](i64 g) -> i64 { return g == 0 ? 2 : c[g]; };

    u64 total = 0;
    if (n == 2) {
        for (i64 x = -B; x <= B; ++x) total += static_cast<u64>(cval(iabs(x)));
    } else if (n == 3) {
        total = parallel_block_sum<u64>(-B, B + 1, opt.workers, [&](i64 x1, u64& acc) {
            for (i64 x2 = -B; x2 <= B; ++x2) acc += static_cast<u64>(cval(std::gcd(iabs(x1), iabs(x2))));
        });
    } else {
        // generic prefix-gcd recursion
        std::vector<i64> x(n - 1, -B);
        std::function<void(int, i64)> rec = [&](int depth, i64 g) {
            if (depth == n - 1) { total += static_cast<u64>(cval(g)); return; }
            for (i64 v = -B; v <= B; ++v) rec(depth + 1, std::gcd(g, iabs(v)));
        };
        rec(0, 0);
    }
    return total / 2;
}

u64 count_affine(const HomogeneousForm& f, i64 B, const CountOptions& opt) {
    f.validate();
    if (B <= 0) return 0;
    int n = f.nvars;
    check_budget(std::pow(2.0 * B + 1, std::max(n - 1, 1)), opt);
    // coefficients of x_n^k as forms in the first n-1 variables
    int d = f.degree();
    std::vector<HomogeneousForm> part(static_cast<std::size_t>(d) + 1);
    for (auto& p : part) p.nvars = std::max(n - 1, 1);
    for (const auto& [ev, c] : f.monomials) {
        std::vector<int> head(ev.begin(), ev.end() - 1);
        if (head.empty()) head = {0};
        part[ev[n - 1]].monomials.push_back({head, c});
    }
    if (d > 3) throw std::invalid_argument("count_affine: degree > 3 unsupported");
    u64 total = 0;
    std::vector<i64> x(std::max(n - 1, 1), 0);
    auto eval_part = [&](int k) -> i128 {
        i128 t = 0;
        for (const auto& [ev, c] : part[k].monomials) {
            i128 term = static_cast<i64>(c);
            for (std::size_t i = 0; i < ev.size(); ++i)
                for (int e = 0; e < ev[i]; ++e) term *= x[i];
            t += term;
        }
        return t;
    };
    std::function<void(int)> rec = [&](int depth) {
        if (depth == n - 1) {
            i128 c0 = eval_part(0), c1 = d >= 1 ? eval_part(1) : 0;
            i128 c2 = d >= 2 ? eval_part(2) : 0, c3 = d >= 3 ? eval_part(3) : 0;
            bool prefix_zero = true;
            for (int i = 0; i < n - 1; ++i)
                if (x[i] != 0) prefix_zero = false;
            i64 roots[3];
            int nr = 0;
            if (!integer_roots(c0, c1, c2, c3, B, roots, nr)) {
                total += static_cast<u64>(2 * B + 1 - (prefix_zero ? 1 : 0));
            } else {
                for (int i = 0; i < nr; ++i)
                    if (!(prefix_zero && roots[i] == 0)) ++total;
            }
            return;
        }
        for (i64 v = -B; v <= B; ++v) {
            x[depth] = v;
            rec(depth + 1);
        }
        x[depth] = 0;
    };
    if (n == 1) {
        i64 roots[3];
        int nr = 0;
        i128 cs[4] = {0, 0, 0, 0};
        for (const auto& [ev, c] : f.monomials) cs[ev[0]] += static_cast<i64>(c);
        if (!integer_roots(cs[0], cs[1], cs[2], cs[3], B, roots, nr)) return static_cast<u64>(2 * B);
        for (int i = 0; i < nr; ++i)
            if (roots[i] != 0) ++total;
        return total;
    }
    rec(0);
    return total;
}

u64 count_affine_mitm(const HomogeneousForm& f, i64 B, const CountOptions& opt) {
    f.validate();
    if (B <= 0) return 0;
    if (!splits_two_two(f)) throw std::invalid_argument("count_affine_mitm: form does not split as g(x1,x2)+h(x3,x4)");
    double pairs = std::pow(2.0 * B + 1, 2);
    check_budget(4 * pairs * std::log2(pairs + 2), opt);
    if (pairs > 6.5e7) throw BudgetExceeded("count_affine_mitm: B too large for in-memory tables");
    HomogeneousForm g, h;
    g.nvars = 4;
    h.nvars = 4;
    for (const auto& [ev, c] : f.monomials) {
        if (ev[0] || ev[1]) g.monomials.push_back({ev, c});
        else h.monomials.push_back({ev, c});
    }
    auto values = [&](const HomogeneousForm& ff, int i0, int i1) {
        std::vector<i64> vals;
        vals.reserve(static_cast<std::size_t>(2 * B + 1) * static_cast<std::size_t>(2 * B + 1));
        std::vector<i64> x(4, 0);
        for (i64 a = -B; a <= B; ++a)
            for (i64 b = -B; b <= B; ++b) {
                x[i0] = a;
                x[i1] = b;
                i128 v = 0;
                for (const auto& [ev, c] : ff.monomials) {
                    i128 t = static_cast<i64>(c);
                    for (int i = 0; i < 4; ++i)
                        for (int e = 0; e < ev[i]; ++e) t *= x[i];
                    v += t;
                }
                vals.push_back(static_cast<i64>(v));
            }
        std::sort(vals.begin(), vals.end());
        return vals;
    };
    std::vector<i64> gv = values(g, 0, 1), hv = values(h, 2, 3);
    // count pairs with gv + hv = 0, excluding x = 0 (gv and hv both from the
    // all-zero assignment); subtract the zero-vector once.
    u64 total = 0;
    std::size_t i = 0, j = hv.size();
    while (i < gv.size() && j > 0) {
        i64 target = -gv[i];
        std::size_t i2 = i;
        while (i2 < gv.size() && gv[i2] == gv[i]) ++i2;
        auto lo = std::lower_bound(hv.begin(), hv.end(), target);
        auto hi = std::upper_bound(hv.begin(), hv.end(), target);
        total += static_cast<u64>(i2 - i) * static_cast<u64>(hi - lo);
        i = i2;
    }
    return total - 1;
}

namespace {

u64 mobius_surface_count(const SurfaceSpec& S, i64 B, const CountOptions& opt) {
    // N_V(B) = 1/2 sum_k mu(k) N(f; floor(B/k)) for a hypersurface.
    const HomogeneousForm& f = S.forms.at(0);
    i64 acc = 0;
    for (i64 k = 1; k <= B; ++k) {
        int mu = arith::mobius(static_cast<u64>(k));
        if (mu == 0) continue;
        i64 M = B / k;
        if (M == 0) break;
        u64 nf = splits_two_two(f) ? count_affine_mitm(f, M, opt) : count_affine(f, M, opt);
        acc += mu * static_cast<i64>(nf);
    }
    if (acc < 0 || acc % 2 != 0) throw std::logic_error("mobius_surface_count: parity violation");
    return static_cast<u64>(acc) / 2;
}

}  // namespace

u64 count_line_points(const SurfaceSpec& S, i64 B) {
    if (B <= 0) return 0;
    return line_union_count(S, B);
}

u64 count_surface(const SurfaceSpec& S, i64 B, Subset subset, const CountOptions& opt) {
    if (B < 0) throw std::invalid_argument("count_surface: B >= 0 required");
    if (B == 0) return 0;
    if (subset == Subset::OpenU && !S.lines_known)
        throw std::invalid_argument(S.id + ": the excluded lines are not catalogued for this surface; subset=open_U is unavailable (use subset=all)");
    // Fast path for large diagonal cubics: Mobius over the affine count, then
    // remove the points on the lines.
    if (S.strategy == EnumStrategy::Hypersurface3 && B > 400 && splits_two_two(S.forms.at(0))) {
        u64 nv = mobius_surface_count(S, B, opt);
        if (subset == Subset::All) return nv;
        return nv - line_union_count(S, B);
    }
    Emit emit{&S, subset, /*collect=*/false, 0, {}};
    switch (S.strategy) {
        case EnumStrategy::Hypersurface3:
            return count_hypersurface3_parallel(S, B, subset, opt);
        case EnumStrategy::Dp4Pencil:
            enum_dp4(S, B, opt, emit);
            break;
        case EnumStrategy::Dp6A1: {
            // enumerate the off-line points, then add the lines by formula
            Emit emit_u{&S, Subset::OpenU, /*collect=*/false, 0, {}};
            enum_dp6a1(S, B, opt, /*include_lines=*/false, emit_u);
            if (subset == Subset::All) return emit_u.count + line_union_count(S, B);
            return emit_u.count;
        }
        case EnumStrategy::BruteForce:
            enum_brute(S, B, opt, emit);
            break;
    }
    return emit.count;
}

std::vector<std::vector<i64>> enumerate_surface(const SurfaceSpec& S, i64 B, Subset subset,
                                                const CountOptions& opt) {
    if (B <= 0) return {};
    Emit emit{&S, subset, /*collect=*/true, 0, {}};
    switch (S.strategy) {
        case EnumStrategy::Hypersurface3:
            enum_hypersurface3(S, B, opt, emit);
            break;
        case EnumStrategy::Dp4Pencil:
            enum_dp4(S, B, opt, emit);
            break;
        case EnumStrategy::Dp6A1:
            enum_dp6a1(S, B, opt, /*include_lines=*/subset == Subset::All, emit);
            break;
        case EnumStrategy::BruteForce:
            enum_brute(S, B, opt, emit);
            break;
    }
    return {emit.points.begin(), emit.points.end()};
}

}  // namespace dpc::surfaces
