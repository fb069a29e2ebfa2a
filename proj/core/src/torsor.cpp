#include "dpcount/torsor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dpcount/parallel.hpp"

namespace dpc::torsor {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;

i64 iabs(i64 x) { return x < 0 ? -x : x; }

i64 isqrt_floor(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool squarefree_i64(i64 n) {
    n = iabs(n);
    if (n == 0) return false;
    return arith::factorize(static_cast<u64>(n)).squarefree();
}

i64 inv_mod(i64 a, i64 m) {
    // extended gcd; gcd(a, m) = 1 assumed
    i64 r0 = ((a % m) + m) % m, r1 = m;
    i64 s0 = 1, s1 = 0;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        i64 s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    return ((s0 % m) + m) % m;
}

}  // namespace

bool TorsorPointA1::valid(std::string* why) const {
    auto fail = [&](const char* m) {
        if (why) *why = m;
        return false;
    };
    if (s0 < 1 || s1 < 1 || s2 < 1 || s3 < 1 || y1 < 1) return fail("positivity violated");
    if (y2 == 0) return fail("y2 = 0");
    if (s1 * y1 - s2 * y2 + s3 * y3 != 0) return fail("torsor equation violated");
    if (std::gcd(s1, s2) != 1 || std::gcd(s1, s3) != 1 || std::gcd(s2, s3) != 1)
        return fail("gcd(s_i, s_j) != 1");
    if (std::gcd(iabs(y1), s0 * s2 * s3) != 1) return fail("gcd(y1, s0 s2 s3) != 1");
    if (std::gcd(iabs(y2), s0 * s1 * s3) != 1) return fail("gcd(y2, s0 s1 s3) != 1");
    if (std::gcd(iabs(y3), s0 * s1 * s2) != 1) return fail("gcd(y3, s0 s1 s2) != 1");
    return true;
}

i64 TorsorPointA1::height_psi() const {
    i64 a = s0 * s0 * s0 * s1 * s1 * s2 * s2 * s3 * s3;
    i64 b = iabs(y1 * y2 * y3);
    i64 c = s0 * s1 * s1 * y1 * y1;
    i64 d = s0 * s2 * s2 * y2 * y2;
    return std::max({a, b, c, d});
}

std::vector<i64> a1_map(const TorsorPointA1& t) {
    std::string why;
    if (!t.valid(&why)) throw std::invalid_argument("a1_map: invalid torsor point: " + why);
    return {
        t.s0 * t.s1 * t.s2 * t.y1 * t.y2,
        t.s0 * t.s1 * t.s1 * t.y1 * t.y1,
        t.s0 * t.s0 * t.s1 * t.s1 * t.s2 * t.s3 * t.y1,
        t.s0 * t.s2 * t.s2 * t.y2 * t.y2,
        t.s0 * t.s0 * t.s1 * t.s2 * t.s2 * t.s3 * t.y2,
        t.s0 * t.s0 * t.s0 * t.s1 * t.s1 * t.s2 * t.s2 * t.s3 * t.s3,
        t.y1 * t.y2 * t.y3,
    };
}

bool TorsorPointD4::valid(std::string* why) const {
    auto fail = [&](const char* m) {
        if (why) *why = m;
        return false;
    };
    if (v < 1 || s1 < 1 || s2 < 1 || s3 < 1) return fail("positivity violated (v, s)");
    if (u3 < 1 || u1 == 0 || u2 == 0) return fail("u constraints violated");
    if (y1 < 1 || y2 < 1 || y3 < 1) return fail("positivity violated (y)");
    if (s1 * u1 * y1 * y1 + s2 * u2 * y2 * y2 + s3 * u3 * y3 * y3 != 0)
        return fail("torsor equation violated");
    if (!squarefree_i64(u1 * u2 * u3)) return fail("u1 u2 u3 not squarefree");
    if (std::gcd(s1 * s2 * s3, iabs(u1 * u2 * u3) * v) != 1)
        return fail("gcd(s1 s2 s3, u1 u2 u3 v) != 1");
    if (std::gcd(y1, y2) != 1 || std::gcd(y1, y3) != 1 || std::gcd(y2, y3) != 1)
        return fail("gcd(y_i, y_j) != 1");
    if (std::gcd(y1, std::gcd(s2, s3)) != 1 || std::gcd(y2, std::gcd(s1, s3)) != 1 ||
        std::gcd(y3, std::gcd(s1, s2)) != 1)
        return fail("gcd(y_i, s_j, s_k) != 1");
    return true;
}

i64 TorsorPointD4::height_psi() const {
    i64 u123 = iabs(u1 * u2 * u3);
    i64 t4 = s1 * s2 * s3;
    i64 t3 = u123 * u123 * v * v * v * y1 * y2 * y3;
    i64 t1 = s1 * u1 * u1 * iabs(u2) * u3 * v * v * y1 * y1;
    i64 t2 = s2 * iabs(u1) * u2 * u2 * u3 * v * v * y2 * y2;
    return std::max({t4, t3, iabs(t1), iabs(t2)});
}

std::vector<i64> d4_map(const TorsorPointD4& t) {
    std::string why;
    if (!t.valid(&why)) throw std::invalid_argument("d4_map: invalid torsor point: " + why);
    return {
        -t.s1 * t.u1 * t.u1 * t.u2 * t.u3 * t.v * t.v * t.y1 * t.y1,
        -t.s2 * t.u1 * t.u2 * t.u2 * t.u3 * t.v * t.v * t.y2 * t.y2,
        t.u1 * t.u1 * t.u2 * t.u2 * t.u3 * t.u3 * t.v * t.v * t.v * t.y1 * t.y2 * t.y3,
        t.s1 * t.s2 * t.s3,
    };
}

namespace {

// Shared A1 loop: outer (s0, s) with s0^3 s1^2 s2^2 s3^2 <= B and pairwise
// coprime s; inner y2, then y1 on the progression solving the torsor
// equation modulo s3.
template <typename Fn>
void a1_sweep_tuple(i64 B, i64 s0, i64 s1, i64 s2, i64 s3, Fn&& visit) {
    i64 Y1 = isqrt_floor(B / (s0 * s1 * s1));
    i64 Y2 = isqrt_floor(B / (s0 * s2 * s2));
    if (Y1 < 1 || Y2 < 1) return;
    i64 m013 = s0 * s1 * s3;
    i64 m023 = s0 * s2 * s3;
    i64 m012 = s0 * s1 * s2;
    i64 rho = (s3 == 1) ? 0 : inv_mod(s1 % s3, s3);
    for (i64 y2 = -Y2; y2 <= Y2; ++y2) {
        if (y2 == 0) continue;
        if (std::gcd(iabs(y2), m013) != 1) continue;
        i64 y1_start;
        if (s3 == 1) {
            y1_start = 1;
        } else {
            i64 target = ((s2 % s3) * ((y2 % s3 + s3) % s3)) % s3;
            y1_start = (rho * target) % s3;
            if (y1_start == 0) y1_start = s3;
        }
        for (i64 y1 = y1_start; y1 <= Y1; y1 += (s3 == 1 ? 1 : s3)) {
            i64 num = s2 * y2 - s1 * y1;
            i64 y3 = num / s3;
            if (y3 * s3 != num) continue;  // only when s3 == 1 trivially true
            if (iabs(y1 * y2 * y3) > B) continue;
            if (std::gcd(y1, m023) != 1) continue;
            if (std::gcd(iabs(y3), m012) != 1) continue;
            visit(TorsorPointA1{s0, s1, s2, s3, y1, y2, y3});
        }
    }
}

std::vector<std::array<i64, 4>> a1_outer_tuples(i64 B) {
    std::vector<std::array<i64, 4>> tuples;
    for (i64 s0 = 1; s0 * s0 * s0 <= B; ++s0) {
        i64 b0 = B / (s0 * s0 * s0);
        for (i64 s1 = 1; s1 * s1 <= b0; ++s1) {
            i64 b1 = b0 / (s1 * s1);
            for (i64 s2 = 1; s2 * s2 <= b1; ++s2) {
                if (std::gcd(s1, s2) != 1) continue;
                i64 b2 = b1 / (s2 * s2);
                for (i64 s3 = 1; s3 * s3 <= b2; ++s3) {
                    if (std::gcd(s1, s3) != 1 || std::gcd(s2, s3) != 1) continue;
                    if (s0 * s0 * s0 * s1 * s1 * s2 * s2 * s3 * s3 > B) continue;
                    tuples.push_back({s0, s1, s2, s3});
                }
            }
        }
    }
    return tuples;
}

}  // namespace

std::uint64_t a1_count(i64 B, int workers) {
    if (B < 1) return 0;
    auto tuples = a1_outer_tuples(B);
    return parallel_block_sum<u64>(0, static_cast<i64>(tuples.size()), workers, [&](i64 i, u64& acc) {
        const auto& t = tuples[static_cast<std::size_t>(i)];
        a1_sweep_tuple(B, t[0], t[1], t[2], t[3], [&](const TorsorPointA1&) { ++acc; });
    });
}

std::vector<TorsorPointA1> a1_enumerate(i64 B) {
    std::vector<TorsorPointA1> out;
    if (B < 1) return out;
    for (const auto& t : a1_outer_tuples(B))
        a1_sweep_tuple(B, t[0], t[1], t[2], t[3], [&](const TorsorPointA1& p) { out.push_back(p); });
    return out;
}

namespace {

template <typename Fn>
void d4_sweep(i64 B, Fn&& visit) {
    for (i64 v = 1; v * v * v <= B; ++v) {
        i64 v3 = v * v * v;
        for (i64 u3 = 1; u3 * u3 * v3 <= B; ++u3) {
            for (i64 au1 = 1; au1 * au1 * u3 * u3 * v3 <= B; ++au1) {
                for (i64 au2 = 1; au1 * au1 * au2 * au2 * u3 * u3 * v3 <= B; ++au2) {
                    if (!squarefree_i64(au1 * au2 * u3)) continue;
                    i64 u123 = au1 * au2 * u3;
                    i64 vv = v * v;
                    // t1 bound with y1 = 1 limits s1, likewise s2; t4 limits s3
                    for (i64 s1 = 1; s1 * au1 * au1 * au2 * u3 * vv <= B; ++s1) {
                        for (i64 s2 = 1; s2 * au1 * au2 * au2 * u3 * vv <= B && s1 * s2 <= B; ++s2) {
                            for (i64 s3 = 1; s1 * s2 * s3 <= B; ++s3) {
                                if (std::gcd(s1 * s2 * s3, u123 * v) != 1) continue;
                                i64 Y1 = isqrt_floor(B / (s1 * au1 * au1 * au2 * u3 * vv));
                                i64 Y2 = isqrt_floor(B / (s2 * au1 * au2 * au2 * u3 * vv));
                                for (i64 y1 = 1; y1 <= Y1; ++y1) {
                                    if (std::gcd(y1, std::gcd(s2, s3)) != 1) continue;
                                    for (i64 y2 = 1; y2 <= Y2; ++y2) {
                                        if (std::gcd(y1, y2) != 1) continue;
                                        if (std::gcd(y2, std::gcd(s1, s3)) != 1) continue;
                                        for (int sg1 = -1; sg1 <= 1; sg1 += 2) {
                                            for (int sg2 = -1; sg2 <= 1; sg2 += 2) {
                                                i64 u1 = sg1 * au1, u2 = sg2 * au2;
                                                i64 lhs = s1 * u1 * y1 * y1 + s2 * u2 * y2 * y2;
                                                if (lhs >= 0) continue;  // s3 u3 y3^2 > 0 needed
                                                i64 num = -lhs;
                                                if (num % (s3 * u3) != 0) continue;
                                                i64 y3sq = num / (s3 * u3);
                                                i64 y3 = isqrt_floor(y3sq);
                                                if (y3 < 1 || y3 * y3 != y3sq) continue;
                                                if (std::gcd(y3, y1) != 1 || std::gcd(y3, y2) != 1) continue;
                                                if (std::gcd(y3, std::gcd(s1, s2)) != 1) continue;
                                                i64 t3 = u123 * u123 * v3 * y1 * y2 * y3;
                                                if (t3 > B) continue;
                                                visit(TorsorPointD4{v, s1, s2, s3, u1, u2, u3, y1, y2, y3});
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

std::uint64_t d4_count(i64 B) {
    if (B < 1) return 0;
    u64 n = 0;
    d4_sweep(B, [&](const TorsorPointD4&) { ++n; });
    return n;
}

std::vector<TorsorPointD4> d4_enumerate(i64 B) {
    std::vector<TorsorPointD4> out;
    if (B < 1) return out;
    d4_sweep(B, [&](const TorsorPointD4& p) { out.push_back(p); });
    return out;
}

namespace {

// primitive t with t1 t2 (t1 + t2) = t3^2 t4, t3, t4 >= 1, |t| <= B
std::set<std::vector<i64>> d4_direct_solutions(i64 B) {
    std::set<std::vector<i64>> out;
    for (i64 t1 = -B; t1 <= B; ++t1) {
        for (i64 t2 = -B; t2 <= B; ++t2) {
            i64 m = t1 * t2 * (t1 + t2);
            if (m == 0) continue;  // t4 >= 1 excluded
            for (i64 t3 = 1; t3 <= B; ++t3) {
                if (m % (t3 * t3) != 0) continue;
                i64 t4 = m / (t3 * t3);
                if (t4 < 1 || t4 > B) continue;
                std::vector<i64> t{t1, t2, t3, t4};
                if (arith::gcd_vec(t) != 1) continue;
                out.insert(std::move(t));
            }
        }
    }
    return out;
}

// primitive solutions of the nine-quadric model with x2, x3, x4, x6 > 0
std::set<std::vector<i64>> a1_direct_solutions(i64 B) {
    auto S = surfaces::builtin("dp6_a1t");
    std::set<std::vector<i64>> out;
    // dense branch only: x2, x4 > 0 with x2 x4 a square, x3 > 0
    for (i64 x2 = 1; x2 <= B; ++x2) {
        for (i64 x4 = 1; x4 <= B; ++x4) {
            i64 w = isqrt_floor(x2 * x4);
            if (w * w != x2 * x4) continue;
            for (i64 x1 : {w, -w}) {
                for (i64 x3 = 1; x3 <= B; ++x3) {
                    if ((x3 * x3) % x2 != 0) continue;
                    i64 x6 = (x3 * x3) / x2;
                    if (x6 > B) continue;
                    if ((x1 * x3) % x2 != 0) continue;
                    i64 x5 = (x1 * x3) / x2;
                    if (iabs(x5) > B) continue;
                    if ((x2 * (x4 - x1)) % x3 != 0) continue;
                    i64 x7 = (x2 * (x4 - x1)) / x3;
                    if (iabs(x7) > B) continue;
                    std::vector<i64> x{x1, x2, x3, x4, x5, x6, x7};
                    if (arith::gcd_vec(x) != 1) continue;
                    if (!S.on_surface(x)) continue;
                    out.insert(std::move(x));
                }
            }
        }
    }
    return out;
}

}  // namespace

BijectionReport verify_bijection(TorsorSurface which, i64 B) {
    if (B > 200) throw std::invalid_argument("verify_bijection: B <= 200 (sets are materialized)");
    BijectionReport rep;
    rep.surface = which;
    rep.B = B;
    std::set<std::vector<i64>> direct, mapped;
    if (which == TorsorSurface::D4) {
        direct = d4_direct_solutions(B);
        for (const auto& p : d4_enumerate(B)) mapped.insert(d4_map(p));
    } else {
        direct = a1_direct_solutions(B);
        for (const auto& p : a1_enumerate(B)) mapped.insert(a1_map(p));
    }
    rep.direct_count = direct.size();
    rep.mapped_count = mapped.size();
    for (const auto& x : direct) {
        if (mapped.count(x)) ++rep.matched;
        else rep.missing.push_back(x);
    }
    for (const auto& x : mapped)
        if (!direct.count(x)) rep.extra.push_back(x);
    rep.ok = rep.missing.empty() && rep.extra.empty();
    if (which == TorsorSurface::A1) {
        auto S = surfaces::builtin("dp6_a1t");
        auto upoints = surfaces::enumerate_surface(S, B, surfaces::Subset::OpenU);
        rep.n_u = upoints.size();
        for (const auto& x : upoints) {
            bool zero = false;
            for (int i = 0; i < 6; ++i)
                if (x[i] == 0) zero = true;
            if (zero) ++rep.boundary_points;
        }
        rep.boundary_accounted = (rep.n_u == 2 * rep.mapped_count + rep.boundary_points);
        rep.ok = rep.ok && rep.boundary_accounted;
    }
    return rep;
}

}  // namespace dpc::torsor
