#pragma once

// Universal-torsor parametrizations for the A1 degree-6 surface and the D4
// cubic surface: explicit monomial maps with coprimality conditions, exact
// counting devices, and bijection verification against direct enumeration.
//
// A1 torsor: integer points (s0, s1, s2, s3, y1, y2, y3) with
//     s1 y1 - s2 y2 + s3 y3 = 0,
//     s0, s1, s2, s3, y1 > 0,  y2 != 0,
//     gcd(y_i, s0 s_j s_k) = 1 and gcd(s_i, s_j) = 1,
// mapped to the nine-quadric model via
//     x = (s0 s1 s2 y1 y2, s0 s1^2 y1^2, s0^2 s1^2 s2 s3 y1, s0 s2^2 y2^2,
//          s0^2 s1 s2^2 s3 y2, s0^3 s1^2 s2^2 s3^2, y1 y2 y3).
//
// D4 torsor: (v; s1, s2, s3; u1, u2, u3; y1, y2, y3) with
//     s1 u1 y1^2 + s2 u2 y2^2 + s3 u3 y3^2 = 0,
//     v, s_i, y_i > 0, u3 > 0, u1 u2 u3 squarefree,
//     gcd(s1 s2 s3, u1 u2 u3 v) = 1, gcd(y_i, y_j) = 1, gcd(y_i, s_j, s_k) = 1,
// mapped to t1 t2 (t1 + t2) = t3^2 t4 via
//     t = (-s1 u1^2 u2 u3 v^2 y1^2, -s2 u1 u2^2 u3 v^2 y2^2,
//          u1^2 u2^2 u3^2 v^3 y1 y2 y3, s1 s2 s3).

#include <cstdint>
#include <string>
#include <vector>

#include "dpcount/surfaces.hpp"

namespace dpc::torsor {

struct TorsorPointA1 {
    std::int64_t s0, s1, s2, s3;
    std::int64_t y1, y2, y3;

    bool valid(std::string* why = nullptr) const;
    std::int64_t height_psi() const;  // max{s0^3 s1^2 s2^2 s3^2, |y1 y2 y3|, s0 s1^2 y1^2, s0 s2^2 y2^2}
};

struct TorsorPointD4 {
    std::int64_t v;
    std::int64_t s1, s2, s3;
    std::int64_t u1, u2, u3;
    std::int64_t y1, y2, y3;

    bool valid(std::string* why = nullptr) const;
    std::int64_t height_psi() const;
};

// Monomial maps; inputs must satisfy the torsor invariants (throws otherwise).
std::vector<std::int64_t> a1_map(const TorsorPointA1& t);
std::vector<std::int64_t> d4_map(const TorsorPointD4& t);

// #{torsor points : Psi <= B}; exact.
std::uint64_t a1_count(std::int64_t B, int workers = 1);
std::uint64_t d4_count(std::int64_t B);

// enumerations for the bijection tests (small B)
std::vector<TorsorPointA1> a1_enumerate(std::int64_t B);
std::vector<TorsorPointD4> d4_enumerate(std::int64_t B);

enum class TorsorSurface { A1, D4 };

struct BijectionReport {
    TorsorSurface surface;
    std::int64_t B = 0;
    std::uint64_t direct_count = 0;    // target solutions by direct enumeration
    std::uint64_t mapped_count = 0;    // images of torsor points
    std::uint64_t matched = 0;
    std::vector<std::vector<std::int64_t>> missing;  // direct but not mapped
    std::vector<std::vector<std::int64_t>> extra;    // mapped but not direct
    // A1 only: accounting against the open subset U of the surface
    std::uint64_t n_u = 0;              // N_U(B) on the nine-quadric model
    std::uint64_t boundary_points = 0;  // U-points with some coordinate x1..x6 zero
    bool boundary_accounted = false;    // N_U = 2 * torsor count + boundary
    bool ok = false;
};

// Materializes both sides and compares.  D4: the image set must equal
// {primitive t : t1 t2 (t1+t2) = t3^2 t4, |t| <= B, t3, t4 >= 1} exactly.
// A1: the image set must equal the set of primitive solutions of the
// nine-quadric model with x2, x3, x4, x6 > 0 and |x| <= B; the points of U
// missed by the parametrization all have a zero coordinate.
BijectionReport verify_bijection(TorsorSurface which, std::int64_t B);

}  // namespace dpc::torsor
