#pragma once

// The 27 lines on a diagonal cubic surface a1 x1^3 + ... + a4 x4^3 = 0, the
// Galois action on them, the Picard rank as the rank of the Galois-fixed
// sublattice, and Segre's cube criterion for rank 1.
//
// Lines carry labels (family L/M/N, accent 0/'/'' , index in Z/3).  Writing
// alpha, alpha', alpha'' for the fixed positive real cube roots of
// a2/a1, a3/a1, a4/a1, the splitting field is Q(theta, alpha, alpha', alpha'')
// with theta a primitive cube root of unity.  An automorphism is a triple
// (e, e', e'') in (Z/3)^3 scaling the three roots by powers of theta, possibly
// composed with complex conjugation; the admissible triples form the subgroup
// annihilating every multiplicative relation among the ratios modulo cubes.

#include <array>
#include <cstdint>
#include <vector>

#include "dpcount/arith.hpp"

namespace dpc::picard {

enum class Family : int { L = 0, M = 1, N = 2 };

struct LineLabel {
    Family family;
    int accent;  // 0 plain, 1 prime, 2 double prime
    int index;   // in Z/3

    int id() const { return static_cast<int>(family) * 9 + accent * 3 + index; }
    static LineLabel from_id(int id);
    std::string name() const;
    bool operator==(const LineLabel&) const = default;
};

struct GaloisElement {
    std::array<int, 3> shift{0, 0, 0};  // (e, e', e'') mod 3
    bool conj = false;
};

struct GaloisGroup {
    std::vector<GaloisElement> elements;    // the full group
    std::vector<GaloisElement> generators;  // basis of the shift subgroup + conj
};

// The Galois group attached to the coefficient vector a (all a_i >= 1,
// gcd(a) = 1).  The shift subgroup is spanned over F_3 by the per-prime
// exponent triples of (a2/a1, a3/a1, a4/a1).
GaloisGroup galois_group(const std::array<std::int64_t, 4>& a);

// Permutation of the 27 labels induced by g (shift applied first, then
// conjugation).
std::array<int, 27> line_action(const GaloisElement& g);

// Divisor class in the basis [Lambda],[E1..E6]; intersection form
// diag(1,-1,...,-1).
using DivisorClass = std::array<Int, 7>;

DivisorClass class_of(const LineLabel& l);
LineLabel label_of_exceptional(int k);  // E_{k+1} as a line label, k = 0..5

// 7x7 integer matrix of the induced action on Pic (columns are images of the
// basis elements).
std::array<std::array<Int, 7>, 7> pic_matrix(const GaloisElement& g);

int picard_rank(const std::array<std::int64_t, 4>& a);

// True iff a_{s1} a_{s2} / (a_{s3} a_{s4}) is a non-cube for every splitting
// of the indices into two pairs.
bool segre_criterion_rank1(const std::array<std::int64_t, 4>& a);

}  // namespace dpc::picard
