#pragma once

// Segre symbols of pencils of quadrics in P^4 and the classification of
// singular quartic del Pezzo surfaces.  All linear algebra is exact over Q.

#include <optional>
#include <string>
#include <vector>

#include "dpcount/arith.hpp"
#include "dpcount/surfaces.hpp"

namespace dpc::picard {

using RatMatrix = std::vector<std::vector<Rat>>;

// Groups of Jordan block sizes sharing one eigenvalue; sizes within a group
// are descending.  Rendering: multi-block groups first, then single blocks
// in descending order, e.g. ((3,1),1) or (2,1,1,1).
struct SegreSymbol {
    std::vector<std::vector<int>> groups;

    std::string str() const;
    bool operator==(const SegreSymbol&) const = default;
};

// Symmetric matrix of a quadratic form in 5 variables (x^T A x = form).
RatMatrix quadric_matrix(const surfaces::HomogeneousForm& q);

// Segre symbol of the pencil spanned by symmetric matrices A, B.  Throws if
// no invertible member A + tB exists for t = 0, +-1, ..., +-25 (the surface
// is a cone or the pencil is degenerate).
SegreSymbol segre_symbol(const RatMatrix& A, const RatMatrix& B);

struct Dp4Class {
    SegreSymbol symbol;
    std::string type;         // roman numeral, or "nonsingular"
    std::string singularity;  // e.g. "D4", "2A1", or "-"
    int lines = -1;
};

// Classify the surface cut out by the quadric pair via the symbol table.
Dp4Class classify_dp4(const surfaces::HomogeneousForm& Q1, const surfaces::HomogeneousForm& Q2);
Dp4Class classify_symbol(const SegreSymbol& s);

// Exact characteristic polynomial, ascending coefficients (monic).
std::vector<Rat> char_poly(const RatMatrix& M);

// Irreducible factorization over Q of a polynomial of degree <= 5:
// (factor, multiplicity) pairs, factors monic.
std::vector<std::pair<std::vector<Rat>, int>> factor_poly_q(std::vector<Rat> f);

}  // namespace dpc::picard
