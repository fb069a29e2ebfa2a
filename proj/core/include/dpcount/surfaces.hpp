#pragma once

// Integer form systems for the del Pezzo catalogue and exact point counting:
// N_{P^{n-1}}(B), N_V(B), N_U(B) and the affine count N(f;B).
//
// Projective points are represented by primitive integer vectors whose first
// nonzero coordinate is positive; counting mod +-1 is done by this
// normalization, never by dividing a raw count by 2.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpcount/arith.hpp"

namespace dpc::surfaces {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HomogeneousForm {
    int nvars = 0;
    // (exponent vector, coefficient); exponent vectors all sum to the same
    // degree, no duplicates, at least one coefficient nonzero.
    std::vector<std::pair<std::vector<int>, Int>> monomials;

    int degree() const;
    void validate() const;
    Int evaluate(std::span<const std::int64_t> x) const;
    Int evaluate_big(std::span<const Int> x) const;

    // Parse "x1^3+x2^3-2*x3*x4^2" style text (variables x1..xn).
    static HomogeneousForm parse(int nvars, const std::string& text);
};

// Rational locus of one excluded line: the set of rational points satisfying
// a system of integer linear forms.  For lines defined over an extension this
// locus is a proper subspace of the geometric line (possibly empty).
struct LineLocus {
    int nvars = 0;
    std::vector<std::vector<Int>> constraints;  // rows of integer coefficients

    bool contains(std::span<const std::int64_t> x) const;
    // Basis of the saturated integer solution lattice.  dim 0 = empty locus,
    // dim 1 = single projective point, dim 2 = projective line.
    std::vector<std::vector<Int>> lattice_basis() const;
};

enum class EnumStrategy {
    Hypersurface3,  // hypersurface in P^3, solve last coordinate
    Dp6A1,          // the degree-6 A1 nine-quadric models
    Dp4Pencil,      // intersection of two quadrics in P^4
    BruteForce,     // full box scan (tiny B only)
};

struct SurfaceSpec {
    std::string id;
    int nvars = 0;  // ambient dimension is nvars - 1
    std::vector<HomogeneousForm> forms;
    std::vector<LineLocus> line_loci;  // rational loci of the excluded lines
    bool lines_known = false;
    int rho = -1;  // declared Picard rank, -1 = unknown
    EnumStrategy strategy = EnumStrategy::BruteForce;

    bool on_surface(std::span<const std::int64_t> x) const;
    bool on_excluded_line(std::span<const std::int64_t> x) const;
    void validate() const;
};

// Registry of the catalogue surfaces (see docs/catalogue.md).  Diagonal
// cubics take the coefficient vector a as a parameter.
SurfaceSpec builtin(const std::string& id,
                    std::optional<std::array<std::int64_t, 4>> diag_a = std::nullopt);
std::vector<std::string> builtin_ids();

enum class Subset { All, OpenU };

struct CountOptions {
    std::uint64_t budget = 10'000'000'000ull;  // elementary loop steps
    int workers = 1;
};

// N_{P^{n-1}}(B): projective points of height <= B in P^{n-1}.
std::uint64_t count_ambient(int n, std::int64_t B, const CountOptions& opt = {});

// N_V(B) / N_U(B) by direct enumeration.
std::uint64_t count_surface(const SurfaceSpec& S, std::int64_t B, Subset subset,
                            const CountOptions& opt = {});

// All normalized solutions (only valid for small B; used by bijection tests).
std::vector<std::vector<std::int64_t>> enumerate_surface(const SurfaceSpec& S, std::int64_t B,
                                                         Subset subset,
                                                         const CountOptions& opt = {});

// Rational points of height <= B on the union of the excluded-line loci
// (exact; lattice sweeps with shared points restored to multiplicity one).
std::uint64_t count_line_points(const SurfaceSpec& S, std::int64_t B);

// N(f;B): all nonzero integer solutions of f = 0 with |x| <= B.
std::uint64_t count_affine(const HomogeneousForm& f, std::int64_t B,
                           const CountOptions& opt = {});
// Meet-in-the-middle count for forms that split as g(x1,x2) + h(x3,x4).
std::uint64_t count_affine_mitm(const HomogeneousForm& f, std::int64_t B,
                                const CountOptions& opt = {});

// Normalize sign / primitivity helpers shared with the torsor module.
bool normalize_point(std::vector<std::int64_t>& x);

}  // namespace dpc::surfaces
