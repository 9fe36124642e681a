#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nicelie/diagram.hpp"
#include "nicelie/fourier_motzkin.hpp"
#include "nicelie/jacobi.hpp"
#include "nicelie/linalg.hpp"
#include "nicelie/polynomial.hpp"

namespace nicelie {

/// Raised when a computation contradicts something that holds by
/// construction (e.g. a quadratic Jacobi equation surviving for n <= 8).
class InternalAlarm : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Node permutation; perm[v] is the image of v.
using Permutation = std::vector<int>;

/// Bracket positions (indices into NiceDiagram::brackets()).
struct FundamentalDomain {
    /// Coordinates normalized to 1.
    std::vector<int> j2;
    /// Coordinates normalized to +-1; contains j2.
    std::vector<int> j;
    /// Complement of j2, in bracket order: the coordinates carrying a sign.
    std::vector<int> free;
    /// Complement of j: coordinates that remain unknowns.
    std::vector<int> unknowns;

    std::size_t component_count() const { return std::size_t{1} << free.size(); }
};

/// Greedy choice: j2 scans rows in bracket order, j extends j2 the same way.
FundamentalDomain fundamental_domain(const NiceDiagram& nd);
/// Domain with a prescribed j2, which must be a GF(2) basis of the rows.
FundamentalDomain fundamental_domain(const NiceDiagram& nd, std::vector<int> j2);

/// epsilon on FundamentalDomain::free; bit p set means the p-th free
/// coordinate is -1.
struct SignComponent {
    std::uint64_t negative = 0;

    int sign(int p) const { return ((negative >> p) & 1u) ? -1 : 1; }
    friend auto operator<=>(const SignComponent&, const SignComponent&) = default;
};

/// Lexicographic order on (epsilon_1, epsilon_2, ...) with +1 before -1.
bool lex_less(const SignComponent& a, const SignComponent& b, int free_count);

/// Permutations preserving arrows and labels, identity first, then in
/// search order.
std::vector<Permutation> automorphisms(const NiceDiagram& nd);

/// sigma . c for sigma an isomorphism from c's diagram onto `target`
/// (equal to c's diagram for automorphisms). E_I maps to -E_{sigma I} when
/// sigma reverses the order of the pair.
std::vector<Rational> permute_coefficients(const NiceDiagram& source, const NiceDiagram& target,
                                           const Permutation& sigma, const std::vector<Rational>& c);

/// w_epsilon: 1 on j2, epsilon elsewhere.
std::vector<Rational> component_representative(const NiceDiagram& nd, const FundamentalDomain& fd,
                                               const SignComponent& eps);

SignComponent act_on_component(const NiceDiagram& nd, const FundamentalDomain& fd, const RootMatrix& m,
                               const Permutation& sigma, const SignComponent& eps);

/// Orbit representatives (lexicographically least member of each orbit),
/// in increasing lexicographic order, with orbit sizes.
struct ComponentOrbit {
    SignComponent representative;
    std::size_t size = 0;
};
std::vector<ComponentOrbit> component_orbits(const NiceDiagram& nd, const FundamentalDomain& fd,
                                             const std::vector<Permutation>& group);

/// One sign component merged into a family. Its points are the family's
/// assignment at parameters satisfying `domain`.
struct FamilyPiece {
    SignComponent component;
    std::vector<LinearInequality> domain;
};

/// A family of nice Lie algebras on one diagram. Parameters are polynomial
/// variables 1..parameter_count, numbered by first appearance in bracket
/// order.
struct LieAlgebraFamily {
    NiceDiagram diagram;
    /// c_I for every bracket, affine in the parameters.
    std::vector<Polynomial> assignment;
    int parameter_count = 0;
    /// Nonzero Jacobi equations left after linear elimination.
    std::vector<Polynomial> residuals;
    /// The parameter domain is the union of the pieces' domains.
    std::vector<FamilyPiece> pieces;

    SignComponent component() const { return pieces.front().component; }
    bool in_domain(const std::vector<Rational>& params) const;
    /// Structure constants at the given parameters.
    std::vector<Rational> instantiate(const std::vector<Rational>& params) const;
    /// A point of the domain, simplest values first; nullopt if every piece
    /// is empty (never the case for emitted families).
    std::optional<std::vector<Rational>> sample(std::mt19937_64* rng = nullptr) const;
};

struct ComponentReduction {
    bool feasible = false;
    std::vector<Polynomial> assignment;
    /// Sorted ids of the variables left free.
    std::vector<int> parameters;
    std::vector<Polynomial> residuals;
    std::vector<LinearInequality> domain;
};

/// Step C on one component: fixes 1 / epsilon on j, solves the Jacobi
/// equations that are linear to a fixpoint, then decides the strict sign
/// constraints by Fourier-Motzkin.
ComponentReduction reduce_component(const NiceDiagram& nd, const FundamentalDomain& fd, const JacobiSystem& symbolic,
                                    const SignComponent& eps);

struct DiagramClassification {
    FundamentalDomain domain;
    /// Set when the greedy domain left quadratic equations and another
    /// choice of j2 removed them.
    bool alternative_domain = false;
    std::vector<Permutation> automorphisms;
    std::vector<ComponentOrbit> orbits;
    std::vector<LieAlgebraFamily> families;
};

/// Steps A-D for one nice diagram. Families come out in the order of their
/// orbit representatives; families differing only by parameter signs are
/// merged into the first one.
///
/// If the greedy domain leaves quadratic equations, other GF(2) bases j2
/// are tried in lexicographic order (at most `max_alternatives`), and the
/// first one under which every family is linear is used instead.
DiagramClassification classify_diagram_detailed(const NiceDiagram& nd, int max_alternatives = 4096);
DiagramClassification classify_with_domain(const NiceDiagram& nd, const FundamentalDomain& fd);
std::vector<LieAlgebraFamily> classify_diagram(const NiceDiagram& nd);

/// Tests whether two parameter-free structure vectors are related by a
/// labeled-diagram isomorphism composed with a diagonal rescaling.
bool equivalent(const StructureVector& a, const StructureVector& b);

/// Whether the parameter-free algebra `c` is equivalent to some member of
/// `family`. Throws std::domain_error when normalizing `c` leaves irrational
/// coordinates.
bool family_contains(const LieAlgebraFamily& family, const StructureVector& c);

struct DiagonalDerivations {
    std::vector<std::vector<Rational>> kernel;
    bool has_nonzero_trace = false;
};
DiagonalDerivations diagonal_derivations(const NiceDiagram& nd);

}  // namespace nicelie
