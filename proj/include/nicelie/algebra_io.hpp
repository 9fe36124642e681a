#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nicelie/classify.hpp"
#include "nicelie/diagram.hpp"
#include "nicelie/jacobi.hpp"
#include "nicelie/polynomial.hpp"

namespace nicelie {

/// coeff * e^{ij} with i < j, nodes 0-based.
struct EquationTerm {
    Polynomial coeff;
    int i = 0;
    int j = 0;
    friend bool operator==(const EquationTerm&, const EquationTerm&) = default;
};

/// de^1, ..., de^n; each de^k is kept sorted by (i, j).
struct StructureEquations {
    std::vector<std::vector<EquationTerm>> d;

    int size() const { return static_cast<int>(d.size()); }
    bool has_parameters() const;
    /// Parameter ids in use (1 is λ, 2 is λ₂, ...).
    std::vector<int> parameters() const;
    /// Substitutes values for parameters; throws if a coefficient vanishes.
    StructureEquations substitute(const std::map<int, Rational>& values) const;
    friend bool operator==(const StructureEquations&, const StructureEquations&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)), position_{position} {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// "0,0,e^{12},- e^{13}+(1-λ) e^{24}". Indices are juxtaposed digits or
/// comma separated ("e^{10,11}"); e^{ji} is read as -e^{ij}. Parameters are
/// λ, λ₂, λ₃, ... (also "\lambda", "\lambda_2", "λ_2").
StructureEquations parse_equations(std::string_view text);
std::string print_equations(const StructureEquations& se);
std::string parameter_name(int id);

StructureEquations to_equations(const StructureVector& c);
StructureEquations to_equations(const LieAlgebraFamily& f);

struct Verification {
    enum class Status { Nice, NotNice, JacobiFails, Constrained };
    Status status = Status::NotNice;
    std::string message;
    std::optional<StructureVector> algebra;
    /// Nonzero Jacobi equations; constraints on the parameters when the
    /// input has any.
    JacobiSystem jacobi;

    bool ok() const { return status == Status::Nice; }
};

/// Builds the labeled diagram of `se`, checks that it is nice (one target per
/// pair, one label per arrow, acyclic, N1-N4) and evaluates the Jacobi
/// identity.
Verification verify_nice(const StructureEquations& se);

/// Dimensions of the upper central series z_1 < z_2 < ... < g. Requires a
/// parameter-free input.
std::vector<int> ucs_dims(const StructureEquations& se);
/// Lower central series dimensions computed from the structure constants.
std::vector<int> lcs_dims(const StructureEquations& se);
/// LCS string from the diagram filtration, e.g. "631".
std::string lcs_name(const StructureEquations& se);

/// Δ as a DOT digraph (nodes 1-based, label attribute on every arrow) and
/// Δ⊗Δ with one arrow k -> h per double arrow, label "i,j", via the
/// intermediate node.
std::string diagram_dot(const NiceDiagram& nd, const std::string& name);
std::string double_arrow_dot(const NiceDiagram& nd, const std::string& name);
/// Reads the first digraph of a diagram_dot() output.
LabeledDiagram labeled_diagram_from_dot(std::string_view dot);
std::vector<DoubleArrow> double_arrows_from_dot(std::string_view dot);

}  // namespace nicelie
