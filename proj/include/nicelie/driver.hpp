#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nicelie/algebra_io.hpp"
#include "nicelie/classify.hpp"
#include "nicelie/enumerate.hpp"

namespace nicelie {

/// One nice diagram of the requested dimension. `number` counts all nice
/// diagrams of the type in enumeration order, starting at 1, including
/// those that carry no Lie algebra.
struct DiagramRecord {
    TypeVector type;
    int number = 0;
    NiceDiagram diagram;
    /// dim coker M_Δ = |ℐ_Δ| - rank M_Δ.
    int coker = 0;
    std::size_t family_count = 0;
    bool has_residuals = false;
    bool alternative_domain = false;

    /// "631:6".
    std::string name() const;
};

struct NamedFamily {
    /// lcs:number, plus a letter a, b, ... when the diagram has more than
    /// one family (letters follow the order of the sign components).
    std::string name;
    TypeVector type;
    int diagram_number = 0;
    LieAlgebraFamily family;
    StructureEquations equations;
    /// At the simplest admissible parameter values; empty when the family
    /// keeps quadratic constraints.
    std::vector<int> ucs;
};

struct DimensionReport {
    int dimension = 0;
    std::vector<DiagramRecord> diagrams;
    std::vector<NamedFamily> families;

    std::size_t residual_family_count() const;
    int max_coker() const;
};

/// Enumerates and classifies every nice diagram with n nodes (or only the
/// given type). Diagrams are classified concurrently when par.jobs > 1; the
/// report is identical for every job count.
///
/// Throws InternalAlarm when n <= 8 and some family keeps a quadratic
/// constraint.
DimensionReport classify_dimension(int n, Parallelism par = {}, const std::optional<TypeVector>& type_filter = std::nullopt);

/// Nice diagrams only (no Step A-D), numbered as in classify_dimension.
std::vector<DiagramRecord> list_diagrams(int n, Parallelism par = {},
                                         const std::optional<TypeVector>& type_filter = std::nullopt);

}  // namespace nicelie
