#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nicelie/driver.hpp"

namespace nicelie {

inline constexpr const char* json_schema_tag = "nicelie.family/1";

/// "λ > 1", "λ₂ - λ ≥ 0"; single-parameter constraints are solved for the
/// parameter.
std::string inequality_string(const LinearInequality& q);
/// Pieces joined by " or ", constraints within a piece by ", ";
/// "all" when unconstrained. One-parameter domains are written as a sorted
/// union of intervals, e.g. "λ < 0 or 0 < λ < 1".
std::string domain_string(const LieAlgebraFamily& f);
std::string digits_string(const std::vector<int>& v);

/// One line per family, "name | equations | lcs L | ucs U | params p | ...",
/// grouped under "# Type: ..." headers. The first two columns are readable
/// by read_equation_lines.
std::string format_table(const DimensionReport& r);
std::string format_json(const DimensionReport& r);
/// Δ and Δ⊗Δ for every diagram carrying a family.
std::string format_dot(const DimensionReport& r);

std::string format_diagram_table(const std::vector<DiagramRecord>& ds);
std::string format_diagram_json(const std::vector<DiagramRecord>& ds);
std::string format_diagram_dot(const std::vector<DiagramRecord>& ds);

struct NamedLine {
    std::string name;
    std::string text;
    int line = 0;
};

/// Lines "equations" or "name | equations | ...". Blank lines and '#'
/// comments are skipped; unnamed entries are called "line N".
std::vector<NamedLine> read_equation_lines(std::istream& in);

}  // namespace nicelie
