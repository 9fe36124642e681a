#pragma once

#include <string>
#include <vector>

#include "nicelie/diagram.hpp"
#include "nicelie/polynomial.hpp"

namespace nicelie {

/// c = sum c_I E_I in V_Delta; coefficients()[b] belongs to brackets()[b].
class StructureVector {
public:
    StructureVector() = default;
    StructureVector(NiceDiagram nd, std::vector<Polynomial> coefficients);

    /// Every c_I is the free variable with id b+1 (see bracket_variable).
    static StructureVector symbolic(NiceDiagram nd);
    /// Every c_I equal to 1.
    static StructureVector ones(NiceDiagram nd);

    const NiceDiagram& diagram() const { return diagram_; }
    const std::vector<Polynomial>& coefficients() const { return coefficients_; }
    const Polynomial& operator[](int b) const { return coefficients_[b]; }
    Polynomial& operator[](int b) { return coefficients_[b]; }

private:
    NiceDiagram diagram_;
    std::vector<Polynomial> coefficients_;
};

/// Variable id used for c_I in symbolic vectors.
inline int bracket_variable(int b) { return b + 1; }

/// Coefficient of e^{abc} (x) e_h in d(de^h), with a < b < c.
struct JacobiEquation {
    int a = 0;
    int b = 0;
    int c = 0;
    int h = 0;
    Polynomial lhs;
    /// "e^{123}⊗e_6"-style key, 1-based.
    std::string key() const;
};

struct JacobiSystem {
    /// Non-zero coefficients only, ordered by (a, b, c, h).
    std::vector<JacobiEquation> equations;
    bool empty() const { return equations.empty(); }
};

/// Expands d^2 e^h symbolically using d(e^{lk}) = de^l ^ e^k - e^l ^ de^k
/// and collects the coefficient of every e^{abc}.
JacobiSystem jacobi_system(const StructureVector& c);

}  // namespace nicelie
