#include "nicelie/jacobi.hpp"

#include <map>
#include <tuple>

namespace nicelie {

StructureVector::StructureVector(NiceDiagram nd, std::vector<Polynomial> coefficients)
    : diagram_(std::move(nd)), coefficients_(std::move(coefficients)) {
    if (static_cast<int>(coefficients_.size()) != diagram_.bracket_count())
        throw std::invalid_argument("structure vector: coefficient count does not match bracket count");
}

StructureVector StructureVector::symbolic(NiceDiagram nd) {
    std::vector<Polynomial> c;
    for (int b = 0; b < nd.bracket_count(); ++b) c.push_back(Polynomial::variable(bracket_variable(b)));
    return StructureVector(std::move(nd), std::move(c));
}

StructureVector StructureVector::ones(NiceDiagram nd) {
    std::vector<Polynomial> c(nd.bracket_count(), Polynomial{1});
    return StructureVector(std::move(nd), std::move(c));
}

std::string JacobiEquation::key() const {
    return "e^{" + std::to_string(a + 1) + std::to_string(b + 1) + std::to_string(c + 1) + "}⊗e_" +
           std::to_string(h + 1);
}

namespace {

/// Sorts (x, y, z) in place and returns the permutation sign, or 0 on repeats.
int sort3(int& x, int& y, int& z) {
    if (x == y || y == z || x == z) return 0;
    int sign = 1;
    if (x > y) std::swap(x, y), sign = -sign;
    if (y > z) std::swap(y, z), sign = -sign;
    if (x > y) std::swap(x, y), sign = -sign;
    return sign;
}

}  // namespace

JacobiSystem jacobi_system(const StructureVector& c) {
    const NiceDiagram& nd = c.diagram();
    const auto& br = nd.brackets();
    const int m = nd.bracket_count();

    // incoming[v] = brackets with target v, i.e. the terms of de^v.
    std::vector<std::vector<int>> incoming(nd.size());
    for (int b = 0; b < m; ++b) incoming[br[b].k].push_back(b);

    std::map<std::tuple<int, int, int, int>, Polynomial> collected;
    auto accumulate = [&](int x, int y, int z, int h, const Polynomial& coeff) {
        int sign = sort3(x, y, z);
        if (sign == 0) return;
        Polynomial& slot = collected[{x, y, z, h}];
        if (sign > 0)
            slot += coeff;
        else
            slot -= coeff;
    };

    for (int outer = 0; outer < m; ++outer) {
        const auto& J = br[outer];  // de^h contains c_J e^{lk}, l < k
        const int l = J.i, k = J.j, h = J.k;
        // de^l ^ e^k
        for (int inner : incoming[l]) {
            const auto& I = br[inner];
            accumulate(I.i, I.j, k, h, c[outer] * c[inner]);
        }
        // - e^l ^ de^k
        for (int inner : incoming[k]) {
            const auto& I = br[inner];
            accumulate(l, I.i, I.j, h, -(c[outer] * c[inner]));
        }
    }

    JacobiSystem sys;
    for (auto& [key, poly] : collected) {
        if (poly.is_zero()) continue;
        auto [a, b, cc, h] = key;
        sys.equations.push_back({a, b, cc, h, std::move(poly)});
    }
    return sys;
}

}  // namespace nicelie
