#include "nicelie/driver.hpp"

#include <algorithm>
#include <exception>

#include "nicelie/linalg.hpp"

namespace nicelie {

std::string DiagramRecord::name() const { return lcs_string(type) + ":" + std::to_string(number); }

std::size_t DimensionReport::residual_family_count() const {
    return static_cast<std::size_t>(std::count_if(families.begin(), families.end(),
                                                  [](const NamedFamily& f) { return !f.family.residuals.empty(); }));
}

int DimensionReport::max_coker() const {
    int m = 0;
    for (const auto& d : diagrams) m = std::max(m, d.coker);
    return m;
}

std::vector<DiagramRecord> list_diagrams(int n, Parallelism par, const std::optional<TypeVector>& type_filter) {
    std::vector<DiagramRecord> out;
    for (auto& group : enumerate_nice_diagrams(n, par, type_filter)) {
        int number = 0;
        for (auto& nd : group.diagrams) {
            DiagramRecord r;
            r.type = group.type;
            r.number = ++number;
            r.coker = nd.bracket_count() - rank(root_matrix(nd).rational());
            r.diagram = std::move(nd);
            out.push_back(std::move(r));
        }
    }
    return out;
}

namespace {

std::vector<NamedFamily> name_families(const DiagramRecord& rec, std::vector<LieAlgebraFamily> families) {
    std::vector<NamedFamily> out;
    for (std::size_t f = 0; f < families.size(); ++f) {
        NamedFamily nf;
        nf.name = rec.name();
        if (families.size() > 1) nf.name += static_cast<char>('a' + f);
        nf.type = rec.type;
        nf.diagram_number = rec.number;
        nf.equations = to_equations(families[f]);
        if (families[f].residuals.empty()) {
            if (auto x = families[f].sample()) {
                std::map<int, Rational> values;
                for (std::size_t k = 0; k < x->size(); ++k) values[static_cast<int>(k) + 1] = (*x)[k];
                nf.ucs = ucs_dims(nf.equations.substitute(values));
            }
        }
        nf.family = std::move(families[f]);
        out.push_back(std::move(nf));
    }
    return out;
}

}  // namespace

DimensionReport classify_dimension(int n, Parallelism par, const std::optional<TypeVector>& type_filter) {
    DimensionReport report;
    report.dimension = n;
    report.diagrams = list_diagrams(n, par, type_filter);

    const int count = static_cast<int>(report.diagrams.size());
    std::vector<std::vector<NamedFamily>> results(count);
    std::vector<std::exception_ptr> errors(count);
    auto work = [&](int d) {
        try {
            auto& rec = report.diagrams[d];
            auto cls = classify_diagram_detailed(rec.diagram);
            rec.family_count = cls.families.size();
            rec.alternative_domain = cls.alternative_domain;
            rec.has_residuals = std::any_of(cls.families.begin(), cls.families.end(),
                                            [](const LieAlgebraFamily& f) { return !f.residuals.empty(); });
            results[d] = name_families(rec, std::move(cls.families));
        } catch (...) {
            errors[d] = std::current_exception();
        }
    };
    if (par.serial()) {
        for (int d = 0; d < count; ++d) work(d);
    } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(par.jobs)
        for (int d = 0; d < count; ++d) work(d);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (auto& r : results)
        for (auto& f : r) report.families.push_back(std::move(f));

    if (n <= 8)
        for (const auto& f : report.families)
            if (!f.family.residuals.empty())
                throw InternalAlarm("quadratic Jacobi equation survives in dimension " + std::to_string(n) + " (" +
                                    f.name + ": " + f.family.residuals.front().str() + ")");
    return report;
}

}  // namespace nicelie
