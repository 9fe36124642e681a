#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nicelie/algebra_io.hpp"
#include "nicelie/driver.hpp"
#include "nicelie/report.hpp"

using namespace nicelie;

namespace {

enum Exit { ok = 0, mismatch = 1, usage = 2, internal_alarm = 3 };

struct Options {
    int dim = 0;
    std::string type;
    std::string format = "table";
    int jobs = 1;
    std::string out;
    std::string sample = "2,3,5,7,11";
    std::vector<std::string> files;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::optional<TypeVector> parse_type(const std::string& s) {
    if (s.empty()) return std::nullopt;
    TypeVector t;
    if (s.find(',') != std::string::npos) {
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ',')) {
            try {
                t.push_back(std::stoi(part));
            } catch (const std::exception&) {
                throw UsageError("--type: bad entry '" + part + "'");
            }
        }
    } else {
        for (char c : s) {
            if (c < '1' || c > '9') throw UsageError("--type: expected digits or a comma list");
            t.push_back(c - '0');
        }
    }
    for (int a : t)
        if (a < 1) throw UsageError("--type: entries must be positive");
    if (t.size() > 1 && t.front() < 2) throw UsageError("--type: the first layer needs at least two nodes");
    return t;
}

int resolve_dimension(const Options& o, const std::optional<TypeVector>& type) {
    int dim = o.dim;
    if (type) {
        int sum = 0;
        for (int a : *type) sum += a;
        if (dim == 0) dim = sum;
        if (dim != sum) throw UsageError("--type does not add up to --dim");
    }
    if (dim < 1) throw UsageError("--dim must be at least 1");
    if (dim > max_nodes) throw UsageError("--dim above " + std::to_string(max_nodes) + " is not supported");
    if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
    return dim;
}

std::map<int, Rational> parse_sample(const std::string& s) {
    std::map<int, Rational> values;
    std::stringstream ss(s);
    std::string part;
    int id = 1;
    while (std::getline(ss, part, ',')) {
        try {
            values[id++] = Rational::parse(part);
        } catch (const std::exception&) {
            throw UsageError("--sample: bad value '" + part + "'");
        }
    }
    return values;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    f << text;
}

std::vector<NamedLine> read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    return read_equation_lines(f);
}

int cmd_classify(const Options& o) {
    auto type = parse_type(o.type);
    int n = resolve_dimension(o, type);
    auto report = classify_dimension(n, Parallelism{o.jobs}, type);
    if (o.format == "json")
        emit(o, format_json(report));
    else if (o.format == "dot")
        emit(o, format_dot(report));
    else
        emit(o, format_table(report));
    return ok;
}

int cmd_diagrams(const Options& o) {
    auto type = parse_type(o.type);
    int n = resolve_dimension(o, type);
    auto ds = list_diagrams(n, Parallelism{o.jobs}, type);
    if (o.format == "json")
        emit(o, format_diagram_json(ds));
    else if (o.format == "dot")
        emit(o, format_diagram_dot(ds));
    else
        emit(o, format_diagram_table(ds));
    return ok;
}

struct Entry {
    NamedLine source;
    std::optional<StructureEquations> equations;
    Verification verification;
    std::string error;
};

Entry load_entry(const NamedLine& nl) {
    Entry e;
    e.source = nl;
    try {
        e.equations = parse_equations(nl.text);
        e.verification = verify_nice(*e.equations);
    } catch (const ParseError& err) {
        e.error = std::string("syntax error: ") + err.what();
    }
    return e;
}

int cmd_check(const Options& o) {
    if (o.files.size() != 1) throw UsageError("check takes one input file");
    const auto sample = parse_sample(o.sample);
    bool all_nice = true;
    std::ostringstream text;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& nl : read_file(o.files[0])) {
        Entry e = load_entry(nl);
        std::string message = e.error.empty() ? e.verification.message : e.error;
        std::string lcs, ucs;
        if (e.error.empty() && e.verification.algebra) {
            const auto& v = e.verification;
            lcs = lcs_string(lcs_type(v.algebra->diagram().diagram()));
            if (e.equations->has_parameters() && v.status != Verification::Status::NotNice) {
                try {
                    auto inst = e.equations->substitute(sample);
                    auto at = verify_nice(inst);
                    message += "; at the sample values: " + at.message;
                    if (at.ok()) ucs = digits_string(ucs_dims(inst));
                } catch (const std::domain_error& err) {
                    message += std::string("; sample rejected: ") + err.what();
                }
            } else if (v.ok()) {
                ucs = digits_string(ucs_dims(*e.equations));
            }
            if (v.ok() || v.status == Verification::Status::Constrained) message += ", LCS " + lcs;
            if (!ucs.empty()) message += ", UCS " + ucs;
        }
        bool nice = e.error.empty() && (e.verification.ok() || e.verification.status == Verification::Status::Constrained);
        all_nice = all_nice && nice;
        if (o.format == "json") {
            nlohmann::json j = {{"name", nl.name}, {"line", nl.line}, {"nice", nice}, {"message", message}};
            if (!lcs.empty()) j["lcs"] = lcs;
            if (!ucs.empty()) j["ucs"] = ucs;
            arr.push_back(j);
        } else if (o.format == "dot") {
            if (e.verification.algebra) {
                text << diagram_dot(e.verification.algebra->diagram(), nl.name)
                     << double_arrow_dot(e.verification.algebra->diagram(), nl.name);
            }
        } else {
            text << nl.name << ": " << message << '\n';
        }
    }
    emit(o, o.format == "json" ? arr.dump(2) + "\n" : text.str());
    return all_nice ? ok : mismatch;
}

/// Maximum bipartite matching (augmenting paths).
std::vector<int> match(const std::vector<std::vector<char>>& adj, std::size_t right) {
    std::vector<int> owner(right, -1);
    for (std::size_t a = 0; a < adj.size(); ++a) {
        std::vector<char> seen(right, 0);
        std::function<bool(int)> augment = [&](int u) {
            for (std::size_t b = 0; b < right; ++b) {
                if (!adj[u][b] || seen[b]) continue;
                seen[b] = 1;
                if (owner[b] < 0 || augment(owner[b])) {
                    owner[b] = u;
                    return true;
                }
            }
            return false;
        };
        augment(static_cast<int>(a));
    }
    return owner;
}

int cmd_compare(const Options& o) {
    if (o.files.size() != 2) throw UsageError("compare takes two input files");
    const auto sample = parse_sample(o.sample);
    auto load = [&](const std::string& path) {
        std::vector<Entry> entries;
        for (const auto& nl : read_file(path)) {
            Entry e = load_entry(nl);
            if (e.error.empty() && e.equations->has_parameters()) {
                try {
                    e.equations = e.equations->substitute(sample);
                    e.verification = verify_nice(*e.equations);
                } catch (const std::domain_error& err) {
                    e.error = err.what();
                }
            }
            if (e.error.empty() && !e.verification.ok()) e.error = e.verification.message;
            entries.push_back(std::move(e));
        }
        return entries;
    };
    auto a = load(o.files[0]);
    auto b = load(o.files[1]);
    std::vector<std::vector<char>> adj(a.size(), std::vector<char>(b.size(), 0));
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < b.size(); ++y)
            if (a[x].error.empty() && b[y].error.empty())
                adj[x][y] = equivalent(*a[x].verification.algebra, *b[y].verification.algebra);
    auto owner = match(adj, b.size());
    std::vector<int> partner(a.size(), -1);
    for (std::size_t y = 0; y < b.size(); ++y)
        if (owner[y] >= 0) partner[owner[y]] = static_cast<int>(y);

    std::ostringstream os;
    std::size_t matched = 0;
    for (std::size_t x = 0; x < a.size(); ++x)
        if (partner[x] >= 0) {
            ++matched;
            os << "match " << a[x].source.name << " = " << b[partner[x]].source.name << '\n';
        }
    for (std::size_t x = 0; x < a.size(); ++x)
        if (partner[x] < 0)
            os << "missing in " << o.files[1] << ": " << a[x].source.name
               << (a[x].error.empty() ? "" : " (" + a[x].error + ")") << '\n';
    for (std::size_t y = 0; y < b.size(); ++y)
        if (owner[y] < 0)
            os << "missing in " << o.files[0] << ": " << b[y].source.name
               << (b[y].error.empty() ? "" : " (" + b[y].error + ")") << '\n';
    bool perfect = matched == a.size() && matched == b.size();
    os << (perfect ? "perfect matching" : "no perfect matching") << ": " << matched << " matched, "
       << a.size() - matched << " + " << b.size() - matched << " unmatched\n";
    emit(o, os.str());
    return perfect ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification of nice nilpotent Lie algebras"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json", "dot"}));
        sub->add_option("--out", o.out, "Write output to this file");
        sub->add_option("--jobs", o.jobs, "Worker threads");
    };
    auto* classify = app.add_subcommand("classify", "List nice Lie algebras of one dimension");
    classify->add_option("--dim", o.dim, "Dimension");
    classify->add_option("--type", o.type, "Restrict to one type, e.g. 3,2,1 or 321");
    add_common(classify);
    auto* diagrams = app.add_subcommand("diagrams", "List nice diagrams of one dimension");
    diagrams->add_option("--dim", o.dim, "Dimension");
    diagrams->add_option("--type", o.type, "Restrict to one type");
    add_common(diagrams);
    auto* check = app.add_subcommand("check", "Check structure equations, one per line");
    check->add_option("file", o.files, "Input file")->required();
    check->add_option("--sample", o.sample, "Parameter values λ,λ₂,... for parametrized lines");
    add_common(check);
    auto* compare = app.add_subcommand("compare", "Match two lists of algebras up to equivalence");
    compare->add_option("files", o.files, "Two input files")->required()->expected(2);
    compare->add_option("--sample", o.sample, "Parameter values λ,λ₂,... for parametrized lines");
    add_common(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*classify) return cmd_classify(o);
        if (*diagrams) return cmd_diagrams(o);
        if (*check) return cmd_check(o);
        if (*compare) return cmd_compare(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const InternalAlarm& e) {
        std::cerr << "internal alarm: " << e.what() << '\n';
        return internal_alarm;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return internal_alarm;
    }
    return usage;
}
