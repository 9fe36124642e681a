#include "support.hpp"

#include <set>
#include <sstream>

using namespace testing;

namespace {

Polynomial lambda(int id = 1) { return Polynomial::variable(id); }

std::string prefix(const std::string& name) { return name.substr(0, name.find(':')); }

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("parsing") {
        auto se = parse_equations("0,0,e^{12},- e^{13}+(1-λ) e^{23}");
        REQUIRE(se.size() == 4);
        CHECK(se.d[0].empty());
        REQUIRE(se.d[3].size() == 2);
        CHECK(se.d[3][0] == EquationTerm{Polynomial{-1}, 0, 2});
        CHECK(se.d[3][1] == EquationTerm{Polynomial{1} - lambda(), 1, 2});
        CHECK(se.has_parameters());
        CHECK(se.parameters() == std::vector<int>{1});

        CHECK(parse_equations("0,0,e^{21}").d[2][0].coeff == Polynomial{-1});
        CHECK(parse_equations("0,0,3/2e^{12}").d[2][0].coeff == Polynomial{Rational{3, 2}});
        CHECK(parse_equations("0,0,-2 e^{12}").d[2][0].coeff == Polynomial{-2});
        CHECK(parse_equations("0,0,\\lambda_2 e^{12}").d[2][0].coeff == lambda(2));
        CHECK(parse_equations("0,0,λ₂*e^{12}").d[2][0].coeff == lambda(2));
        CHECK(parse_equations("0,0,λ^2 e^{12}").d[2][0].coeff == lambda() * lambda());
        CHECK(parse_equations("0,0,2λ e^{12}").d[2][0].coeff == lambda() * Rational{2});
        CHECK(parse_equations(" 0 , 0 , e^{12} ") == parse_equations("0,0,e^{12}"));

        std::string wide = "0,0,0,0,0,0,0,0,0,0,0,e^{10,11}";
        auto w = parse_equations(wide);
        REQUIRE(w.size() == 12);
        CHECK(w.d[11][0].i == 9);
        CHECK(w.d[11][0].j == 10);
        CHECK(print_equations(w) == wide);
    }

    TEST_CASE("parse errors") {
        CHECK_THROWS_AS(parse_equations("0,0,e^{12}+e^{21}"), ParseError);
        CHECK_THROWS_AS(parse_equations("0,0,e^{14}"), ParseError);
        CHECK_THROWS_AS(parse_equations("0,0,e^{12,}"), ParseError);
        CHECK_THROWS_AS(parse_equations("0,0,e^{11}"), ParseError);
        CHECK_THROWS_AS(parse_equations("0,0,e^{12"), ParseError);
        CHECK_THROWS_AS(parse_equations("0,0,x e^{12}"), ParseError);
        CHECK_THROWS_AS(parse_equations(""), ParseError);
        try {
            parse_equations("0,0,e^{12}+?");
            FAIL("no error");
        } catch (const ParseError& e) {
            CHECK(e.position() == 11);
        }
    }

    TEST_CASE("printing") {
        CHECK(parameter_name(1) == "λ");
        CHECK(parameter_name(2) == "λ₂");
        CHECK(parameter_name(12) == "λ₁₂");
        auto se = parse_equations("0,0,0,-e^{12},(1-λ)e^{13},-2e^{14}+λ e^{23}");
        CHECK(print_equations(se) == "0,0,0,- e^{12},(1-λ) e^{13},-2 e^{14}+λ e^{23}");
    }

    TEST_CASE("round trip on the tables") {
        for (int n = 3; n <= 6; ++n)
            for (const auto& row : table(n)) {
                auto se = parse_equations(row.equations);
                CHECK(parse_equations(print_equations(se)) == se);
                auto v = verify_nice(se);
                CHECK_MESSAGE(v.ok(), row.name << ": " << v.message);
                CHECK(lcs_name(se) == prefix(row.name));
                CHECK(digits_string(lcs_dims(se)) == prefix(row.name));
                CHECK_MESSAGE(digits_string(ucs_dims(se)) == row.ucs, row.name);
            }
    }

    TEST_CASE("round trip on the classified families up to dimension 7") {
        std::mt19937_64 rng(37);
        for (int n = 1; n <= 7; ++n)
            for (const auto& nf : report(n).families) {
                auto text = print_equations(nf.equations);
                CHECK(parse_equations(text) == nf.equations);
                CHECK(to_equations(nf.family) == nf.equations);
                CHECK(prefix(nf.name) == lcs_name(nf.equations));
                auto v = verify_nice(nf.equations);
                if (nf.family.parameter_count == 0) {
                    CHECK_MESSAGE(v.ok(), nf.name << ": " << v.message);
                    CHECK(digits_string(lcs_dims(nf.equations)) == prefix(nf.name));
                } else {
                    CHECK(v.status != Verification::Status::NotNice);
                    auto x = nf.family.sample(&rng);
                    REQUIRE(x.has_value());
                    std::map<int, Rational> values;
                    for (int k = 0; k < nf.family.parameter_count; ++k) values[k + 1] = (*x)[k];
                    auto inst = nf.equations.substitute(values);
                    CHECK_MESSAGE(verify_nice(inst).ok(), nf.name);
                    CHECK(to_equations(instance(nf.family, *x)) == inst);
                }
            }
    }

    TEST_CASE("verification messages") {
        CHECK(verify_nice(parse_equations("0,0,e^{12}")).message == "nice, Jacobi OK");
        auto two = verify_nice(parse_equations("0,0,e^{12},e^{12}"));
        CHECK(two.status == Verification::Status::NotNice);
        CHECK(two.message.find("pair {1,2} maps to two targets (3 and 4)") != std::string::npos);
        CHECK_FALSE(verify_nice(parse_equations("0,e^{13},e^{12}")).ok());

        auto fails = verify_nice(parse_equations("0,0,e^{12},e^{13},e^{14},e^{25}+e^{34},e^{16}+e^{35}"));
        CHECK(fails.status == Verification::Status::JacobiFails);
        CHECK(fails.message.rfind("Jacobi fails: coefficient of e^{", 0) == 0);

        auto constrained = verify_nice(parse_equations("0,0,0,e^{12},e^{13},λ e^{34}+e^{25}"));
        CHECK(constrained.status == Verification::Status::Constrained);
        REQUIRE(constrained.jacobi.equations.size() == 1);
        auto fixed = parse_equations("0,0,0,e^{12},e^{13},λ e^{34}+e^{25}").substitute({{1, Rational{1}}});
        CHECK(verify_nice(fixed).ok());
        CHECK_THROWS_AS(parse_equations("0,0,(1-λ) e^{12}").substitute({{1, Rational{1}}}), std::domain_error);
    }

    TEST_CASE("UCS is invariant under equivalence") {
        std::mt19937_64 rng(41);
        for (int n = 3; n <= 6; ++n)
            for (const auto& row : table(n)) {
                auto se = parse_equations(row.equations);
                for (int t = 0; t < 5; ++t) {
                    auto moved = transform(se, random_permutation(n, rng), random_scale(n, rng));
                    CHECK(digits_string(ucs_dims(moved)) == row.ucs);
                    CHECK(lcs_dims(moved) == lcs_dims(se));
                }
            }
    }

    TEST_CASE("DOT round trip") {
        for (const auto& nd : all_nice_diagrams(6)) {
            auto dot = diagram_dot(nd, "x");
            CHECK(labeled_diagram_from_dot(dot) == nd.labeled());
            auto da = double_arrow_dot(nd, "x");
            auto back = double_arrows_from_dot(da);
            std::sort(back.begin(), back.end());
            CHECK(back == double_arrows(nd));
        }
        auto nd = diagram_of("0,0,0,e^{12},e^{13},e^{34}+e^{25}");
        auto dot = diagram_dot(nd, "631:6");
        CHECK(dot.rfind("digraph \"631:6\" {", 0) == 0);
        CHECK(dot.find("1 -> 4 [label=\"2\"];") != std::string::npos);
    }

    TEST_CASE("equation files") {
        std::istringstream in("# comment\n\n631:6 | 0,0,0,e^{12},e^{13},e^{34}+e^{25} | 136\n0,0,e^{12}  # trailing\n");
        auto lines = read_equation_lines(in);
        REQUIRE(lines.size() == 2);
        CHECK(lines[0].name == "631:6");
        CHECK(lines[0].text == "0,0,0,e^{12},e^{13},e^{34}+e^{25}");
        CHECK(lines[0].line == 3);
        CHECK(lines[1].name == "line 4");
        CHECK(lines[1].text == "0,0,e^{12}");
    }
}
