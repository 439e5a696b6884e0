#include <cmath>
#include <random>
#include <set>

#include "aqgi/compile.hpp"
#include "aqgi/fixtures.hpp"
#include "doctest.h"

using namespace aqgi;

namespace {

// brute-force minimum over ancillas, for cross-checking the tree DP
double brute_min_over_ancillas(const QuadraticProgram& qp, uint64_t assignment) {
    const int na = static_cast<int>(qp.ancillas.size());
    REQUIRE(na <= 16);
    double best = 0.0;
    for (uint64_t anc = 0; anc < (uint64_t{1} << na); ++anc) {
        std::vector<uint8_t> vals(na);
        for (int i = 0; i < na; ++i) vals[i] = (anc >> i) & 1;
        const double v = evaluate_qp(qp, assignment, vals);
        if (anc == 0 || v < best) best = v;
    }
    return best;
}

}  // namespace

TEST_SUITE("compile") {

TEST_CASE("expanded cost equals cost_gi pointwise, exhaustively at N=4") {
    GIInstance inst = fixtures::pair("fig2");
    CostPolynomial poly = expand_cost(inst);
    MultilinearPolynomial total = poly.total();
    for (uint64_t b = 0; b < 256; ++b) {
        const double want = static_cast<double>(cost_gi(decode_basis_index(b, 4), inst));
        CHECK(total.evaluate(b) == want);
        CHECK(poly.c1.evaluate(b) + poly.c2.evaluate(b) + poly.c3.evaluate(b) == want);
    }
}

TEST_CASE("C1 vanishes when N is a power of two") {
    CostPolynomial poly = expand_cost(fixtures::pair("fig2"));
    CHECK(poly.c1.term_count() == 0);
}

TEST_CASE("C1 and C2 respect the 2U locality bound") {
    CostPolynomial n4 = expand_cost(fixtures::pair("fig2"));
    CHECK(n4.c2.max_degree() <= 2 * n4.field_bits);

    CostPolynomial n5 = expand_cost(fixtures::pair("fig4"));
    CHECK(n5.c1.max_degree() <= 2 * n5.field_bits);
    CHECK(n5.c2.max_degree() <= 2 * n5.field_bits);
    CHECK(n5.c1.max_degree() <= n5.field_bits);  // per-field deltas are even tighter
}

TEST_CASE("N=5 expansion agrees with cost_gi on random assignments") {
    GIInstance inst = fixtures::pair("fig4");
    CostPolynomial poly = expand_cost(inst);
    MultilinearPolynomial total = poly.total();
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10000; ++trial) {
        const uint64_t b = rng() & ((uint64_t{1} << 15) - 1);
        CHECK(total.evaluate(b) ==
              static_cast<double>(cost_gi(decode_basis_index(b, 5), inst)));
    }
}

TEST_CASE("expansion capacity guard") {
    Graph c6 = make_cycle(6);
    CHECK_THROWS_AS(expand_cost(GIInstance{c6, c6}), capacity_error);
    ExpandOptions wide;
    wide.max_order = 6;
    CHECK_NOTHROW(expand_cost(GIInstance{c6, c6}, wide));
}

TEST_CASE("structured term counts follow the closed forms") {
    StructuredTermCounts n4 = structured_term_counts(4);
    CHECK(n4.t1 == 0);
    CHECK(n4.t2 == 6);
    CHECK(n4.t3 == 16);

    StructuredTermCounts n5 = structured_term_counts(5);
    CHECK(n5.t1 == 15);
    CHECK(n5.t2 == 10);
    CHECK(n5.t3 == 25);

    // T(L_N) / L_N^2 stays bounded
    for (int n = 4; n <= 16; ++n) {
        const double l = static_cast<double>(n) * bits_per_vertex(n);
        const double ratio = static_cast<double>(structured_term_counts(n).total()) / (l * l);
        CHECK(ratio <= 0.5);
    }
}

TEST_CASE("term stats report the measured shape") {
    CostPolynomial poly = expand_cost(fixtures::pair("fig2"));
    TermStats st = term_stats(poly);
    CHECK(st.structured.t2 == 6);
    CHECK(st.structured.t3 == 16);
    CHECK(st.monomials == poly.total().term_count());
    CHECK(st.max_degree == poly.total().max_degree());
    CHECK(st.c2_max_degree <= 4);
    CHECK(st.degree_histogram.size() == static_cast<size_t>(st.max_degree) + 1);
}

TEST_CASE("penalty function values") {
    // zero exactly on b = a1 a2, at least 1 otherwise
    for (int a1 = 0; a1 <= 1; ++a1)
        for (int a2 = 0; a2 <= 1; ++a2) {
            CHECK(penalty_value(a1, a2, a1 * a2) == 0.0);
            CHECK(penalty_value(a1, a2, 1 - a1 * a2) >= 1.0);
        }
    CHECK(penalty_value(1, 0, 1) == 1.0);
}

TEST_CASE("degree-3 fragment reproduces the product under minimization") {
    // vars {0,1,2}, coeff 1, mu = 2
    QuadraticProgram qp = quadratize_term(0b111, 1.0, 2.0, 3);
    REQUIRE(qp.ancillas.size() == 1);
    CHECK(qp.ancillas[0].x == 1);  // pairs the last two variables first
    CHECK(qp.ancillas[0].y == 2);
    for (uint64_t b = 0; b < 8; ++b) {
        const double product = (b & 1) && (b & 2) && (b & 4) ? 1.0 : 0.0;
        CHECK(brute_min_over_ancillas(qp, b) == product);
        CHECK(min_over_ancillas(qp, b) == product);
    }
}

TEST_CASE("fragment QUBO carries the penalty pattern") {
    QuadraticProgram qp = quadratize_term(0b111, 1.0, 2.0, 3);
    const double mu = 2.0;
    CHECK(qp.quadratic.at({1, 2}) == mu);        //  mu * a1 a2
    CHECK(qp.quadratic.at({1, 3}) == -2.0 * mu); // -2 mu a1 b
    CHECK(qp.quadratic.at({2, 3}) == -2.0 * mu); // -2 mu a2 b
    CHECK(qp.linear.at(3) == 3.0 * mu);          // +3 mu b
    CHECK(qp.quadratic.at({0, 3}) == 1.0);       // coeff * a0 b
}

TEST_CASE("quadratize leaves low-degree polynomials unchanged") {
    MultilinearPolynomial p;
    p.add_term(0, 3.0);
    p.add_term(0b1, -1.0);
    p.add_term(0b110, 2.5);
    QuadraticProgram qp = quadratize(p, 3);
    CHECK(qp.ancillas.empty());
    CHECK(qp.offset == 3.0);
    CHECK(qp.linear.at(0) == -1.0);
    CHECK(qp.quadratic.at({1, 2}) == 2.5);
    for (uint64_t b = 0; b < 8; ++b) CHECK(min_over_ancillas(qp, b) == p.evaluate(b));
}

TEST_CASE("monomials of degree 3..6 minimize to the exact product") {
    for (int degree = 3; degree <= 6; ++degree) {
        for (double coeff : {1.0, -2.0, 3.5}) {
            MultilinearPolynomial p;
            const uint64_t mono = (uint64_t{1} << degree) - 1;
            p.add_term(mono, coeff);
            QuadraticProgram qp = quadratize(p, degree);
            CHECK(static_cast<int>(qp.ancillas.size()) == degree - 2);
            for (uint64_t b = 0; b < (uint64_t{1} << degree); ++b) {
                const double product = (b == mono) ? coeff : 0.0;
                const double dp_min = min_over_ancillas(qp, b);
                CHECK(dp_min == doctest::Approx(product).epsilon(1e-12));
                CHECK(dp_min == doctest::Approx(brute_min_over_ancillas(qp, b)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("tree DP equals brute force on random polynomials") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        MultilinearPolynomial p;
        const int nvars = 5;
        const int terms = 4 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            const uint64_t mono = rng() & ((uint64_t{1} << nvars) - 1);
            const double coeff = static_cast<double>(static_cast<int64_t>(rng() % 9) - 4);
            p.add_term(mono, coeff);
        }
        QuadraticProgram qp = quadratize(p, nvars);
        if (qp.ancillas.size() > 14) continue;
        for (uint64_t b = 0; b < (uint64_t{1} << nvars); ++b)
            CHECK(min_over_ancillas(qp, b) ==
                  doctest::Approx(brute_min_over_ancillas(qp, b)).epsilon(1e-12));
    }
}

TEST_CASE("ancillas are shared across monomials with a common tail") {
    MultilinearPolynomial p;
    p.add_term(0b01101, 1.0);  // vars {0,2,3}
    p.add_term(0b01110, 2.0);  // vars {1,2,3}
    QuadraticProgram qp = quadratize(p, 5);
    CHECK(qp.ancillas.size() == 1);  // both cascades need only b = x2*x3
    CHECK(qp.ancillas[0].mu == 1.0 + 1.0 + 2.0);
}

TEST_CASE("full N=4 program minimizes to the cost function") {
    GIInstance inst = fixtures::pair("fig2");
    MultilinearPolynomial total = expand_cost(inst).total();
    QuadraticProgram qp = quadratize(total, 8);

    std::set<uint64_t> zero_set_poly, zero_set_qp;
    for (uint64_t b = 0; b < 256; ++b) {
        const double want = static_cast<double>(cost_gi(decode_basis_index(b, 4), inst));
        // constrained ancillas reproduce the polynomial value
        const double at_constraint = evaluate_qp(qp, b, constrained_ancilla_values(qp, b));
        CHECK(at_constraint == doctest::Approx(want).epsilon(1e-9));
        // and nothing below it is reachable
        const double minimum = min_over_ancillas(qp, b);
        CHECK(minimum == doctest::Approx(want).epsilon(1e-9));
        if (want == 0.0) zero_set_poly.insert(b);
        if (std::fabs(minimum) < 1e-9) zero_set_qp.insert(b);
    }
    CHECK(zero_set_poly == zero_set_qp);
}

TEST_CASE("mu keeps global minimizers on the constraint manifold") {
    GIInstance inst = fixtures::pair("fig2");
    QuadraticProgram qp = quadratize(expand_cost(inst).total(), 8);
    for (uint64_t b = 0; b < 256; ++b) {
        if (cost_gi(decode_basis_index(b, 4), inst) != 0) continue;
        auto vals = constrained_ancilla_values(qp, b);
        const double at_constraint = evaluate_qp(qp, b, vals);
        for (size_t i = 0; i < vals.size(); ++i) {
            auto flipped = vals;
            flipped[i] ^= 1;
            CHECK(evaluate_qp(qp, b, flipped) >= at_constraint + 1.0 - 1e-9);
        }
    }
}

TEST_CASE("QUBO export format") {
    QuadraticProgram empty;
    CHECK(export_qubo(empty) == "QUBO 0 0\n");

    QuadraticProgram single;
    single.num_original = 2;
    single.add_quadratic(0, 1, 2.0);
    CHECK(export_qubo(single) == "QUBO 2 1\n0 1 2.000000\n");

    QuadraticProgram qp = quadratize_term(0b111, 1.0, 2.0, 3);
    const std::string text = export_qubo(qp);
    CHECK(text.find("1 2 2.000000\n") != std::string::npos);
    CHECK(text.find("1 3 -4.000000\n") != std::string::npos);
    CHECK(text.find("2 3 -4.000000\n") != std::string::npos);
    CHECK(text.find("3 3 6.000000\n") != std::string::npos);
    CHECK(text.find("0 3 1.000000\n") != std::string::npos);
}

TEST_CASE("QUBO round-trips byte-identically through the parser") {
    GIInstance inst = fixtures::pair("fig2");
    QuadraticProgram qp = quadratize(expand_cost(inst).total(), 8);
    const std::string text = export_qubo(qp);
    CHECK(export_qubo(parse_qubo(text)) == text);

    CHECK_THROWS_AS(parse_qubo("BOGUS 1 1\n"), input_error);
    CHECK_THROWS_AS(parse_qubo("QUBO 2 5\n0 1 1.0\n"), input_error);
}

}  // TEST_SUITE
