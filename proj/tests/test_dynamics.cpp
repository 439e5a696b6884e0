#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <string>

#include "aqgi/dynamics.hpp"
#include "aqgi/fixtures.hpp"
#include "doctest.h"

using namespace aqgi;
using cplx = std::complex<double>;

namespace {

ProblemDiagonal synthetic_diagonal(std::vector<double> energies, int order) {
    ProblemDiagonal hp;
    hp.energies = std::move(energies);
    hp.order = order;
    hp.qubits = 0;
    while ((size_t{1} << hp.qubits) < hp.energies.size()) ++hp.qubits;
    return hp;
}

// Test-side dense integrator: explicit H(t) matrix, classic RK4, tiny steps.
// The amplitudewise oracle for both library integrators.
StateVector dense_integrate(const ProblemDiagonal& hp, const Schedule& sched, double total_time,
                            double dt) {
    const size_t dim = hp.dim();
    std::vector<std::vector<cplx>> hi(dim, std::vector<cplx>(dim, cplx{0, 0}));
    for (size_t i = 0; i < dim; ++i) {
        hi[i][i] += 0.5 * hp.qubits;
        for (int l = 0; l < hp.qubits; ++l) hi[i][i ^ (size_t{1} << l)] -= 0.5;
    }
    auto deriv = [&](const StateVector& y, double t) {
        const double a = sched.a(t / total_time), b = sched.b(t / total_time);
        StateVector out(dim, cplx{0, 0});
        for (size_t i = 0; i < dim; ++i) {
            cplx acc = b * hp.energies[i] * y[i];
            for (size_t j = 0; j < dim; ++j) acc += a * hi[i][j] * y[j];
            out[i] = cplx{0, -1} * acc;
        }
        return out;
    };
    StateVector psi = uniform_superposition(hp.qubits);
    const auto steps = static_cast<uint64_t>(std::ceil(total_time / dt));
    const double h = total_time / static_cast<double>(steps);
    for (uint64_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * h;
        StateVector k1 = deriv(psi, t);
        StateVector y(dim);
        for (size_t i = 0; i < dim; ++i) y[i] = psi[i] + 0.5 * h * k1[i];
        StateVector k2 = deriv(y, t + 0.5 * h);
        for (size_t i = 0; i < dim; ++i) y[i] = psi[i] + 0.5 * h * k2[i];
        StateVector k3 = deriv(y, t + 0.5 * h);
        for (size_t i = 0; i < dim; ++i) y[i] = psi[i] + h * k3[i];
        StateVector k4 = deriv(y, t + h);
        for (size_t i = 0; i < dim; ++i)
            psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return psi;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("uniform superposition") {
    StateVector one = uniform_superposition(1);
    CHECK(one[0].real() == doctest::Approx(0.7071067811865475));
    CHECK(one[1].real() == doctest::Approx(0.7071067811865475));

    StateVector two = uniform_superposition(2);
    for (const auto& amp : two) CHECK(amp == cplx{0.5, 0.0});

    StateVector big = uniform_superposition(21);
    CHECK(std::fabs(norm(big) - 1.0) < 1e-12);

    CHECK_THROWS_AS(uniform_superposition(0), input_error);
    CHECK_THROWS_AS(uniform_superposition(40), capacity_error);
}

TEST_CASE("zero diagonal leaves the uniform state stationary") {
    ProblemDiagonal hp = synthetic_diagonal(std::vector<double>(8, 0.0), 2);
    EvolutionConfig cfg;
    cfg.total_time = 7.0;
    cfg.dt = 0.01;
    StateVector out = evolve(uniform_superposition(3), hp, cfg);
    for (const auto& amp : out)
        CHECK(std::abs(amp - cplx{1.0 / std::sqrt(8.0), 0.0}) < 1e-9);
}

TEST_CASE("K2 adiabatic limit reaches the ground space") {
    ProblemDiagonal hp = build_problem_diagonal(fixtures::pair("k2"));
    EvolutionConfig cfg;
    cfg.total_time = 100.0;
    StateVector out = evolve(uniform_superposition(2), hp, cfg);
    CHECK(ground_population(out, hp.ground_indices()) >= 0.99);
}

TEST_CASE("sudden limit keeps the uniform overlap") {
    ProblemDiagonal hp = build_problem_diagonal(fixtures::pair("k2"));
    EvolutionConfig cfg;
    cfg.total_time = 1e-4;
    cfg.dt = 1e-4;  // single step
    StateVector out = evolve(uniform_superposition(2), hp, cfg);
    // ground set has 2 of 4 states: population 0.5 in the uniform state
    CHECK(ground_population(out, hp.ground_indices()) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("split-operator matches dense integration amplitudewise at small L") {
    ProblemDiagonal k2 = build_problem_diagonal(fixtures::pair("k2"));
    ProblemDiagonal synth = synthetic_diagonal({0, 3, 1, 2, 7, 4, 4, 1, 0, 2, 5, 3, 2, 2, 6, 1}, 4);
    for (const ProblemDiagonal* hp : {&k2, &synth}) {
        const double total_time = 3.0;
        StateVector oracle = dense_integrate(*hp, Schedule::linear(), total_time, 1e-4);

        EvolutionConfig cfg;
        cfg.total_time = total_time;
        cfg.dt = 2e-4;
        StateVector split = evolve(uniform_superposition(hp->qubits), *hp, cfg);
        for (size_t i = 0; i < oracle.size(); ++i) CHECK(std::abs(split[i] - oracle[i]) < 1e-6);

        cfg.integrator = Integrator::rk4;
        StateVector rk = evolve(uniform_superposition(hp->qubits), *hp, cfg);
        for (size_t i = 0; i < oracle.size(); ++i) CHECK(std::abs(rk[i] - oracle[i]) < 1e-6);
    }
}

TEST_CASE("norm is preserved through long evolutions") {
    ProblemDiagonal hp = build_problem_diagonal(fixtures::pair("c4"));
    EvolutionConfig cfg;
    cfg.total_time = 25.0;
    StateVector out = evolve(uniform_superposition(hp.qubits), hp, cfg);
    CHECK(std::fabs(norm(out) - 1.0) <= 1e-6);
}

TEST_CASE("rk4 with a reckless step reports instability") {
    ProblemDiagonal hp = build_problem_diagonal(fixtures::pair("k2"));
    EvolutionConfig cfg;
    cfg.total_time = 10.0;
    cfg.dt = 0.5;
    cfg.integrator = Integrator::rk4;
    CHECK_THROWS_AS(evolve(uniform_superposition(2), hp, cfg), numerical_error);
}

TEST_CASE("ground population accounting") {
    StateVector uniform = uniform_superposition(3);
    CHECK(ground_population(uniform, {0, 1, 2, 3}) == doctest::Approx(0.5));

    StateVector basis(8, cplx{0, 0});
    basis[5] = 1.0;
    CHECK(ground_population(basis, {5}) == doctest::Approx(1.0));
    CHECK(ground_population(basis, {1, 2}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(ground_population(basis, {9}), input_error);
}

TEST_CASE("adiabatic populations are non-decreasing in T for K2 and C4") {
    for (const char* name : {"k2", "c4"}) {
        ProblemDiagonal hp = build_problem_diagonal(fixtures::pair(name));
        double last = 0.0;
        for (double total_time : {1.0, 5.0, 25.0, 125.0}) {
            EvolutionConfig cfg;
            cfg.total_time = total_time;
            StateVector out = evolve(uniform_superposition(hp.qubits), hp, cfg);
            const double pop = ground_population(out, hp.ground_indices());
            CHECK(pop >= last - 0.02);
            last = pop;
        }
        CHECK(last >= 0.95);
    }
}

TEST_CASE("long evolutions sample the known isomorphisms") {
    ProblemDiagonal hp = build_problem_diagonal(fixtures::pair("fig2"));
    EvolutionConfig cfg;
    cfg.total_time = 50.0;  // ground population ~0.93 here
    StateVector psi = evolve(uniform_superposition(hp.qubits), hp, cfg);
    const std::set<std::string> expected = {"0132", "0231", "3102", "3201"};
    std::mt19937_64 rng(123);
    int hits = 0;
    const int samples = 200;
    for (int i = 0; i < samples; ++i) {
        const uint64_t outcome = measure(psi, rng);
        if (expected.count(to_string(decode_basis_index(outcome, 4)))) ++hits;
    }
    CHECK(hits >= static_cast<int>(0.8 * samples));
}

TEST_CASE("measurement of a basis state is deterministic") {
    StateVector basis(8, cplx{0, 0});
    basis[6] = 1.0;
    for (uint64_t seed = 0; seed < 5; ++seed) CHECK(measure(basis, seed) == 6);
}

TEST_CASE("measurement statistics follow the Born rule") {
    StateVector uniform = uniform_superposition(2);
    std::mt19937_64 rng(2024);
    std::map<uint64_t, int> counts;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) ++counts[measure(uniform, rng)];
    // chi-square against the flat distribution, df = 3; 16.27 at p = 0.001
    double chi2 = 0.0;
    for (uint64_t b = 0; b < 4; ++b) {
        const double expect = samples / 4.0;
        const double d = counts[b] - expect;
        chi2 += d * d / expect;
        CHECK(std::fabs(counts[b] / static_cast<double>(samples) - 0.25) < 0.01);
    }
    CHECK(chi2 < 16.27);
}

TEST_CASE("protocol run counts") {
    CHECK(protocol_run_count(0.5, 0.999) == 10);
    CHECK(protocol_run_count(0.1, 0.99) == 2);
    CHECK_THROWS_AS(protocol_run_count(0.0, 0.9), input_error);
    CHECK_THROWS_AS(protocol_run_count(1.0, 0.9), input_error);
    CHECK_THROWS_AS(protocol_run_count(0.5, 0.3), input_error);  // delta <= 1 - epsilon
}

TEST_CASE("repeat protocol on K2 finds the ground energy") {
    ProblemDiagonal hp = build_problem_diagonal(fixtures::pair("k2"));
    EvolutionConfig cfg;
    cfg.total_time = 30.0;
    cfg.seed = 99;
    RunReport report = repeat_protocol(0.5, 0.999, hp, cfg);
    CHECK(report.k == 10);
    CHECK(report.samples.size() == 10);
    CHECK(report.min_cost_observed == 0.0);
    CHECK(report.matches_oracle);
    CHECK(report.final_ground_population >= 0.9);

    nlohmann::json j = run_report_json(report);
    CHECK(j["T"] == 30.0);
    CHECK(j["integrator"] == "split_operator");
    CHECK(j["samples"].size() == 10);
    CHECK(j["matches_oracle"] == true);
    for (const auto& s : j["samples"]) {
        CHECK(s.contains("bits"));
        CHECK(s.contains("string"));
        CHECK(s.contains("cost"));
    }
}

TEST_CASE("protocol samples decode consistently") {
    ProblemDiagonal hp = build_problem_diagonal(fixtures::pair("fig2"));
    EvolutionConfig cfg;
    cfg.total_time = 20.0;
    cfg.seed = 5;
    RunReport report = repeat_protocol(0.5, 0.99, hp, cfg);
    for (const auto& s : report.samples) {
        CHECK(s.cost == hp.energies[s.outcome]);
        CHECK(s.decoded == to_string(decode_basis_index(s.outcome, 4)));
    }
}

}  // TEST_SUITE
