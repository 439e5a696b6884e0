#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aqgi/hamiltonian.hpp"

#include "json.hpp"

namespace aqgi {

inline StateVector uniform_superposition(int qubits) {
    if (qubits < 1) throw input_error("need at least one qubit");
    if (qubits > 30) throw capacity_error("state vector of 2^" + std::to_string(qubits) +
                                          " amplitudes is beyond capacity");
    const size_t dim = size_t{1} << qubits;
    return StateVector(dim, {1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
}

enum class Integrator { split_operator, rk4 };

inline const char* integrator_name(Integrator i) {
    return i == Integrator::split_operator ? "split_operator" : "rk4";
}

struct EvolutionConfig {
    double total_time = 10.0;
    double dt = 0.0;  // <= 0 picks the default step from the spectral-width heuristic
    Schedule schedule = Schedule::linear();
    Integrator integrator = Integrator::split_operator;
    uint64_t seed = 1;
};

/// Default step: dt * max|H| <= 0.05 with max|H| bounded by the largest
/// diagonal cost plus the qubit count.
inline double default_dt(const ProblemDiagonal& hp) {
    return 0.05 / (hp.max_energy() + hp.qubits);
}

namespace detail {

/// Applies exp(-i phi E_b) per amplitude. When the costs are small
/// non-negative integers (every GI instance), phase factors come from a
/// per-step power table instead of a trig call per amplitude.
class DiagonalPhaser {
public:
    explicit DiagonalPhaser(const ProblemDiagonal& hp) : hp_(hp) {
        const double max_e = hp.max_energy();
        table_mode_ = max_e <= 4096.0;
        if (table_mode_)
            for (double e : hp.energies)
                if (e != std::floor(e) || e < 0.0) {
                    table_mode_ = false;
                    break;
                }
        if (table_mode_) table_.resize(static_cast<size_t>(max_e) + 1);
    }

    void apply(StateVector& psi, double phi) {
        const size_t dim = psi.size();
        if (table_mode_) {
            const std::complex<double> z = std::polar(1.0, -phi);
            table_[0] = {1.0, 0.0};
            for (size_t e = 1; e < table_.size(); ++e) table_[e] = table_[e - 1] * z;
            for (size_t b = 0; b < dim; ++b)
                psi[b] *= table_[static_cast<size_t>(hp_.energies[b])];
        } else {
            for (size_t b = 0; b < dim; ++b) psi[b] *= std::polar(1.0, -phi * hp_.energies[b]);
        }
    }

private:
    const ProblemDiagonal& hp_;
    bool table_mode_ = false;
    std::vector<std::complex<double>> table_;
};

inline void apply_transverse_rotation(StateVector& psi, int qubits, double theta) {
    // exp(-i theta (I - X)/2) per qubit = e^{-i theta/2} [cos(theta/2) I + i sin(theta/2) X]
    const std::complex<double> f = std::polar(1.0, -theta / 2.0);
    const double c = std::cos(theta / 2.0);
    const std::complex<double> is(0.0, std::sin(theta / 2.0));
    const std::complex<double> fc = f * c;
    const std::complex<double> fis = f * is;
    const size_t dim = psi.size();
    for (int l = 0; l < qubits; ++l) {
        const uint64_t bit = uint64_t{1} << l;
        for (uint64_t i = 0; i < dim; ++i) {
            if (i & bit) continue;
            const std::complex<double> u = psi[i];
            const std::complex<double> v = psi[i | bit];
            psi[i] = fc * u + fis * v;
            psi[i | bit] = fc * v + fis * u;
        }
    }
}

inline StateVector rk4_step(const StateVector& psi, double t, double dt, double total_time,
                            const Schedule& sched, const ProblemDiagonal& hp) {
    const std::complex<double> mi(0.0, -1.0);
    auto deriv = [&](const StateVector& y, double at) {
        StateVector hy = apply_hamiltonian(at / total_time, sched, hp, y);
        for (auto& amp : hy) amp *= mi;
        return hy;
    };
    StateVector k1 = deriv(psi, t);
    StateVector y2(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) y2[i] = psi[i] + 0.5 * dt * k1[i];
    StateVector k2 = deriv(y2, t + 0.5 * dt);
    for (size_t i = 0; i < psi.size(); ++i) y2[i] = psi[i] + 0.5 * dt * k2[i];
    StateVector k3 = deriv(y2, t + 0.5 * dt);
    for (size_t i = 0; i < psi.size(); ++i) y2[i] = psi[i] + dt * k3[i];
    StateVector k4 = deriv(y2, t + dt);
    StateVector out(psi.size());
    for (size_t i = 0; i < psi.size(); ++i)
        out[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace detail

/// Integrates i d psi/dt = H(t) psi from t=0 to t=T (hbar = 1). The default
/// integrator is a second-order split-operator: the diagonal H_P factor and
/// the commuting single-qubit H_i factors are both applied exactly, with
/// schedule coefficients sampled at each step midpoint. rk4 integrates the
/// raw ODE as a cross-check.
inline StateVector evolve(const StateVector& psi0, const ProblemDiagonal& hp,
                          const EvolutionConfig& cfg) {
    if (psi0.size() != hp.dim()) throw input_error("state dimension mismatch");
    if (cfg.total_time <= 0.0) throw input_error("total time must be positive");
    const double dt_req = cfg.dt > 0.0 ? cfg.dt : default_dt(hp);
    const uint64_t steps = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(cfg.total_time / dt_req)));
    const double dt = cfg.total_time / static_cast<double>(steps);

    StateVector psi = psi0;
    if (cfg.integrator == Integrator::split_operator) {
        detail::DiagonalPhaser phaser(hp);
        for (uint64_t step = 0; step < steps; ++step) {
            const double s_mid = (static_cast<double>(step) + 0.5) * dt / cfg.total_time;
            const double a = cfg.schedule.a(s_mid);
            const double b = cfg.schedule.b(s_mid);
            phaser.apply(psi, 0.5 * dt * b);
            detail::apply_transverse_rotation(psi, hp.qubits, dt * a);
            phaser.apply(psi, 0.5 * dt * b);
        }
    } else {
        for (uint64_t step = 0; step < steps; ++step)
            psi = detail::rk4_step(psi, static_cast<double>(step) * dt, dt, cfg.total_time,
                                   cfg.schedule, hp);
    }

    const double drift = std::fabs(norm(psi) - 1.0);
    if (drift > 1e-6)
        throw numerical_error("norm drift " + std::to_string(drift) +
                              " exceeds 1e-6; reduce dt");
    return psi;
}

inline double ground_population(const StateVector& psi, const std::vector<uint64_t>& ground) {
    double p = 0.0;
    for (uint64_t b : ground) {
        if (b >= psi.size()) throw input_error("ground index outside the state space");
        p += std::norm(psi[b]);
    }
    return p;
}

/// One computational-basis measurement; reproducible per rng state.
inline uint64_t measure(const StateVector& psi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double n = norm(psi);
    double r = unif(rng) * n * n;
    double acc = 0.0;
    for (size_t b = 0; b < psi.size(); ++b) {
        acc += std::norm(psi[b]);
        if (r <= acc) return b;
    }
    return psi.size() - 1;
}

inline uint64_t measure(const StateVector& psi, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return measure(psi, rng);
}

/// k = ceil(ln(1-delta)/ln(epsilon)); the run count that makes at least one
/// ground-state observation likely with probability delta.
inline int protocol_run_count(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw input_error("epsilon must lie in (0,1)");
    if (!(delta > 1.0 - epsilon && delta < 1.0))
        throw input_error("delta must lie in (1-epsilon, 1)");
    const double ratio = std::log(1.0 - delta) / std::log(epsilon);
    return static_cast<int>(std::ceil(ratio - 1e-9));
}

struct ProtocolSample {
    uint64_t outcome = 0;
    std::string bits;    // global bit 0 first
    std::string decoded; // integer-string rendering
    double cost = 0.0;
};

struct RunReport {
    double total_time = 0.0;
    double dt = 0.0;
    Integrator integrator = Integrator::split_operator;
    int k = 0;
    double final_ground_population = 0.0;
    std::vector<ProtocolSample> samples;
    double min_cost_observed = 0.0;
    bool matches_oracle = false;
};

inline std::string bit_string(uint64_t index, int qubits) {
    std::string s(static_cast<size_t>(qubits), '0');
    for (int l = 0; l < qubits; ++l)
        if (index & (uint64_t{1} << l)) s[static_cast<size_t>(l)] = '1';
    return s;
}

/// Core of the repeated-measurement protocol: computes
/// k = ceil(ln(1-delta)/ln(eps)) and invokes the runner once per round with
/// the round index and its derived seed; the runner returns that round's
/// sample. Aggregates the minimum observed cost.
template <typename Runner>
RunReport repeat_protocol(double epsilon, double delta, uint64_t master_seed, Runner&& runner) {
    RunReport report;
    report.k = protocol_run_count(epsilon, delta);
    double best = 0.0;
    for (int run = 0; run < report.k; ++run) {
        ProtocolSample sample = runner(run, master_seed + static_cast<uint64_t>(run));
        if (run == 0 || sample.cost < best) best = sample.cost;
        report.samples.push_back(std::move(sample));
    }
    report.min_cost_observed = best;
    return report;
}

/// Standard protocol over a problem diagonal. The integrator is
/// deterministic, so the evolved state is computed once and each round draws
/// its own measurement from it.
inline RunReport repeat_protocol(double epsilon, double delta, const ProblemDiagonal& hp,
                                 const EvolutionConfig& cfg) {
    StateVector psi = evolve(uniform_superposition(hp.qubits), hp, cfg);
    RunReport report =
        repeat_protocol(epsilon, delta, cfg.seed, [&](int, uint64_t seed) {
            ProtocolSample sample;
            sample.outcome = measure(psi, seed);
            sample.bits = bit_string(sample.outcome, hp.qubits);
            sample.decoded = to_string(decode_basis_index(sample.outcome, hp.order));
            sample.cost = hp.energies[sample.outcome];
            return sample;
        });
    report.integrator = cfg.integrator;
    report.total_time = cfg.total_time;
    report.dt = cfg.dt > 0.0 ? cfg.dt : default_dt(hp);
    report.final_ground_population = ground_population(psi, hp.ground_indices());
    report.matches_oracle = report.min_cost_observed == hp.min_energy();
    return report;
}

inline nlohmann::json run_report_json(const RunReport& r) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"bits", s.bits}, {"string", s.decoded}, {"cost", s.cost}});
    return nlohmann::json{{"T", r.total_time},
                          {"dt", r.dt},
                          {"integrator", integrator_name(r.integrator)},
                          {"k", r.k},
                          {"ground_population", r.final_ground_population},
                          {"samples", samples},
                          {"min_cost_observed", r.min_cost_observed},
                          {"matches_oracle", r.matches_oracle}};
}

}  // namespace aqgi
