#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <future>
#include <set>
#include <string>
#include <vector>

#include "aqgi/cost.hpp"
#include "aqgi/eigen.hpp"
#include "aqgi/errors.hpp"

#include "json.hpp"

namespace aqgi {

using StateVector = std::vector<std::complex<double>>;

inline double norm(const StateVector& psi) {
    double n = 0.0;
    for (const auto& amp : psi) n += std::norm(amp);
    return std::sqrt(n);
}

/// Diagonal of H_P in the computational basis: entry b is the cost of the
/// integer string decoded from b. Exact for integer costs up to 2^53; SGI
/// products beyond that saturate (flagged) since only the ordering near zero
/// matters for the dynamics.
struct ProblemDiagonal {
    int qubits = 0;
    int order = 0;
    std::vector<double> energies;
    bool saturated = false;

    size_t dim() const { return energies.size(); }

    double min_energy() const {
        double m = energies.front();
        for (double e : energies) m = std::min(m, e);
        return m;
    }

    double max_energy() const {
        double m = energies.front();
        for (double e : energies) m = std::max(m, e);
        return m;
    }

    std::vector<uint64_t> ground_indices() const {
        const double m = min_energy();
        std::vector<uint64_t> idx;
        for (uint64_t b = 0; b < energies.size(); ++b)
            if (energies[b] == m) idx.push_back(b);
        return idx;
    }
};

struct DiagonalOptions {
    int max_qubits = 21;  // full-state simulation ceiling
    unsigned threads = 0;
    int norm_power = 1;   // exponent of the entrywise mismatch norm
};

namespace detail {

constexpr double kSaturation = 9007199254740992.0;  // 2^53

template <typename Eval>
ProblemDiagonal fill_diagonal(const Eval& eval, int qubits, int order, DiagonalOptions opt) {
    if (qubits > opt.max_qubits)
        throw capacity_error("problem Hamiltonian needs " + std::to_string(qubits) +
                             " qubits, above the limit of " + std::to_string(opt.max_qubits));
    ProblemDiagonal hp;
    hp.qubits = qubits;
    hp.order = order;
    const uint64_t total = uint64_t{1} << qubits;
    hp.energies.resize(total);
    const unsigned threads = pick_threads(total, opt.threads);
    bool saturated = false;
    auto fill = [&](uint64_t lo, uint64_t hi) {
        bool sat = false;
        for (uint64_t b = lo; b < hi; ++b) {
            if constexpr (std::is_same_v<decltype(eval(0)), uint64_t>) {
                hp.energies[b] = static_cast<double>(eval(b));
            } else {
                const SgiValue v = eval(b);
                if (v.saturated || v.v > static_cast<unsigned __int128>(kSaturation)) {
                    hp.energies[b] = kSaturation;
                    sat = true;
                } else {
                    hp.energies[b] = static_cast<double>(static_cast<uint64_t>(v.v));
                }
            }
        }
        return sat;
    };
    if (threads <= 1) {
        saturated = fill(0, total);
    } else {
        std::vector<std::future<bool>> futs;
        const uint64_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const uint64_t lo = t * chunk, hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, fill, lo, hi));
        }
        for (auto& f : futs) saturated = f.get() || saturated;
    }
    hp.saturated = saturated;
    return hp;
}

}  // namespace detail

inline ProblemDiagonal build_problem_diagonal(const GIInstance& inst, DiagonalOptions opt = {}) {
    return detail::fill_diagonal(detail::GiEvaluator(inst, opt.norm_power), inst.qubits(),
                                 inst.order(), opt);
}

inline ProblemDiagonal build_problem_diagonal(const SGIInstance& inst, DiagonalOptions opt = {}) {
    return detail::fill_diagonal(detail::SgiEvaluator(inst, opt.norm_power), inst.qubits(),
                                 inst.order(), opt);
}

/// Interpolation schedule H(s) = A(s) H_i + B(s) H_P with A(0)=1, B(0)=0,
/// A(1)=0, B(1)=1. Derivatives feed the dH/ds matrix element.
struct Schedule {
    std::function<double(double)> a, b, da, db;

    static Schedule linear() {
        return {[](double s) { return 1.0 - s; }, [](double s) { return s; },
                [](double) { return -1.0; }, [](double) { return 1.0; }};
    }
};

/// H_i psi, matrix-free: H_i = sum_l (I - X_l)/2, so each qubit contributes
/// (psi[b] - psi[b ^ (1<<l)])/2.
inline StateVector apply_initial_hamiltonian(const StateVector& psi) {
    const size_t dim = psi.size();
    int qubits = 0;
    while ((size_t{1} << qubits) < dim) ++qubits;
    StateVector out(dim, {0.0, 0.0});
    for (int l = 0; l < qubits; ++l) {
        const uint64_t bit = uint64_t{1} << l;
        for (uint64_t b = 0; b < dim; ++b) out[b] += 0.5 * (psi[b] - psi[b ^ bit]);
    }
    return out;
}

/// H(s) psi = A(s) H_i psi + B(s) diag(E) psi.
inline StateVector apply_hamiltonian(double s, const Schedule& sched, const ProblemDiagonal& hp,
                                     const StateVector& psi) {
    const double a = sched.a(s), b = sched.b(s);
    const size_t dim = hp.dim();
    StateVector out(dim, {0.0, 0.0});
    if (a != 0.0) {
        for (int l = 0; l < hp.qubits; ++l) {
            const uint64_t bit = uint64_t{1} << l;
            for (uint64_t i = 0; i < dim; ++i) out[i] += (0.5 * a) * (psi[i] - psi[i ^ bit]);
        }
    }
    if (b != 0.0)
        for (uint64_t i = 0; i < dim; ++i) out[i] += b * hp.energies[i] * psi[i];
    return out;
}

namespace detail {

/// Real-arithmetic application of c_i*H_i + c_p*H_P for the eigensolvers.
inline void apply_real(double ci, double cp, const ProblemDiagonal& hp, const double* in,
                       double* out) {
    const size_t dim = hp.dim();
    for (uint64_t i = 0; i < dim; ++i) out[i] = cp * hp.energies[i] * in[i];
    if (ci != 0.0) {
        for (int l = 0; l < hp.qubits; ++l) {
            const uint64_t bit = uint64_t{1} << l;
            for (uint64_t i = 0; i < dim; ++i) out[i] += (0.5 * ci) * (in[i] - in[i ^ bit]);
        }
    }
}

/// Dense H(s): diagonal a*L/2 + b*E_b, off-diagonal -a/2 between basis states
/// one bit flip apart.
inline std::vector<double> dense_hamiltonian(double a, double b, const ProblemDiagonal& hp) {
    const size_t dim = hp.dim();
    std::vector<double> h(dim * dim, 0.0);
    for (uint64_t i = 0; i < dim; ++i) {
        h[i * dim + i] = a * hp.qubits * 0.5 + b * hp.energies[i];
        for (int l = 0; l < hp.qubits; ++l) h[i * dim + (i ^ (uint64_t{1} << l))] = -0.5 * a;
    }
    return h;
}

}  // namespace detail

/// Spectrum sample at one schedule point. The gap is measured to the first
/// level strictly above the (possibly degenerate) ground level.
struct SpectrumPoint {
    double s = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0;
    double matrix_element = 0.0;  // max |<E1|dH/ds|E0>| over the degenerate bases
};

struct SpectrumOptions {
    int dense_limit_qubits = 12;     // dense solve up to here, Lanczos beyond
    int lanczos_levels = 8;          // eigenpairs requested on the iterative path
    double interior_degeneracy_tol = 1e-7;
    double endpoint_degeneracy_tol = 1e-9;
    LanczosOptions lanczos;
};

namespace detail {

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) d += x[i] * y[i];
    return d;
}

/// max |<x_i| dH |g_j>| over two families of real vectors.
inline double max_matrix_element(const std::vector<std::vector<double>>& ground,
                                 const std::vector<std::vector<double>>& excited, double da,
                                 double db, const ProblemDiagonal& hp) {
    double best = 0.0;
    std::vector<double> work(hp.dim());
    for (const auto& g : ground) {
        apply_real(da, db, hp, g.data(), work.data());
        for (const auto& x : excited) {
            double el = 0.0;
            for (size_t i = 0; i < work.size(); ++i) el += x[i] * work[i];
            best = std::max(best, std::fabs(el));
        }
    }
    return best;
}

}  // namespace detail

/// Lowest two distinct levels of H(s) plus the dH/ds matrix element.
/// Endpoints are handled analytically (H_i spectrum is {0,1,...,L}; H_P is
/// the stored diagonal); interior points use a dense solve at or below
/// dense_limit_qubits and matrix-free Lanczos above it. On the Lanczos path
/// each distinct level contributes one Ritz vector to the matrix element.
inline SpectrumPoint lowest_spectrum(double s, const Schedule& sched, const ProblemDiagonal& hp,
                                     SpectrumOptions opt = {}) {
    const double a = sched.a(s), b = sched.b(s);
    const double da = sched.da(s), db = sched.db(s);
    const size_t dim = hp.dim();
    SpectrumPoint pt;
    pt.s = s;

    if (b == 0.0) {
        // pure transverse field: E0 = 0 (uniform superposition), E1 = a
        pt.e0 = 0.0;
        pt.e1 = a;
        pt.gap = a;
        // first excited level: one qubit in |->, rest uniform; streamed to
        // keep memory at O(dim)
        const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
        std::vector<double> ground(dim, amp), work(dim);
        detail::apply_real(da, db, hp, ground.data(), work.data());
        double best = 0.0;
        for (int l = 0; l < hp.qubits; ++l) {
            const uint64_t bit = uint64_t{1} << l;
            double el = 0.0;
            for (uint64_t i = 0; i < dim; ++i) el += ((i & bit) ? -amp : amp) * work[i];
            best = std::max(best, std::fabs(el));
        }
        pt.matrix_element = best;
        return pt;
    }

    if (a == 0.0) {
        // pure diagonal: levels straight off the stored costs
        double e0 = hp.energies[0], e1 = 0.0;
        for (double e : hp.energies) e0 = std::min(e0, e);
        bool have1 = false;
        for (double e : hp.energies)
            if (e > e0 + opt.endpoint_degeneracy_tol && (!have1 || e < e1)) {
                e1 = e;
                have1 = true;
            }
        pt.e0 = b * e0;
        pt.e1 = have1 ? b * e1 : b * e0;
        pt.gap = pt.e1 - pt.e0;
        // dH couples basis states only through its H_i part (single bit flips)
        double best = 0.0;
        if (have1 && da != 0.0) {
            std::vector<uint64_t> ground, excited;
            for (uint64_t i = 0; i < dim; ++i) {
                if (hp.energies[i] == e0) ground.push_back(i);
                else if (hp.energies[i] == e1) excited.push_back(i);
            }
            for (uint64_t g : ground)
                for (uint64_t x : excited) {
                    const uint64_t diff = g ^ x;
                    if (diff && !(diff & (diff - 1))) best = std::max(best, std::fabs(da) * 0.5);
                }
        }
        pt.matrix_element = best;
        return pt;
    }

    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    if (hp.qubits <= opt.dense_limit_qubits) {
        EigenResult res = sym_eigen(detail::dense_hamiltonian(a, b, hp), static_cast<int>(dim), true);
        values = std::move(res.values);
        vectors = std::move(res.vectors);
    } else {
        SymmetricOp op = [&](const double* in, double* out) {
            detail::apply_real(a, b, hp, in, out);
        };
        EigenResult res = lanczos_lowest(op, dim, opt.lanczos_levels, opt.lanczos);
        values = std::move(res.values);
        vectors = std::move(res.vectors);
    }

    pt.e0 = values.front();
    const double tol = opt.interior_degeneracy_tol;
    size_t first_excited = values.size();
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] > pt.e0 + tol) {
            first_excited = i;
            break;
        }
    if (first_excited == values.size())
        throw numerical_error("could not resolve the first excited level at s=" +
                              std::to_string(s));
    pt.e1 = values[first_excited];
    pt.gap = pt.e1 - pt.e0;

    std::vector<std::vector<double>> ground, excited;
    for (size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= pt.e0 + tol) ground.push_back(vectors[i]);
        else if (values[i] <= pt.e1 + tol) excited.push_back(vectors[i]);
    }
    pt.matrix_element = detail::max_matrix_element(ground, excited, da, db, hp);
    return pt;
}

/// Uniform scan of the schedule: per-point spectra, the minimum gap, the
/// matrix-element maximum M, and the adiabatic runtime bound M/Delta^2
/// (hbar = 1).
struct GapScan {
    std::vector<SpectrumPoint> points;
    double delta_min = 0.0;
    double s_at_min = 0.0;
    double m_max = 0.0;
    double t_bound = 0.0;
};

inline GapScan min_gap_scan(const ProblemDiagonal& hp, const Schedule& sched, int grid,
                            SpectrumOptions opt = {}) {
    if (grid < 2) throw input_error("gap scan needs at least 2 grid points");
    GapScan scan;
    for (int g = 0; g < grid; ++g) {
        const double s = static_cast<double>(g) / (grid - 1);
        SpectrumPoint pt = lowest_spectrum(s, sched, hp, opt);
        if (scan.points.empty() || pt.gap < scan.delta_min) {
            scan.delta_min = pt.gap;
            scan.s_at_min = s;
        }
        scan.m_max = std::max(scan.m_max, pt.matrix_element);
        scan.points.push_back(pt);
    }
    scan.t_bound = scan.m_max / (scan.delta_min * scan.delta_min);
    return scan;
}

inline std::string gap_scan_tsv(const GapScan& scan) {
    std::string out = "s\tE0\tE1\tgap\tmatrix_element\n";
    char line[160];
    for (const auto& p : scan.points) {
        std::snprintf(line, sizeof line, "%.6f\t%.12g\t%.12g\t%.12g\t%.12g\n", p.s, p.e0, p.e1,
                      p.gap, p.matrix_element);
        out += line;
    }
    return out;
}

inline nlohmann::json runtime_bound_json(const GapScan& scan) {
    return nlohmann::json{{"M", scan.m_max},
                          {"Delta_min", scan.delta_min},
                          {"s_at_min", scan.s_at_min},
                          {"T_bound", scan.t_bound}};
}

}  // namespace aqgi
