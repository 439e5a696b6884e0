#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "aqgi/errors.hpp"

// Self-contained real-symmetric eigensolvers: a dense Householder+QL solver
// and a matrix-free Lanczos with full reorthogonalization and thick restarts.
// Every Hamiltonian this library builds is real symmetric in the
// computational basis, so spectra are computed in real arithmetic.

namespace aqgi {

struct EigenResult {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // vectors[k] pairs with values[k]; empty if not requested
};

namespace detail {

inline double hypot2(double a, double b) { return std::hypot(a, b); }

/// Householder reduction of a symmetric matrix (row-major, overwritten) to
/// tridiagonal form; accumulates the orthogonal transform when vectors are
/// wanted.
inline void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                           std::vector<double>& e, bool vectors) {
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(a[static_cast<size_t>(i) * n + k]);
            if (scale == 0.0) {
                e[i] = a[static_cast<size_t>(i) * n + l];
            } else {
                for (int k = 0; k <= l; ++k) {
                    a[static_cast<size_t>(i) * n + k] /= scale;
                    h += a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(i) * n + k];
                }
                double f = a[static_cast<size_t>(i) * n + l];
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[static_cast<size_t>(i) * n + l] = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (vectors) a[static_cast<size_t>(j) * n + i] = a[static_cast<size_t>(i) * n + j] / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k)
                        g += a[static_cast<size_t>(j) * n + k] * a[static_cast<size_t>(i) * n + k];
                    for (int k = j + 1; k <= l; ++k)
                        g += a[static_cast<size_t>(k) * n + j] * a[static_cast<size_t>(i) * n + k];
                    e[j] = g / h;
                    f += e[j] * a[static_cast<size_t>(i) * n + j];
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a[static_cast<size_t>(i) * n + j];
                    const double ej = e[j] - hh * f;
                    e[j] = ej;
                    for (int k = 0; k <= j; ++k)
                        a[static_cast<size_t>(j) * n + k] -=
                            f * e[k] + ej * a[static_cast<size_t>(i) * n + k];
                }
            }
        } else {
            e[i] = a[static_cast<size_t>(i) * n + l];
        }
        d[i] = h;
    }
    if (vectors) d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (vectors) {
            if (d[i] != 0.0) {
                for (int j = 0; j < i; ++j) {
                    double g = 0.0;
                    for (int k = 0; k < i; ++k)
                        g += a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(k) * n + j];
                    for (int k = 0; k < i; ++k)
                        a[static_cast<size_t>(k) * n + j] -= g * a[static_cast<size_t>(k) * n + i];
                }
            }
            d[i] = a[static_cast<size_t>(i) * n + i];
            a[static_cast<size_t>(i) * n + i] = 1.0;
            for (int j = 0; j < i; ++j)
                a[static_cast<size_t>(j) * n + i] = a[static_cast<size_t>(i) * n + j] = 0.0;
        } else {
            d[i] = a[static_cast<size_t>(i) * n + i];
        }
    }
}

/// Implicit-shift QL on a tridiagonal (d = diagonal, e = subdiagonal shifted
/// up by one); optionally rotates the columns of z along.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, int n,
                        std::vector<double>* z) {
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw numerical_error("QL iteration failed to converge on a tridiagonal");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < n; ++k) {
                            f = (*z)[static_cast<size_t>(k) * n + i + 1];
                            (*z)[static_cast<size_t>(k) * n + i + 1] =
                                s * (*z)[static_cast<size_t>(k) * n + i] + c * f;
                            (*z)[static_cast<size_t>(k) * n + i] =
                                c * (*z)[static_cast<size_t>(k) * n + i] - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

/// All eigenvalues (ascending) of a dense symmetric matrix, with optional
/// orthonormal eigenvectors.
inline EigenResult sym_eigen(std::vector<double> a, int n, bool vectors) {
    std::vector<double> d, e;
    detail::tridiagonalize(a, n, d, e, vectors);
    detail::ql_implicit(d, e, n, vectors ? &a : nullptr);

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return d[x] < d[y]; });

    EigenResult out;
    out.values.resize(n);
    for (int k = 0; k < n; ++k) out.values[k] = d[idx[k]];
    if (vectors) {
        out.vectors.assign(n, std::vector<double>(n));
        for (int k = 0; k < n; ++k)
            for (int row = 0; row < n; ++row)
                out.vectors[k][row] = a[static_cast<size_t>(row) * n + idx[k]];
    }
    return out;
}

using SymmetricOp = std::function<void(const double*, double*)>;

struct LanczosOptions {
    int max_basis = 140;      // Krylov basis per restart cycle
    int max_restarts = 60;
    double tol = 1e-10;       // residual tolerance, relative to the value scale
    uint64_t seed = 7;
};

/// Lowest k eigenpairs of a real symmetric operator, matrix-free. Thick
/// restart: converged/kept Ritz vectors seed the next cycle; every new basis
/// vector is fully reorthogonalized. Degenerate levels appear once per
/// distinct value (Krylov spaces cannot see multiplicity), which is exactly
/// what gap-to-first-distinct-level consumers need.
inline EigenResult lanczos_lowest(const SymmetricOp& op, size_t dim, int k,
                                  LanczosOptions opt = {}) {
    if (dim == 0) throw input_error("lanczos on empty space");
    const int want = std::min<int>(k, static_cast<int>(dim));
    const int m = std::min<size_t>(static_cast<size_t>(opt.max_basis), dim);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::vector<double>> basis;      // orthonormal columns
    std::vector<double> proj;                    // projected matrix, m x m row-major
    auto proj_at = [&](int i, int j) -> double& { return proj[static_cast<size_t>(i) * m + j]; };

    auto normalize = [&](std::vector<double>& v) {
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm > 0) for (double& x : v) x /= nrm;
        return nrm;
    };
    auto reorthogonalize = [&](std::vector<double>& v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : basis) {
                double dot = 0.0;
                for (size_t i = 0; i < dim; ++i) dot += u[i] * v[i];
                for (size_t i = 0; i < dim; ++i) v[i] -= dot * u[i];
            }
        }
    };
    auto random_vector = [&]() {
        std::vector<double> v(dim);
        for (double& x : v) x = gauss(rng);
        return v;
    };

    int kept = 0;  // leading Ritz vectors carried over by the restart
    std::vector<double> kept_values;
    std::vector<double> kept_residuals;  // coupling row of the arrowhead
    std::vector<double> next = random_vector();

    for (int restart = 0; restart < opt.max_restarts; ++restart) {
        proj.assign(static_cast<size_t>(m) * m, 0.0);
        for (int j = 0; j < kept; ++j) proj_at(j, j) = kept_values[j];

        reorthogonalize(next);
        if (normalize(next) < 1e-12) {
            next = random_vector();
            reorthogonalize(next);
            if (normalize(next) < 1e-12)
                break;  // basis spans an invariant subspace covering the request
        }
        basis.push_back(next);
        for (int j = 0; j < kept; ++j) {
            proj_at(j, kept) = kept_residuals[j];
            proj_at(kept, j) = kept_residuals[j];
        }

        std::vector<double> w(dim);
        int size = kept + 1;
        while (size < m) {
            const auto& v = basis.back();
            op(v.data(), w.data());
            double alpha = 0.0;
            for (size_t i = 0; i < dim; ++i) alpha += v[i] * w[i];
            proj_at(size - 1, size - 1) = alpha;
            reorthogonalize(w);
            const double beta = normalize(w);
            if (beta < 1e-12) break;  // invariant subspace
            proj_at(size - 1, size) = beta;
            proj_at(size, size - 1) = beta;
            basis.push_back(w);
            ++size;
        }
        // diagonal element of the last basis vector
        {
            const auto& v = basis.back();
            op(v.data(), w.data());
            double alpha = 0.0;
            for (size_t i = 0; i < dim; ++i) alpha += v[i] * w[i];
            proj_at(size - 1, size - 1) = alpha;
            reorthogonalize(w);
        }
        const double beta_out = normalize(w);  // residual leaving the basis

        std::vector<double> small(static_cast<size_t>(size) * size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) small[static_cast<size_t>(i) * size + j] = proj_at(i, j);
        EigenResult ritz = sym_eigen(std::move(small), size, true);

        const int take = std::min(want, size);
        const double scale = std::max(std::fabs(ritz.values.front()), std::fabs(ritz.values.back()));
        bool converged = static_cast<size_t>(size) >= dim || beta_out < 1e-12;
        std::vector<double> residuals(take);
        for (int j = 0; j < take && !converged; ++j)
            residuals[j] = std::fabs(beta_out * ritz.vectors[j][size - 1]);
        if (!converged) {
            converged = true;
            for (int j = 0; j < take; ++j)
                if (residuals[j] > opt.tol * std::max(1.0, scale)) converged = false;
        }

        // Ritz vectors in the full space
        auto lift = [&](int j) {
            std::vector<double> v(dim, 0.0);
            for (int c = 0; c < size; ++c) {
                const double y = ritz.vectors[j][c];
                const auto& u = basis[c];
                for (size_t i = 0; i < dim; ++i) v[i] += y * u[i];
            }
            return v;
        };

        if (converged) {
            EigenResult out;
            out.values.assign(ritz.values.begin(), ritz.values.begin() + take);
            for (int j = 0; j < take; ++j) {
                auto v = lift(j);
                normalize(v);
                out.vectors.push_back(std::move(v));
            }
            return out;
        }

        // thick restart: keep a few extra pairs beyond the wanted ones
        const int keep = std::min(size - 1, want + 4);
        std::vector<std::vector<double>> new_basis;
        kept_values.assign(keep, 0.0);
        kept_residuals.assign(keep, 0.0);
        for (int j = 0; j < keep; ++j) {
            new_basis.push_back(lift(j));
            kept_values[j] = ritz.values[j];
            kept_residuals[j] = beta_out * ritz.vectors[j][size - 1];
        }
        basis = std::move(new_basis);
        for (auto& u : basis) normalize(u);
        kept = keep;
        next = w;  // residual direction continues the recurrence
    }
    throw numerical_error("lanczos did not converge within the restart budget");
}

}  // namespace aqgi
