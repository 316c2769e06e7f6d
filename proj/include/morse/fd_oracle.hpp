#pragma once

// Brute-force reference: three-point finite-difference Hamiltonian with
// Dirichlet ends, eigenvalues by Sturm-sequence bisection and eigenvectors by
// inverse iteration. Shares nothing with the shooting path except the grid.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "morse/errors.hpp"
#include "morse/grid.hpp"
#include "morse/potential.hpp"

namespace morse {

/// Symmetric tridiagonal matrix H = tridiag(-t, 2t + V_i, -t) on the interior
/// grid points. V and t are kept apart so Sturm counts avoid the 2t cancellation.
template <std::floating_point Real = double>
struct FdHamiltonian {
    std::vector<Real> potential;
    Real hopping = 0;  // t = hbar^2 / (2 m h^2)

    FdHamiltonian(const MorsePotential& p, const Grid& grid) {
        const Real h = Real(grid.step());
        hopping = Real(p.hbar()) * Real(p.hbar()) / (2 * Real(p.mass()) * h * h);
        potential.resize(grid.size() - 2);
        for (std::size_t i = 0; i < potential.size(); ++i)
            potential[i] = p.at(Real(grid.x_min()) + static_cast<Real>(i + 1) * h);
    }

    std::size_t size() const noexcept { return potential.size(); }
    Real diagonal(std::size_t i) const noexcept { return 2 * hopping + potential[i]; }
    Real off_diagonal() const noexcept { return -hopping; }

    /// Number of eigenvalues strictly below x. The LDL^T pivots q_i are tracked
    /// as u_i = q_i / t - 1, which obeys u_i = w_i + u_{i-1} / (1 + u_{i-1})
    /// with w_i = (V_i - x) / t.
    std::size_t count_below(Real x) const {
        const Real pivmin = std::numeric_limits<Real>::epsilon() * std::numeric_limits<Real>::epsilon();
        std::size_t count = 0;
        Real u = 0;
        for (std::size_t i = 0; i < potential.size(); ++i) {
            const Real w = (potential[i] - x) / hopping;
            u = (i == 0) ? 1 + w : w + u / (1 + u);
            if (std::abs(1 + u) < pivmin) u = -1 - pivmin;
            if (1 + u < 0) ++count;
        }
        return count;
    }

    Real lower_bound() const { return *std::min_element(potential.begin(), potential.end()); }
};

namespace detail {

/// Solves (H - shift) y = b in place; LU with partial pivoting.
inline void solve_shifted(const FdHamiltonian<double>& H, double shift, std::vector<double>& b) {
    const std::size_t n = H.size();
    constexpr double tiny = 1e-300;
    std::vector<double> dl(n - 1, H.off_diagonal());
    std::vector<double> du(n - 1, H.off_diagonal());
    std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<double> d(n);
    std::vector<bool> swapped(n - 1, false);
    for (std::size_t i = 0; i < n; ++i) d[i] = H.diagonal(i) - shift;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            swapped[i] = true;
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!swapped[i]) {
            b[i + 1] -= dl[i] * b[i];
        } else {
            const double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl[i] * b[i];
        }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
}

}  // namespace detail

/// k lowest eigenvalues of the finite-difference Hamiltonian. Throws
/// GridTooCoarse when fewer than k of them are negative.
template <std::floating_point Real = double>
std::vector<Real> fd_reference_spectrum(const MorsePotential& p, const Grid& grid, int k) {
    if (k < 1) throw InvalidArgument("requested eigenvalue count must be >= 1");
    const FdHamiltonian<Real> H(p, grid);
    const auto wanted = static_cast<std::size_t>(k);
    if (H.count_below(0.0) < wanted)
        throw GridTooCoarse("fewer than " + std::to_string(k) + " negative eigenvalues on this grid for c = " +
                            std::to_string(p.depth()));

    std::vector<Real> out;
    out.reserve(wanted);
    const Real bottom = H.lower_bound();
    for (std::size_t j = 0; j < wanted; ++j) {
        Real lo = out.empty() ? bottom : out.back();
        Real hi = 0;
        for (int it = 0; it < 200; ++it) {
            const Real mid = (lo + hi) / 2;
            if (mid <= lo || mid >= hi) break;
            (H.count_below(mid) >= j + 1 ? hi : lo) = mid;
        }
        out.push_back((lo + hi) / 2);
    }
    return out;
}

struct FdState {
    double energy = 0.0;
    GridWavefunction wavefunction;
};

/// Lowest k finite-difference eigenpairs; vectors are zero at both grid ends,
/// normalized with the same quadrature and sign convention as the shooting states.
inline std::vector<FdState> fd_reference_states(const MorsePotential& p, const Grid& grid, int k) {
    const auto energies = fd_reference_spectrum<double>(p, grid, k);
    const FdHamiltonian<double> H(p, grid);
    const std::size_t m = H.size();

    std::vector<std::vector<double>> vectors;
    std::vector<FdState> states;
    for (double e : energies) {
        std::vector<double> y(m, 1.0);
        for (int it = 0; it < 4; ++it) {
            detail::solve_shifted(H, e, y);
            for (const auto& prev : vectors) {
                double dot = 0.0;
                for (std::size_t i = 0; i < m; ++i) dot += prev[i] * y[i];
                for (std::size_t i = 0; i < m; ++i) y[i] -= dot * prev[i];
            }
            double norm = 0.0;
            for (double v : y) norm += v * v;
            norm = std::sqrt(norm);
            for (double& v : y) v /= norm;
        }
        vectors.push_back(y);

        std::vector<double> full(grid.size(), 0.0);
        std::copy(y.begin(), y.end(), full.begin() + 1);
        states.push_back({e, normalize(GridWavefunction{grid, std::move(full), false})});
    }
    return states;
}

}  // namespace morse
