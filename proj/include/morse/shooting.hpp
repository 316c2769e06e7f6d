#pragma once

// Bound states of -hbar^2/(2m) psi'' + V psi = E psi by RK4 shooting from the
// left wall psi(x_min) = 0, with node counting to bracket each eigenvalue.
//
// The eigenvalue search is templated on the working precision so truncation
// error can be studied below double roundoff; wavefunctions are always double.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morse/errors.hpp"
#include "morse/grid.hpp"
#include "morse/potential.hpp"

namespace morse {

struct ShootingOptions {
    /// Relative bracket width at which bisection stops: tol = energy_tolerance * max(1, |E|).
    double energy_tolerance = 1e-9;
    int max_iterations = 200;
    double slope_seed = 1e-6;
    Grid grid{0.0, 12.0, 1e-3};
    /// Extend x_max per level so the decaying tail reaches exp(-8).
    bool adaptive_domain = false;
    /// Uniform energy steps used to bracket eigenvalues by node count.
    int scan_steps = 400;
};

struct TrialSolution {
    std::vector<double> samples;
    int node_count = 0;
    double terminal_value = 0.0;
    /// First clamped index when |psi| exceeded the overflow guard.
    std::optional<std::size_t> early_stop;
};

struct BoundState {
    int n;
    double energy;
    GridWavefunction wavefunction;
    double depth;
};

namespace detail {

inline constexpr double overflow_guard = 1e100;

/// V sampled at grid points (even slots) and midpoints (odd slots).
template <std::floating_point Real>
class PotentialTable {
public:
    PotentialTable(const MorsePotential& p, const Grid& grid)
        : grid_(grid),
          scale_(Real(2) * Real(p.mass()) / (Real(p.hbar()) * Real(p.hbar()))),
          values_(2 * grid.size() - 1) {
        const Real half = Real(grid.step()) / 2;
        for (std::size_t j = 0; j < values_.size(); ++j)
            values_[j] = p.at(Real(grid.x_min()) + static_cast<Real>(j) * half);
    }

    const Grid& grid() const noexcept { return grid_; }
    /// 2m/hbar^2.
    Real scale() const noexcept { return scale_; }
    Real half_point(std::size_t j) const noexcept { return values_[j]; }

private:
    Grid grid_;
    Real scale_;
    std::vector<Real> values_;
};

template <std::floating_point Real>
struct RawTrial {
    std::vector<Real> samples;
    int node_count = 0;
    Real terminal_value = 0;
    std::optional<std::size_t> early_stop;
};

template <std::floating_point Real>
RawTrial<Real> integrate(const PotentialTable<Real>& table, Real energy, Real seed) {
    const Grid& grid = table.grid();
    const std::size_t n = grid.size();
    const Real h = Real(grid.step());
    const Real s = table.scale();

    RawTrial<Real> out;
    out.samples.assign(n, Real(0));
    Real psi = 0;
    Real dpsi = seed;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Real k0 = s * (table.half_point(2 * i) - energy);
        const Real km = s * (table.half_point(2 * i + 1) - energy);
        const Real k1 = s * (table.half_point(2 * i + 2) - energy);

        const Real a1 = dpsi;
        const Real b1 = k0 * psi;
        const Real a2 = dpsi + h / 2 * b1;
        const Real b2 = km * (psi + h / 2 * a1);
        const Real a3 = dpsi + h / 2 * b2;
        const Real b3 = km * (psi + h / 2 * a2);
        const Real a4 = dpsi + h * b3;
        const Real b4 = k1 * (psi + h * a3);

        psi += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
        dpsi += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);

        if (!(std::abs(psi) <= Real(overflow_guard))) {
            const Real clamp = std::copysign(Real(overflow_guard), psi);
            std::fill(out.samples.begin() + static_cast<std::ptrdiff_t>(i + 1), out.samples.end(), clamp);
            out.early_stop = i + 1;
            break;
        }
        out.samples[i + 1] = psi;
    }
    out.node_count = count_sign_changes<Real>(out.samples);
    out.terminal_value = out.samples.back();
    return out;
}

/// Last index kept: the final local minimum of |v| before the trailing growth,
/// stepped back one sample if that minimum already sits past a sign change.
inline std::size_t tail_cut_index(std::span<const double> v) {
    std::size_t i = v.size() - 1;
    while (i > 0 && std::abs(v[i - 1]) <= std::abs(v[i])) --i;
    if (i > 0 && v[i] * v[i - 1] < 0.0) --i;
    return i;
}

inline void validate(const ShootingOptions& opts) {
    if (opts.max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
    if (!(opts.energy_tolerance > 0.0)) throw InvalidArgument("energy tolerance must be positive");
    if (opts.scan_steps < 1) throw InvalidArgument("scan_steps must be >= 1");
}

}  // namespace detail

/// RK4 trial solution at energy E with psi(x_min) = 0 and psi'(x_min) = seed.
/// node_count counts every interior sign change reached before any overflow stop.
inline TrialSolution integrate_trial(const MorsePotential& p, double energy, const Grid& grid,
                                     double seed = 1e-6) {
    if (!(energy < 0.0)) throw InvalidArgument("trial energy must be negative");
    auto raw = detail::integrate(detail::PotentialTable<double>(p, grid), energy, seed);
    return {std::move(raw.samples), raw.node_count, raw.terminal_value, raw.early_stop};
}

/// Grid used for level n. With adaptive_domain the right end grows to
/// x0 + max(10, 8/kappa), kappa from the closed-form estimate of E_n, and never
/// drops below the configured x_max.
inline Grid resolve_grid(const MorsePotential& p, int n, const ShootingOptions& opts) {
    if (!opts.adaptive_domain) return opts.grid;
    const auto levels = analytic_spectrum(p);
    if (levels.empty()) return opts.grid;
    const double estimate = levels[std::min<std::size_t>(static_cast<std::size_t>(n), levels.size() - 1)];
    const double kappa = std::sqrt(2.0 * p.mass() * std::abs(estimate)) / p.hbar();
    const double extent = p.x0() + std::max(10.0, 8.0 / kappa);
    const double x_max = std::max(opts.grid.x_max(), extent);
    return Grid(opts.grid.x_min(), x_max, opts.grid.step());
}

/// Eigenvalue of the level with n nodes on `grid`, computed entirely in Real.
/// Node counts over a uniform energy ladder bracket the n -> n+1 transition,
/// then bisection on the sign of psi(x_max) refines it.
template <std::floating_point Real = double>
Real shoot_eigenvalue(const MorsePotential& p, int n, const ShootingOptions& opts, const Grid& grid) {
    if (n < 0) throw InvalidArgument("quantum number must be non-negative");
    detail::validate(opts);

    const detail::PotentialTable<Real> table(p, grid);
    const Real seed = Real(opts.slope_seed);
    const auto nodes_at = [&](Real e) { return detail::integrate(table, e, seed).node_count; };

    const Real e_bottom = -Real(p.depth()) * (1 - Real(1e-6));
    const Real e_top = Real(-1e-6);
    const Real de = (e_top - e_bottom) / opts.scan_steps;

    Real lo = e_bottom;
    Real hi = e_top;
    bool found = false;
    for (int i = 1; i <= opts.scan_steps; ++i) {
        const Real e = (i == opts.scan_steps) ? e_top : e_bottom + i * de;
        if (nodes_at(e) >= n + 1) {
            lo = e_bottom + (i - 1) * de;
            hi = e;
            found = true;
            break;
        }
    }
    if (!found)
        throw NoSuchBoundState("no bound state with n = " + std::to_string(n) + " for c = " +
                               std::to_string(p.depth()));

    int iterations = 0;
    // Narrow until the bracket holds exactly the n -> n+1 transition.
    int lo_nodes = nodes_at(lo);
    int hi_nodes = nodes_at(hi);
    while (lo_nodes != n || hi_nodes != n + 1) {
        if (++iterations > opts.max_iterations)
            throw NoConvergence("node bracket for n = " + std::to_string(n) + " did not isolate");
        const Real mid = (lo + hi) / 2;
        const int m = nodes_at(mid);
        if (m <= n) {
            lo = mid;
            lo_nodes = m;
        } else {
            hi = mid;
            hi_nodes = m;
        }
    }

    const Real lo_sign = std::copysign(Real(1), detail::integrate(table, lo, seed).terminal_value);
    const auto tolerance = [&](Real e) { return Real(opts.energy_tolerance) * std::max(Real(1), std::abs(e)); };
    while (hi - lo > tolerance((lo + hi) / 2)) {
        const Real mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;  // bracket is one ulp wide
        if (++iterations > opts.max_iterations)
            throw NoConvergence("bisection for n = " + std::to_string(n) + " exhausted " +
                                std::to_string(opts.max_iterations) + " iterations");
        const Real t = detail::integrate(table, mid, seed).terminal_value;
        if (t == 0) {
            lo = hi = mid;
            break;
        }
        (std::copysign(Real(1), t) == lo_sign ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

/// Bound state on an explicit grid (adaptive_domain ignored).
inline BoundState find_bound_state_on(const MorsePotential& p, int n, const ShootingOptions& opts,
                                      const Grid& grid) {
    const double energy = shoot_eigenvalue<double>(p, n, opts, grid);
    auto trial = detail::integrate(detail::PotentialTable<double>(p, grid), energy, opts.slope_seed);
    const std::size_t cut = detail::tail_cut_index(trial.samples);
    std::fill(trial.samples.begin() + static_cast<std::ptrdiff_t>(cut) + 1, trial.samples.end(), 0.0);
    return BoundState{n, energy, normalize(GridWavefunction{grid, std::move(trial.samples), false}), p.depth()};
}

/// Eigenvalue and normalized, tail-cut eigenfunction of the level with n nodes.
inline BoundState find_bound_state(const MorsePotential& p, int n, const ShootingOptions& opts = {}) {
    return find_bound_state_on(p, n, opts, resolve_grid(p, n, opts));
}

/// Every bound state in ascending energy. Each level uses its own resolved grid.
inline std::vector<BoundState> all_bound_states(const MorsePotential& p, const ShootingOptions& opts = {}) {
    std::vector<BoundState> states;
    for (int n = 0;; ++n) {
        try {
            states.push_back(find_bound_state(p, n, opts));
        } catch (const NoSuchBoundState&) {
            break;
        }
    }
    return states;
}

}  // namespace morse
