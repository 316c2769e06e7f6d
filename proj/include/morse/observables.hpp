#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morse/errors.hpp"
#include "morse/grid.hpp"
#include "morse/shooting.hpp"

namespace morse {

struct DipoleResult {
    double value = 0.0;           // signed <phi_0 | x | phi_1>
    double depth = 0.0;           // c the states were solved for
    double error_estimate = 0.0;  // |I_h - I_2h| / 15
};

namespace detail {

inline std::vector<double> moment_integrand(const GridWavefunction& wa, const GridWavefunction& wb, int k) {
    if (!(wa.grid == wb.grid)) throw GridMismatch("wavefunctions live on different grids");
    if (k < 0) throw InvalidArgument("moment order must be non-negative");
    if (!wa.normalized || !wb.normalized) throw InvalidArgument("moment requires normalized wavefunctions");
    std::vector<double> f(wa.values.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = wa.grid.x_at(i);
        // a*b first so swapping a and b gives the identical value
        const double ab = wa.values[i] * wb.values[i];
        f[i] = (k == 0 ? 1.0 : std::pow(x, k)) * ab;
    }
    return f;
}

}  // namespace detail

/// Simpson quadrature of phi_a(x) x^k phi_b(x) on the shared grid.
inline double moment(const GridWavefunction& wa, const GridWavefunction& wb, int k) {
    return simpson(detail::moment_integrand(wa, wb, k), wa.grid.step());
}

/// d = <phi_0 | x | phi_1> with a Richardson error estimate from the
/// half-sampled grid.
inline DipoleResult transition_dipole(const BoundState& s0, const BoundState& s1) {
    if (s0.n != 0 || s1.n != 1) throw InvalidArgument("transition dipole needs the n = 0 and n = 1 states");
    const auto f = detail::moment_integrand(s0.wavefunction, s1.wavefunction, 1);
    const double h = s0.wavefunction.grid.step();
    const double fine = simpson(f, h);

    std::vector<double> coarse_samples;
    coarse_samples.reserve(f.size() / 2 + 1);
    for (std::size_t i = 0; i < f.size(); i += 2) coarse_samples.push_back(f[i]);
    const double coarse = simpson(coarse_samples, 2.0 * h);

    return {fine, s0.depth, std::abs(fine - coarse) / 15.0};
}

/// Solves n = 0 and n = 1 on one common grid. With adaptive_domain the grid is
/// the one resolved for n = 1, which is the wider of the two.
inline std::pair<BoundState, BoundState> solve_two_lowest(const MorsePotential& p, const ShootingOptions& opts) {
    const Grid grid = resolve_grid(p, 1, opts);
    BoundState s0 = find_bound_state_on(p, 0, opts, grid);
    BoundState s1 = find_bound_state_on(p, 1, opts, grid);
    return {std::move(s0), std::move(s1)};
}

struct DipoleSweepRow {
    double depth = 0.0;
    std::optional<DipoleResult> dipole;
    std::string status;  // "ok" or the error class name
};

/// Transition dipole as a function of well depth. Shallow wells without a
/// second bound state produce a NoSuchBoundState row instead of throwing.
inline DipoleSweepRow dipole_at_depth(double depth, const ShootingOptions& opts, double alpha = 2.0,
                                      double x0 = 1.0, double mass = 1.0, double hbar = 1.0) {
    DipoleSweepRow row;
    row.depth = depth;
    try {
        const MorsePotential p(depth, alpha, x0, mass, hbar);
        const auto [s0, s1] = solve_two_lowest(p, opts);
        row.dipole = transition_dipole(s0, s1);
        row.status = "ok";
    } catch (const NoSuchBoundState&) {
        row.status = "NoSuchBoundState";
    } catch (const NoConvergence&) {
        row.status = "NoConvergence";
    }
    return row;
}

inline std::vector<DipoleSweepRow> dipole_sweep(const std::vector<double>& depths, const ShootingOptions& opts,
                                                double alpha = 2.0, double x0 = 1.0, double mass = 1.0,
                                                double hbar = 1.0) {
    std::vector<DipoleSweepRow> rows;
    rows.reserve(depths.size());
    for (double c : depths) rows.push_back(dipole_at_depth(c, opts, alpha, x0, mass, hbar));
    return rows;
}

}  // namespace morse
