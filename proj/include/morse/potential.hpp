#pragma once

// Morse potential V(x) = c (exp(-2 alpha (x - x0)) - 2 exp(-alpha (x - x0))),
// its harmonic/anharmonic approximation and the closed-form full-line spectrum.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "morse/errors.hpp"

namespace morse {

/// Harmonic frequency and anharmonicity constant of the second-order expansion.
struct AnharmonicApprox {
    double omega;  // alpha * sqrt(2c/m)
    double chi;    // hbar * omega / (4c)
};

class MorsePotential {
public:
    MorsePotential(double depth, double alpha = 2.0, double x0 = 1.0, double mass = 1.0,
                   double hbar = 1.0)
        : depth_(depth), alpha_(alpha), x0_(x0), mass_(mass), hbar_(hbar) {
        if (!(depth > 0.0) || !std::isfinite(depth))
            throw InvalidArgument("well depth c must be positive, got " + std::to_string(depth));
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw InvalidArgument("alpha must be positive, got " + std::to_string(alpha));
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw InvalidArgument("mass must be positive, got " + std::to_string(mass));
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw InvalidArgument("hbar must be positive, got " + std::to_string(hbar));
        if (!std::isfinite(x0)) throw InvalidArgument("x0 must be finite");
    }

    double depth() const noexcept { return depth_; }
    double alpha() const noexcept { return alpha_; }
    double x0() const noexcept { return x0_; }
    double mass() const noexcept { return mass_; }
    double hbar() const noexcept { return hbar_; }

    double operator()(double x) const noexcept { return at(x); }

    /// V(x) evaluated in the caller's floating-point type.
    template <std::floating_point Real>
    Real at(Real x) const noexcept {
        const Real e = std::exp(-Real(alpha_) * (x - Real(x0_)));
        return Real(depth_) * (e * e - Real(2) * e);
    }

    AnharmonicApprox anharmonic() const noexcept {
        const double omega = alpha_ * std::sqrt(2.0 * depth_ / mass_);
        return {omega, hbar_ * omega / (4.0 * depth_)};
    }

    /// Well-depth parameter lambda = sqrt(2 m c) / (alpha hbar).
    double lambda() const noexcept { return std::sqrt(2.0 * mass_ * depth_) / (alpha_ * hbar_); }

private:
    double depth_;
    double alpha_;
    double x0_;
    double mass_;
    double hbar_;
};

inline double evaluate_potential(const MorsePotential& p, double x) noexcept { return p(x); }

/// (n + 1/2)(1 - chi (n + 1/2)) hbar omega, measured from the bottom of the well.
/// Evaluated for any n, including levels that are not bound.
inline double anharmonic_spectrum(const MorsePotential& p, int n) {
    if (n < 0) throw InvalidArgument("level index must be non-negative");
    const auto [omega, chi] = p.anharmonic();
    const double k = n + 0.5;
    return k * (1.0 - chi * k) * p.hbar() * omega;
}

/// Number of n with n + 1/2 < lambda. A level exactly at threshold is not bound.
inline std::size_t bound_state_count(const MorsePotential& p) noexcept {
    const double lam = p.lambda();
    if (lam <= 0.5) return 0;
    auto count = static_cast<std::size_t>(std::ceil(lam - 0.5));
    while (count > 0 && (static_cast<double>(count - 1) + 0.5) >= lam) --count;
    return count;
}

/// Closed-form full-line spectrum E_n = -c (1 - (n + 1/2)/lambda)^2 for every bound n.
inline std::vector<double> analytic_spectrum(const MorsePotential& p) {
    const double lam = p.lambda();
    const std::size_t count = bound_state_count(p);
    std::vector<double> levels;
    levels.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double r = 1.0 - (static_cast<double>(n) + 0.5) / lam;
        levels.push_back(-p.depth() * r * r);
    }
    return levels;
}

}  // namespace morse
