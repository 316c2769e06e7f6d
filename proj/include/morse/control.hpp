#pragma once

// Product-space rotations U = U_1 (x) U_2 on real two-level factors and an
// idealized resonant square-pulse plan that realizes them.
//
// Pulse model: under the rotating-wave approximation a resonant pulse of area
// A = |d| * amplitude * duration / hbar rotates the real coefficient vector by
// A / 2, so an area-pi pulse swaps |0> and |1>.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "morse/errors.hpp"
#include "morse/levelset.hpp"

namespace morse {

using Matrix2 = std::array<std::array<double, 2>, 2>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

inline Matrix2 rotation_matrix(double angle) noexcept {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {{{c, -s}, {s, c}}};
}

inline Matrix4 kronecker(const Matrix2& a, const Matrix2& b) noexcept {
    Matrix4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return out;
}

struct RotationPlan {
    double delta1 = 0.0;
    double delta2 = 0.0;

    double delta(int label) const { return label == 1 ? delta1 : delta2; }
    Matrix2 factor(int label) const { return rotation_matrix(delta(label)); }
    /// Full 4x4 operator on the basis |00>, |01>, |10>, |11>.
    Matrix4 unitary() const { return kronecker(factor(1), factor(2)); }
};

/// theta = atan2(a1, a0) in (-pi, pi]; requires a0^2 + a1^2 = 1 within 1e-9.
inline double angles_of(double a0, double a1) {
    const double norm = a0 * a0 + a1 * a1;
    if (!(std::abs(norm - 1.0) <= 1e-9))
        throw NotNormalized("coefficients (" + std::to_string(a0) + ", " + std::to_string(a1) +
                            ") are not on the unit circle");
    return wrap_angle(std::atan2(a1, a0));
}

inline RotationPlan plan_rotation(const ProductState& from, const ProductState& to) noexcept {
    return {wrap_angle(to.theta1 - from.theta1), wrap_angle(to.theta2 - from.theta2)};
}

inline ProductState apply_rotation(const RotationPlan& rot, const ProductState& s) noexcept {
    return {wrap_angle(s.theta1 + rot.delta1), wrap_angle(s.theta2 + rot.delta2)};
}

struct Pulse {
    int mode = 1;
    double carrier = 0.0;    // (E^1 - E^0) / hbar
    double area = 0.0;       // 2 |delta theta|
    double amplitude = 0.0;  // field amplitude
    double duration = 0.0;   // area / (|d| amplitude)
    int direction = 1;       // sign of the rotation, i.e. the pulse phase
};

struct PulsePlan {
    std::vector<Pulse> pulses;
};

/// One pulse per mode with a nonzero rotation, mode 1 first.
inline PulsePlan plan_pulses(const TwoModeSystem& sys, const RotationPlan& rot, double amplitude, double hbar = 1.0) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw InvalidArgument("pulse amplitude must be positive");
    if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
    PulsePlan plan;
    for (int label : {1, 2}) {
        const double delta = rot.delta(label);
        if (delta == 0.0) continue;
        const ModeSpectrum& m = sys.mode(label);
        const double d = std::abs(m.dipole);
        if (d < 1e-6)
            throw ZeroDipole("mode " + std::to_string(label) + " has |d| = " + std::to_string(d) +
                             "; the transition cannot be driven, a deeper well is required");
        Pulse p;
        p.mode = label;
        p.carrier = m.gap() / hbar;
        p.area = 2.0 * std::abs(delta);
        p.amplitude = amplitude;
        p.duration = p.area / (d * amplitude);
        p.direction = delta > 0.0 ? 1 : -1;
        plan.pulses.push_back(p);
    }
    return plan;
}

}  // namespace morse
