#pragma once

// Two independent Morse modes, each truncated to its two lowest levels.
// A product state with real coefficients a_i^0 = cos(theta_i), a_i^1 = sin(theta_i)
// has <E> = sum_i cos^2 E_i^0 + sin^2 E_i^1, so constant-<E> sets are ellipses
//   (a_1^0)^2 dE_1 + (a_2^0)^2 dE_2 = E_1^1 + E_2^1 - <E>
// clipped to the square |a_i^0| <= 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "morse/errors.hpp"
#include "morse/observables.hpp"
#include "morse/potential.hpp"
#include "morse/shooting.hpp"

namespace morse {

struct ModeSpectrum {
    double e0 = 0.0;
    double e1 = 0.0;
    double dipole = 0.0;  // signed transition dipole
    int label = 1;

    double gap() const noexcept { return e1 - e0; }
};

inline ModeSpectrum make_mode(double e0, double e1, double dipole, int label) {
    if (!(e0 < e1 && e1 < 0.0))
        throw InvalidArgument("mode energies must satisfy e0 < e1 < 0 (got " + std::to_string(e0) + ", " +
                              std::to_string(e1) + ")");
    return {e0, e1, dipole, label};
}

/// Mode built from the closed-form levels; the dipole is supplied by the caller.
inline ModeSpectrum mode_from_analytic(const MorsePotential& p, double dipole, int label) {
    const auto levels = analytic_spectrum(p);
    if (levels.size() < 2)
        throw NoSuchBoundState("c = " + std::to_string(p.depth()) + " has fewer than two bound levels");
    return make_mode(levels[0], levels[1], dipole, label);
}

/// Mode with shooting energies and the shooting transition dipole.
inline ModeSpectrum mode_from_solver(const MorsePotential& p, const ShootingOptions& opts, int label) {
    const auto [s0, s1] = solve_two_lowest(p, opts);
    return make_mode(s0.energy, s1.energy, transition_dipole(s0, s1).value, label);
}

class TwoModeSystem {
public:
    TwoModeSystem(ModeSpectrum mode1, ModeSpectrum mode2) : modes_{mode1, mode2} {
        for (const auto& m : modes_)
            if (!(m.gap() > 0.0)) throw InvalidArgument("each mode needs a strictly positive energy gap");
    }

    const ModeSpectrum& mode1() const noexcept { return modes_[0]; }
    const ModeSpectrum& mode2() const noexcept { return modes_[1]; }
    const ModeSpectrum& mode(int label) const {
        if (label != 1 && label != 2) throw InvalidArgument("mode label must be 1 or 2");
        return modes_[static_cast<std::size_t>(label - 1)];
    }

    double max_energy() const noexcept { return modes_[0].e1 + modes_[1].e1; }
    double min_energy() const noexcept { return modes_[0].e0 + modes_[1].e0; }

private:
    ModeSpectrum modes_[2];
};

/// Maps an angle into (-pi, pi].
inline double wrap_angle(double theta) noexcept {
    double r = std::remainder(theta, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
    return r;
}

struct ProductState {
    double theta1 = 0.0;
    double theta2 = 0.0;

    static ProductState from_angles(double t1, double t2) noexcept { return {wrap_angle(t1), wrap_angle(t2)}; }

    double theta(int label) const { return label == 1 ? theta1 : theta2; }
    double ground_coefficient(int label) const { return std::cos(theta(label)); }
    double excited_coefficient(int label) const { return std::sin(theta(label)); }
};

inline double energy_expectation(const TwoModeSystem& sys, const ProductState& s) {
    double total = 0.0;
    for (int label : {1, 2}) {
        const ModeSpectrum& m = sys.mode(label);
        const double c = std::cos(s.theta(label));
        const double sn = std::sin(s.theta(label));
        total += c * c * m.e0 + sn * sn * m.e1;
    }
    return total;
}

enum class LevelSetKind { Empty, Point, FullEllipse, ClippedArcs };

inline const char* to_string(LevelSetKind k) noexcept {
    switch (k) {
        case LevelSetKind::Empty: return "Empty";
        case LevelSetKind::Point: return "Point";
        case LevelSetKind::FullEllipse: return "FullEllipse";
        case LevelSetKind::ClippedArcs: return "ClippedArcs";
    }
    return "Unknown";
}

struct CoefficientPoint {
    double a1 = 0.0;  // a_1^0
    double a2 = 0.0;  // a_2^0
};

struct LevelSetCurve {
    double target = 0.0;
    LevelSetKind kind = LevelSetKind::Empty;
    double semi_axis_1 = 0.0;
    double semi_axis_2 = 0.0;
    std::vector<CoefficientPoint> samples;
    /// Start index of each arc in samples; a full ellipse is one closed arc.
    std::vector<std::size_t> arc_starts;
};

/// Left side minus right side of the ellipse equation at one point.
inline double level_set_residual(const TwoModeSystem& sys, double target, const CoefficientPoint& pt) {
    return pt.a1 * pt.a1 * sys.mode1().gap() + pt.a2 * pt.a2 * sys.mode2().gap() - (sys.max_energy() - target);
}

/// True iff the whole ellipse fits in the unit square: E_1^0 + E_2^1 <= <E> and
/// E_1^1 + E_2^0 <= <E>, i.e. both semi-axes are at most one.
inline bool full_ellipse_condition(const TwoModeSystem& sys, double target) {
    return sys.mode1().e0 + sys.mode2().e1 <= target && sys.mode1().e1 + sys.mode2().e0 <= target;
}

namespace detail {

struct ArcInterval {
    double begin;
    double end;
};

/// Ellipse point at parameter t, snapped onto the square edge when t is a clip parameter.
inline CoefficientPoint clipped_point(const TwoModeSystem& sys, double rhs, double a1_axis, double a2_axis,
                                      double t, bool snap) {
    CoefficientPoint pt{a1_axis * std::cos(t), a2_axis * std::sin(t)};
    pt.a1 = std::clamp(pt.a1, -1.0, 1.0);
    pt.a2 = std::clamp(pt.a2, -1.0, 1.0);
    if (!snap) return pt;
    const double g1 = sys.mode1().gap();
    const double g2 = sys.mode2().gap();
    // Put the coordinate nearest the square exactly on it and solve for the other.
    if (std::abs(std::abs(pt.a1) - 1.0) <= std::abs(std::abs(pt.a2) - 1.0)) {
        pt.a1 = std::copysign(1.0, pt.a1);
        pt.a2 = std::copysign(std::sqrt(std::max(0.0, (rhs - g1) / g2)), pt.a2);
    } else {
        pt.a2 = std::copysign(1.0, pt.a2);
        pt.a1 = std::copysign(std::sqrt(std::max(0.0, (rhs - g2) / g1)), pt.a1);
    }
    return pt;
}

}  // namespace detail

/// Classifies and samples the constant-<E> set at `target`.
inline LevelSetCurve level_set(const TwoModeSystem& sys, double target, int n_samples) {
    if (n_samples < 8) throw InvalidArgument("level_set needs at least 8 samples");
    constexpr double two_pi = 2.0 * std::numbers::pi;

    LevelSetCurve curve;
    curve.target = target;
    const double e_max = sys.max_energy();
    const double tie = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(e_max));

    if (target > e_max + tie || target < sys.min_energy()) {
        curve.kind = LevelSetKind::Empty;
        if (target < sys.min_energy()) {
            curve.semi_axis_1 = std::sqrt((e_max - target) / sys.mode1().gap());
            curve.semi_axis_2 = std::sqrt((e_max - target) / sys.mode2().gap());
        }
        return curve;
    }
    if (std::abs(target - e_max) <= tie) {
        curve.kind = LevelSetKind::Point;
        curve.samples.push_back({0.0, 0.0});
        curve.arc_starts.push_back(0);
        return curve;
    }

    const double rhs = e_max - target;
    const double ax1 = std::sqrt(rhs / sys.mode1().gap());
    const double ax2 = std::sqrt(rhs / sys.mode2().gap());
    curve.semi_axis_1 = ax1;
    curve.semi_axis_2 = ax2;

    if (full_ellipse_condition(sys, target)) {
        curve.kind = LevelSetKind::FullEllipse;
        curve.arc_starts.push_back(0);
        for (int j = 0; j < n_samples; ++j) {
            const double t = two_pi * j / n_samples;
            curve.samples.push_back({std::clamp(ax1 * std::cos(t), -1.0, 1.0), std::clamp(ax2 * std::sin(t), -1.0, 1.0)});
        }
        return curve;
    }

    curve.kind = LevelSetKind::ClippedArcs;
    std::vector<double> breaks;
    if (ax1 > 1.0) {
        const double t1 = std::acos(1.0 / ax1);
        breaks.insert(breaks.end(), {t1, std::numbers::pi - t1, std::numbers::pi + t1, two_pi - t1});
    }
    if (ax2 > 1.0) {
        const double t2 = std::asin(1.0 / ax2);
        breaks.insert(breaks.end(), {t2, std::numbers::pi - t2, std::numbers::pi + t2, two_pi - t2});
    }
    std::sort(breaks.begin(), breaks.end());

    const auto inside = [&](double t) {
        return std::abs(ax1 * std::cos(t)) <= 1.0 && std::abs(ax2 * std::sin(t)) <= 1.0;
    };

    std::vector<detail::ArcInterval> arcs;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double b = breaks[i];
        const double e = (i + 1 < breaks.size()) ? breaks[i + 1] : breaks.front() + two_pi;
        if (e - b > 1e-12 && inside(0.5 * (b + e))) arcs.push_back({b, e});
    }
    if (arcs.empty()) {
        // Only isolated touch points remain: the target is the lowest energy and
        // the curve meets the square at its corners.
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            if (i > 0 && breaks[i] - breaks[i - 1] <= 1e-12) continue;
            curve.arc_starts.push_back(curve.samples.size());
            curve.samples.push_back(detail::clipped_point(sys, rhs, ax1, ax2, breaks[i], true));
        }
        return curve;
    }

    double total = 0.0;
    for (const auto& a : arcs) total += a.end - a.begin;
    for (const auto& a : arcs) {
        const int count = std::max(2, static_cast<int>(std::lround(n_samples * (a.end - a.begin) / total)));
        curve.arc_starts.push_back(curve.samples.size());
        for (int j = 0; j < count; ++j) {
            const double t = a.begin + (a.end - a.begin) * j / (count - 1);
            const bool endpoint = (j == 0 || j == count - 1);
            curve.samples.push_back(detail::clipped_point(sys, rhs, ax1, ax2, t, endpoint));
        }
    }
    return curve;
}

}  // namespace morse
