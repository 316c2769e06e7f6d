#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "morse/errors.hpp"

namespace morse {

/// Uniform grid x_i = x_min + i h, i = 0 .. n_points - 1.
class Grid {
public:
    static constexpr std::size_t min_points = 16;

    Grid(double x_min, double x_max, double step) : x_min_(x_min), step_(step) {
        if (!(x_min >= 0.0)) throw InvalidArgument("grid x_min must be >= 0");
        if (!(x_max > x_min)) throw InvalidArgument("grid x_max must exceed x_min");
        if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("grid step must be positive");
        const double count = std::round((x_max - x_min) / step) + 1.0;
        if (count < static_cast<double>(min_points))
            throw InvalidArgument("grid needs at least 16 points, got " + std::to_string(count));
        n_points_ = static_cast<std::size_t>(count);
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_at(n_points_ - 1); }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return n_points_; }
    double x_at(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * step_; }

    bool operator==(const Grid&) const = default;

private:
    double x_min_;
    double step_;
    std::size_t n_points_ = 0;
};

/// Composite Simpson rule on uniformly spaced samples. An odd number of
/// intervals closes with Simpson's 3/8 rule over the last three.
inline double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    if (n == 4) return 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);

    const std::size_t intervals = n - 1;
    const std::size_t simpson_end = (intervals % 2 == 0) ? n - 1 : n - 4;
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < simpson_end; ++i) (i % 2 ? odd : even) += f[i];
    double sum = h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[simpson_end]);
    if (simpson_end != n - 1) {
        const std::size_t j = simpson_end;
        sum += 3.0 * h / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
    }
    return sum;
}

/// Real samples of a wavefunction on a Grid.
struct GridWavefunction {
    Grid grid;
    std::vector<double> values;
    bool normalized = false;
};

namespace detail {

/// Number of sign changes between consecutive nonzero samples.
template <class Real = double>
int count_sign_changes(std::span<const Real> v) {
    int changes = 0;
    int last_sign = 0;
    for (Real x : v) {
        const int s = (x > Real(0)) - (x < Real(0));
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) ++changes;
        last_sign = s;
    }
    return changes;
}

/// Index of the first local maximum of |v|; the last index if |v| never turns over.
inline std::size_t first_extremum(std::span<const double> v) {
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > 0.0 && a >= std::abs(v[i - 1]) && a > std::abs(v[i + 1])) return i;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    return best;
}

}  // namespace detail

/// Scales to unit Simpson norm and flips the sign so that the first local
/// extremum is positive.
inline GridWavefunction normalize(GridWavefunction w) {
    if (w.values.size() != w.grid.size())
        throw InvalidArgument("wavefunction sample count does not match its grid");
    bool any = false;
    for (double v : w.values) any = any || std::abs(v) >= 1e-300;
    if (!any) throw ZeroFunction("cannot normalize: all samples are below 1e-300");

    // Pre-scale so squaring cannot overflow or underflow.
    double peak = 0.0;
    for (double v : w.values) peak = std::max(peak, std::abs(v));
    std::vector<double> sq(w.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) {
        w.values[i] /= peak;
        sq[i] = w.values[i] * w.values[i];
    }
    const double norm = std::sqrt(simpson(sq, w.grid.step()));
    if (!(norm > 0.0)) throw ZeroFunction("cannot normalize: zero quadrature norm");

    const double sign = w.values[detail::first_extremum(w.values)] < 0.0 ? -1.0 : 1.0;
    const double scale = sign / norm;
    for (double& v : w.values) v *= scale;
    w.normalized = true;
    return w;
}

}  // namespace morse
