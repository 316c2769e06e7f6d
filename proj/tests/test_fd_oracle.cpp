#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "morse/fd_oracle.hpp"

using morse::Grid;
using morse::MorsePotential;

namespace {

// Cyclic Jacobi on a small dense symmetric matrix; independent of the Sturm count.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

TEST(FdOracle, DepthTenAndTwelve) {
    const Grid g(0.0, 12.0, 2.5e-3);
    const auto s10 = morse::fd_reference_spectrum(MorsePotential(10.0), g, 2);
    EXPECT_NEAR(s10[0], -6.028, 1e-3);
    EXPECT_NEAR(s10[1], -1.084, 2e-3);
    const auto s12 = morse::fd_reference_spectrum(MorsePotential(12.0), g, 2);
    EXPECT_NEAR(s12[0], -7.601, 1e-3);
    EXPECT_NEAR(s12[1], -1.803, 2e-3);
}

TEST(FdOracle, NoNegativeEigenvalueForShallowWell) {
    EXPECT_THROW(morse::fd_reference_spectrum(MorsePotential(0.1), Grid(0.0, 12.0, 1e-2), 1), morse::GridTooCoarse);
    EXPECT_THROW(morse::fd_reference_spectrum(MorsePotential(10.0), Grid(0.0, 12.0, 1e-2), 3), morse::GridTooCoarse);
    EXPECT_THROW(morse::fd_reference_spectrum(MorsePotential(10.0), Grid(0.0, 12.0, 1e-2), 0), morse::InvalidArgument);
}

TEST(FdOracle, SturmBisectionMatchesDenseJacobi) {
    const MorsePotential p(10.0);
    const Grid g(0.0, 6.0, 0.06);  // 99 interior points
    const morse::FdHamiltonian<double> H(p, g);
    const std::size_t m = H.size();
    std::vector<std::vector<double>> dense(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        dense[i][i] = H.diagonal(i);
        if (i + 1 < m) dense[i][i + 1] = dense[i + 1][i] = H.off_diagonal();
    }
    const auto ev = jacobi_eigenvalues(dense);
    const auto sturm = morse::fd_reference_spectrum(p, g, 2);
    EXPECT_NEAR(sturm[0], ev[0], 1e-9);
    EXPECT_NEAR(sturm[1], ev[1], 1e-9);
    for (double x : {-8.0, -3.0, 0.0, 50.0})
        EXPECT_EQ(H.count_below(x), static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double e) { return e < x; })));
}

TEST(FdOracle, LongDoubleAgreesWithDouble) {
    const Grid g(0.0, 12.0, 1e-3);
    const auto d = morse::fd_reference_spectrum<double>(MorsePotential(10.0), g, 2);
    const auto ld = morse::fd_reference_spectrum<long double>(MorsePotential(10.0), g, 2);
    EXPECT_NEAR(d[0], static_cast<double>(ld[0]), 1e-10);
    EXPECT_NEAR(d[1], static_cast<double>(ld[1]), 1e-10);
}

TEST(FdOracle, EigenvectorResidualIsSmall) {
    const MorsePotential p(10.0);
    const Grid g(0.0, 12.0, 2.5e-3);
    const auto states = morse::fd_reference_states(p, g, 2);
    const morse::FdHamiltonian<double> H(p, g);
    for (const auto& s : states) {
        const auto& v = s.wavefunction.values;
        double residual = 0.0, norm = 0.0;
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            const double hv = H.diagonal(i - 1) * v[i] + H.off_diagonal() * (v[i - 1] + v[i + 1]);
            residual = std::max(residual, std::abs(hv - s.energy * v[i]));
            norm = std::max(norm, std::abs(v[i]));
        }
        EXPECT_LT(residual / norm, 1e-8);
        EXPECT_EQ(v.front(), 0.0);
        EXPECT_EQ(v.back(), 0.0);
    }
    EXPECT_EQ(morse::detail::count_sign_changes<double>(states[0].wavefunction.values), 0);
    EXPECT_EQ(morse::detail::count_sign_changes<double>(states[1].wavefunction.values), 1);
}
