#include <cmath>

#include <gtest/gtest.h>

#include "morse/fd_oracle.hpp"
#include "morse/observables.hpp"

using morse::Grid;
using morse::MorsePotential;
using morse::ShootingOptions;

namespace {

struct Pair {
    morse::BoundState s0, s1;
};

const Pair& depth_ten() {
    static const Pair p = [] {
        auto [a, b] = morse::solve_two_lowest(MorsePotential(10.0), ShootingOptions{});
        return Pair{a, b};
    }();
    return p;
}

}  // namespace

TEST(Moment, NormalizationAndOrthogonality) {
    const auto& [s0, s1] = depth_ten();
    EXPECT_NEAR(morse::moment(s0.wavefunction, s0.wavefunction, 0), 1.0, 1e-6);
    EXPECT_NEAR(morse::moment(s1.wavefunction, s1.wavefunction, 0), 1.0, 1e-6);
    EXPECT_NEAR(morse::moment(s0.wavefunction, s1.wavefunction, 0), 0.0, 1e-4);
}

TEST(Moment, ExactlySymmetric) {
    const auto& [s0, s1] = depth_ten();
    for (int k : {0, 1, 2, 3})
        EXPECT_EQ(morse::moment(s0.wavefunction, s1.wavefunction, k), morse::moment(s1.wavefunction, s0.wavefunction, k));
}

TEST(Moment, GroundStateMeanPositionMatchesOracle) {
    const auto& [s0, s1] = depth_ten();
    const double mean = morse::moment(s0.wavefunction, s0.wavefunction, 1);
    EXPECT_GT(mean, 1.0);
    EXPECT_LT(mean, 1.5);
    const auto fd = morse::fd_reference_states(MorsePotential(10.0), s0.wavefunction.grid, 1);
    EXPECT_NEAR(morse::moment(fd[0].wavefunction, fd[0].wavefunction, 1), mean, 1e-3);
}

TEST(Moment, GuardsInputs) {
    const auto& [s0, s1] = depth_ten();
    auto other = morse::find_bound_state_on(MorsePotential(10.0), 0, ShootingOptions{}, Grid(0.0, 12.0, 2e-3));
    EXPECT_THROW(morse::moment(s0.wavefunction, other.wavefunction, 1), morse::GridMismatch);
    EXPECT_THROW(morse::moment(s0.wavefunction, s0.wavefunction, -1), morse::InvalidArgument);
    auto raw = s0.wavefunction;
    raw.normalized = false;
    EXPECT_THROW(morse::moment(raw, s0.wavefunction, 0), morse::InvalidArgument);
}

TEST(TransitionDipole, SignDeterministicAndBounded) {
    const auto& [s0, s1] = depth_ten();
    const auto d = morse::transition_dipole(s0, s1);
    const auto again = morse::transition_dipole(s0, s1);
    EXPECT_EQ(d.value, again.value);
    EXPECT_DOUBLE_EQ(d.depth, 10.0);
    EXPECT_LT(d.error_estimate, 1e-6);
    // Cauchy-Schwarz with the second moment of phi_0
    const double x2 = morse::moment(s0.wavefunction, s0.wavefunction, 2);
    EXPECT_LE(std::abs(d.value), std::sqrt(x2));
    EXPECT_THROW(morse::transition_dipole(s1, s0), morse::InvalidArgument);
}

TEST(TransitionDipole, AgreesWithFiniteDifferenceStates) {
    for (double c : {6.0, 8.0, 10.0, 12.0, 14.0}) {
        const MorsePotential p(c);
        const auto [s0, s1] = morse::solve_two_lowest(p, ShootingOptions{});
        const double d = morse::transition_dipole(s0, s1).value;
        const auto fd = morse::fd_reference_states(p, s0.wavefunction.grid, 2);
        const double d_fd = morse::moment(fd[0].wavefunction, fd[1].wavefunction, 1);
        EXPECT_NEAR(std::abs(d), std::abs(d_fd), 5e-3) << "c=" << c;
    }
}

TEST(DipoleSweep, ShallowRowMarked) {
    const auto rows = morse::dipole_sweep({3.0, 10.0}, ShootingOptions{});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].status, "NoSuchBoundState");
    EXPECT_FALSE(rows[0].dipole.has_value());
    EXPECT_EQ(rows[1].status, "ok");
    ASSERT_TRUE(rows[1].dipole.has_value());
    EXPECT_GT(std::abs(rows[1].dipole->value), 0.1);
}
