// Copyright 2026 The phosmo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phosmo/fock.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace phosmo;
using phosmo::testing::haar_unitary;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd polynomial_lift(const Eigen::MatrixXcd &u, const FockSector &sector) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sector.size(), sector.size());
    for (std::size_t col = 0; col < sector.size(); ++col) {
        for (const auto &[occ, amp] : phosmo::testing::creation_polynomial_image(u, sector.occupation(col).counts)) {
            out(sector.require_index(Occupation{occ}), col) = amp;
        }
    }
    return out;
}

}  // namespace

TEST(FockSector, TwoModesTwoPhotonsOrdering) {
    FockSector s(2, 2);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s.occupation(0).counts, (std::vector<int>{2, 0}));
    EXPECT_EQ(s.occupation(1).counts, (std::vector<int>{1, 1}));
    EXPECT_EQ(s.occupation(2).counts, (std::vector<int>{0, 2}));
}

TEST(FockSector, SingleModeHasOneState) {
    FockSector s(1, 3);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.occupation(0).counts, (std::vector<int>{3}));
}

TEST(FockSector, ThreeModesTwoPhotonsOrdering) {
    FockSector s(3, 2);
    const std::vector<std::vector<int>> expected{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    ASSERT_EQ(s.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(s.occupation(i).counts, expected[i]);
        EXPECT_EQ(s.index_of(Occupation{expected[i]}), i);
    }
}

TEST(FockSector, DimensionMatchesBinomialAndBasisIsComplete) {
    for (int m = 1; m <= 5; ++m) {
        for (int n = 0; n <= 5; ++n) {
            FockSector s(m, n);
            // C(n+m-1, n) via the multiplicative formula.
            double c = 1.0;
            for (int k = 1; k <= n; ++k) {
                c = c * (m - 1 + k) / k;
            }
            EXPECT_EQ(s.size(), static_cast<std::size_t>(std::llround(c))) << m << " modes, " << n << " photons";
            for (std::size_t i = 0; i < s.size(); ++i) {
                EXPECT_EQ(s.occupation(i).total(), n);
                if (i > 0) {
                    EXPECT_GT(s.occupation(i - 1), s.occupation(i));
                }
            }
        }
    }
}

TEST(FockSector, RejectsBasisBeyondCap) {
    EXPECT_THROW(FockSector(20, 20), std::length_error);
    EXPECT_THROW(FockSector(3, 4, 10), std::length_error);
    EXPECT_FALSE(sector_dimension(40, 40, FockSector::kDefaultMaxBasis).has_value());
    EXPECT_EQ(sector_dimension(3, 4, 100), 15u);
}

TEST(FockSector, ForeignOccupationIsRejected) {
    FockSector s(2, 2);
    EXPECT_FALSE(s.index_of(Occupation{{1, 0}}).has_value());
    EXPECT_THROW(s.require_index(Occupation{{3, 0}}), std::invalid_argument);
}

TEST(PhaseShifter, MultipliesByPhotonCountPhase) {
    auto sector = sector_basis(2, 2);
    const StateVector in = StateVector::basis_state(sector, Occupation{{2, 0}});
    const double phi = 0.37;
    const StateVector out = apply_phase_shifter(in, 0, phi);
    EXPECT_NEAR(std::abs(out.amplitude(Occupation{{2, 0}}) - std::polar(1.0, 2 * phi)), 0.0, 1e-15);
}

TEST(PhaseShifter, NoonStateExample) {
    auto sector = sector_basis(2, 2);
    Eigen::VectorXcd amps(3);
    amps << 1 / std::sqrt(2.0), 0.0, 1 / std::sqrt(2.0);
    const StateVector out = apply_phase_shifter(StateVector(sector, amps), 0, kPi / 2);
    // e^{i pi} = -1 on |2,0>, |0,2> untouched.
    EXPECT_NEAR(std::abs(out.amplitude(Occupation{{2, 0}}) + 1 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude(Occupation{{0, 2}}) - 1 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Permanent, SmallCases) {
    EXPECT_NEAR(std::abs(permanent(Eigen::MatrixXcd::Identity(3, 3)) - 1.0), 0.0, 1e-15);
    Eigen::MatrixXcd m(2, 2);
    m << Complex(1, 2), Complex(3, -1), Complex(0.5, 0), Complex(-2, 1);
    const Complex expected = m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
    EXPECT_NEAR(std::abs(permanent(m) - expected), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(permanent(Eigen::MatrixXcd(0, 0)) - 1.0), 0.0, 0.0);
}

TEST(Permanent, AgreesWithBruteForceUpToSixBySix) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int n = 1; n <= 6; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            Eigen::MatrixXcd m(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    m(i, j) = Complex(normal(rng), normal(rng));
                }
            }
            const Complex ref = phosmo::testing::brute_force_permanent(m);
            EXPECT_NEAR(std::abs(permanent(m) - ref), 0.0, 1e-10 * std::max(1.0, std::abs(ref))) << "n=" << n;
        }
    }
}

TEST(Lift, IdentityLiftsToIdentity) {
    FockSector s(3, 3);
    const Eigen::MatrixXcd lifted = lift_mode_unitary(ModeUnitary::identity(3), s);
    EXPECT_LT((lifted - Eigen::MatrixXcd::Identity(s.size(), s.size())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Lift, HongOuMandelInterference) {
    FockSector s(2, 2);
    const Eigen::MatrixXcd lifted = lift_mode_unitary(ModeUnitary(beamsplitter_5050()), s);
    const std::size_t in = s.require_index(Occupation{{1, 1}});
    EXPECT_NEAR(std::abs(lifted(s.require_index(Occupation{{1, 1}}), in)), 0.0, 1e-15);
    EXPECT_NEAR(std::norm(lifted(s.require_index(Occupation{{2, 0}}), in)), 0.5, 1e-15);
    EXPECT_NEAR(std::norm(lifted(s.require_index(Occupation{{0, 2}}), in)), 0.5, 1e-15);
}

TEST(Lift, MatchesCreationOperatorExpansion) {
    std::mt19937_64 rng(5);
    for (auto [m, n] : {std::pair{2, 1}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
        FockSector s(m, n);
        const Eigen::MatrixXcd u = haar_unitary(m, rng);
        const Eigen::MatrixXcd lifted = lift_mode_unitary(ModeUnitary(u), s);
        EXPECT_LT((lifted - polynomial_lift(u, s)).cwiseAbs().maxCoeff(), 1e-12) << m << "," << n;
    }
}

TEST(Lift, IsAHomomorphismAndUnitary) {
    std::mt19937_64 rng(7);
    for (auto [m, n] : {std::pair{2, 2}, {2, 4}, {3, 3}, {4, 3}}) {
        FockSector s(m, n);
        for (int rep = 0; rep < 3; ++rep) {
            const Eigen::MatrixXcd u = haar_unitary(m, rng);
            const Eigen::MatrixXcd v = haar_unitary(m, rng);
            const Eigen::MatrixXcd lu = lift_mode_unitary(ModeUnitary(u), s);
            const Eigen::MatrixXcd lv = lift_mode_unitary(ModeUnitary(v), s);
            const Eigen::MatrixXcd luv = lift_mode_unitary(ModeUnitary(u * v), s);
            EXPECT_LT((luv - lu * lv).cwiseAbs().maxCoeff(), 1e-9);
            EXPECT_LT(unitarity_defect(lu), 1e-10);
        }
    }
}

TEST(Lift, PhaseShifterLiftMatchesDirectRule) {
    std::mt19937_64 rng(9);
    auto sector = sector_basis(3, 3);
    Eigen::VectorXcd amps(sector->size());
    std::normal_distribution<double> normal;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        amps(i) = Complex(normal(rng), normal(rng));
    }
    amps.normalize();
    const StateVector state(sector, amps);
    const double phi = 1.234;
    const StateVector direct = apply_phase_shifter(state, 1, phi);
    const StateVector lifted =
        apply_lifted(lift_mode_unitary(ModeUnitary::phase_shift(3, 1, phi), *sector), state);
    EXPECT_LT((direct.amplitudes() - lifted.amplitudes()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Lift, PreservesNormAndProbabilitiesSumToOne) {
    std::mt19937_64 rng(13);
    auto sector = sector_basis(3, 4);
    for (int rep = 0; rep < 10; ++rep) {
        StateVector state = StateVector::basis_state(sector, sector->occupation(rep % sector->size()));
        state = apply_lifted(lift_mode_unitary(ModeUnitary(haar_unitary(3, rng)), *sector), state);
        state = apply_phase_shifter(state, rep % 3, 0.1 * rep);
        EXPECT_NEAR(state.norm_squared(), 1.0, 1e-12);
        double total = 0.0;
        for (const auto &occ : sector->basis()) {
            total += outcome_probability(state, occ);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(ModeUnitary, RejectsNonUnitary) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(0, 1) = 0.1;
    EXPECT_THROW(ModeUnitary{m}, std::invalid_argument);
}

TEST(StateVector, RejectsDimensionMismatch) {
    EXPECT_THROW(StateVector(sector_basis(2, 2), Eigen::VectorXcd::Zero(2)), std::invalid_argument);
}
