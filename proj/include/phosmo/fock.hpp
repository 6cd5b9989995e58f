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

#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace phosmo {

using Complex = std::complex<double>;

/// Photon counts, one entry per optical mode.
struct Occupation {
    std::vector<int> counts;

    int total() const;
    std::size_t modes() const { return counts.size(); }
    auto operator<=>(const Occupation &) const = default;
};

/// All occupations of `modes` modes holding exactly `photons` photons.
///
/// The basis is ordered descending-lexicographically, so for two modes and two
/// photons it reads (2,0), (1,1), (0,2). Every matrix and amplitude vector in
/// the library is indexed by this order.
class FockSector {
  public:
    static constexpr std::size_t kDefaultMaxBasis = 1'000'000;

    FockSector(int modes, int photons, std::size_t max_basis = kDefaultMaxBasis);

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    std::size_t size() const { return basis_.size(); }
    const std::vector<Occupation> &basis() const { return basis_; }
    const Occupation &occupation(std::size_t index) const { return basis_.at(index); }

    std::optional<std::size_t> index_of(const Occupation &occ) const;
    /// Like index_of but throws std::invalid_argument for foreign occupations.
    std::size_t require_index(const Occupation &occ) const;

  private:
    int modes_;
    int photons_;
    std::vector<Occupation> basis_;
    std::map<std::vector<int>, std::size_t> index_;
};

using SectorPtr = std::shared_ptr<const FockSector>;

/// Number of occupations of `modes` modes with `photons` photons, C(n+M-1, n).
/// Returns std::nullopt when the count exceeds `cap`.
std::optional<std::size_t> sector_dimension(int modes, int photons, std::size_t cap);

SectorPtr sector_basis(int modes, int photons, std::size_t max_basis = FockSector::kDefaultMaxBasis);

/// Pure state in a fixed-photon-number sector.
class StateVector {
  public:
    StateVector(SectorPtr sector, Eigen::VectorXcd amplitudes);

    static StateVector basis_state(SectorPtr sector, const Occupation &occ);

    const FockSector &sector() const { return *sector_; }
    const SectorPtr &sector_ptr() const { return sector_; }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    Complex amplitude(const Occupation &occ) const;
    double norm_squared() const { return amplitudes_.squaredNorm(); }
    bool is_normalized(double tol = 1e-12) const;

  private:
    SectorPtr sector_;
    Eigen::VectorXcd amplitudes_;
};

/// M x M unitary acting on the mode creation operators: a_j^dag -> sum_i U(i,j) a_i^dag.
class ModeUnitary {
  public:
    static constexpr double kDefaultTolerance = 1e-12;

    explicit ModeUnitary(Eigen::MatrixXcd matrix, double tol = kDefaultTolerance);

    static ModeUnitary identity(int modes);
    /// diag(1, ..., e^{i phase}, ..., 1)
    static ModeUnitary phase_shift(int modes, int mode, double phase);
    /// Embeds a 2x2 unitary on modes (a, b) of an M-mode identity.
    static ModeUnitary embed(int modes, int a, int b, const Eigen::Matrix2cd &block);

    int modes() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }

  private:
    Eigen::MatrixXcd matrix_;
};

/// 50-50 beamsplitter convention used throughout: (1/sqrt 2) [[1, i], [i, 1]].
Eigen::Matrix2cd beamsplitter_5050();

/// Max-abs deviation of U^dag U from the identity.
double unitarity_defect(const Eigen::MatrixXcd &u);

/// Matrix permanent. Naive permutation sum up to 4x4, Ryser's formula above.
Complex permanent(const Eigen::MatrixXcd &m);

/// Sector representation of a mode unitary:
/// <out|U|in> = per(U[out, in]) / sqrt(prod out_k! * prod in_k!).
Eigen::MatrixXcd lift_mode_unitary(const ModeUnitary &u, const FockSector &sector);

/// Multiplies the amplitude of every occupation with k photons in `mode` by e^{i k phase}.
StateVector apply_phase_shifter(const StateVector &state, int mode, double phase);

/// In-place variant of apply_phase_shifter used on hot paths.
void apply_phase_shifter_inplace(const FockSector &sector, Eigen::VectorXcd &amps, int mode, double phase);

StateVector apply_lifted(const Eigen::MatrixXcd &lifted, const StateVector &state);

/// |<outcome|state>|^2
double outcome_probability(const StateVector &state, const Occupation &outcome);

}  // namespace phosmo
