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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace phosmo {

int Occupation::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

std::optional<std::size_t> sector_dimension(int modes, int photons, std::size_t cap) {
    if (modes < 1 || photons < 0) {
        throw std::invalid_argument("sector_dimension: need modes >= 1 and photons >= 0");
    }
    // C(n+M-1, n) built incrementally; every prefix is itself a binomial coefficient.
    unsigned __int128 value = 1;
    for (int k = 1; k <= photons; ++k) {
        value = value * static_cast<unsigned __int128>(modes - 1 + k) / static_cast<unsigned __int128>(k);
        if (value > cap) {
            return std::nullopt;
        }
    }
    return static_cast<std::size_t>(value);
}

namespace {

void enumerate(int mode, int remaining, std::vector<int> &current, std::vector<Occupation> &out) {
    const int modes = static_cast<int>(current.size());
    if (mode == modes - 1) {
        current[mode] = remaining;
        out.push_back(Occupation{current});
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        current[mode] = k;
        enumerate(mode + 1, remaining - k, current, out);
    }
}

}  // namespace

FockSector::FockSector(int modes, int photons, std::size_t max_basis) : modes_(modes), photons_(photons) {
    auto dim = sector_dimension(modes, photons, max_basis);
    if (!dim) {
        throw std::length_error("FockSector: basis of " + std::to_string(modes) + " modes / " +
                                std::to_string(photons) + " photons exceeds cap of " + std::to_string(max_basis) +
                                " entries");
    }
    basis_.reserve(*dim);
    std::vector<int> current(static_cast<std::size_t>(modes), 0);
    enumerate(0, photons, current, basis_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        index_.emplace(basis_[i].counts, i);
    }
}

std::optional<std::size_t> FockSector::index_of(const Occupation &occ) const {
    auto it = index_.find(occ.counts);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t FockSector::require_index(const Occupation &occ) const {
    auto idx = index_of(occ);
    if (!idx) {
        throw std::invalid_argument("occupation is not in the " + std::to_string(modes_) + "-mode " +
                                    std::to_string(photons_) + "-photon sector");
    }
    return *idx;
}

SectorPtr sector_basis(int modes, int photons, std::size_t max_basis) {
    if (modes < 1 || photons < 0) {
        throw std::invalid_argument("sector_basis: need modes >= 1 and photons >= 0");
    }
    return std::make_shared<const FockSector>(modes, photons, max_basis);
}

StateVector::StateVector(SectorPtr sector, Eigen::VectorXcd amplitudes)
    : sector_(std::move(sector)), amplitudes_(std::move(amplitudes)) {
    if (!sector_) {
        throw std::invalid_argument("StateVector: null sector");
    }
    if (static_cast<std::size_t>(amplitudes_.size()) != sector_->size()) {
        throw std::invalid_argument("StateVector: amplitude count " + std::to_string(amplitudes_.size()) +
                                    " does not match sector dimension " + std::to_string(sector_->size()));
    }
}

StateVector StateVector::basis_state(SectorPtr sector, const Occupation &occ) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
    amps(static_cast<Eigen::Index>(sector->require_index(occ))) = 1.0;
    return StateVector(std::move(sector), std::move(amps));
}

Complex StateVector::amplitude(const Occupation &occ) const {
    return amplitudes_(static_cast<Eigen::Index>(sector_->require_index(occ)));
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

double unitarity_defect(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix, double tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("ModeUnitary: matrix must be square and non-empty");
    }
    double defect = unitarity_defect(matrix_);
    if (!(defect <= tol)) {
        throw std::invalid_argument("ModeUnitary: matrix is not unitary (defect " + std::to_string(defect) + ")");
    }
}

ModeUnitary ModeUnitary::identity(int modes) {
    return ModeUnitary(Eigen::MatrixXcd::Identity(modes, modes));
}

ModeUnitary ModeUnitary::phase_shift(int modes, int mode, double phase) {
    if (mode < 0 || mode >= modes) {
        throw std::out_of_range("phase_shift: mode " + std::to_string(mode) + " out of range");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(modes, modes);
    m(mode, mode) = std::polar(1.0, phase);
    return ModeUnitary(std::move(m));
}

ModeUnitary ModeUnitary::embed(int modes, int a, int b, const Eigen::Matrix2cd &block) {
    if (a < 0 || b < 0 || a >= modes || b >= modes || a == b) {
        throw std::out_of_range("embed: modes must be distinct and in range");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(modes, modes);
    m(a, a) = block(0, 0);
    m(a, b) = block(0, 1);
    m(b, a) = block(1, 0);
    m(b, b) = block(1, 1);
    return ModeUnitary(std::move(m));
}

Eigen::Matrix2cd beamsplitter_5050() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << Complex(s, 0), Complex(0, s), Complex(0, s), Complex(s, 0);
    return m;
}

namespace {

Complex permanent_naive(const Eigen::MatrixXcd &m) {
    const int k = static_cast<int>(m.rows());
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0;
    do {
        Complex term = 1;
        for (int r = 0; r < k; ++r) {
            term *= m(r, perm[static_cast<std::size_t>(r)]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Ryser's formula with Gray-code column subsets.
Complex permanent_ryser(const Eigen::MatrixXcd &m) {
    const int k = static_cast<int>(m.rows());
    Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(k);
    Complex total = 0;
    const unsigned long long subsets = 1ULL << k;
    unsigned long long gray_prev = 0;
    for (unsigned long long i = 1; i < subsets; ++i) {
        unsigned long long gray = i ^ (i >> 1);
        unsigned long long diff = gray ^ gray_prev;
        int col = __builtin_ctzll(diff);
        if (gray & diff) {
            row_sums += m.col(col);
        } else {
            row_sums -= m.col(col);
        }
        gray_prev = gray;
        Complex prod = row_sums.prod();
        int bits = __builtin_popcountll(gray);
        total += ((k - bits) % 2 == 0) ? prod : -prod;
    }
    return total;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

std::vector<int> expand_modes(const Occupation &occ) {
    std::vector<int> modes;
    for (std::size_t j = 0; j < occ.counts.size(); ++j) {
        for (int c = 0; c < occ.counts[j]; ++c) {
            modes.push_back(static_cast<int>(j));
        }
    }
    return modes;
}

}  // namespace

Complex permanent(const Eigen::MatrixXcd &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("permanent: matrix must be square");
    }
    if (m.rows() == 0) {
        return 1.0;
    }
    if (m.rows() <= 4) {
        return permanent_naive(m);
    }
    if (m.rows() > 40) {
        throw std::invalid_argument("permanent: matrix too large");
    }
    return permanent_ryser(m);
}

Eigen::MatrixXcd lift_mode_unitary(const ModeUnitary &u, const FockSector &sector) {
    if (u.modes() != sector.modes()) {
        throw std::invalid_argument("lift_mode_unitary: unitary acts on " + std::to_string(u.modes()) +
                                    " modes but sector has " + std::to_string(sector.modes()));
    }
    const auto dim = static_cast<Eigen::Index>(sector.size());
    const int n = sector.photons();
    std::vector<std::vector<int>> expanded;
    std::vector<double> norms;
    expanded.reserve(sector.size());
    for (const auto &occ : sector.basis()) {
        expanded.push_back(expand_modes(occ));
        double f = 1.0;
        for (int c : occ.counts) {
            f *= factorial(c);
        }
        norms.push_back(f);
    }
    Eigen::MatrixXcd lifted(dim, dim);
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index out = 0; out < dim; ++out) {
        const auto &rows = expanded[static_cast<std::size_t>(out)];
        for (Eigen::Index in = 0; in < dim; ++in) {
            const auto &cols = expanded[static_cast<std::size_t>(in)];
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    sub(r, c) = u.matrix()(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
                }
            }
            lifted(out, in) = permanent(sub) / std::sqrt(norms[static_cast<std::size_t>(out)] *
                                                         norms[static_cast<std::size_t>(in)]);
        }
    }
    return lifted;
}

void apply_phase_shifter_inplace(const FockSector &sector, Eigen::VectorXcd &amps, int mode, double phase) {
    if (mode < 0 || mode >= sector.modes()) {
        throw std::out_of_range("phase shifter mode " + std::to_string(mode) + " out of range for " +
                                std::to_string(sector.modes()) + " modes");
    }
    // e^{i k phase} for k = 0..n, computed once.
    std::vector<Complex> factors(static_cast<std::size_t>(sector.photons()) + 1);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        factors[k] = std::polar(1.0, static_cast<double>(k) * phase);
    }
    for (std::size_t i = 0; i < sector.size(); ++i) {
        amps(static_cast<Eigen::Index>(i)) *= factors[static_cast<std::size_t>(sector.basis()[i].counts[mode])];
    }
}

StateVector apply_phase_shifter(const StateVector &state, int mode, double phase) {
    Eigen::VectorXcd amps = state.amplitudes();
    apply_phase_shifter_inplace(state.sector(), amps, mode, phase);
    return StateVector(state.sector_ptr(), std::move(amps));
}

StateVector apply_lifted(const Eigen::MatrixXcd &lifted, const StateVector &state) {
    if (lifted.rows() != state.amplitudes().size() || lifted.cols() != state.amplitudes().size()) {
        throw std::invalid_argument("apply_lifted: dimension mismatch");
    }
    return StateVector(state.sector_ptr(), lifted * state.amplitudes());
}

double outcome_probability(const StateVector &state, const Occupation &outcome) {
    return std::norm(state.amplitude(outcome));
}

}  // namespace phosmo
