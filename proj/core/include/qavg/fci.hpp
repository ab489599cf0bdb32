// Copyright 2026 The qavg Authors
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

#ifndef QAVG_FCI_HPP
#define QAVG_FCI_HPP

#include <array>

#include "qavg/model.hpp"

/// Exact diagonalization of the two-orbital dimer.
///
/// The Fock space has four spin-orbital modes ordered (p up, d up, p down,
/// d down); a Fock index has bit m set when mode m is occupied and fermionic
/// signs follow the Jordan-Wigner convention in that mode order.
namespace qavg::fci {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;
using FockVector = std::array<double, 16>;

struct Sector {
    int n_electrons = 0;
    int two_sz = 0;  // 2 S_z

    bool operator==(const Sector &) const = default;
};

/// Lowest eigenpair of the dimer over all (n_e, S_z) sectors.
struct GroundState {
    double energy = 0.0;
    /// Amplitudes on (p^p_, d^p_, p^d_, d^d_) where e.g. d^p_ means
    /// a+(d up) a+(p down)|vac>. Zero when the state lies elsewhere.
    std::array<double, 4> amplitudes{};
    Sector sector;
    /// Full Fock-space vector, same sign convention as `amplitudes`.
    FockVector fock{};

    /// True when the ground state lives in (n_e = 2, S_z = 0).
    bool in_reference_sector() const { return sector == Sector{2, 0}; }
};

GroundState ground_state(const model::DimerParams &d);

/// Lowest energy within one sector (used to check the variational bound).
double sector_minimum(const model::DimerParams &d, Sector s);

/// gamma[k'][k] = <gs| a+(k' up) a(k up) |gs> with k in {p, d}.
struct DensityMatrix {
    Mat2 gamma{};
    double trace() const { return gamma[0][0] + gamma[1][1]; }
};

DensityMatrix density_matrix(const GroundState &gs);

/// Natural orbitals. coeff[nu] holds c^(nu) over (p, d).
///
/// Ordered by descending occupancy; c^(0) has a positive first nonzero
/// component and c^(1) completes a proper rotation (det = +1).
struct NOBasis {
    std::array<Vec2, 2> coeff{};
    Vec2 occupancy{};
};

NOBasis natural_orbitals(const DensityMatrix &gamma);

/// Angles for Ry(2 angle)|0> preparing the normalized excited state.
struct PrepAngles {
    double eta = 0.0;   // a+(p up)|gs>
    double zeta = 0.0;  // a+(d up)|gs>
};

PrepAngles excitation_prep_angles(const GroundState &gs);

/// Preparation angle for the normalized excited state a+(k up)|gs> (electron)
/// or a(k up)|gs> (hole) in the mapped qubit basis. Throws InputError when
/// the excited state vanishes.
double prep_angle(const GroundState &gs, model::Excitation xi, model::Orbital kappa);

/// The 2x2 sector Hamiltonian obtained by projecting the Fock-space
/// Hamiltonian onto the mapped basis (independent of model::qubit_hamiltonian).
Mat2 projected_sector_hamiltonian(const model::DimerParams &d, model::Excitation xi);

/// Exact excitation data for one sector, computed by direct inner products.
/// Indices: kappa in {0 = p, 1 = d}, lambda in {0, 1} (ascending energy),
/// nu in {0, 1} (natural-orbital order of NOBasis).
struct ExcitationTable {
    model::Excitation sector = model::Excitation::electron;
    Vec2 energies{};
    /// Eigenvectors of the sector Hamiltonian in the mapped basis, states[lambda].
    std::array<Vec2, 2> states{};
    /// b[kappa][lambda] = <lambda| a+(k) |gs> (electron) or <lambda| a(k) |gs> (hole).
    std::array<Vec2, 2> b{};
    /// Squared excitation norm per orbital: 1 - gamma_kk (electron), gamma_kk (hole).
    Vec2 norm{};
    /// probability[kappa][lambda] = |b|^2 / norm.
    std::array<Vec2, 2> probability{};
    /// Natural-orbital amplitudes b_tilde[nu][lambda].
    std::array<Vec2, 2> b_tilde{};
    /// dcoef[kappa][nu] relating b = sum_nu dcoef * b_tilde.
    std::array<Vec2, 2> dcoef{};
    /// S[kappa][nu][nu'] = dcoef[kappa][nu] dcoef[kappa][nu'] / norm[kappa].
    std::array<Mat2, 2> S{};
    NOBasis no;
};

ExcitationTable excitation_table(const GroundState &gs, const model::DimerParams &d, model::Excitation xi);

/// Angle of the natural-orbital amplitude rotation, reduced modulo pi.
///
/// b_tilde is brought to the form [[cos, sin], [-sin, cos]] (rows nu,
/// columns lambda) by flipping the sign of the lambda = 1 eigenvector when
/// needed; signs of eigenvectors are physically irrelevant.
double oracle_angle(const ExcitationTable &t);

}  // namespace qavg::fci

#endif
