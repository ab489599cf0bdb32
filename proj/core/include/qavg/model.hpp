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

#ifndef QAVG_MODEL_HPP
#define QAVG_MODEL_HPP

#include <map>
#include <string>
#include <utility>

namespace qavg::model {

/// Which excitation sector a quantity belongs to: electron addition (e) or
/// removal (h).
enum class Excitation { electron, hole };

/// The two orbital classes of the dimer.
enum class Orbital { p, d };

const char *to_string(Excitation xi);
const char *to_string(Orbital kappa);
Excitation excitation_from_string(const std::string &s);
Orbital orbital_from_string(const std::string &s);

/// Default chemical-potential shift in eV.
inline constexpr double kDefaultDeltaMu = 1.5;

/// Parameters of the five localized orbitals, all in eV.
///
/// Labels "pa", "pb" form the p class and "d0", "d1", "d2" the d class.
/// Transfers are stored once per unordered pair with the lexicographically
/// smaller label first; `transfer()` looks them up in either order.
struct WannierSet {
    std::map<std::string, double> orbital_energies;
    std::map<std::pair<std::string, std::string>, double> transfers;
    std::map<std::string, double> bare_repulsion;
    std::map<std::string, double> screened_repulsion;

    void set_transfer(const std::string &a, const std::string &b, double value);
    double transfer(const std::string &a, const std::string &b) const;

    /// Throws InputError when a label is missing, a transfer is absent or a
    /// repulsion is negative.
    void validate() const;

    static const char *const kPLabels[2];
    static const char *const kDLabels[3];
};

/// Two-orbital Hubbard dimer parameters (eV).
struct DimerParams {
    double eps_p = 0.0;
    double eps_d = 0.0;
    double t_pd = 0.0;
    double U_p = 0.0;
    double U_d = 0.0;
    double delta_mu = kDefaultDeltaMu;
};

/// Tabulated dimer parameters used throughout the reference workflow.
/// These are the rounded class averages; they reproduce the reference FCI
/// ground state to five digits, whereas the unrounded averages do not.
DimerParams reference_dimer_params(double delta_mu = kDefaultDeltaMu);

/// Single-qubit Hamiltonian h0 I + hx X + hz Z for one excitation sector.
struct QubitHamiltonian {
    double h0 = 0.0;
    double hx = 0.0;
    double hz = 0.0;
    Excitation sector = Excitation::electron;
};

/// Class averages of the Wannier data. `delta_mu` is supplied by the caller.
DimerParams average_wannier(const WannierSet &w, double delta_mu = kDefaultDeltaMu);

/// The 2x2 sector Hamiltonian in the mapped qubit basis.
///
/// Electron sector basis: {p^ d^ p_, p^ d^ d_} (n_e = 3, S_z = 1/2).
/// Hole sector basis: {p_, d_} (n_e = 1, S_z = -1/2).
QubitHamiltonian qubit_hamiltonian(const DimerParams &d, Excitation sector);

struct EigenPair2 {
    double low;
    double high;
};

/// Analytic spectrum h0 -/+ sqrt(hx^2 + hz^2).
EigenPair2 eigenvalues(const QubitHamiltonian &h);

}  // namespace qavg::model

#endif
