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

#ifndef QAVG_SPECTRA_HPP
#define QAVG_SPECTRA_HPP

#include <array>
#include <span>
#include <vector>

#include "qavg/fci.hpp"
#include "qavg/vernier.hpp"

/// Green's function poles and densities of states (spin summed, factor 2).
namespace qavg::spectra {

inline constexpr double kSpinFactor = 2.0;

struct EnergyGrid {
    double low = -2.0;
    double high = 2.0;
    double step = 0.002;

    std::vector<double> points() const;
    void validate() const;
};

struct Pole {
    double position = 0.0;  // excitation energy, eV
    double weight = 0.0;    // spin-summed trace weight
};

/// One excitation sector of the one-particle Green's function.
struct SectorGf {
    model::Excitation xi = model::Excitation::electron;
    std::array<Pole, 2> poles{};
    /// residue[lambda][k'][k] = b_k'^lambda b_k^lambda for one spin.
    std::array<fci::Mat2, 2> residue{};

    /// Sum over lambda of residue, for one spin.
    fci::Mat2 residue_sum() const;
};

/// Poles and residues from fitted parameters: amplitudes are rebuilt from
/// theta, the natural orbitals and their occupancies.
SectorGf sector_gf(const vernier::TrialParams &p, const fci::NOBasis &no, double e_gs);

struct Spectrum {
    std::vector<double> energy;
    std::vector<double> rho_e;
    std::vector<double> rho_h;
    std::vector<double> rho_total;
    double delta = 0.02;
    SectorGf electron;
    SectorGf hole;
};

/// Density of states -(1/pi) Im tr G(E + i delta) on `grid`.
Spectrum reconstruct_gf(const vernier::TrialParams &lambda_e, const vernier::TrialParams &lambda_h,
                        const fci::NOBasis &no, double e_gs, const EnergyGrid &grid, double delta);

/// Lorentzian sum for a list of poles.
double lorentzian_dos(std::span<const Pole> poles, double energy, double delta);

struct Bar {
    double center = 0.0;  // excitation energy of the grid point, eV
    double width = 0.0;
    double height = 0.0;  // spin summed
};

struct DirectDos {
    model::Excitation xi = model::Excitation::electron;
    int shift = 0;
    std::vector<Bar> bars;

    double integral() const;
    double value(double energy) const;
};

/// Spreads each bin's frequency uniformly over its 1/t0 interval, weighted
/// by the excitation norm. Bin j sits at E_orig + j/t0, wrapped into
/// [window_low, window_low + N_val/t0). All histograms must share one shift
/// and sector and cover both orbitals.
DirectDos direct_dos_bars(std::span<const vernier::Histogram> data, const fci::ExcitationTable &t, double e_gs,
                          double window_low);

/// Weight-preserving Lorentzian replacement of each bar.
std::vector<double> direct_dos_lorentzian(const DirectDos &bars, const EnergyGrid &grid, double delta);

}  // namespace qavg::spectra

#endif
