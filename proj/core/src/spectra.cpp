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

#include "qavg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qavg/error.hpp"

namespace qavg::spectra {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<double> EnergyGrid::points() const {
    validate();
    auto n = static_cast<std::size_t>(std::floor((high - low) / step + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = low + step * static_cast<double>(i);
    }
    return out;
}

void EnergyGrid::validate() const {
    if (!(step > 0) || !(high >= low) || !std::isfinite(low) || !std::isfinite(high)) {
        throw InputError("energy grid needs low <= high and a positive step");
    }
    if ((high - low) / step > 1e7) {
        throw InputError("energy grid has too many points");
    }
}

fci::Mat2 SectorGf::residue_sum() const {
    fci::Mat2 out{};
    for (const auto &r : residue) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                out[a][b] += r[a][b];
            }
        }
    }
    return out;
}

SectorGf sector_gf(const vernier::TrialParams &p, const fci::NOBasis &no, double e_gs) {
    const bool electron = p.xi == model::Excitation::electron;
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const double bt[2][2] = {{c, s}, {-s, c}};  // b_tilde[nu][lambda]
    SectorGf out;
    out.xi = p.xi;
    const double eps[2] = {p.eps0, p.eps1};
    for (int lam = 0; lam < 2; ++lam) {
        double b[2] = {0.0, 0.0};
        for (int k = 0; k < 2; ++k) {
            for (int nu = 0; nu < 2; ++nu) {
                double n = no.occupancy[nu];
                // A channel with occupancy exactly 0 or 1 carries no weight.
                double weight = std::sqrt(std::max(0.0, electron ? 1.0 - n : n));
                b[k] += no.coeff[nu][k] * weight * bt[nu][lam];
            }
        }
        double trace = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int bb = 0; bb < 2; ++bb) {
                out.residue[lam][a][bb] = b[a] * b[bb];
            }
            trace += b[a] * b[a];
        }
        out.poles[lam].position = electron ? eps[lam] - e_gs : e_gs - eps[lam];
        out.poles[lam].weight = kSpinFactor * trace;
    }
    return out;
}

double lorentzian_dos(std::span<const Pole> poles, double energy, double delta) {
    double rho = 0.0;
    for (const Pole &p : poles) {
        double d = energy - p.position;
        rho += p.weight * delta / (kPi * (d * d + delta * delta));
    }
    return rho;
}

Spectrum reconstruct_gf(const vernier::TrialParams &lambda_e, const vernier::TrialParams &lambda_h,
                        const fci::NOBasis &no, double e_gs, const EnergyGrid &grid, double delta) {
    if (!(delta > 0)) {
        throw InputError("smearing delta must be positive");
    }
    if (lambda_e.xi != model::Excitation::electron || lambda_h.xi != model::Excitation::hole) {
        throw InputError("reconstruct_gf expects electron then hole parameters");
    }
    Spectrum out;
    out.delta = delta;
    out.electron = sector_gf(vernier::canonicalize(lambda_e), no, e_gs);
    out.hole = sector_gf(vernier::canonicalize(lambda_h), no, e_gs);
    out.energy = grid.points();
    for (double e : out.energy) {
        double re = lorentzian_dos(out.electron.poles, e, delta);
        double rh = lorentzian_dos(out.hole.poles, e, delta);
        out.rho_e.push_back(re);
        out.rho_h.push_back(rh);
        out.rho_total.push_back(re + rh);
    }
    return out;
}

double DirectDos::integral() const {
    double s = 0.0;
    for (const Bar &b : bars) {
        s += b.height * b.width;
    }
    return s;
}

double DirectDos::value(double energy) const {
    double v = 0.0;
    for (const Bar &b : bars) {
        if (energy >= b.center - b.width / 2 && energy < b.center + b.width / 2) {
            v += b.height;
        }
    }
    return v;
}

DirectDos direct_dos_bars(std::span<const vernier::Histogram> data, const fci::ExcitationTable &t, double e_gs,
                          double window_low) {
    if (data.empty()) {
        throw InputError("direct reconstruction needs histograms");
    }
    DirectDos out;
    out.xi = data.front().xi;
    out.shift = data.front().settings.shift;
    if (out.xi != t.sector) {
        throw InputError("histogram sector does not match the excitation table");
    }
    std::set<model::Orbital> orbitals;
    for (const auto &h : data) {
        h.validate();
        if (h.settings.shift != out.shift) {
            throw InputError("direct reconstruction mixes histograms from different shifts");
        }
        if (h.xi != out.xi) {
            throw InputError("direct reconstruction mixes excitation sectors");
        }
        if (!orbitals.insert(h.kappa).second) {
            throw InputError("duplicate orbital histogram in direct reconstruction");
        }
    }
    if (orbitals.size() != 2) {
        throw InputError("direct reconstruction needs histograms for both orbitals");
    }
    const bool electron = out.xi == model::Excitation::electron;
    for (const auto &h : data) {
        const auto &s = h.settings;
        const double width = 1.0 / s.t0;
        const double period = s.n_val() / s.t0;
        const double norm = t.norm[h.kappa == model::Orbital::p ? 0 : 1];
        for (int j = 0; j < s.n_val(); ++j) {
            double f = h.frequencies[static_cast<std::size_t>(j)];
            if (f == 0.0) {
                continue;
            }
            double eps = s.origin() + j * width;
            eps = window_low + std::fmod(std::fmod(eps - window_low, period) + period, period);
            double center = electron ? eps - e_gs : e_gs - eps;
            out.bars.push_back({center, width, kSpinFactor * f * norm / width});
        }
    }
    return out;
}

std::vector<double> direct_dos_lorentzian(const DirectDos &bars, const EnergyGrid &grid, double delta) {
    if (!(delta > 0)) {
        throw InputError("smearing delta must be positive");
    }
    std::vector<Pole> poles;
    for (const Bar &b : bars.bars) {
        poles.push_back({b.center, b.height * b.width});
    }
    std::vector<double> out;
    for (double e : grid.points()) {
        out.push_back(lorentzian_dos(poles, e, delta));
    }
    return out;
}

}  // namespace qavg::spectra
