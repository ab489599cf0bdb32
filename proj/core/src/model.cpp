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

#include "qavg/model.hpp"

#include <cmath>

#include "qavg/error.hpp"

namespace qavg::model {

const char *const WannierSet::kPLabels[2] = {"pa", "pb"};
const char *const WannierSet::kDLabels[3] = {"d0", "d1", "d2"};

const char *to_string(Excitation xi) {
    return xi == Excitation::electron ? "e" : "h";
}

const char *to_string(Orbital kappa) {
    return kappa == Orbital::p ? "p" : "d";
}

Excitation excitation_from_string(const std::string &s) {
    if (s == "e" || s == "electron") {
        return Excitation::electron;
    }
    if (s == "h" || s == "hole") {
        return Excitation::hole;
    }
    throw InputError("unknown excitation '" + s + "' (expected e or h)");
}

Orbital orbital_from_string(const std::string &s) {
    if (s == "p") {
        return Orbital::p;
    }
    if (s == "d") {
        return Orbital::d;
    }
    throw InputError("unknown orbital '" + s + "' (expected p or d)");
}

static std::pair<std::string, std::string> ordered(const std::string &a, const std::string &b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void WannierSet::set_transfer(const std::string &a, const std::string &b, double value) {
    if (a == b) {
        throw InputError("transfer between an orbital and itself: " + a);
    }
    auto key = ordered(a, b);
    auto it = transfers.find(key);
    if (it != transfers.end() && it->second != value) {
        throw InputError("asymmetric transfer for (" + a + ", " + b + ")");
    }
    transfers[key] = value;
}

double WannierSet::transfer(const std::string &a, const std::string &b) const {
    auto it = transfers.find(ordered(a, b));
    if (it == transfers.end()) {
        throw InputError("missing transfer for (" + a + ", " + b + ")");
    }
    return it->second;
}

void WannierSet::validate() const {
    auto require = [](const std::map<std::string, double> &m, const std::string &label, const char *what) {
        if (!m.contains(label)) {
            throw InputError(std::string("missing ") + what + " for orbital '" + label + "'");
        }
    };
    for (const char *p : kPLabels) {
        require(orbital_energies, p, "orbital energy");
        require(screened_repulsion, p, "screened repulsion");
        for (const char *d : kDLabels) {
            (void)transfer(p, d);
        }
    }
    for (const char *d : kDLabels) {
        require(orbital_energies, d, "orbital energy");
        require(screened_repulsion, d, "screened repulsion");
    }
    for (const auto &[label, u] : screened_repulsion) {
        if (!(u >= 0)) {
            throw InputError("screened repulsion for '" + label + "' must be non-negative");
        }
    }
    for (const auto &[label, u] : bare_repulsion) {
        if (!(u >= 0)) {
            throw InputError("bare repulsion for '" + label + "' must be non-negative");
        }
    }
}

DimerParams reference_dimer_params(double delta_mu) {
    return DimerParams{1.021, 0.292, -0.195, 1.96, 2.22, delta_mu};
}

DimerParams average_wannier(const WannierSet &w, double delta_mu) {
    w.validate();
    DimerParams out;
    out.delta_mu = delta_mu;
    for (const char *p : WannierSet::kPLabels) {
        out.eps_p += w.orbital_energies.at(p) / 2.0;
        out.U_p += w.screened_repulsion.at(p) / 2.0;
        for (const char *d : WannierSet::kDLabels) {
            out.t_pd += w.transfer(p, d) / 6.0;
        }
    }
    for (const char *d : WannierSet::kDLabels) {
        out.eps_d += w.orbital_energies.at(d) / 3.0;
        out.U_d += w.screened_repulsion.at(d) / 3.0;
    }
    return out;
}

QubitHamiltonian qubit_hamiltonian(const DimerParams &d, Excitation sector) {
    double a;
    double b;
    if (sector == Excitation::electron) {
        a = 2 * d.eps_p + d.eps_d - 3 * d.delta_mu + d.U_p;
        b = d.eps_p + 2 * d.eps_d - 3 * d.delta_mu + d.U_d;
    } else {
        a = d.eps_p - d.delta_mu;
        b = d.eps_d - d.delta_mu;
    }
    return QubitHamiltonian{(a + b) / 2, d.t_pd, (a - b) / 2, sector};
}

EigenPair2 eigenvalues(const QubitHamiltonian &h) {
    double r = std::hypot(h.hx, h.hz);
    return {h.h0 - r, h.h0 + r};
}

}  // namespace qavg::model
