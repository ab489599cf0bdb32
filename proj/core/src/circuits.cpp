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

#include "qavg/circuits.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "qavg/error.hpp"

namespace qavg::circuits {

using sim::Gate;
using sim::GateKind;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Controlled exp(-i (phi/2) Z) on the target, minus the control phase -phi/2,
// which the caller accumulates.
void controlled_rz_core(std::vector<Gate> &out, double phi, int control, int target) {
    out.push_back(Gate::two(GateKind::CPhase, control, target, phi));
}

}  // namespace

RteMode RteMode::trotter(int steps) {
    if (steps < 1) {
        throw InputError("Trotter step count must be at least 1");
    }
    return {Kind::trotter, steps};
}

RteMode RteMode::parse(const std::string &s) {
    if (s == "exact") {
        return exact();
    }
    const std::string prefix = "trotter:";
    if (s.rfind(prefix, 0) == 0) {
        int r = 0;
        const char *first = s.data() + prefix.size();
        const char *last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, r);
        if (ec != std::errc() || ptr != last || first == last) {
            throw InputError("bad Trotter step count in '" + s + "'");
        }
        return trotter(r);
    }
    throw InputError("unknown RTE mode '" + s + "' (expected exact or trotter:<r>)");
}

std::string RteMode::to_string() const {
    return kind == Kind::exact ? "exact" : "trotter:" + std::to_string(steps);
}

double QpeSettings::origin() const {
    return e_o + static_cast<double>(shift) / (n_settings * t0);
}

QpeSettings QpeSettings::with_shift(int s) const {
    QpeSettings out = *this;
    out.shift = s;
    out.validate();
    return out;
}

void QpeSettings::validate() const {
    if (n_qft < 1 || n_qft > 12) {
        throw InputError("n_qft must lie in [1, 12]");
    }
    if (!(t0 > 0) || !std::isfinite(t0)) {
        throw InputError("t0 must be positive");
    }
    if (!std::isfinite(e_o)) {
        throw InputError("e_o must be finite");
    }
    if (n_settings < 1) {
        throw InputError("n_settings must be at least 1");
    }
    if (shift < 0 || shift >= n_settings) {
        throw InputError("shift index out of range");
    }
    if (rte.steps < 1) {
        throw InputError("Trotter step count must be at least 1");
    }
}

const char *to_string(Variant v) {
    switch (v) {
        case Variant::phys3a:
            return "phys3a";
        case Variant::phys1a:
            return "phys1a";
        case Variant::log1a:
            return "log1a";
    }
    return "?";
}

Variant variant_from_string(const std::string &s) {
    if (s == "phys3a") {
        return Variant::phys3a;
    }
    if (s == "phys1a") {
        return Variant::phys1a;
    }
    if (s == "log1a") {
        return Variant::log1a;
    }
    throw InputError("unknown circuit variant '" + s + "' (expected phys3a, phys1a or log1a)");
}

std::vector<Gate> controlled_rte(const model::QubitHamiltonian &h, const QpeSettings &s, int power, int control,
                                 int target) {
    s.validate();
    if (power < 1 || (power & (power - 1)) != 0) {
        throw InputError("controlled_rte power must be a positive power of two");
    }
    const double scale = kTwoPi * s.t0 * power / s.n_val();
    double control_phase = -(h.h0 - s.origin()) * scale;
    std::vector<Gate> out;
    if (s.rte.kind == RteMode::Kind::exact) {
        // exp(-i a (sin b X + cos b Z)) = Ry(b) Rz(2a) Ry(-b)
        const double r = std::hypot(h.hx, h.hz);
        const double beta = std::atan2(h.hx, h.hz);
        const double alpha = scale * r;
        out.push_back(Gate::one(GateKind::Ry, target, -beta));
        out.push_back(Gate::one(GateKind::Phase, control, control_phase - alpha));
        controlled_rz_core(out, 2 * alpha, control, target);
        out.push_back(Gate::one(GateKind::Ry, target, beta));
        return out;
    }
    const int slices = power * s.rte.steps;
    const double delta = kTwoPi * s.t0 / (s.n_val() * s.rte.steps);
    const double z_angle = 2 * delta * h.hz;
    const double x_angle = 2 * delta * h.hx;
    for (int k = 0; k < slices; ++k) {
        controlled_rz_core(out, z_angle, control, target);
        out.push_back(Gate::one(GateKind::H, target));
        controlled_rz_core(out, x_angle, control, target);
        out.push_back(Gate::one(GateKind::H, target));
    }
    control_phase -= slices * (z_angle + x_angle) / 2;
    out.push_back(Gate::one(GateKind::Phase, control, control_phase));
    return out;
}

double qft_correction_angle(int m, int l) {
    return kTwoPi / static_cast<double>(std::uint64_t{1} << (m - l + 1));
}

sim::Circuit build_phys3a(const model::QubitHamiltonian &h, const QpeSettings &s, double prep_angle) {
    s.validate();
    const int n = s.n_qft;
    sim::Circuit c(n + 1, n);
    auto anc = [](int k) { return 1 + k; };
    c.append(Gate::one(GateKind::Ry, 0, 2 * prep_angle));
    for (int k = 0; k < n; ++k) {
        c.append(Gate::one(GateKind::H, anc(k)));
    }
    for (int k = 0; k < n; ++k) {
        auto gates = controlled_rte(h, s, 1 << k, anc(k), 0);
        c.append(gates);
    }
    for (int m = 0; m < n; ++m) {
        for (int l = 0; l < m; ++l) {
            c.append(Gate::two(GateKind::CPhase, anc(n - 1 - l), anc(n - 1 - m), qft_correction_angle(m, l)));
        }
        c.append(Gate::one(GateKind::H, anc(n - 1 - m)));
    }
    std::vector<int> result;
    for (int m = 0; m < n; ++m) {
        c.append(sim::Measure{anc(n - 1 - m), m});
        result.push_back(m);
    }
    c.set_result_bits(std::move(result));
    return c;
}

sim::Circuit build_phys1a(const model::QubitHamiltonian &h, const QpeSettings &s, double prep_angle) {
    s.validate();
    const int n = s.n_qft;
    constexpr int kAnc = 1;
    sim::Circuit c(2, n);
    c.append(Gate::one(GateKind::Ry, 0, 2 * prep_angle));
    std::vector<int> result;
    for (int m = 0; m < n; ++m) {
        if (m > 0) {
            c.append(sim::Reset{kAnc});
        }
        c.append(Gate::one(GateKind::H, kAnc));
        auto gates = controlled_rte(h, s, 1 << (n - 1 - m), kAnc, 0);
        c.append(gates);
        for (int l = 0; l < m; ++l) {
            c.append(sim::Conditioned{Gate::one(GateKind::Phase, kAnc, qft_correction_angle(m, l)), l, true});
        }
        c.append(Gate::one(GateKind::H, kAnc));
        c.append(sim::Measure{kAnc, m});
        result.push_back(m);
    }
    c.set_result_bits(std::move(result));
    return c;
}

std::vector<sim::Amplitude> two_qubit_unitary(const std::vector<Gate> &gates) {
    std::vector<sim::Amplitude> u(16);
    for (int col = 0; col < 4; ++col) {
        sim::StateVector v(2);
        auto a = v.amplitudes();
        a[0] = 0.0;
        a[static_cast<std::size_t>(col)] = 1.0;
        for (const Gate &g : gates) {
            v.apply(g);
        }
        auto out = v.amplitudes();
        for (int row = 0; row < 4; ++row) {
            u[static_cast<std::size_t>(row * 4 + col)] = out[static_cast<std::size_t>(row)];
        }
    }
    return u;
}

}  // namespace qavg::circuits
