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

#include "qavg/vernier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "qavg/error.hpp"
#include "qavg/nelder_mead.hpp"

namespace qavg::vernier {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTolerance = 1e-9;
constexpr double kProbabilitySlack = 1e-9;

std::size_t orbital_index(model::Orbital k) {
    return k == model::Orbital::p ? 0 : 1;
}

// |sin(pi d) / (N sin(pi d / N))|, the modulus of the normalized geometric sum.
double dirichlet_ratio(double d, int n) {
    double delta = d - n * std::round(d / n);
    if (std::abs(delta) < 1e-9) {
        // Removable singularity: the limit is 1 and the O(delta^2) term is
        // below double precision.
        return 1.0;
    }
    return std::abs(std::sin(kPi * delta) / (n * std::sin(kPi * delta / n)));
}

double wrap(double x, double low, double period) {
    double r = std::fmod(x - low, period);
    if (r < 0) {
        r += period;
    }
    return low + r;
}

void check_normalized(std::span<const double> v, const char *what) {
    double s = 0.0;
    for (double x : v) {
        if (!(x >= -kNormTolerance) || !std::isfinite(x)) {
            throw InputError(std::string(what) + " has a negative or non-finite entry");
        }
        s += x;
    }
    if (std::abs(s - 1.0) > kNormTolerance * static_cast<double>(v.size()) + 1e-12) {
        throw InputError(std::string(what) + " is not normalized (sum " + std::to_string(s) + ")");
    }
}

}  // namespace

Histogram Histogram::from_counts(circuits::Variant variant, model::Excitation xi, model::Orbital kappa,
                                 const circuits::QpeSettings &s, std::uint64_t submitted,
                                 std::vector<std::uint64_t> counts) {
    Histogram h;
    h.variant = variant;
    h.xi = xi;
    h.kappa = kappa;
    h.settings = s;
    h.shots_submitted = submitted;
    h.counts = std::move(counts);
    for (std::uint64_t c : h.counts) {
        h.shots_accepted += c;
    }
    if (h.shots_accepted == 0) {
        throw InputError("histogram has no accepted shots");
    }
    if (h.shots_accepted > submitted) {
        throw InputError("histogram accepts more shots than were submitted");
    }
    for (std::uint64_t c : h.counts) {
        h.frequencies.push_back(static_cast<double>(c) / static_cast<double>(h.shots_accepted));
    }
    h.validate();
    return h;
}

void Histogram::validate() const {
    settings.validate();
    if (static_cast<int>(frequencies.size()) != settings.n_val()) {
        throw InputError("histogram length does not match 2^n_qft");
    }
    if (!counts.empty()) {
        if (counts.size() != frequencies.size()) {
            throw InputError("histogram counts and frequencies differ in length");
        }
        std::uint64_t total = 0;
        for (std::uint64_t c : counts) {
            total += c;
        }
        if (total != shots_accepted) {
            throw InputError("histogram counts do not sum to the accepted shots");
        }
        if (shots_accepted > shots_submitted) {
            throw InputError("histogram accepts more shots than were submitted");
        }
    }
    check_normalized(frequencies, "histogram");
}

const char *to_string(Discrepancy d) {
    switch (d) {
        case Discrepancy::l1:
            return "l1";
        case Discrepancy::infidelity:
            return "infidelity";
        case Discrepancy::nll:
            return "nll";
    }
    return "?";
}

Discrepancy discrepancy_from_string(const std::string &s) {
    if (s == "l1") {
        return Discrepancy::l1;
    }
    if (s == "infidelity") {
        return Discrepancy::infidelity;
    }
    if (s == "nll") {
        return Discrepancy::nll;
    }
    throw InputError("unknown discrepancy '" + s + "' (expected l1, infidelity or nll)");
}

std::vector<double> qpe_kernel(double eps, const circuits::QpeSettings &s) {
    const int n = s.n_val();
    const double x = (eps - s.origin()) * s.t0;
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double r = dirichlet_ratio(x - j, n);
        p[static_cast<std::size_t>(j)] = r * r;
    }
    return p;
}

std::array<double, 2> excitation_probabilities(double theta, model::Orbital kappa, const fci::ExcitationTable &t) {
    const auto &S = t.S[orbital_index(kappa)];
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // Columns of the rotation b_tilde[nu][lambda] = [[c, s], [-s, c]].
    const double bt[2][2] = {{c, s}, {-s, c}};
    std::array<double, 2> out{};
    for (int lam = 0; lam < 2; ++lam) {
        double p = 0.0;
        for (int nu = 0; nu < 2; ++nu) {
            for (int mu = 0; mu < 2; ++mu) {
                p += S[static_cast<std::size_t>(nu)][static_cast<std::size_t>(mu)] * bt[nu][lam] * bt[mu][lam];
            }
        }
        if (p < -kProbabilitySlack || p > 1 + kProbabilitySlack) {
            throw InternalError("excitation probability outside [0, 1]; inconsistent S coefficients");
        }
        out[static_cast<std::size_t>(lam)] = std::clamp(p, 0.0, 1.0);
    }
    return out;
}

std::vector<double> trial_distribution(const TrialParams &p, model::Orbital kappa, const circuits::QpeSettings &s,
                                       const fci::ExcitationTable &t) {
    auto prob = excitation_probabilities(p.theta, kappa, t);
    auto k0 = qpe_kernel(p.eps0, s);
    auto k1 = qpe_kernel(p.eps1, s);
    for (std::size_t j = 0; j < k0.size(); ++j) {
        k0[j] = prob[0] * k0[j] + prob[1] * k1[j];
    }
    return k0;
}

std::vector<double> reference_distribution(model::Orbital kappa, const circuits::QpeSettings &s,
                                           const fci::ExcitationTable &t) {
    const auto &prob = t.probability[orbital_index(kappa)];
    auto k0 = qpe_kernel(t.energies[0], s);
    auto k1 = qpe_kernel(t.energies[1], s);
    for (std::size_t j = 0; j < k0.size(); ++j) {
        k0[j] = prob[0] * k0[j] + prob[1] * k1[j];
    }
    return k0;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InputError("L1 distance between vectors of different length");
    }
    check_normalized(a, "first distribution");
    check_normalized(b, "second distribution");
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += std::abs(a[j] - b[j]);
    }
    return s / 2;
}

double discrepancy(Discrepancy d, std::span<const double> model_p, std::span<const double> data_f) {
    if (model_p.size() != data_f.size()) {
        throw InputError("discrepancy between vectors of different length");
    }
    switch (d) {
        case Discrepancy::l1: {
            double s = 0.0;
            for (std::size_t j = 0; j < model_p.size(); ++j) {
                s += std::abs(model_p[j] - data_f[j]);
            }
            return s / 2;
        }
        case Discrepancy::infidelity: {
            double bc = 0.0;
            for (std::size_t j = 0; j < model_p.size(); ++j) {
                bc += std::sqrt(std::max(model_p[j], 0.0) * std::max(data_f[j], 0.0));
            }
            return std::max(0.0, 1.0 - bc * bc);
        }
        case Discrepancy::nll: {
            double s = 0.0;
            for (std::size_t j = 0; j < model_p.size(); ++j) {
                if (data_f[j] > 0) {
                    s -= data_f[j] * std::log(std::max(model_p[j], 1e-300));
                }
            }
            return s;
        }
    }
    throw InternalError("unhandled discrepancy");
}

double cost(const TrialParams &p, std::span<const Histogram> data, const fci::ExcitationTable &t, Discrepancy d) {
    if (data.empty()) {
        throw InputError("cost needs at least one histogram");
    }
    std::map<int, std::set<model::Orbital>> coverage;
    for (const Histogram &h : data) {
        if (h.xi != t.sector) {
            throw InputError("histogram sector does not match the excitation table");
        }
        coverage[h.settings.shift].insert(h.kappa);
    }
    for (const auto &[shift, orbitals] : coverage) {
        if (orbitals.size() != 2) {
            throw InputError("shift " + std::to_string(shift) + " lacks a histogram for one orbital");
        }
    }
    double total = 0.0;
    for (const Histogram &h : data) {
        auto trial = trial_distribution(p, h.kappa, h.settings, t);
        total += discrepancy(d, trial, h.frequencies);
    }
    return total / static_cast<double>(data.size());
}

TrialParams canonicalize(const TrialParams &p) {
    TrialParams out = p;
    out.theta = wrap(p.theta, 0.0, kPi);
    if (out.eps0 > out.eps1) {
        std::swap(out.eps0, out.eps1);
        out.theta = wrap(out.theta - kPi / 2, 0.0, kPi);
    }
    return out;
}

TrialParams oracle_params(const fci::ExcitationTable &t) {
    return {fci::oracle_angle(t), t.energies[0], t.energies[1], t.sector};
}

double energy_period(const circuits::QpeSettings &s) {
    return s.n_val() / s.t0;
}

double centered_window_low(const model::QubitHamiltonian &h, const circuits::QpeSettings &s) {
    return h.h0 - energy_period(s) / 2;
}

double mean_reference_l1(std::span<const Histogram> data, const fci::ExcitationTable &t) {
    if (data.empty()) {
        throw InputError("no histograms");
    }
    double total = 0.0;
    for (const Histogram &h : data) {
        total += l1_distance(reference_distribution(h.kappa, h.settings, t), h.frequencies);
    }
    return total / static_cast<double>(data.size());
}

FitResult optimize(std::span<const Histogram> data, const fci::ExcitationTable &t, const OptimizeConfig &config,
                   std::uint64_t seed) {
    if (data.empty()) {
        throw InputError("optimize needs histograms");
    }
    if (config.restarts < 1) {
        throw InputError("restart count must be positive");
    }
    for (const Histogram &h : data) {
        h.validate();
    }
    const circuits::QpeSettings &s0 = data.front().settings;
    const double period = energy_period(s0);
    const double low = config.window_low.value_or(s0.with_shift(0).origin());
    // Validates coverage once, up front.
    (void)cost(TrialParams{0.0, low, low, t.sector}, data, t, config.measure);

    nm::Options opt;
    opt.max_iterations = config.max_iterations;
    opt.tolerance = config.tolerance;
    opt.initial_step = {0.3, 0.5 / s0.t0, 0.5 / s0.t0};
    auto objective = [&](std::span<const double> x) {
        return cost(TrialParams{x[0], x[1], x[2], t.sector}, data, t, config.measure);
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> converged_costs;
    std::optional<nm::Result> best;
    std::optional<nm::Result> best_any;
    for (int r = 0; r < config.restarts; ++r) {
        std::vector<double> x0 = {kPi * u01(rng), low + period * u01(rng), low + period * u01(rng)};
        nm::Result res = nm::minimize(objective, x0, opt);
        if (!best_any || res.value < best_any->value) {
            best_any = res;
        }
        if (!res.converged) {
            continue;
        }
        converged_costs.push_back(res.value);
        if (!best || res.value < best->value) {
            best = res;
        }
    }
    const nm::Result &chosen = best ? *best : *best_any;

    FitResult out;
    TrialParams p{chosen.x[0], wrap(chosen.x[1], low, period), wrap(chosen.x[2], low, period), t.sector};
    out.params = canonicalize(p);
    out.cost = cost(out.params, data, t, config.measure);
    out.restarts = config.restarts;
    out.converged = static_cast<int>(converged_costs.size());
    out.best_cost = chosen.value;
    if (!converged_costs.empty()) {
        std::sort(converged_costs.begin(), converged_costs.end());
        std::size_t m = converged_costs.size();
        out.median_cost = m % 2 ? converged_costs[m / 2] : (converged_costs[m / 2 - 1] + converged_costs[m / 2]) / 2;
    } else {
        out.median_cost = chosen.value;
    }
    out.window_low = low;
    out.window_period = period;
    return out;
}

const char *to_string(Axis a) {
    switch (a) {
        case Axis::theta:
            return "theta";
        case Axis::eps0:
            return "eps0";
        case Axis::eps1:
            return "eps1";
    }
    return "?";
}

Axis axis_from_string(const std::string &s) {
    if (s == "theta") {
        return Axis::theta;
    }
    if (s == "eps0") {
        return Axis::eps0;
    }
    if (s == "eps1") {
        return Axis::eps1;
    }
    throw InputError("unknown axis '" + s + "' (expected theta, eps0 or eps1)");
}

int count_strict_minima(std::span<const double> values, int nx, int ny) {
    if (nx < 1 || ny < 1 || values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
        throw InputError("grid shape does not match the value count");
    }
    auto at = [&](int i, int j) {
        i = ((i % nx) + nx) % nx;
        j = ((j % ny) + ny) % ny;
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(j)];
    };
    int count = 0;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            double v = at(i, j);
            bool strict = true;
            for (int di = -1; di <= 1 && strict; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if ((di || dj) && !(v < at(i + di, j + dj))) {
                        strict = false;
                        break;
                    }
                }
            }
            count += strict;
        }
    }
    return count;
}

Landscape landscape_scan(std::span<const Histogram> data, const fci::ExcitationTable &t, const PlaneSpec &plane,
                         Discrepancy d) {
    if (data.empty()) {
        throw InputError("landscape needs histograms");
    }
    if (plane.resolution < 1) {
        throw InputError("landscape resolution must be positive");
    }
    const double period = energy_period(data.front().settings);
    const int n = plane.resolution;
    std::vector<Axis> free;
    for (Axis a : {Axis::theta, Axis::eps0, Axis::eps1}) {
        if (a != plane.fixed) {
            free.push_back(a);
        }
    }
    auto axis_values = [&](Axis a) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            v[static_cast<std::size_t>(i)] =
                a == Axis::theta ? kPi * i / n : plane.window_low + period * i / n;
        }
        return v;
    };
    Landscape out;
    out.plane = plane;
    out.x = axis_values(free[0]);
    out.y = axis_values(free[1]);
    out.values.resize(out.x.size() * out.y.size());
    auto set = [](TrialParams &p, Axis a, double v) {
        (a == Axis::theta ? p.theta : a == Axis::eps0 ? p.eps0 : p.eps1) = v;
    };
    for (std::size_t i = 0; i < out.x.size(); ++i) {
        for (std::size_t j = 0; j < out.y.size(); ++j) {
            TrialParams p;
            p.xi = t.sector;
            set(p, plane.fixed, plane.fixed_value);
            set(p, free[0], out.x[i]);
            set(p, free[1], out.y[j]);
            out.values[i * out.y.size() + j] = cost(p, data, t, d);
        }
    }
    out.strict_minima = count_strict_minima(out.values, n, n);
    return out;
}

}  // namespace qavg::vernier
