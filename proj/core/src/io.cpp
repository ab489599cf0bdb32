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

#include "qavg/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qavg/error.hpp"

#ifndef QAVG_DATA_DIR
#define QAVG_DATA_DIR "."
#endif
#ifndef QAVG_INSTALL_DATA_DIR
#define QAVG_INSTALL_DATA_DIR QAVG_DATA_DIR
#endif

namespace qavg::io {

namespace {

template <class T>
T require(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing key '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("bad value for '") + key + "': " + e.what());
    }
}

Json mat_to_json(const fci::Mat2 &m) {
    return Json::array({Json::array({m[0][0], m[0][1]}), Json::array({m[1][0], m[1][1]})});
}

Json vec_to_json(const fci::Vec2 &v) {
    return Json::array({v[0], v[1]});
}

std::map<std::string, double> label_map(const Json &j, const char *key) {
    auto m = require<std::map<std::string, double>>(j, key);
    return m;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) {
        throw InternalError("failed to format a double");
    }
    return std::string(buf, res.ptr);
}

std::filesystem::path bundled_wannier_path() {
    if (const char *env = std::getenv("QAVG_DATA_DIR")) {
        return std::filesystem::path(env) / "co_fe5c2_wannier.json";
    }
    // Prefer the installed copy; fall back to the source tree for builds
    // that were never installed.
    auto installed = std::filesystem::path(QAVG_INSTALL_DATA_DIR) / "co_fe5c2_wannier.json";
    if (std::filesystem::exists(installed)) {
        return installed;
    }
    return std::filesystem::path(QAVG_DATA_DIR) / "co_fe5c2_wannier.json";
}

model::WannierSet wannier_from_json(const Json &j) {
    model::WannierSet w;
    w.orbital_energies = label_map(j, "orbital_energies");
    w.screened_repulsion = label_map(j, "screened_repulsion");
    w.bare_repulsion = label_map(j, "bare_repulsion");
    auto transfers = require<Json>(j, "transfers");
    if (!transfers.is_array()) {
        throw InputError("'transfers' must be a list of [label, label, value]");
    }
    for (const auto &t : transfers) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_number()) {
            throw InputError("'transfers' entries must be [label, label, value]");
        }
        w.set_transfer(t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<double>());
    }
    w.validate();
    return w;
}

Json wannier_to_json(const model::WannierSet &w) {
    Json j;
    j["orbital_energies"] = w.orbital_energies;
    Json transfers = Json::array();
    for (const auto &[key, v] : w.transfers) {
        transfers.push_back(Json::array({key.first, key.second, v}));
    }
    j["transfers"] = transfers;
    j["bare_repulsion"] = w.bare_repulsion;
    j["screened_repulsion"] = w.screened_repulsion;
    return j;
}

model::WannierSet load_wannier(const std::filesystem::path &path) {
    return wannier_from_json(read_json(path));
}

Json settings_to_json(const circuits::QpeSettings &s) {
    Json j;
    j["n_qft"] = s.n_qft;
    j["t0"] = s.t0;
    j["e_o"] = s.e_o;
    j["n_settings"] = s.n_settings;
    j["shift"] = s.shift;
    j["e_orig"] = s.origin();
    j["rte"] = s.rte.to_string();
    return j;
}

circuits::QpeSettings settings_from_json(const Json &j) {
    circuits::QpeSettings s;
    s.n_qft = require<int>(j, "n_qft");
    s.t0 = require<double>(j, "t0");
    s.e_o = require<double>(j, "e_o");
    s.n_settings = require<int>(j, "n_settings");
    s.shift = require<int>(j, "shift");
    s.rte = circuits::RteMode::parse(require<std::string>(j, "rte"));
    s.validate();
    return s;
}

Json histogram_to_json(const HistogramFile &f) {
    const auto &h = f.histogram;
    Json j;
    j["variant"] = circuits::to_string(h.variant);
    j["excitation"] = model::to_string(h.xi);
    j["orbital"] = model::to_string(h.kappa);
    j["shift"] = h.settings.shift;
    j["settings"] = settings_to_json(h.settings);
    j["shots_submitted"] = h.shots_submitted;
    j["shots_accepted"] = h.shots_accepted;
    j["counts"] = h.counts;
    j["frequencies"] = h.frequencies;
    j["config"] = f.config;
    return j;
}

HistogramFile histogram_from_json(const Json &j) {
    HistogramFile f;
    auto &h = f.histogram;
    h.variant = circuits::variant_from_string(require<std::string>(j, "variant"));
    h.xi = model::excitation_from_string(require<std::string>(j, "excitation"));
    h.kappa = model::orbital_from_string(require<std::string>(j, "orbital"));
    h.settings = settings_from_json(require<Json>(j, "settings"));
    if (require<int>(j, "shift") != h.settings.shift) {
        throw InputError("histogram shift disagrees with its settings");
    }
    h.shots_submitted = require<std::uint64_t>(j, "shots_submitted");
    h.shots_accepted = require<std::uint64_t>(j, "shots_accepted");
    h.counts = require<std::vector<std::uint64_t>>(j, "counts");
    h.frequencies = require<std::vector<double>>(j, "frequencies");
    if (j.contains("config")) {
        f.config = j.at("config");
    }
    h.validate();
    return f;
}

Json params_to_json(const vernier::TrialParams &p) {
    Json j;
    j["excitation"] = model::to_string(p.xi);
    j["theta"] = p.theta;
    j["theta_over_pi"] = p.theta / std::numbers::pi;
    j["eps0"] = p.eps0;
    j["eps1"] = p.eps1;
    return j;
}

vernier::TrialParams params_from_json(const Json &j) {
    vernier::TrialParams p;
    p.xi = model::excitation_from_string(require<std::string>(j, "excitation"));
    p.theta = require<double>(j, "theta");
    p.eps0 = require<double>(j, "eps0");
    p.eps1 = require<double>(j, "eps1");
    return p;
}

Json fit_to_json(const vernier::FitResult &f, const Json &config) {
    Json j = params_to_json(f.params);
    j["cost"] = f.cost;
    j["restarts"] = f.restarts;
    j["converged"] = f.converged;
    j["best_cost"] = f.best_cost;
    j["median_cost"] = f.median_cost;
    j["window_low"] = f.window_low;
    j["window_period"] = f.window_period;
    j["reference_l1"] = f.reference_l1 ? Json(*f.reference_l1) : Json(nullptr);
    j["config"] = config;
    return j;
}

vernier::FitResult fit_from_json(const Json &j) {
    vernier::FitResult f;
    f.params = params_from_json(j);
    f.cost = require<double>(j, "cost");
    f.restarts = require<int>(j, "restarts");
    f.converged = require<int>(j, "converged");
    f.best_cost = require<double>(j, "best_cost");
    f.median_cost = require<double>(j, "median_cost");
    f.window_low = require<double>(j, "window_low");
    f.window_period = require<double>(j, "window_period");
    if (j.contains("reference_l1") && !j.at("reference_l1").is_null()) {
        f.reference_l1 = require<double>(j, "reference_l1");
    }
    return f;
}

Json fci_report(const model::DimerParams &d) {
    fci::GroundState gs = fci::ground_state(d);
    fci::DensityMatrix gamma = fci::density_matrix(gs);
    fci::NOBasis no = fci::natural_orbitals(gamma);
    Json j;
    j["dimer"] = {{"eps_p", d.eps_p}, {"eps_d", d.eps_d}, {"t_pd", d.t_pd},
                  {"U_p", d.U_p},     {"U_d", d.U_d},     {"delta_mu", d.delta_mu}};
    j["E_gs"] = gs.energy;
    j["ground_state_sector"] = {{"n_electrons", gs.sector.n_electrons}, {"two_sz", gs.sector.two_sz}};
    j["in_reference_sector"] = gs.in_reference_sector();
    j["amplitudes"] = gs.amplitudes;
    j["gamma"] = mat_to_json(gamma.gamma);
    j["natural_orbitals"] = {{"occupancy", vec_to_json(no.occupancy)},
                             {"vectors", Json::array({vec_to_json(no.coeff[0]), vec_to_json(no.coeff[1])})}};
    if (gs.in_reference_sector()) {
        fci::PrepAngles a = fci::excitation_prep_angles(gs);
        j["prep_angles"] = {{"eta", a.eta}, {"zeta", a.zeta}};
    } else {
        j["prep_angles"] = nullptr;
    }
    Json sectors = Json::object();
    for (auto xi : {model::Excitation::electron, model::Excitation::hole}) {
        model::QubitHamiltonian h = model::qubit_hamiltonian(d, xi);
        fci::ExcitationTable t = fci::excitation_table(gs, d, xi);
        Json s;
        s["hamiltonian"] = {{"h0", h.h0}, {"hx", h.hx}, {"hz", h.hz}};
        s["energies"] = vec_to_json(t.energies);
        s["probability"] = {{"p", vec_to_json(t.probability[0])}, {"d", vec_to_json(t.probability[1])}};
        s["norm"] = {{"p", t.norm[0]}, {"d", t.norm[1]}};
        s["b_tilde"] = mat_to_json(t.b_tilde);
        s["theta"] = fci::oracle_angle(t);
        s["theta_over_pi"] = fci::oracle_angle(t) / std::numbers::pi;
        try {
            s["prep_angles"] = {{"p", fci::prep_angle(gs, xi, model::Orbital::p)},
                                {"d", fci::prep_angle(gs, xi, model::Orbital::d)}};
        } catch (const InputError &) {
            s["prep_angles"] = nullptr;
        }
        sectors[model::to_string(xi)] = s;
    }
    j["sectors"] = sectors;
    return j;
}

Json poles_to_json(const spectra::Spectrum &s) {
    Json j;
    j["delta"] = s.delta;
    for (const auto *gf : {&s.electron, &s.hole}) {
        Json poles = Json::array();
        for (int lam = 0; lam < 2; ++lam) {
            poles.push_back({{"position", gf->poles[lam].position},
                             {"weight", gf->poles[lam].weight},
                             {"residue", mat_to_json(gf->residue[lam])}});
        }
        j[model::to_string(gf->xi)] = poles;
    }
    return j;
}

std::string spectrum_csv(const spectra::Spectrum &s) {
    std::ostringstream out;
    out << "E,rho_e,rho_h,rho_total\n";
    for (std::size_t i = 0; i < s.energy.size(); ++i) {
        out << format_double(s.energy[i]) << ',' << format_double(s.rho_e[i]) << ',' << format_double(s.rho_h[i])
            << ',' << format_double(s.rho_total[i]) << '\n';
    }
    return out.str();
}

std::string landscape_csv(const vernier::Landscape &l) {
    std::vector<const char *> names;
    for (auto a : {vernier::Axis::theta, vernier::Axis::eps0, vernier::Axis::eps1}) {
        if (a != l.plane.fixed) {
            names.push_back(vernier::to_string(a));
        }
    }
    std::ostringstream out;
    out << names[0] << ',' << names[1] << ",cost\n";
    for (std::size_t i = 0; i < l.x.size(); ++i) {
        for (std::size_t j = 0; j < l.y.size(); ++j) {
            out << format_double(l.x[i]) << ',' << format_double(l.y[j]) << ','
                << format_double(l.values[i * l.y.size() + j]) << '\n';
        }
    }
    out << "# fixed " << vernier::to_string(l.plane.fixed) << '=' << format_double(l.plane.fixed_value)
        << " resolution=" << l.plane.resolution << " strict_local_minima=" << l.strict_minima << '\n';
    return out.str();
}

std::string survival_csv(const steane::SurvivalRecord &r) {
    std::ostringstream out;
    out << "checkpoint,kind,reached,local_discards,local_ratio,accumulated_discards,accumulated_ratio,"
           "corrections,correction_ratio,survivors\n";
    for (const auto &row : r.rows) {
        out << row.label << ',' << (row.discard_checkpoint ? "discard" : "correction") << ',' << row.reached << ','
            << row.local_discards << ',' << format_double(row.local_ratio) << ',' << row.accumulated_discards << ','
            << format_double(row.accumulated_ratio) << ',' << row.corrections << ','
            << format_double(row.correction_ratio) << ',' << row.survivors << '\n';
    }
    return out.str();
}

Json read_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw InputError("failed writing " + path.string());
    }
}

}  // namespace qavg::io
