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


#include "qavg_cli/run_config.hpp"

#include <sstream>

#include "qavg/error.hpp"

namespace qavg::cli {

namespace {

template <typename T>
T get(const io::Json &j, const char *key) {
    try {
        return j.at(key).get<T>();
    } catch (const io::Json::exception &) {
        throw InputError(std::string("config key '") + key + "' is missing or has the wrong type");
    }
}

}  // namespace

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(item);
    }
    return out;
}

io::Json merge_flat(io::Json base, const io::Json &overrides) {
    if (!overrides.is_object()) {
        throw InputError("config must be a JSON object");
    }
    for (const auto &[key, value] : overrides.items()) {
        if (!base.contains(key)) {
            throw InputError("unknown config key '" + key + "'");
        }
        if (value.is_object()) {
            throw InputError("config is flat; key '" + key + "' holds an object");
        }
        base[key] = value;
    }
    return base;
}

io::Json RunConfig::to_json() const {
    io::Json j;
    j["delta_mu"] = delta_mu;
    j["params"] = params;
    j["wannier_file"] = wannier_file;
    j["variant"] = circuits::to_string(variant);
    j["n_qft"] = qpe.n_qft;
    j["t0"] = qpe.t0;
    j["e_o"] = qpe.e_o;
    j["n_settings"] = qpe.n_settings;
    j["shifts"] = shifts;
    j["rte"] = qpe.rte.to_string();
    j["p1"] = noise.p1;
    j["p2"] = noise.p2;
    j["pm"] = noise.pm;
    j["shots"] = shots;
    j["seed"] = seed;
    j["restarts"] = optimizer.restarts;
    j["tolerance"] = optimizer.tolerance;
    j["max_iterations"] = optimizer.max_iterations;
    j["measure"] = vernier::to_string(optimizer.measure);
    j["window"] = window;
    j["resolution"] = resolution;
    j["fixed_axis"] = vernier::to_string(fixed_axis);
    j["fixed_value"] = fixed_value ? io::Json(*fixed_value) : io::Json(nullptr);
    j["sector"] = sector ? io::Json(model::to_string(*sector)) : io::Json(nullptr);
    j["grid_low"] = grid.low;
    j["grid_high"] = grid.high;
    j["grid_step"] = grid.step;
    j["delta"] = delta;
    return j;
}

RunConfig RunConfig::from_json(const io::Json &in) {
    io::Json j = merge_flat(RunConfig{}.to_json(), in);
    RunConfig c;
    c.delta_mu = get<double>(j, "delta_mu");
    c.params = get<std::string>(j, "params");
    c.wannier_file = get<std::string>(j, "wannier_file");
    c.variant = circuits::variant_from_string(get<std::string>(j, "variant"));
    c.qpe.n_qft = get<int>(j, "n_qft");
    c.qpe.t0 = get<double>(j, "t0");
    c.qpe.e_o = get<double>(j, "e_o");
    c.qpe.n_settings = get<int>(j, "n_settings");
    c.shifts = get<std::vector<int>>(j, "shifts");
    c.qpe.rte = circuits::RteMode::parse(get<std::string>(j, "rte"));
    c.noise = {get<double>(j, "p1"), get<double>(j, "p2"), get<double>(j, "pm")};
    // Reject negative numbers before they wrap around in an unsigned field.
    for (const char *key : {"shots", "seed"}) {
        const auto &v = j.at(key);
        if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            throw InputError(std::string("config key '") + key + "' must be a non-negative integer");
        }
    }
    c.shots = get<std::uint64_t>(j, "shots");
    c.seed = get<std::uint64_t>(j, "seed");
    c.optimizer.restarts = get<int>(j, "restarts");
    c.optimizer.tolerance = get<double>(j, "tolerance");
    c.optimizer.max_iterations = get<int>(j, "max_iterations");
    c.optimizer.measure = vernier::discrepancy_from_string(get<std::string>(j, "measure"));
    c.window = get<std::string>(j, "window");
    c.resolution = get<int>(j, "resolution");
    c.fixed_axis = vernier::axis_from_string(get<std::string>(j, "fixed_axis"));
    if (!j.at("fixed_value").is_null()) {
        c.fixed_value = get<double>(j, "fixed_value");
    }
    if (!j.at("sector").is_null()) {
        c.sector = model::excitation_from_string(get<std::string>(j, "sector"));
    }
    c.grid = {get<double>(j, "grid_low"), get<double>(j, "grid_high"), get<double>(j, "grid_step")};
    c.delta = get<double>(j, "delta");
    c.validate();
    return c;
}

void RunConfig::validate() const {
    if (params != "reference" && params != "wannier") {
        throw InputError("params must be 'reference' or 'wannier'");
    }
    if (window != "centered" && window != "origin") {
        throw InputError("window must be 'centered' or 'origin'");
    }
    qpe.validate();
    for (int s : shifts) {
        if (s < 0 || s >= qpe.n_settings) {
            throw InputError("shift " + std::to_string(s) + " is outside 0.." + std::to_string(qpe.n_settings - 1));
        }
    }
    noise.validate();
    if (shots == 0) {
        throw InputError("shots must be positive");
    }
    if (optimizer.restarts < 1 || optimizer.max_iterations < 1 || !(optimizer.tolerance > 0)) {
        throw InputError("optimizer needs positive restarts, iterations and tolerance");
    }
    if (resolution < 1) {
        throw InputError("landscape resolution must be positive");
    }
    grid.validate();
    if (!(delta > 0)) {
        throw InputError("smearing delta must be positive");
    }
}

model::DimerParams RunConfig::dimer() const {
    if (params == "reference") {
        return model::reference_dimer_params(delta_mu);
    }
    auto path = wannier_file.empty() ? io::bundled_wannier_path() : std::filesystem::path(wannier_file);
    return model::average_wannier(io::load_wannier(path), delta_mu);
}

double RunConfig::window_low(const model::QubitHamiltonian &h, const circuits::QpeSettings &s) const {
    if (window == "centered") {
        return vernier::centered_window_low(h, s);
    }
    return s.with_shift(0).origin();
}

}  // namespace qavg::cli
