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


#include "qavg_cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "qavg/error.hpp"
#include "qavg/fci.hpp"
#include "qavg/io.hpp"
#include "qavg/pipeline.hpp"
#include "qavg/spectra.hpp"
#include "qavg/steane.hpp"

namespace qavg::cli {

namespace {

using model::Excitation;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

class Writer {
   public:
    explicit Writer(const RunConfig &c) : dir_(c.out) { std::filesystem::create_directories(dir_); }

    void text(const std::string &name, const std::string &body) {
        auto path = dir_ / name;
        io::write_text(path, body);
        result.written.push_back(path);
    }
    void json(const std::string &name, const io::Json &j) { text(name, io::dump(j)); }

    CommandResult result;

   private:
    std::filesystem::path dir_;
};

// Stream index of a setting; independent of which shifts were requested.
std::uint64_t stream_index(const pipeline::Setting &k, const circuits::QpeSettings &s) {
    auto x = static_cast<std::uint64_t>(k.xi == Excitation::electron ? 0 : 1);
    auto o = static_cast<std::uint64_t>(k.kappa == model::Orbital::p ? 0 : 1);
    return (x * 2 + o) * static_cast<std::uint64_t>(s.n_settings) + static_cast<std::uint64_t>(k.shift);
}

std::vector<vernier::Histogram> load_histograms(const Paths &paths) {
    if (paths.empty()) {
        throw InputError("no histogram files given");
    }
    std::vector<vernier::Histogram> out;
    for (const auto &p : paths) {
        out.push_back(io::histogram_from_json(io::read_json(p)).histogram);
    }
    return out;
}

std::vector<Excitation> sectors_present(const std::vector<vernier::Histogram> &all) {
    std::vector<Excitation> out;
    for (auto xi : {Excitation::electron, Excitation::hole}) {
        if (std::any_of(all.begin(), all.end(), [xi](const vernier::Histogram &h) { return h.xi == xi; })) {
            out.push_back(xi);
        }
    }
    return out;
}

vernier::OptimizeConfig optimizer_for(const RunConfig &c, const pipeline::Workflow &w, Excitation xi,
                                      const circuits::QpeSettings &s) {
    vernier::OptimizeConfig o = c.optimizer;
    o.window_low = c.window_low(w.hamiltonian(xi), s);
    return o;
}

std::uint64_t fit_seed(const RunConfig &c, Excitation xi) { return c.seed + (xi == Excitation::electron ? 0 : 1); }

void write_histograms(Writer &out, const std::string &prefix, const std::vector<vernier::Histogram> &hs,
                      const io::Json &config) {
    for (const auto &h : hs) {
        out.json(histogram_file_name(prefix, h), io::histogram_to_json({h, config}));
    }
}

void write_survival(Writer &out, const steane::SurvivalRecord &rec, const io::Json &config) {
    out.text("survival.csv", io::survival_csv(rec));
    io::Json rows = io::Json::array();
    for (const auto &row : rec.rows) {
        rows.push_back({{"checkpoint", row.label},
                        {"local_discards", row.local_discards},
                        {"accumulated_discards", row.accumulated_discards},
                        {"corrections", row.corrections},
                        {"survivors", row.survivors}});
    }
    out.json("survival.json", {{"shots", rec.shots}, {"checkpoints", rows}, {"config", config}});
}

}  // namespace

std::string histogram_file_name(const std::string &prefix, const vernier::Histogram &h) {
    return prefix + "_" + circuits::to_string(h.variant) + "_" + model::to_string(h.xi) + "_" +
           model::to_string(h.kappa) + "_s" + std::to_string(h.settings.shift) + ".json";
}

CommandResult cmd_fci(const RunConfig &c) {
    Writer out(c);
    io::Json j = io::fci_report(c.dimer());
    j["config"] = c.to_json();
    out.json("fci.json", j);
    out.result.summary = "E_gs = " + fixed(j["E_gs"].get<double>(), 7) + " eV" +
                         (j["in_reference_sector"].get<bool>() ? "" : " (ground state outside the two-electron singlet)");
    return out.result;
}

CommandResult cmd_sample(const RunConfig &c) {
    Writer out(c);
    pipeline::Workflow w(c.dimer());
    const bool logical = c.variant == circuits::Variant::log1a;
    std::vector<vernier::Histogram> hs;
    std::vector<sim::CircuitOutcome> outcomes;
    std::uint64_t accepted = 0;
    for (const auto &k : pipeline::all_settings(c.qpe, c.shifts)) {
        auto run = w.sample(c.variant, k, c.qpe, c.noise, c.shots, c.seed, stream_index(k, c.qpe), logical,
                            c.threads);
        accepted += run.histogram.shots_accepted;
        hs.push_back(std::move(run.histogram));
        outcomes.insert(outcomes.end(), run.outcomes.begin(), run.outcomes.end());
    }
    auto config = c.to_json();
    write_histograms(out, "hist", hs, config);
    std::ostringstream summary;
    summary << hs.size() << " histograms, " << accepted << " of " << hs.size() * c.shots << " shots accepted";
    if (logical) {
        write_survival(out, steane::survival_report(outcomes), config);
    }
    out.result.summary = summary.str();
    return out.result;
}

CommandResult cmd_exact_dist(const RunConfig &c) {
    Writer out(c);
    pipeline::Workflow w(c.dimer());
    std::vector<vernier::Histogram> hs;
    for (const auto &k : pipeline::all_settings(c.qpe, c.shifts)) {
        hs.push_back(w.exact_histogram(c.variant, k, c.qpe));
    }
    write_histograms(out, "exact", hs, c.to_json());
    out.result.summary = std::to_string(hs.size()) + " exact distributions";
    return out.result;
}

CommandResult cmd_optimize(const RunConfig &c, const Paths &histograms) {
    Writer out(c);
    pipeline::Workflow w(c.dimer());
    auto all = load_histograms(histograms);
    std::ostringstream summary;
    for (auto xi : sectors_present(all)) {
        auto data = pipeline::select(all, xi);
        const auto &t = w.table(xi);
        auto fit = vernier::optimize(data, t, optimizer_for(c, w, xi, data.front().settings), fit_seed(c, xi));
        fit.reference_l1 = vernier::mean_reference_l1(data, t);
        out.json(std::string("fit_") + model::to_string(xi) + ".json", io::fit_to_json(fit, c.to_json()));
        summary << model::to_string(xi) << ": theta/pi=" << fixed(fit.params.theta / std::numbers::pi, 4)
                << " eps0=" << fixed(fit.params.eps0, 4) << " eps1=" << fixed(fit.params.eps1, 4)
                << " cost=" << fixed(fit.cost, 4) << '\n';
    }
    out.result.summary = summary.str();
    if (!out.result.summary.empty()) {
        out.result.summary.pop_back();
    }
    return out.result;
}

CommandResult cmd_dos(const RunConfig &c, const Paths &fits) {
    Writer out(c);
    pipeline::Workflow w(c.dimer());
    std::map<Excitation, vernier::TrialParams> params;
    if (fits.empty()) {
        for (auto xi : {Excitation::electron, Excitation::hole}) {
            params[xi] = vernier::oracle_params(w.table(xi));
        }
    } else {
        for (const auto &p : fits) {
            auto f = io::fit_from_json(io::read_json(p));
            if (!params.emplace(f.params.xi, f.params).second) {
                throw InputError("two fits given for the " + std::string(model::to_string(f.params.xi)) + " sector");
            }
        }
        if (params.size() != 2) {
            throw InputError("dos needs one electron fit and one hole fit");
        }
    }
    auto no = fci::natural_orbitals(fci::density_matrix(w.ground_state()));
    auto spec = spectra::reconstruct_gf(params.at(Excitation::electron), params.at(Excitation::hole), no,
                                        w.ground_state().energy, c.grid, c.delta);
    out.text("dos.csv", io::spectrum_csv(spec));
    io::Json poles = io::poles_to_json(spec);
    poles["source"] = fits.empty() ? "exact" : "fit";
    poles["params"] = {io::params_to_json(params.at(Excitation::electron)),
                       io::params_to_json(params.at(Excitation::hole))};
    poles["config"] = c.to_json();
    out.json("dos_poles.json", poles);
    double weight = 0.0;
    for (const auto *gf : {&spec.electron, &spec.hole}) {
        for (const auto &p : gf->poles) {
            weight += p.weight;
        }
    }
    out.result.summary = "total pole weight " + fixed(weight, 6);
    return out.result;
}

CommandResult cmd_direct(const RunConfig &c, const Paths &histograms) {
    Writer out(c);
    pipeline::Workflow w(c.dimer());
    auto all = load_histograms(histograms);
    const double e_gs = w.ground_state().energy;
    auto points = c.grid.points();
    std::map<int, std::map<Excitation, std::vector<double>>> curves;
    std::ostringstream bars_csv;
    bars_csv << "excitation,shift,center,width,height\n";
    io::Json integrals = io::Json::array();
    for (auto xi : sectors_present(all)) {
        auto data = pipeline::select(all, xi);
        std::map<int, std::vector<vernier::Histogram>> by_shift;
        for (auto &h : data) {
            by_shift[h.settings.shift].push_back(h);
        }
        for (const auto &[shift, group] : by_shift) {
            const auto &s = group.front().settings;
            auto bars = spectra::direct_dos_bars(group, w.table(xi), e_gs, c.window_low(w.hamiltonian(xi), s));
            for (const auto &b : bars.bars) {
                bars_csv << model::to_string(xi) << ',' << shift << ',' << io::format_double(b.center) << ','
                         << io::format_double(b.width) << ',' << io::format_double(b.height) << '\n';
            }
            curves[shift][xi] = spectra::direct_dos_lorentzian(bars, c.grid, c.delta);
            integrals.push_back({{"excitation", model::to_string(xi)}, {"shift", shift}, {"integral", bars.integral()}});
        }
    }
    for (const auto &[shift, by_xi] : curves) {
        std::ostringstream csv;
        csv << "E,rho_e,rho_h,rho_total\n";
        const std::vector<double> zero(points.size(), 0.0);
        const auto &re = by_xi.contains(Excitation::electron) ? by_xi.at(Excitation::electron) : zero;
        const auto &rh = by_xi.contains(Excitation::hole) ? by_xi.at(Excitation::hole) : zero;
        for (std::size_t i = 0; i < points.size(); ++i) {
            csv << io::format_double(points[i]) << ',' << io::format_double(re[i]) << ',' << io::format_double(rh[i])
                << ',' << io::format_double(re[i] + rh[i]) << '\n';
        }
        out.text("direct_s" + std::to_string(shift) + ".csv", csv.str());
    }
    out.text("direct_bars.csv", bars_csv.str());
    out.json("direct.json", {{"integrals", integrals}, {"config", c.to_json()}});
    out.result.summary = std::to_string(curves.size()) + " shifts reconstructed";
    return out.result;
}

CommandResult cmd_landscape(const RunConfig &c, const Paths &histograms) {
    Writer out(c);
    pipeline::Workflow w(c.dimer());
    auto all = load_histograms(histograms);
    auto present = sectors_present(all);
    Excitation xi;
    if (c.sector) {
        xi = *c.sector;
        if (std::find(present.begin(), present.end(), xi) == present.end()) {
            throw InputError("no histograms for the requested sector");
        }
    } else if (present.size() == 1) {
        xi = present.front();
    } else {
        throw InputError("inputs hold both sectors; choose one with --sector");
    }
    auto data = pipeline::select(all, xi);
    const auto &t = w.table(xi);
    const auto &s = data.front().settings;
    vernier::PlaneSpec plane;
    plane.fixed = c.fixed_axis;
    plane.resolution = c.resolution;
    plane.window_low = c.window_low(w.hamiltonian(xi), s);
    if (c.fixed_value) {
        plane.fixed_value = *c.fixed_value;
    } else {
        auto fit = vernier::optimize(data, t, optimizer_for(c, w, xi, s), fit_seed(c, xi));
        const double v[3] = {fit.params.theta, fit.params.eps0, fit.params.eps1};
        plane.fixed_value = v[static_cast<int>(c.fixed_axis)];
    }
    auto land = vernier::landscape_scan(data, t, plane, c.optimizer.measure);
    out.text("landscape.csv", io::landscape_csv(land));
    out.json("landscape.json", {{"excitation", model::to_string(xi)},
                                {"fixed_axis", vernier::to_string(plane.fixed)},
                                {"fixed_value", plane.fixed_value},
                                {"resolution", plane.resolution},
                                {"window_low", plane.window_low},
                                {"strict_local_minima", land.strict_minima},
                                {"config", c.to_json()}});
    out.result.summary = std::string("strict local minima: ") + std::to_string(land.strict_minima) + " (" +
                         model::to_string(xi) + ", " + vernier::to_string(plane.fixed) + " = " +
                         io::format_double(plane.fixed_value) + ", " + std::to_string(plane.resolution) + "x" +
                         std::to_string(plane.resolution) + ")";
    return out.result;
}

CommandResult cmd_survival(const RunConfig &c) {
    Writer out(c);
    pipeline::Workflow w(c.dimer());
    std::vector<sim::CircuitOutcome> outcomes;
    for (const auto &k : pipeline::all_settings(c.qpe, c.shifts)) {
        auto run = w.sample(circuits::Variant::log1a, k, c.qpe, c.noise, c.shots, c.seed, stream_index(k, c.qpe), true,
                            c.threads);
        outcomes.insert(outcomes.end(), run.outcomes.begin(), run.outcomes.end());
    }
    auto rec = steane::survival_report(outcomes);
    write_survival(out, rec, c.to_json());
    std::uint64_t survivors = rec.rows.empty() ? rec.shots : rec.rows.back().survivors;
    out.result.summary = std::to_string(survivors) + " of " + std::to_string(rec.shots) + " shots survive";
    return out.result;
}

}  // namespace qavg::cli
