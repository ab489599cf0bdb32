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

#include "qavg/fci.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qavg/error.hpp"

namespace qavg::fci {

namespace {

constexpr int kModes = 4;
constexpr int kDim = 16;
constexpr int kPUp = 0;
constexpr int kDUp = 1;
constexpr int kPDown = 2;
constexpr int kDDown = 3;

using HamMatrix = Eigen::Matrix<double, kDim, kDim>;

int jw_sign(unsigned state, int mode) {
    return (std::popcount(state & ((1u << mode) - 1u)) & 1) ? -1 : 1;
}

FockVector create(const FockVector &v, int mode) {
    FockVector out{};
    for (unsigned s = 0; s < kDim; ++s) {
        if (v[s] != 0.0 && !(s & (1u << mode))) {
            out[s | (1u << mode)] += jw_sign(s, mode) * v[s];
        }
    }
    return out;
}

FockVector annihilate(const FockVector &v, int mode) {
    FockVector out{};
    for (unsigned s = 0; s < kDim; ++s) {
        if (v[s] != 0.0 && (s & (1u << mode))) {
            out[s & ~(1u << mode)] += jw_sign(s & ~(1u << mode), mode) * v[s];
        }
    }
    return out;
}

FockVector vacuum() {
    FockVector v{};
    v[0] = 1.0;
    return v;
}

// Product of creation operators applied right to left: modes {a, b, c}
// builds a+(a) a+(b) a+(c)|vac>.
FockVector occupied(std::initializer_list<int> modes) {
    FockVector v = vacuum();
    std::vector<int> order(modes);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        v = create(v, *it);
    }
    return v;
}

double dot(const FockVector &a, const FockVector &b) {
    double s = 0.0;
    for (int i = 0; i < kDim; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

HamMatrix fock_hamiltonian(const model::DimerParams &d) {
    HamMatrix h = HamMatrix::Zero();
    const double onsite[kModes] = {d.eps_p - d.delta_mu, d.eps_d - d.delta_mu, d.eps_p - d.delta_mu,
                                   d.eps_d - d.delta_mu};
    for (unsigned s = 0; s < kDim; ++s) {
        double diag = 0.0;
        for (int m = 0; m < kModes; ++m) {
            if (s & (1u << m)) {
                diag += onsite[m];
            }
        }
        if ((s & (1u << kPUp)) && (s & (1u << kPDown))) {
            diag += d.U_p;
        }
        if ((s & (1u << kDUp)) && (s & (1u << kDDown))) {
            diag += d.U_d;
        }
        h(s, s) = diag;

        FockVector basis{};
        basis[s] = 1.0;
        for (auto [p, q] : {std::pair{kPUp, kDUp}, std::pair{kPDown, kDDown}}) {
            FockVector hop_dp = create(annihilate(basis, p), q);
            FockVector hop_pd = create(annihilate(basis, q), p);
            for (unsigned r = 0; r < kDim; ++r) {
                h(r, s) += d.t_pd * (hop_dp[r] + hop_pd[r]);
            }
        }
    }
    return h;
}

Sector sector_of(unsigned s) {
    int up = std::popcount(s & 0b0011u);
    int down = std::popcount(s & 0b1100u);
    return Sector{up + down, up - down};
}

struct SectorSolution {
    double energy;
    FockVector vector;
};

SectorSolution solve_sector(const HamMatrix &h, Sector sector) {
    std::vector<unsigned> members;
    for (unsigned s = 0; s < kDim; ++s) {
        if (sector_of(s) == sector) {
            members.push_back(s);
        }
    }
    if (members.empty()) {
        throw InputError("empty Fock sector");
    }
    const auto n = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            sub(i, j) = h(members[i], members[j]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub);
    SectorSolution out{solver.eigenvalues()(0), {}};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.vector[members[i]] = solver.eigenvectors()(i, 0);
    }
    return out;
}

std::vector<Sector> all_sectors() {
    std::vector<Sector> out;
    for (int n = 0; n <= kModes; ++n) {
        for (int up = 0; up <= 2; ++up) {
            int down = n - up;
            if (down >= 0 && down <= 2) {
                out.push_back({n, up - down});
            }
        }
    }
    return out;
}

// Fix the sign so the largest-magnitude entry is positive.
template <std::size_t N>
void fix_sign(std::array<double, N> &v) {
    double best = 0.0;
    for (double x : v) {
        best = std::max(best, std::abs(x));
    }
    for (double x : v) {
        if (std::abs(x) >= best - 1e-12) {
            if (x < 0) {
                for (double &y : v) {
                    y = -y;
                }
            }
            return;
        }
    }
}

std::array<FockVector, 4> reference_basis() {
    return {occupied({kPUp, kPDown}), occupied({kDUp, kPDown}), occupied({kPUp, kDDown}), occupied({kDUp, kDDown})};
}

std::array<FockVector, 2> mapped_basis(model::Excitation xi) {
    if (xi == model::Excitation::electron) {
        return {occupied({kPUp, kDUp, kPDown}), occupied({kPUp, kDUp, kDDown})};
    }
    return {occupied({kPDown}), occupied({kDDown})};
}

int up_mode(model::Orbital kappa) {
    return kappa == model::Orbital::p ? kPUp : kDUp;
}

Vec2 excited_components(const GroundState &gs, model::Excitation xi, int mode) {
    FockVector ex = xi == model::Excitation::electron ? create(gs.fock, mode) : annihilate(gs.fock, mode);
    auto basis = mapped_basis(xi);
    return {dot(basis[0], ex), dot(basis[1], ex)};
}

struct Eig2 {
    Vec2 values;             // ascending
    std::array<Vec2, 2> vectors;  // vectors[i] pairs with values[i]
};

// Closed-form symmetric 2x2 eigensystem.
Eig2 eig2(const Mat2 &m) {
    double a = m[0][0];
    double b = m[0][1];
    double c = m[1][1];
    double mean = (a + c) / 2;
    double r = std::hypot((a - c) / 2, b);
    double phi = 0.5 * std::atan2(2 * b, a - c);
    Vec2 hi{std::cos(phi), std::sin(phi)};
    Vec2 lo{-hi[1], hi[0]};
    return {{mean - r, mean + r}, {lo, hi}};
}

}  // namespace

GroundState ground_state(const model::DimerParams &d) {
    HamMatrix h = fock_hamiltonian(d);
    GroundState gs;
    gs.energy = std::numeric_limits<double>::infinity();
    const Sector reference{2, 0};
    for (Sector s : all_sectors()) {
        SectorSolution sol = solve_sector(h, s);
        bool lower = sol.energy < gs.energy - 1e-12;
        bool tie_prefers_reference = std::abs(sol.energy - gs.energy) <= 1e-12 && s == reference;
        if (lower || tie_prefers_reference) {
            gs.energy = sol.energy;
            gs.fock = sol.vector;
            gs.sector = s;
        }
    }
    fix_sign(gs.fock);
    auto basis = reference_basis();
    for (int i = 0; i < 4; ++i) {
        gs.amplitudes[i] = dot(basis[i], gs.fock);
    }
    return gs;
}

double sector_minimum(const model::DimerParams &d, Sector s) {
    return solve_sector(fock_hamiltonian(d), s).energy;
}

DensityMatrix density_matrix(const GroundState &gs) {
    DensityMatrix out;
    const int modes[2] = {kPUp, kDUp};
    for (int kp = 0; kp < 2; ++kp) {
        for (int k = 0; k < 2; ++k) {
            // <gs| a+(k') a(k) |gs> = (a(k')|gs>) . (a(k)|gs>) for real states.
            out.gamma[kp][k] = dot(annihilate(gs.fock, modes[kp]), annihilate(gs.fock, modes[k]));
        }
    }
    return out;
}

NOBasis natural_orbitals(const DensityMatrix &gamma) {
    const Mat2 &g = gamma.gamma;
    Mat2 sym{{{g[0][0], 0.5 * (g[0][1] + g[1][0])}, {0.5 * (g[0][1] + g[1][0]), g[1][1]}}};
    Eig2 e = eig2(sym);
    NOBasis out;
    Vec2 c0 = e.vectors[1];
    if (c0[0] < 0 || (c0[0] == 0.0 && c0[1] < 0)) {
        c0 = {-c0[0], -c0[1]};
    }
    out.coeff[0] = c0;
    out.coeff[1] = {-c0[1], c0[0]};
    out.occupancy = {e.values[1], e.values[0]};
    return out;
}

double prep_angle(const GroundState &gs, model::Excitation xi, model::Orbital kappa) {
    Vec2 v = excited_components(gs, xi, up_mode(kappa));
    if (std::hypot(v[0], v[1]) < 1e-14) {
        throw InputError(std::string("excited state vanishes for ") + model::to_string(xi) + "/" +
                         model::to_string(kappa));
    }
    if (v[0] < 0 || (v[0] == 0.0 && v[1] < 0)) {
        v = {-v[0], -v[1]};
    }
    return std::atan2(v[1], v[0]);
}

PrepAngles excitation_prep_angles(const GroundState &gs) {
    return {prep_angle(gs, model::Excitation::electron, model::Orbital::p),
            prep_angle(gs, model::Excitation::electron, model::Orbital::d)};
}

Mat2 projected_sector_hamiltonian(const model::DimerParams &d, model::Excitation xi) {
    HamMatrix h = fock_hamiltonian(d);
    auto basis = mapped_basis(xi);
    Mat2 out{};
    for (int i = 0; i < 2; ++i) {
        Eigen::Matrix<double, kDim, 1> col = h * Eigen::Map<const Eigen::Matrix<double, kDim, 1>>(basis[i].data());
        for (int j = 0; j < 2; ++j) {
            out[j][i] = Eigen::Map<const Eigen::Matrix<double, kDim, 1>>(basis[j].data()).dot(col);
        }
    }
    return out;
}

ExcitationTable excitation_table(const GroundState &gs, const model::DimerParams &d, model::Excitation xi) {
    ExcitationTable t;
    t.sector = xi;
    Eig2 e = eig2(projected_sector_hamiltonian(d, xi));
    t.energies = e.values;
    for (int lam = 0; lam < 2; ++lam) {
        t.states[lam] = e.vectors[lam];
        fix_sign(t.states[lam]);
    }

    DensityMatrix gamma = density_matrix(gs);
    t.no = natural_orbitals(gamma);
    const bool electron = xi == model::Excitation::electron;

    for (int k = 0; k < 2; ++k) {
        Vec2 ex = excited_components(gs, xi, k == 0 ? kPUp : kDUp);
        double g = gamma.gamma[k][k];
        t.norm[k] = electron ? 1.0 - g : g;
        for (int lam = 0; lam < 2; ++lam) {
            t.b[k][lam] = t.states[lam][0] * ex[0] + t.states[lam][1] * ex[1];
            t.probability[k][lam] = t.norm[k] > 1e-14 ? t.b[k][lam] * t.b[k][lam] / t.norm[k] : 0.0;
        }
    }

    for (int nu = 0; nu < 2; ++nu) {
        double n = t.no.occupancy[nu];
        double weight = std::sqrt(std::max(0.0, electron ? 1.0 - n : n));
        for (int k = 0; k < 2; ++k) {
            t.dcoef[k][nu] = t.no.coeff[nu][k] * weight;
        }
        for (int lam = 0; lam < 2; ++lam) {
            double amp = t.no.coeff[nu][0] * t.b[0][lam] + t.no.coeff[nu][1] * t.b[1][lam];
            t.b_tilde[nu][lam] = weight > 1e-7 ? amp / weight : 0.0;
        }
    }

    for (int k = 0; k < 2; ++k) {
        for (int nu = 0; nu < 2; ++nu) {
            for (int nup = 0; nup < 2; ++nup) {
                t.S[k][nu][nup] = t.norm[k] > 1e-14 ? t.dcoef[k][nu] * t.dcoef[k][nup] / t.norm[k] : 0.0;
            }
        }
    }
    return t;
}

double oracle_angle(const ExcitationTable &t) {
    Mat2 m = t.b_tilde;
    double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det < 0) {
        m[0][1] = -m[0][1];
        m[1][1] = -m[1][1];
    }
    double theta = std::fmod(std::atan2(m[0][1], m[0][0]), std::numbers::pi);
    if (theta < 0) {
        theta += std::numbers::pi;
    }
    return theta;
}

}  // namespace qavg::fci
