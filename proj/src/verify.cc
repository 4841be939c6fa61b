// Copyright 2026 The channel-mixer Authors
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


#include "chmix/verify.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "chmix/divisibility.h"
#include "chmix/error.h"
#include "chmix/experiment.h"
#include "chmix/reconstruction.h"

namespace chmix {

namespace {

ComplexMatrix random_hermitian(std::mt19937_64 &rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = cplx(g(rng), g(rng));
        }
    }
    return hermitian_from(m);
}

CheckResult make_check(std::string name, double worst, double tolerance, std::string detail = {}) {
    return {std::move(name), worst <= tolerance, worst, tolerance, std::move(detail)};
}

double sorted_spectrum_gap(const Matrix4c &w, const PauliProbs &probs) {
    Eigen::VectorXd eig = hermitian_eigen(hermitian_from(w), false).eigenvalues;
    std::array<double, 4> p = probs.p;
    std::sort(p.begin(), p.end());
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(eig(k) - p[k]));
    }
    return worst;
}

ExperimentKind home_experiment(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::MarkovBitFlip:
        case FamilyKind::MarkovYFlip:
        case FamilyKind::MixedMM:
            return ExperimentKind::MM;
        case FamilyKind::NmX1:
        case FamilyKind::NmX2:
        case FamilyKind::MixedNMreplica:
            return ExperimentKind::NMReplica;
        default:
            return ExperimentKind::NMDepol;
    }
}

}  // namespace

const std::vector<BuilderCase> &circuit_builders() {
    static const std::vector<BuilderCase> kBuilders = {
        {"flip_x", [](double p) { return build_flip_circuit(p, FlipAxis::X); },
         [](double p) { return PauliProbs{{p, 1.0 - p, 0.0, 0.0}}; }},
        {"flip_y", [](double p) { return build_flip_circuit(p, FlipAxis::Y); },
         [](double p) { return PauliProbs{{p, 0.0, 1.0 - p, 0.0}}; }},
        {"total_mm", [](double p) { return build_total_mm_circuit(p); },
         [](double p) { return PauliProbs{{p, (1.0 - p) / 2.0, (1.0 - p) / 2.0, 0.0}}; }},
        {"depolarizing", [](double p) { return build_depol_circuit(p); },
         [](double p) { return depolarizing_probs(p); }},
    };
    return kBuilders;
}

double circuit_channel_deviation(const BuilderCase &builder, double p) {
    auto outputs = channel_from_circuit(builder.build(p));
    const PauliProbs probs = builder.probs(p);
    const auto &inputs = tomography_inputs();
    double worst = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        worst = std::max(worst, (outputs[k] - apply_pauli(probs, inputs[k])).cwiseAbs().maxCoeff());
    }
    return worst;
}

RateAgreement rate_divisibility_agreement(const ChannelFamily &family, std::span<const double> grid, double h,
                                          double eps_rate) {
    RateAgreement out;
    const Tolerances local{eps_rate * h, 1e-6, 1e-10};
    for (double t : grid) {
        ++out.points;
        DecayRates rates;
        try {
            rates = decay_rates(family, t);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::SingularEigenvalue) {
                throw;
            }
            ++out.skipped;
            continue;
        }
        DivisibilityReport r = intermediate_report(chi_ideal(family, t + h), chi_ideal(family, t), t + h, t, local);
        if (r.singular) {
            ++out.skipped;
            continue;
        }
        bool rate_negative = rates.min() < -eps_rate;
        bool step_not_cp = r.verdict == Verdict::NotCP;
        out.rates_markovian = out.rates_markovian && !rate_negative;
        if (rate_negative != step_not_cp) {
            out.mismatch_times.push_back(t);
        }
    }
    const Tolerances coarse{};
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        DivisibilityReport r = intermediate_report(chi_ideal(family, grid[i + 1]), chi_ideal(family, grid[i]),
                                                   grid[i + 1], grid[i], coarse);
        if (r.verdict == Verdict::NotCP) {
            out.steps_markovian = false;
        }
    }
    return out;
}

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CheckResult> checks;

    {
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            ComplexMatrix m = random_hermitian(rng, 4);
            EigenResult e = hermitian_eigen(m);
            ComplexMatrix back = *e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors->adjoint();
            worst = std::max(worst, (back - m).norm());
        }
        checks.push_back(make_check("hermitian_eigen_reconstruction", worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            ChiMatrix chi{random_hermitian(rng, 4)};
            worst = std::max(worst, (chi_from_transfer(transfer_from_chi(chi)).mat - chi.mat).norm());
        }
        checks.push_back(make_check("chi_transfer_round_trip", worst, 1e-10));
    }
    {
        double spectrum = 0.0;
        double composition = 0.0;
        double trace_norm_gap = 0.0;
        std::uniform_int_distribution<std::size_t> pick(0, kAllFamilies.size() - 1);
        for (int k = 0; k < 200; ++k) {
            ChannelFamily f = ChannelFamily::make(kAllFamilies[pick(rng)]);
            double t = 8.8 * unit(rng);
            double s = t * unit(rng);
            TransferMatrix ft = transfer_from_chi(chi_ideal(f, t));
            TransferMatrix fs = transfer_from_chi(chi_ideal(f, s));
            spectrum = std::max(spectrum, sorted_spectrum_gap(choi_from_transfer(ft).mat, f.probs(t)));
            IntermediateMap im = intermediate_transfer(ft, fs, 1e-10);
            if (im.singular) {
                continue;
            }
            composition = std::max(composition, (im.transfer.mat * fs.mat - ft.mat).cwiseAbs().maxCoeff());
            ChoiMatrix w = choi_from_transfer(im.transfer);
            w.mat = hermitian_from(w.mat);
            CpCheck cp = cp_verdict(w, 1e-6, 1e-6);
            if (cp.min_eig >= 0.0) {
                trace_norm_gap = std::max(trace_norm_gap, std::abs(cp.trace_norm - 1.0));
            }
        }
        checks.push_back(make_check("choi_spectrum_equals_probs", spectrum, 1e-10));
        checks.push_back(make_check("composition_law", composition, 1e-8));
        checks.push_back(make_check("cp_implies_unit_trace_norm", trace_norm_gap, 1e-8));
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            TParams x{};
            for (double &v : x) {
                v = gauss(rng);
            }
            ChiMatrix chi = chi_from_t(x);
            double min_eig = hermitian_eigen(chi.mat, false).eigenvalues(0);
            worst = std::max({worst, -min_eig, std::abs(chi.mat.trace().real() - 1.0)});
        }
        checks.push_back(make_check("t_params_physical", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (const auto &b : circuit_builders()) {
            for (int k = 0; k < 50; ++k) {
                worst = std::max(worst, circuit_channel_deviation(b, unit(rng)));
            }
        }
        checks.push_back(make_check("circuit_channel_equivalence", worst, 1e-9));
    }
    {
        double worst = 0.0;
        for (auto kind : {ExperimentKind::MM, ExperimentKind::NMReplica, ExperimentKind::NMDepol}) {
            auto cfg = ExperimentConfig::defaults(kind);
            for (const auto &spec : channel_specs(kind)) {
                for (double t : time_grid(cfg.t_max, cfg.t_step)) {
                    CountsVector c = run_tomography(spec.circuit(t), 8192, 0, true);
                    ChiMatrix chi_p = chi_linear_inversion(states_from_counts(c));
                    worst = std::max(worst, (chi_p.mat - chi_ideal(spec.family, t).mat).cwiseAbs().maxCoeff());
                }
            }
        }
        checks.push_back(make_check("linear_inversion_exact", worst, 1e-9));
    }
    {
        std::size_t mismatches = 0;
        std::string detail;
        for (FamilyKind kind : kAllFamilies) {
            auto cfg = ExperimentConfig::defaults(home_experiment(kind));
            auto grid = time_grid(cfg.t_max, cfg.t_step);
            RateAgreement a = rate_divisibility_agreement(ChannelFamily::make(kind), grid);
            mismatches += a.mismatch_times.size();
            if (a.rates_markovian != a.steps_markovian) {
                ++mismatches;
            }
            detail += fmt::format("{}:{}/{} ", to_string(kind), a.points - a.skipped - a.mismatch_times.size(),
                                  a.points - a.skipped);
        }
        checks.push_back(make_check("rates_match_divisibility", static_cast<double>(mismatches), 0.0, detail));
    }
    return checks;
}

}  // namespace chmix
