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


#include "chmix/experiment.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <fmt/format.h>

#include "chmix/csv_io.h"
#include "chmix/error.h"
#include "chmix/kernels.h"

namespace chmix {

namespace {

// Times closer than this to s are treated as equal to it.
constexpr double kTimeEps = 1e-9;

// t_index used for the separately tomographed s-time.
constexpr int kSIndex = -1;

Verdict shot_verdict(const kernels::PairStats &stats, const ExperimentConfig &cfg, const Tolerances &tol) {
    double threshold = std::max(kShotSigmaFactor * stats.std_min_eig.value_or(0.0), cfg.eps_class);
    bool not_cp = stats.mean_min_eig < -threshold || std::abs(stats.mean_trace_norm - 1.0) > tol.eps_tp;
    return not_cp ? Verdict::NotCP : Verdict::CPdivisibleStep;
}

std::vector<TheoryPoint> theory_curve(const ChannelFamily &family, const std::vector<double> &grid, double s,
                                      const Tolerances &tol, std::vector<DivisibilityReport> &reports) {
    std::vector<double> after_s;
    for (double t : grid) {
        if (t > s + kTimeEps) {
            after_s.push_back(t);
        }
    }
    reports = kernels::omp::analytic_scan(family, s, after_s, tol);
    std::vector<TheoryPoint> curve;
    curve.reserve(grid.size());
    std::size_t next = 0;
    for (double t : grid) {
        TheoryPoint p;
        p.t = t;
        p.probs = family.probs(t);
        try {
            p.rates = decay_rates(family, t);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::SingularEigenvalue) {
                throw;
            }
        }
        if (t > s + kTimeEps) {
            p.min_eig = reports[next++].min_eig;
        }
        curve.push_back(p);
    }
    return curve;
}

struct FitSlot {
    int channel = 0;
    int t_index = 0;  // kSIndex for the s-time
    bool ok = false;
    std::size_t first = 0;  // offset into the batch
};

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::MM: return "mm";
        case ExperimentKind::NMReplica: return "nm-replica";
        case ExperimentKind::NMDepol: return "nm-depol";
    }
    return "unknown";
}

std::string_view to_string(Mode mode) { return mode == Mode::Analytic ? "analytic" : "shots"; }

ExperimentKind parse_experiment(std::string_view name) {
    for (auto kind : {ExperimentKind::MM, ExperimentKind::NMReplica, ExperimentKind::NMDepol}) {
        if (name == to_string(kind)) {
            return kind;
        }
    }
    throw Error(ErrorKind::ConfigError, "unknown experiment '" + std::string(name) + "'");
}

Mode parse_mode(std::string_view name) {
    if (name == "analytic") {
        return Mode::Analytic;
    }
    if (name == "shots") {
        return Mode::Shots;
    }
    throw Error(ErrorKind::ConfigError, "unknown mode '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    switch (kind) {
        case ExperimentKind::MM:
            cfg.t_max = 3.8;
            cfg.s = 0.5;
            break;
        case ExperimentKind::NMReplica:
            cfg.t_max = 3.7;
            cfg.s = 0.5;
            break;
        case ExperimentKind::NMDepol:
            cfg.t_max = 8.8;
            cfg.s = 3.0;
            break;
    }
    return cfg;
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string &msg) { throw Error(ErrorKind::ConfigError, msg); };
    if (!(t_step > 0.0) || !std::isfinite(t_step)) {
        fail("t_step must be positive");
    }
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
        fail("t_max must be non-negative");
    }
    if (!(s >= 0.0 && s <= t_max)) {
        fail(fmt::format("s = {} must lie in [0, t_max = {}]", s, t_max));
    }
    if (shots < 1) {
        fail("shots must be positive");
    }
    if (resamples < 1) {
        fail("resamples must be at least 1");
    }
    if (!(eps_class >= 0.0) || (eps_tp && !(*eps_tp >= 0.0))) {
        fail("tolerances must be non-negative");
    }
    if (!(pinv_cutoff > 0.0 && pinv_cutoff < 1.0)) {
        fail("pinv_cutoff must lie in (0, 1)");
    }
    if (max_pairs < 1) {
        fail("max_pairs must be positive");
    }
    if (!(mle.tol > 0.0) || mle.max_iters < 1) {
        fail("MLE tolerance and iteration budget must be positive");
    }
}

Tolerances ExperimentConfig::tolerances() const {
    Tolerances tol;
    tol.eps_class = eps_class;
    tol.eps_tp = eps_tp.value_or(mode == Mode::Shots ? kShotEpsTp : 1e-6);
    tol.pinv_cutoff = pinv_cutoff;
    return tol;
}

std::vector<double> time_grid(double t_max, double t_step) {
    std::vector<double> grid;
    if (!(t_step > 0.0) || t_max < t_step) {
        return grid;
    }
    // The small slack keeps t_max itself on the grid despite rounding in t_max / t_step.
    auto n = static_cast<long>(std::floor(t_max / t_step + 1e-9));
    grid.reserve(n + 1);
    for (long i = 0; i <= n; ++i) {
        grid.push_back(static_cast<double>(i) * t_step);
    }
    return grid;
}

std::vector<ChannelSpec> channel_specs(ExperimentKind kind) {
    using F = FamilyKind;
    auto make = [](const char *label, FamilyKind fk, std::function<Circuit(double)> circuit) {
        return ChannelSpec{label, ChannelFamily::make(fk), std::move(circuit)};
    };
    switch (kind) {
        case ExperimentKind::MM:
            return {
                make("L1", F::MarkovBitFlip, [](double t) { return build_flip_circuit(prob_mm(t), FlipAxis::X); }),
                make("L2", F::MarkovYFlip, [](double t) { return build_flip_circuit(prob_mm(t), FlipAxis::Y); }),
                make("LT", F::MixedMM, [](double t) { return build_total_mm_circuit(prob_mm(t)); }),
            };
        case ExperimentKind::NMReplica: {
            ChannelFamily total = ChannelFamily::make(F::MixedNMreplica);
            return {
                make("L1", F::NmX1,
                     [](double t) { return build_flip_circuit(probs_nm_replica(t).first, FlipAxis::X); }),
                make("L2", F::NmX2,
                     [](double t) { return build_flip_circuit(probs_nm_replica(t).second, FlipAxis::X); }),
                make("LT", F::MixedNMreplica,
                     [total](double t) { return build_flip_circuit(total.probs(t)[0], FlipAxis::X); }),
            };
        }
        case ExperimentKind::NMDepol:
            return {
                make("L1", F::DepolQ, [](double t) { return build_depol_circuit(design_functions(t).q); }),
                make("L2", F::DepolR, [](double t) { return build_depol_circuit(design_functions(t).r); }),
                make("LT", F::DepolMixed, [](double t) { return build_depol_circuit(design_functions(t).w); }),
            };
    }
    throw Error(ErrorKind::ConfigError, "unknown experiment");
}

std::uint64_t derive_seed(std::uint64_t master, int channel, int t_index, int resample, int stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(channel), static_cast<std::uint32_t>(t_index),
                      static_cast<std::uint32_t>(resample), static_cast<std::uint32_t>(stream)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

CountsVector resample_counts(const CountsVector &counts, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CountsVector out = counts;
    out.seed = seed;
    const auto shots = static_cast<double>(counts.shots);
    for (double &n : out.n) {
        double g = gauss(rng);
        n = std::clamp(n + std::round(g * std::sqrt(std::max(n, 0.0))), 0.0, shots);
    }
    return out;
}

bool ChannelResult::markovian() const {
    return std::none_of(min_eig.begin(), min_eig.end(), [](const MinEigPoint &p) { return p.verdict == Verdict::NotCP; });
}

bool ChannelResult::theory_markovian() const {
    return std::none_of(min_eig.begin(), min_eig.end(),
                        [](const MinEigPoint &p) { return p.theory_verdict == Verdict::NotCP; });
}

std::size_t ExperimentResult::failure_count() const {
    std::size_t n = 0;
    for (const auto &ch : channels) {
        n += ch.failures.size();
    }
    return n;
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
    config.validate();
    ExperimentResult result;
    result.config = config;
    result.grid = time_grid(config.t_max, config.t_step);
    const Tolerances tol = config.tolerances();
    const auto specs = channel_specs(config.experiment);
    const auto &grid = result.grid;

    std::vector<std::vector<DivisibilityReport>> theory_reports(specs.size());
    for (std::size_t c = 0; c < specs.size(); ++c) {
        ChannelResult ch;
        ch.label = specs[c].label;
        ch.family = specs[c].family.kind();
        ch.theory = theory_curve(specs[c].family, grid, config.s, tol, theory_reports[c]);
        result.channels.push_back(std::move(ch));
    }

    if (config.mode == Mode::Analytic) {
        for (std::size_t c = 0; c < specs.size(); ++c) {
            auto &ch = result.channels[c];
            for (double t : grid) {
                ChiMatrix chi = chi_ideal(specs[c].family, t);
                ch.fidelity.push_back({t, process_fidelity(chi, chi), std::nullopt});
            }
            for (const auto &r : theory_reports[c]) {
                ch.min_eig.push_back(
                    {r.t, r.s, r.min_eig, std::nullopt, r.min_eig, r.trace_norm, r.verdict, r.verdict, r.singular});
            }
        }
        return result;
    }

    // Shot mode: tomography + resampling for every (channel, time), then one
    // parallel MLE batch over everything.
    const auto resamples = static_cast<std::size_t>(config.resamples);
    std::vector<FitSlot> slots;
    std::vector<CountsVector> batch;
    for (std::size_t c = 0; c < specs.size(); ++c) {
        auto &ch = result.channels[c];
        for (int i = kSIndex; i < static_cast<int>(grid.size()); ++i) {
            double t = i == kSIndex ? config.s : grid[i];
            FitSlot slot{static_cast<int>(c), i, false, batch.size()};
            try {
                Circuit circuit = specs[c].circuit(t);
                CountsVector base = run_tomography(circuit, config.shots,
                                                   derive_seed(config.seed, static_cast<int>(c), i, 0, 0), false);
                if (i != kSIndex) {
                    ch.counts.push_back({t, base});
                }
                for (std::size_t r = 0; r < resamples; ++r) {
                    batch.push_back(resample_counts(
                        base, derive_seed(config.seed, static_cast<int>(c), i, static_cast<int>(r), 1)));
                }
                slot.ok = true;
            } catch (const Error &e) {
                ch.failures.push_back(fmt::format("tomography at t={}: {}", format_number(t), e.what()));
            }
            slots.push_back(slot);
        }
    }

    std::vector<kernels::FitOutcome> fits = kernels::omp::fit_batch(batch, config.mle);

    auto collect = [&](const FitSlot &slot, ChannelResult &ch, double t) {
        std::vector<ChiMatrix> chis;
        for (std::size_t r = 0; r < resamples; ++r) {
            const auto &fit = fits[slot.first + r];
            if (fit.failed) {
                ch.failures.push_back(fmt::format("MLE at t={} resample {} failed", format_number(t), r));
                continue;
            }
            chis.push_back(fit.chi);
        }
        return chis;
    };

    std::size_t k = 0;
    for (std::size_t c = 0; c < specs.size(); ++c) {
        auto &ch = result.channels[c];
        const FitSlot &s_slot = slots[k++];
        std::vector<ChiMatrix> chi_s;
        if (s_slot.ok) {
            chi_s = collect(s_slot, ch, config.s);
        }
        std::size_t next_report = 0;
        for (std::size_t i = 0; i < grid.size(); ++i, ++k) {
            const FitSlot &slot = slots[k];
            const double t = grid[i];
            const bool after_s = t > config.s + kTimeEps;
            const DivisibilityReport *theory = after_s ? &theory_reports[c][next_report++] : nullptr;
            if (!slot.ok) {
                continue;
            }
            std::vector<ChiMatrix> chi_t = collect(slot, ch, t);
            if (chi_t.empty()) {
                continue;
            }
            try {
                ChiMatrix ideal = chi_ideal(specs[c].family, t);
                std::vector<double> fid;
                fid.reserve(chi_t.size());
                for (const auto &chi : chi_t) {
                    fid.push_back(process_fidelity(chi, ideal));
                }
                auto fs = kernels::sample_stats(fid);
                ch.fidelity.push_back({t, fs.mean, fs.std});

                if (theory == nullptr || chi_s.empty()) {
                    continue;
                }
                auto stats = kernels::omp::intermediate_pair_stats(chi_t, chi_s, tol, config.max_pairs);
                MinEigPoint p;
                p.t = t;
                p.s = config.s;
                p.mean = stats.mean_min_eig;
                p.std = stats.std_min_eig;
                p.theory = theory->min_eig;
                p.trace_norm = stats.mean_trace_norm;
                p.theory_verdict = theory->verdict;
                p.singular = theory->singular || stats.any_singular;
                p.verdict = p.singular ? Verdict::SingularIntermediate : shot_verdict(stats, config, tol);
                ch.min_eig.push_back(p);
            } catch (const Error &e) {
                ch.failures.push_back(fmt::format("analysis at t={}: {}", format_number(t), e.what()));
            }
        }
    }
    return result;
}

void emit_outputs(const ExperimentResult &result, const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
    }
    const auto &cfg = result.config;
    const Tolerances tol = cfg.tolerances();
    const std::string banner =
        fmt::format("# channel-mixer experiment={} mode={} seed={} shots={} resamples={} s={}\n",
                    to_string(cfg.experiment), to_string(cfg.mode), cfg.seed, cfg.shots, cfg.resamples,
                    format_number(cfg.s));

    std::string reports = banner + "experiment,channel,s,t,min_eig,min_eig_std,trace_norm,verdict,singular_flag\n";
    for (const auto &ch : result.channels) {
        std::string head = banner + fmt::format("# channel={} family={}\n", ch.label, to_string(ch.family));

        std::string fid = head + "t,mean,std\n";
        for (const auto &p : ch.fidelity) {
            fid += fmt::format("{},{},{}\n", format_number(p.t), format_number(p.mean), format_optional(p.std));
        }
        write_text_file(dir / fmt::format("fidelity_{}.csv", ch.label), fid);

        std::string eig = head + "t,s,mean,std,theory,verdict\n";
        for (const auto &p : ch.min_eig) {
            eig += fmt::format("{},{},{},{},{},{}\n", format_number(p.t), format_number(p.s), format_number(p.mean),
                               format_optional(p.std), format_number(p.theory), to_string(p.verdict));
            reports += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(cfg.experiment), ch.label,
                                   format_number(p.s), format_number(p.t), format_number(p.mean),
                                   format_optional(p.std), format_number(p.trace_norm), to_string(p.verdict),
                                   p.singular ? 1 : 0);
        }
        write_text_file(dir / fmt::format("mineig_{}.csv", ch.label), eig);

        std::string theory = head + "t,p0,p1,p2,p3,gamma1,gamma2,gamma3,min_eig\n";
        for (const auto &p : ch.theory) {
            auto g = [&p](double DecayRates::*field) {
                return p.rates ? format_number((*p.rates).*field) : std::string();
            };
            theory += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_number(p.t), format_number(p.probs[0]),
                                  format_number(p.probs[1]), format_number(p.probs[2]), format_number(p.probs[3]),
                                  g(&DecayRates::gamma1), g(&DecayRates::gamma2), g(&DecayRates::gamma3),
                                  format_optional(p.min_eig));
        }
        write_text_file(dir / fmt::format("theory_{}.csv", ch.label), theory);

        if (cfg.mode == Mode::Shots) {
            std::string counts = head + counts_csv_header() + "\n";
            for (const auto &p : ch.counts) {
                counts += counts_to_csv_row(p.t, p.counts) + "\n";
            }
            write_text_file(dir / fmt::format("counts_{}.csv", ch.label), counts);
        }
    }
    write_text_file(dir / "reports.csv", reports);

    std::string manifest;
    auto kv = [&manifest](std::string_view key, const std::string &value) {
        manifest += fmt::format("{} = {}\n", key, value);
    };
    kv("experiment", std::string(to_string(cfg.experiment)));
    kv("mode", std::string(to_string(cfg.mode)));
    kv("t_max", format_number(cfg.t_max));
    kv("t_step", format_number(cfg.t_step));
    kv("s", format_number(cfg.s));
    kv("grid_points", std::to_string(result.grid.size()));
    kv("shots", std::to_string(cfg.shots));
    kv("resamples", std::to_string(cfg.resamples));
    kv("seed", std::to_string(cfg.seed));
    kv("eps_class", format_number(tol.eps_class));
    kv("eps_tp", format_number(tol.eps_tp));
    kv("sigma_factor", format_number(cfg.mode == Mode::Shots ? kShotSigmaFactor : 0.0));
    kv("pinv_cutoff", format_number(tol.pinv_cutoff));
    kv("max_pairs", std::to_string(cfg.max_pairs));
    kv("mle_tol", format_number(cfg.mle.tol));
    kv("mle_max_iters", std::to_string(cfg.mle.max_iters));
    kv("likelihood_eps_den", format_number(cfg.mle.likelihood.eps_den));
    kv("noise_model", "gaussian, std = sqrt(n) per count, clamped to [0, shots]");
    for (const auto &ch : result.channels) {
        kv(fmt::format("family_{}", ch.label), std::string(to_string(ch.family)));
        kv(fmt::format("markovian_{}", ch.label), ch.markovian() ? "true" : "false");
        kv(fmt::format("theory_markovian_{}", ch.label), ch.theory_markovian() ? "true" : "false");
    }
    kv("failed_points", std::to_string(result.failure_count()));
    write_text_file(dir / "manifest.txt", manifest);
}

}  // namespace chmix
