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


// channel-mixer: run, scan, tomo and verify subcommands.
//
// Exit codes: 0 success, 2 configuration error, 3 partial failure (failed
// grid points, I/O errors, or failed invariants), 1 anything unexpected.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "chmix/csv_io.h"
#include "chmix/divisibility.h"
#include "chmix/error.h"
#include "chmix/experiment.h"
#include "chmix/kernels.h"
#include "chmix/reconstruction.h"
#include "chmix/verify.h"

namespace {

using namespace chmix;

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

struct ConfigFlags {
    std::string experiment = "mm";
    std::optional<double> t_max;
    std::optional<double> t_step;
    std::optional<double> s;
    std::optional<std::int64_t> shots;
    std::optional<int> resamples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<double> eps_class;
    std::optional<double> eps_tp;
    std::optional<double> pinv_cutoff;
    std::optional<std::size_t> max_pairs;
    std::string out = "results";
};

void add_config_flags(CLI::App *cmd, ConfigFlags &f, bool with_mode) {
    cmd->add_option("--experiment", f.experiment, "mm | nm-replica | nm-depol | all")->capture_default_str();
    cmd->add_option("--t-max", f.t_max, "last grid time (experiment default)");
    cmd->add_option("--t-step", f.t_step, "grid spacing (default 0.1)");
    cmd->add_option("--s", f.s, "reference time of the intermediate maps (experiment default)");
    cmd->add_option("--shots", f.shots, "shots per tomography run (default 8192)");
    cmd->add_option("--resamples", f.resamples, "Gaussian resamples per time (default 20)");
    cmd->add_option("--seed", f.seed, "master seed (default 7)");
    if (with_mode) {
        cmd->add_option("--mode", f.mode, "analytic | shots (default shots)");
    }
    cmd->add_option("--eps-class", f.eps_class, "NotCP threshold on the minimum Choi eigenvalue (default 1e-6)");
    cmd->add_option("--eps-tp", f.eps_tp, "trace-norm tolerance (default 1e-6 analytic, 0.05 shots)");
    cmd->add_option("--pinv-cutoff", f.pinv_cutoff, "relative singular value cutoff (default 1e-10)");
    cmd->add_option("--max-pairs", f.max_pairs, "cap on (t, s) resample pairings (default 10000)");
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
}

std::vector<ExperimentKind> selected_experiments(const std::string &name) {
    if (name == "all") {
        return {ExperimentKind::MM, ExperimentKind::NMReplica, ExperimentKind::NMDepol};
    }
    return {parse_experiment(name)};
}

ExperimentConfig build_config(const ConfigFlags &f, ExperimentKind kind, std::optional<Mode> forced_mode) {
    ExperimentConfig cfg = ExperimentConfig::defaults(kind);
    if (f.t_max) cfg.t_max = *f.t_max;
    if (f.t_step) cfg.t_step = *f.t_step;
    if (f.s) cfg.s = *f.s;
    if (f.shots) cfg.shots = *f.shots;
    if (f.resamples) cfg.resamples = *f.resamples;
    if (f.seed) cfg.seed = *f.seed;
    if (f.mode) cfg.mode = parse_mode(*f.mode);
    if (forced_mode) cfg.mode = *forced_mode;
    if (f.eps_class) cfg.eps_class = *f.eps_class;
    if (f.eps_tp) cfg.eps_tp = *f.eps_tp;
    if (f.pinv_cutoff) cfg.pinv_cutoff = *f.pinv_cutoff;
    if (f.max_pairs) cfg.max_pairs = *f.max_pairs;
    cfg.validate();
    return cfg;
}

int run_experiments(const ConfigFlags &f, std::optional<Mode> forced_mode) {
    auto kinds = selected_experiments(f.experiment);
    std::vector<ExperimentConfig> configs;
    for (auto kind : kinds) {
        configs.push_back(build_config(f, kind, forced_mode));
    }
    int status = kExitOk;
    for (auto &cfg : configs) {
        std::filesystem::path dir = f.out;
        if (kinds.size() > 1) {
            dir /= std::string(to_string(cfg.experiment));
        }
        cfg.output_dir = dir;
        ExperimentResult result = run_experiment(cfg);
        emit_outputs(result, dir);
        for (const auto &ch : result.channels) {
            for (const auto &msg : ch.failures) {
                std::cerr << fmt::format("{} {}: {}\n", to_string(cfg.experiment), ch.label, msg);
            }
            std::cout << fmt::format("{:<10} {}  {:<16} measured: {:<15} theory: {}\n", to_string(cfg.experiment),
                                     ch.label, to_string(ch.family),
                                     ch.markovian() ? "Markovian" : "non-Markovian",
                                     ch.theory_markovian() ? "Markovian" : "non-Markovian");
        }
        if (result.failure_count() > 0) {
            status = kExitPartial;
        }
    }
    return status;
}

std::optional<ChannelSpec> find_spec(const std::string &name) {
    for (auto kind : {ExperimentKind::MM, ExperimentKind::NMReplica, ExperimentKind::NMDepol}) {
        for (auto &spec : channel_specs(kind)) {
            if (to_string(spec.family.kind()) == name) {
                return spec;
            }
        }
    }
    return std::nullopt;
}

void print_chi(const char *label, const ChiMatrix &chi) {
    std::cout << label << ":\n";
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            cplx v = chi.mat(i, j);
            std::cout << fmt::format("  {:+.6f}{:+.6f}i", v.real(), v.imag());
        }
        std::cout << '\n';
    }
}

struct TomoFlags {
    std::string family = "MixedMM";
    double t = 1.0;
    std::int64_t shots = 8192;
    std::uint64_t seed = 7;
    bool exact = false;
    std::string counts_file;
    std::size_t row = 0;
};

int run_tomo(const TomoFlags &f) {
    CountsVector counts;
    double t = f.t;
    std::optional<ChiMatrix> ideal;
    if (!f.counts_file.empty()) {
        auto rows = read_counts_csv(f.counts_file);
        if (f.row >= rows.size()) {
            throw Error(ErrorKind::ConfigError, fmt::format("--row {} out of range ({} rows)", f.row, rows.size()));
        }
        counts = rows[f.row].counts;
        t = rows[f.row].t;
        if (auto spec = find_spec(f.family)) {
            ideal = chi_ideal(spec->family, t);
        }
    } else {
        auto spec = find_spec(f.family);
        if (!spec) {
            throw Error(ErrorKind::ConfigError, "unknown family '" + f.family + "'");
        }
        if (!(f.t >= 0.0)) {
            throw Error(ErrorKind::ConfigError, "--t must be non-negative");
        }
        if (f.shots < 1) {
            throw Error(ErrorKind::ConfigError, "--shots must be positive");
        }
        counts = run_tomography(spec->circuit(f.t), f.shots, f.seed, f.exact);
        ideal = chi_ideal(spec->family, f.t);
    }
    std::cout << counts_csv_header() << '\n' << counts_to_csv_row(t, counts) << '\n';
    ChiMatrix chi_p = chi_linear_inversion(states_from_counts(counts));
    MleResult mle = mle_chi(counts);
    print_chi("chi_p (linear inversion)", chi_p);
    print_chi("chi_c (maximum likelihood)", mle.chi);
    std::cout << fmt::format("likelihood: {} -> {} in {} iterations{}\n", format_number(mle.initial_objective),
                             format_number(mle.objective), mle.iterations,
                             mle.converged ? "" : " (not converged)");
    if (ideal) {
        print_chi("chi_ideal", *ideal);
        std::cout << fmt::format("process fidelity: {}\n", format_number(process_fidelity(mle.chi, *ideal)));
    }
    return mle.converged ? kExitOk : kExitPartial;
}

int run_verify(std::uint64_t seed) {
    bool ok = true;
    for (const auto &c : run_invariant_suite(seed)) {
        ok = ok && c.passed;
        std::cout << fmt::format("{} {:<32} worst={:.3e} tol={:.1e} {}\n", c.passed ? "PASS" : "FAIL", c.name, c.worst,
                                 c.tolerance, c.detail);
    }
    return ok ? kExitOk : kExitPartial;
}

void apply_thread_cap() {
    const char *env = std::getenv("CHANNEL_MIXER_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    char *end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 0) {
        throw Error(ErrorKind::ConfigError, fmt::format("CHANNEL_MIXER_THREADS='{}' is not a non-negative integer", env));
    }
    kernels::omp::set_max_threads(static_cast<int>(n));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Mixtures of single-qubit channels: simulation, tomography and CP-divisibility"};
    app.require_subcommand(1);

    ConfigFlags run_flags;
    auto *run = app.add_subcommand("run", "full experiment with tomography, resampling and MLE");
    add_config_flags(run, run_flags, true);

    ConfigFlags scan_flags;
    auto *scan = app.add_subcommand("scan", "analytic curves and verdicts only");
    add_config_flags(scan, scan_flags, false);

    TomoFlags tomo_flags;
    auto *tomo = app.add_subcommand("tomo", "process tomography of one channel at one time");
    tomo->add_option("--family", tomo_flags.family, "channel family name")->capture_default_str();
    tomo->add_option("--t", tomo_flags.t, "time")->capture_default_str();
    tomo->add_option("--shots", tomo_flags.shots, "shots per run")->capture_default_str();
    tomo->add_option("--seed", tomo_flags.seed, "sampling seed")->capture_default_str();
    tomo->add_flag("--exact", tomo_flags.exact, "use expected counts instead of sampling");
    tomo->add_option("--counts", tomo_flags.counts_file, "read counts from a counts CSV instead of simulating");
    tomo->add_option("--row", tomo_flags.row, "data row of --counts to use")->capture_default_str();

    std::uint64_t verify_seed = 1;
    auto *verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--seed", verify_seed, "seed for random samples")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        apply_thread_cap();
        if (*run) {
            return run_experiments(run_flags, std::nullopt);
        }
        if (*scan) {
            return run_experiments(scan_flags, Mode::Analytic);
        }
        if (*tomo) {
            return run_tomo(tomo_flags);
        }
        if (*verify) {
            return run_verify(verify_seed);
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::ConfigError: return kExitConfig;
            case ErrorKind::IoError: return kExitPartial;
            default: return kExitUnexpected;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnexpected;
    }
    return kExitOk;
}
