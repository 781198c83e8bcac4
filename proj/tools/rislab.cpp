// Command-line front end: experiment specs, figure presets, DMT curves, gain correlation.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rislab/analytic.hpp"
#include "rislab/dmt.hpp"
#include "rislab/errors.hpp"
#include "rislab/experiment.hpp"
#include "rislab/montecarlo.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitAccuracy = 3;

std::vector<int> parse_triple(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw rislab::SpecError("dims: '" + text + "' must be N,Q,L");
        out.push_back(v);
    }
    if (out.size() != 3) throw rislab::SpecError("dims: '" + text + "' must be N,Q,L");
    return out;
}

int finish(const rislab::ResultTable& table, const std::filesystem::path& out) {
    rislab::write_outputs(table, out);
    std::cout << "wrote " << out.string() << " (" << (table.is_dmt() ? table.dmt_rows.size() : table.rows.size())
              << " rows)\n";
    if (table.meta.partial) {
        std::cerr << "warning: some analytic values missed their accuracy target; see '# note:' lines\n";
        return kExitAccuracy;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage and DMT experiments for partitioned RIS links"};
    app.set_version_flag("--version", rislab::tool_version());
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "OpenMP worker count (0 = runtime default)")->check(CLI::NonNegativeNumber);

    std::string spec_path;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Run an experiment described by a key=value spec file");
    run->add_option("specfile", spec_path, "Spec file")->required();
    run->add_option("--out", run_out, "Output CSV path (overrides the spec file's output key)");

    std::string figure_name;
    std::uint64_t figure_trials = 0;
    std::uint64_t figure_seed = 0;
    std::string figure_out;
    auto* figure = app.add_subcommand("figure", "Reproduce a figure dataset");
    figure->add_option("name", figure_name, "fig3 .. fig8")->required();
    auto* trials_opt = figure->add_option("--trials", figure_trials, "Monte Carlo trials per curve");
    auto* seed_opt = figure->add_option("--seed", figure_seed, "Master seed");
    figure->add_option("--out", figure_out, "Output CSV path");

    std::string dmt_dims;
    std::vector<int> dmt_k{1};
    double dmt_rate = 1.0;
    auto* dmt = app.add_subcommand("dmt", "Print DMT curves and cut-set summary");
    dmt->add_option("--dims", dmt_dims, "N,Q,L")->required();
    dmt->add_option("--K", dmt_k, "Partition counts (repeatable)")->delimiter(',');
    dmt->add_option("--rate", dmt_rate, "Target rate for the coding gain");

    int corr_q = 0;
    int corr_k = 0;
    std::uint64_t corr_trials = 0;
    std::uint64_t corr_seed = 1;
    auto* corr = app.add_subcommand("corr", "FR sub-slot gain correlation");
    corr->add_option("--q", corr_q, "Elements")->required();
    corr->add_option("--k", corr_k, "Sub-surfaces")->required();
    corr->add_option("--trials", corr_trials, "Also estimate by Monte Carlo with this many slots");
    corr->add_option("--seed", corr_seed, "Master seed for --trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    const rislab::RunOptions options{threads};
    try {
        if (*run) {
            const rislab::ExperimentSpec spec = rislab::load_spec(spec_path);
            std::filesystem::path out = run_out;
            if (out.empty()) out = spec.output;
            if (out.empty()) {
                out = rislab::default_output_dir() / (std::filesystem::path(spec_path).stem().string() + ".csv");
            }
            return finish(rislab::run_experiment(spec, options), out);
        }
        if (*figure) {
            rislab::PresetOverrides overrides;
            if (*trials_opt) overrides.trials = figure_trials;
            if (*seed_opt) overrides.seed = figure_seed;
            if (overrides.trials && *overrides.trials == 0) throw rislab::SpecError("--trials must be >= 1");
            const auto& names = rislab::preset_names();
            if (std::find(names.begin(), names.end(), figure_name) == names.end()) {
                throw rislab::SpecError("unknown preset '" + figure_name + "'");
            }
            const std::filesystem::path out =
                figure_out.empty() ? rislab::default_output_dir() / (figure_name + ".csv") : std::filesystem::path(figure_out);
            return finish(rislab::run_preset(figure_name, overrides, options), out);
        }
        if (*dmt) {
            const auto t = parse_triple(dmt_dims);
            const rislab::ChannelDims dims(t[0], t[1], t[2]);
            rislab::ResultTable table;
            table.meta.tool_version = rislab::tool_version();
            table.meta.preset = "dmt";
            table.dmt_rows = rislab::dmt_rows(dims, dmt_k);
            const auto summary = rislab::cutset_summary(dims, dmt_rate);
            std::string window;
            for (int m : summary.partition_window) window += (window.empty() ? "" : " ") + std::to_string(m);
            table.meta.notes.push_back("d_max=" + std::to_string(summary.d_max) + " r_max=" + std::to_string(summary.r_max));
            table.meta.notes.push_back("partition window: " + (window.empty() ? std::string("empty") : window));
            if (summary.coding_gain) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "coding gain: %.10g", *summary.coding_gain);
                table.meta.notes.emplace_back(buf);
            }
            for (int k : dmt_k) {
                if (k > 1) {
                    table.meta.notes.push_back("K=" + std::to_string(k) + ": " +
                                               rislab::to_string(rislab::check_partition_condition(dims, t[1] / k)));
                }
            }
            std::cout << rislab::format_csv(table);
            return 0;
        }
        if (*corr) {
            const auto model = rislab::corr_coeff(corr_q, corr_k, corr_k > 0 ? corr_q / corr_k : 0);
            std::printf("Q=%d K=%d m=%d b=%d zeta=%.10g limit=%.10g\n", model.q, model.k_parts, model.m, model.b,
                        model.zeta, model.zeta_limit);
            if (corr_trials > 0) {
                const auto est = rislab::estimate_correlation(rislab::ChannelDims(1, corr_q, 1),
                                                              rislab::PartitionPlan::contiguous(corr_q, corr_k), 0,
                                                              1, corr_trials, rislab::RngSpec{corr_seed}, options);
                std::printf("monte carlo: %.6f (se %.6f, %llu slots)\n", est.coefficient, est.standard_error,
                            static_cast<unsigned long long>(est.trials));
            }
            return 0;
        }
    } catch (const rislab::SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const rislab::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const rislab::UnsupportedConfiguration& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
