#include <algorithm>

#include "rislab/errors.hpp"
#include "rislab/experiment.hpp"

// Figure presets. Every preset records its specs in the output header, so the
// grids below are visible in each result file.

namespace rislab {

namespace {

constexpr std::uint64_t kPresetTrials = 1000000;
constexpr std::uint64_t kPresetSeed = 20240601;

std::vector<double> grid(double lo, double step, double hi) {
    std::vector<double> out;
    for (int i = 0; lo + i * step <= hi + 1e-9; ++i) out.push_back(lo + i * step);
    return out;
}

ExperimentSpec make(SchemeKind scheme, int n, int q, int l, int k, std::vector<double> snr) {
    ExperimentSpec s;
    s.scheme = scheme;
    s.n = n;
    s.q = q;
    s.l = l;
    s.k = k;
    s.snr_db = std::move(snr);
    s.rate = 1.0;
    s.trials = kPresetTrials;
    s.seed = kPresetSeed;
    return s;
}

std::vector<ExperimentSpec> fig3() {
    std::vector<ExperimentSpec> out;
    for (int antennas : {1, 2}) {
        for (int q : {1, 2, 3, 4, 8, 16, 32, 60}) {
            out.push_back(make(SchemeKind::PR, antennas, q, antennas, 1, grid(0.0, 2.5, 30.0)));
        }
    }
    return out;
}

std::vector<ExperimentSpec> fig4() {
    std::vector<ExperimentSpec> out;
    for (int antennas : {1, 2}) {
        for (int q : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 40, 48, 60}) {
            out.push_back(make(SchemeKind::PR, antennas, q, antennas, 1, {5.0}));
        }
    }
    return out;
}

std::vector<ExperimentSpec> partition_figure(int antennas) {
    const auto snr = grid(0.0, 2.5, 30.0);
    std::vector<ExperimentSpec> out{make(SchemeKind::PR, antennas, 60, antennas, 1, snr)};
    for (SchemeKind kind : {SchemeKind::AR, SchemeKind::FR}) {
        for (int k : {2, 4}) out.push_back(make(kind, antennas, 60, antennas, k, snr));
    }
    return out;
}

std::vector<ExperimentSpec> fig7() {
    const auto snr = grid(0.0, 2.5, 25.0);
    std::vector<ExperimentSpec> out;
    for (int q : {4, 16}) out.push_back(make(SchemeKind::PB, 1, q, 1, 1, snr));
    for (SchemeKind kind : {SchemeKind::AR, SchemeKind::FR}) {
        for (int k : {2, 4}) out.push_back(make(kind, 1, 16, 1, k, snr));
    }
    return out;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
    return names;
}

std::vector<ExperimentSpec> preset_experiments(std::string_view name, const PresetOverrides& overrides) {
    std::vector<ExperimentSpec> specs;
    if (name == "fig3") specs = fig3();
    else if (name == "fig4") specs = fig4();
    else if (name == "fig5") specs = partition_figure(1);
    else if (name == "fig6") specs = partition_figure(2);
    else if (name == "fig7") specs = fig7();
    else if (name == "fig8") return {};
    else throw SpecError("unknown preset '" + std::string(name) + "'");
    for (ExperimentSpec& s : specs) {
        if (overrides.trials) s.trials = *overrides.trials;
        if (overrides.seed) s.seed = *overrides.seed;
    }
    return specs;
}

std::vector<DmtRow> dmt_rows(const ChannelDims& dims, const std::vector<int>& k_values) {
    std::vector<DmtRow> rows;
    auto emit = [&](const DmtCurve& curve, const std::string& label, int k) {
        for (const DmtVertex& v : curve.vertices) {
            rows.push_back({label, dims.tx(), dims.ris(), dims.rx(), k, dims.ris() / k, v.r, v.d});
        }
    };
    emit(dmt_pr(dims), "PR", 1);
    for (int k : k_values) {
        if (k == 1) continue;
        if (k < 1 || dims.ris() % k != 0) throw DomainError("K must divide Q");
        const PartitionPlan plan = PartitionPlan::contiguous(dims.ris(), k);
        emit(dmt_ar(dims, plan), "AR", k);
        emit(dmt_fr_lower_bound(dims, plan), "FR-LB", k);
    }
    emit(dmt_cutset(dims), "cut-set", 1);
    return rows;
}

ResultTable run_preset(std::string_view name, const PresetOverrides& overrides, RunOptions options) {
    ResultTable table;
    table.meta.tool_version = tool_version();
    table.meta.preset = std::string(name);

    if (name == "fig8") {
        table.meta.spec_echo = {"dims=3,5,3 k=1", "dims=3,10,3 k=1,2,5,10"};
        for (auto& row : dmt_rows(ChannelDims(3, 5, 3), {1})) table.dmt_rows.push_back(row);
        for (auto& row : dmt_rows(ChannelDims(3, 10, 3), {1, 2, 5, 10})) table.dmt_rows.push_back(row);
        return table;
    }

    const std::vector<ExperimentSpec> specs = preset_experiments(name, overrides);
    table.meta.seed = specs.front().seed;
    table.meta.trials = specs.front().trials;
    for (const ExperimentSpec& s : specs) {
        std::string line;
        for (const std::string& kv : s.echo()) {
            if (kv.rfind("trials=", 0) == 0 || kv.rfind("seed=", 0) == 0) continue;
            line += (line.empty() ? "" : " ") + kv;
        }
        table.meta.spec_echo.push_back(line);
    }
    if (std::any_of(specs.begin(), specs.end(), [](const ExperimentSpec& s) { return s.scheme == SchemeKind::PB; })) {
        table.meta.notes.push_back("PB series: mc-only");
    }
    append_experiments(table, specs, options);
    return table;
}

}  // namespace rislab
