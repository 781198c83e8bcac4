#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rislab/channel.hpp"
#include "rislab/dmt.hpp"
#include "rislab/montecarlo.hpp"

namespace rislab {

enum class Evaluator { MonteCarlo, Analytic, Both };

/// Which closed form fills p_analytic. Auto picks per (scheme, dims):
/// PR SISO -> pr_siso, PR MIMO -> gil_pelaez, AR SISO -> clt, AR MIMO -> gil_pelaez,
/// FR SISO -> fr_theorem, FR MIMO -> fr_bound, PB -> none.
enum class AnalyticMethod { Auto, GilPelaez, Clt, FrTheorem, FrBound, PrSiso, None };

std::string_view to_string(Evaluator e) noexcept;
std::string_view to_string(AnalyticMethod a) noexcept;

/// Invalid experiment description. `what()` carries a "source:line: message" anchor when
/// the problem comes from a config file line.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
    SchemeKind scheme = SchemeKind::PR;
    int n = 1;
    int q = 1;
    int l = 1;
    int k = 1;
    std::vector<double> snr_db;
    double rate = 1.0;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    std::string output;
    Evaluator evaluator = Evaluator::Both;
    AnalyticMethod analytic = AnalyticMethod::Auto;

    /// Throws SpecError naming the offending field.
    void validate() const;
    ChannelDims dims() const { return ChannelDims(n, q, l); }
    SchemeConfig scheme_config() const { return SchemeConfig::make(scheme, q, k); }
    /// Resolved analytic method (never Auto).
    AnalyticMethod resolved_analytic() const;
    /// key=value lines that reproduce this spec.
    std::vector<std::string> echo() const;
};

/// Parses the flat key=value format ('#' comments, blank lines ignored). `source` names
/// the document in error anchors. Unknown or repeated keys are errors.
ExperimentSpec parse_spec(std::string_view text, std::string_view source = "<spec>");
ExperimentSpec load_spec(const std::filesystem::path& path);

struct ResultRow {
    double snr_db = 0.0;
    std::string scheme;
    int n = 0;
    int l = 0;
    int q = 0;
    int k = 0;
    int m = 0;
    double rate = 0.0;
    std::optional<double> p_mc;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<double> p_analytic;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
};

struct DmtRow {
    std::string label;
    int n = 0;
    int q = 0;
    int l = 0;
    int k = 0;
    int m = 0;
    int r = 0;
    int d = 0;
};

struct RunMetadata {
    std::string tool_version;
    std::string preset;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::vector<std::string> spec_echo;
    std::vector<std::string> notes;
    /// Some evaluator missed its accuracy target; affected values are best effort.
    bool partial = false;
};

struct ResultTable {
    RunMetadata meta;
    std::vector<ResultRow> rows;
    std::vector<DmtRow> dmt_rows;
    bool is_dmt() const noexcept { return !dmt_rows.empty(); }
};

std::string tool_version();

/// One row per SNR point (plus FR-LB rows where the analytic value is a bound).
ResultTable run_experiment(const ExperimentSpec& spec, RunOptions options = {});

/// Appends the rows of `spec` to `table`, recording accuracy failures in its metadata.
void append_experiment(ResultTable& table, const ExperimentSpec& spec, RunOptions options = {});

/// Same for several specs; specs sharing link, grid, rate, trials and seed share channel draws.
void append_experiments(ResultTable& table, const std::vector<ExperimentSpec>& specs, RunOptions options = {});

struct PresetOverrides {
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
};

const std::vector<std::string>& preset_names();

/// The experiments behind a named figure; empty for the DMT-only preset.
std::vector<ExperimentSpec> preset_experiments(std::string_view name, const PresetOverrides& overrides = {});

/// Runs a named figure preset. Throws SpecError for an unknown name.
ResultTable run_preset(std::string_view name, const PresetOverrides& overrides = {}, RunOptions options = {});

/// DMT rows for one channel: PR, and AR plus the FR bound for every K (K = 1 is PR).
std::vector<DmtRow> dmt_rows(const ChannelDims& dims, const std::vector<int>& k_values);

std::string format_csv(const ResultTable& table);
std::string format_json(const ResultTable& table);

/// Writes `path` (CSV) and `path`.json; parent directories are created.
void write_outputs(const ResultTable& table, const std::filesystem::path& path);

/// Output directory from RISLAB_OUTPUT_DIR, else "results".
std::filesystem::path default_output_dir();

}  // namespace rislab
