#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "rislab/analytic.hpp"
#include "rislab/errors.hpp"
#include "rislab/experiment.hpp"

namespace rislab {

namespace {

double analytic_value(const ExperimentSpec& spec, AnalyticMethod method, double rho) {
    const int m = spec.q / spec.k;
    switch (method) {
        case AnalyticMethod::PrSiso: return outage_pr_siso(spec.rate, rho, spec.q);
        case AnalyticMethod::Clt: return outage_ar_clt(spec.rate, spec.k, m, rho);
        case AnalyticMethod::GilPelaez: {
            // PR (and FR with K = 1) is the K = 1 case on the full surface.
            const bool ar = spec.scheme == SchemeKind::AR;
            return outage_gil_pelaez(spec.dims().with_elements(ar ? m : spec.q), spec.rate, ar ? spec.k : 1, rho);
        }
        case AnalyticMethod::FrTheorem: return outage_fr_siso(spec.rate, spec.k, m, rho);
        case AnalyticMethod::FrBound: return outage_fr_bound(spec.dims(), spec.rate, spec.k, rho);
        case AnalyticMethod::Auto:
        case AnalyticMethod::None: break;
    }
    throw UnsupportedConfiguration("no analytic evaluator for this configuration");
}

ResultRow base_row(const ExperimentSpec& spec, double snr_db, std::string scheme) {
    ResultRow row;
    row.snr_db = snr_db;
    row.scheme = std::move(scheme);
    row.n = spec.n;
    row.l = spec.l;
    row.q = spec.q;
    row.k = spec.k;
    row.m = spec.q / spec.k;
    row.rate = spec.rate;
    return row;
}

std::string format_snr(double db) {
    std::ostringstream os;
    os << db;
    return os.str();
}

// Specs that can share channel draws: same link, grid, rate, trial count and seed.
using BatchKey = std::tuple<int, int, int, std::vector<double>, double, std::uint64_t, std::uint64_t>;

BatchKey batch_key(const ExperimentSpec& s) { return {s.n, s.q, s.l, s.snr_db, s.rate, s.trials, s.seed}; }

void append_rows(ResultTable& table, const ExperimentSpec& spec, const std::vector<OutageEstimate>* mc) {
    const AnalyticMethod method = spec.evaluator == Evaluator::MonteCarlo ? AnalyticMethod::None
                                                                          : spec.resolved_analytic();
    const bool bound_rows = method == AnalyticMethod::FrBound;
    const std::string scheme(to_string(spec.scheme));

    std::vector<std::optional<double>> analytic(spec.snr_db.size());
    if (method != AnalyticMethod::None) {
        for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
            const double rho = db_to_linear(spec.snr_db[i]);
            try {
                analytic[i] = analytic_value(spec, method, rho);
            } catch (const AccuracyError& e) {
                analytic[i] = e.partial();
                table.meta.partial = true;
                table.meta.notes.push_back("accuracy: " + scheme + " K=" + std::to_string(spec.k) + " at " +
                                           format_snr(spec.snr_db[i]) + " dB: " + e.what());
            }
        }
    }

    if (mc != nullptr || !bound_rows) {
        for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
            ResultRow row = base_row(spec, spec.snr_db[i], scheme);
            if (mc != nullptr) {
                const OutageEstimate& e = (*mc)[i];
                row.p_mc = e.p_hat;
                row.ci_low = e.ci_low;
                row.ci_high = e.ci_high;
                row.trials = e.trials;
                row.seed = e.seed.master_seed;
            }
            if (!bound_rows) row.p_analytic = analytic[i];
            table.rows.push_back(std::move(row));
        }
    }
    if (bound_rows) {
        for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
            ResultRow row = base_row(spec, spec.snr_db[i], "FR-LB");
            row.p_analytic = analytic[i];
            table.rows.push_back(std::move(row));
        }
    }
}

}  // namespace

std::string tool_version() { return RISLAB_VERSION; }

void append_experiments(ResultTable& table, const std::vector<ExperimentSpec>& specs, RunOptions options) {
    for (const ExperimentSpec& s : specs) s.validate();

    // Monte Carlo in batches over shared draws; results land back in spec order.
    std::vector<std::optional<std::vector<OutageEstimate>>> mc(specs.size());
    std::map<BatchKey, std::vector<std::size_t>> batches;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (specs[i].evaluator != Evaluator::Analytic) batches[batch_key(specs[i])].push_back(i);
    }
    for (const auto& [key, members] : batches) {
        const ExperimentSpec& first = specs[members.front()];
        std::vector<SchemeConfig> configs;
        for (std::size_t i : members) configs.push_back(specs[i].scheme_config());
        const auto grid = SnrGrid::from_db(first.snr_db, first.rate);
        auto results = estimate_outage_many(first.dims(), configs, grid, first.trials, RngSpec{first.seed}, options);
        for (std::size_t j = 0; j < members.size(); ++j) mc[members[j]] = std::move(results[j]);
    }

    for (std::size_t i = 0; i < specs.size(); ++i) append_rows(table, specs[i], mc[i] ? &*mc[i] : nullptr);
}

void append_experiment(ResultTable& table, const ExperimentSpec& spec, RunOptions options) {
    append_experiments(table, {spec}, options);
}

ResultTable run_experiment(const ExperimentSpec& spec, RunOptions options) {
    ResultTable table;
    table.meta.tool_version = tool_version();
    table.meta.preset = "none";
    table.meta.seed = spec.seed;
    table.meta.trials = spec.evaluator == Evaluator::Analytic ? 0 : spec.trials;
    table.meta.spec_echo = spec.echo();
    append_experiment(table, spec, options);
    return table;
}

}  // namespace rislab
