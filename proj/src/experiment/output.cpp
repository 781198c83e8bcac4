#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "rislab/experiment.hpp"

namespace rislab {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }
std::string opt(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void header(std::ostringstream& os, const RunMetadata& meta) {
    os << "# tool: rislab " << meta.tool_version << '\n';
    os << "# preset: " << meta.preset << '\n';
    os << "# seed: " << meta.seed << '\n';
    os << "# trials: " << meta.trials << '\n';
    for (const auto& line : meta.spec_echo) os << "# spec: " << line << '\n';
    for (const auto& note : meta.notes) os << "# note: " << note << '\n';
    os << "# partial: " << (meta.partial ? "true" : "false") << '\n';
}

}  // namespace

std::string format_csv(const ResultTable& table) {
    std::ostringstream os;
    header(os, table.meta);
    if (table.is_dmt()) {
        os << "label,N,Q,L,K,m,r,d\n";
        for (const DmtRow& r : table.dmt_rows) {
            os << r.label << ',' << r.n << ',' << r.q << ',' << r.l << ',' << r.k << ',' << r.m << ',' << r.r << ','
               << r.d << '\n';
        }
        return os.str();
    }
    os << "snr_db,scheme,N,L,Q,K,m,R,p_mc,ci_low,ci_high,p_analytic,trials,seed\n";
    for (const ResultRow& r : table.rows) {
        os << num(r.snr_db) << ',' << r.scheme << ',' << r.n << ',' << r.l << ',' << r.q << ',' << r.k << ','
           << r.m << ',' << num(r.rate) << ',' << opt(r.p_mc) << ',' << opt(r.ci_low) << ',' << opt(r.ci_high)
           << ',' << opt(r.p_analytic) << ',' << opt(r.trials) << ',' << opt(r.seed) << '\n';
    }
    return os.str();
}

std::string format_json(const ResultTable& table) {
    nlohmann::ordered_json doc;
    doc["tool"] = "rislab";
    doc["version"] = table.meta.tool_version;
    doc["preset"] = table.meta.preset;
    doc["seed"] = table.meta.seed;
    doc["trials"] = table.meta.trials;
    doc["spec"] = table.meta.spec_echo;
    doc["notes"] = table.meta.notes;
    doc["partial"] = table.meta.partial;
    auto rows = nlohmann::ordered_json::array();
    if (table.is_dmt()) {
        for (const DmtRow& r : table.dmt_rows) {
            rows.push_back({{"label", r.label}, {"N", r.n}, {"Q", r.q}, {"L", r.l}, {"K", r.k}, {"m", r.m},
                            {"r", r.r}, {"d", r.d}});
        }
    } else {
        for (const ResultRow& r : table.rows) {
            rows.push_back({{"snr_db", r.snr_db},
                            {"scheme", r.scheme},
                            {"N", r.n},
                            {"L", r.l},
                            {"Q", r.q},
                            {"K", r.k},
                            {"m", r.m},
                            {"R", r.rate},
                            {"p_mc", opt_json(r.p_mc)},
                            {"ci_low", opt_json(r.ci_low)},
                            {"ci_high", opt_json(r.ci_high)},
                            {"p_analytic", opt_json(r.p_analytic)},
                            {"trials", opt_json(r.trials)},
                            {"seed", opt_json(r.seed)}});
        }
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

void write_outputs(const ResultTable& table, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << text;
    };
    write(path, format_csv(table));
    write(std::filesystem::path(path.string() + ".json"), format_json(table));
}

std::filesystem::path default_output_dir() {
    if (const char* dir = std::getenv("RISLAB_OUTPUT_DIR"); dir != nullptr && *dir != '\0') return dir;
    return "results";
}

}  // namespace rislab
