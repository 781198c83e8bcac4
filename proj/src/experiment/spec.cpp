#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rislab/experiment.hpp"

namespace rislab {

namespace {

struct Violation {
    std::string field;
    std::string message;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw std::invalid_argument("'" + s + "' is not a finite number");
    }
    return v;
}

long long parse_integer(const std::string& s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("'" + s + "' is not an integer");
    return v;
}

int parse_int(const std::string& s) {
    const long long v = parse_integer(s);
    if (v < -1000000000LL || v > 1000000000LL) throw std::invalid_argument("'" + s + "' is out of range");
    return static_cast<int>(v);
}

std::uint64_t parse_count(const std::string& s) {
    // Accept plain integers and exact scientific forms such as 1e7.
    if (s.find_first_of("eE.") != std::string::npos) {
        const double d = parse_double(s);
        if (d < 0.0 || d != std::floor(d) || d > 1e18) throw std::invalid_argument("'" + s + "' is not a count");
        return static_cast<std::uint64_t>(d);
    }
    const long long v = parse_integer(s);
    if (v < 0) throw std::invalid_argument("'" + s + "' is negative");
    return static_cast<std::uint64_t>(v);
}

// "0,5,10" or "lo:step:hi" (inclusive, tolerant to rounding at hi).
std::vector<double> parse_snr(const std::string& s) {
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) throw std::invalid_argument("range must be lo:step:hi");
        const double lo = parse_double(parts[0]);
        const double step = parse_double(parts[1]);
        const double hi = parse_double(parts[2]);
        if (!(step > 0.0) || hi < lo) throw std::invalid_argument("range needs step > 0 and hi >= lo");
        const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 100000) throw std::invalid_argument("range has too many points");
        std::vector<double> out;
        for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split(s, ',')) out.push_back(parse_double(p));
    return out;
}

Evaluator parse_evaluator(const std::string& s) {
    const std::string v = lower(s);
    if (v == "mc") return Evaluator::MonteCarlo;
    if (v == "analytic") return Evaluator::Analytic;
    if (v == "both") return Evaluator::Both;
    throw std::invalid_argument("evaluator must be mc, analytic or both");
}

AnalyticMethod parse_method(const std::string& s) {
    const std::string v = lower(s);
    if (v == "auto") return AnalyticMethod::Auto;
    if (v == "gil_pelaez") return AnalyticMethod::GilPelaez;
    if (v == "clt") return AnalyticMethod::Clt;
    if (v == "fr_theorem") return AnalyticMethod::FrTheorem;
    if (v == "fr_bound") return AnalyticMethod::FrBound;
    if (v == "pr_siso") return AnalyticMethod::PrSiso;
    if (v == "none") return AnalyticMethod::None;
    throw std::invalid_argument("analytic must be auto, gil_pelaez, clt, fr_theorem, fr_bound, pr_siso or none");
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::optional<Violation> find_violation(const ExperimentSpec& s) {
    if (s.n < 1 || s.l < 1) return Violation{"dims", "antenna counts must be >= 1"};
    if (s.q < 1 || s.q > kDefaultElementCap) {
        return Violation{"q", "element count must lie in [1, " + std::to_string(kDefaultElementCap) + "]"};
    }
    if (s.k < 1) return Violation{"k", "K must be >= 1"};
    if (s.q % s.k != 0) return Violation{"k", "K must divide Q"};
    if ((s.scheme == SchemeKind::PR || s.scheme == SchemeKind::PB) && s.k != 1) {
        return Violation{"k", std::string(to_string(s.scheme)) + " uses a single partition (K = 1)"};
    }
    if (s.scheme == SchemeKind::PB && (s.n != 1 || s.l != 1)) {
        return Violation{"scheme", "PB is defined for SISO links only"};
    }
    if (s.snr_db.empty()) return Violation{"snr_db", "at least one SNR point is required"};
    for (std::size_t i = 1; i < s.snr_db.size(); ++i) {
        if (!(s.snr_db[i] > s.snr_db[i - 1])) return Violation{"snr_db", "SNR points must be strictly increasing"};
    }
    if (!(s.rate >= 0.0) || !std::isfinite(s.rate)) return Violation{"rate", "rate must be finite and >= 0"};
    if (s.evaluator != Evaluator::Analytic && s.trials == 0) {
        return Violation{"trials", "Monte Carlo needs trials >= 1"};
    }

    const bool siso = s.n == 1 && s.l == 1;
    const AnalyticMethod m = s.resolved_analytic();
    switch (m) {
        case AnalyticMethod::PrSiso:
            if (!siso || s.k != 1 || s.scheme == SchemeKind::PB) {
                return Violation{"analytic", "pr_siso needs a SISO single-partition PR/AR/FR link"};
            }
            break;
        case AnalyticMethod::Clt:
            if (!siso || s.scheme == SchemeKind::PB || (s.scheme == SchemeKind::FR && s.k > 1)) {
                return Violation{"analytic", "clt needs a SISO AR (or PR) link"};
            }
            if (s.k > 6) return Violation{"analytic", "clt is evaluated for K <= 6"};
            break;
        case AnalyticMethod::GilPelaez:
            if (s.scheme == SchemeKind::PB || (s.scheme == SchemeKind::FR && s.k > 1)) {
                return Violation{"analytic", "gil_pelaez needs independent sub-slots (PR or AR)"};
            }
            break;
        case AnalyticMethod::FrTheorem:
            if (!siso || s.scheme != SchemeKind::FR || s.k < 2 || s.k > 4) {
                return Violation{"analytic", "fr_theorem needs a SISO FR link with 2 <= K <= 4"};
            }
            break;
        case AnalyticMethod::FrBound:
            if (s.scheme != SchemeKind::FR) return Violation{"analytic", "fr_bound applies to the FR scheme"};
            if (siso && s.k > 6) return Violation{"analytic", "fr_bound on SISO links is evaluated for K <= 6"};
            break;
        case AnalyticMethod::None:
            if (s.evaluator == Evaluator::Analytic) {
                return Violation{"evaluator", "no analytic evaluator exists for this scheme; use evaluator = mc"};
            }
            break;
        case AnalyticMethod::Auto:
            break;
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(Evaluator e) noexcept {
    switch (e) {
        case Evaluator::MonteCarlo: return "mc";
        case Evaluator::Analytic: return "analytic";
        case Evaluator::Both: return "both";
    }
    return "both";
}

std::string_view to_string(AnalyticMethod a) noexcept {
    switch (a) {
        case AnalyticMethod::Auto: return "auto";
        case AnalyticMethod::GilPelaez: return "gil_pelaez";
        case AnalyticMethod::Clt: return "clt";
        case AnalyticMethod::FrTheorem: return "fr_theorem";
        case AnalyticMethod::FrBound: return "fr_bound";
        case AnalyticMethod::PrSiso: return "pr_siso";
        case AnalyticMethod::None: return "none";
    }
    return "none";
}

AnalyticMethod ExperimentSpec::resolved_analytic() const {
    if (analytic != AnalyticMethod::Auto) return analytic;
    const bool siso = n == 1 && l == 1;
    const bool single = k == 1;
    switch (scheme) {
        case SchemeKind::PB: return AnalyticMethod::None;
        case SchemeKind::PR: return siso ? AnalyticMethod::PrSiso : AnalyticMethod::GilPelaez;
        case SchemeKind::AR:
            if (siso) return k <= 6 ? AnalyticMethod::Clt : AnalyticMethod::GilPelaez;
            return AnalyticMethod::GilPelaez;
        case SchemeKind::FR:
            if (single) return siso ? AnalyticMethod::PrSiso : AnalyticMethod::GilPelaez;
            if (siso && k <= 4) return AnalyticMethod::FrTheorem;
            return AnalyticMethod::FrBound;
    }
    return AnalyticMethod::None;
}

void ExperimentSpec::validate() const {
    if (auto v = find_violation(*this)) throw SpecError(v->field + ": " + v->message);
}

std::vector<std::string> ExperimentSpec::echo() const {
    std::string snr;
    for (std::size_t i = 0; i < snr_db.size(); ++i) snr += (i ? "," : "") + format_number(snr_db[i]);
    std::vector<std::string> out{
        "scheme=" + std::string(to_string(scheme)),
        "dims=" + std::to_string(n) + "," + std::to_string(q) + "," + std::to_string(l),
        "k=" + std::to_string(k),
        "snr_db=" + snr,
        "rate=" + format_number(rate),
        "trials=" + std::to_string(trials),
        "seed=" + std::to_string(seed),
        "evaluator=" + std::string(to_string(evaluator)),
        "analytic=" + std::string(to_string(analytic)),
    };
    if (!output.empty()) out.push_back("output=" + output);
    return out;
}

ExperimentSpec parse_spec(std::string_view text, std::string_view source) {
    ExperimentSpec spec;
    std::map<std::string, int> seen;
    const std::string src(source);
    auto fail = [&](int line, const std::string& msg) -> SpecError {
        return SpecError(src + ":" + std::to_string(line) + ": " + msg);
    };

    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw fail(line_no, "expected key = value");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw fail(line_no, "missing key");
        if (value.empty()) throw fail(line_no, "key '" + key + "' has no value");
        if (seen.count(key)) throw fail(line_no, "key '" + key + "' repeats line " + std::to_string(seen[key]));
        seen[key] = line_no;

        try {
            if (key == "scheme") {
                const auto kind = parse_scheme(value);
                if (!kind) throw std::invalid_argument("scheme must be PR, AR, FR or PB");
                spec.scheme = *kind;
            } else if (key == "n") {
                spec.n = parse_int(value);
            } else if (key == "q") {
                spec.q = parse_int(value);
            } else if (key == "l") {
                spec.l = parse_int(value);
            } else if (key == "dims") {
                const auto parts = split(value, ',');
                if (parts.size() != 3) throw std::invalid_argument("dims must be N,Q,L");
                spec.n = parse_int(parts[0]);
                spec.q = parse_int(parts[1]);
                spec.l = parse_int(parts[2]);
            } else if (key == "k") {
                spec.k = parse_int(value);
            } else if (key == "snr_db") {
                spec.snr_db = parse_snr(value);
            } else if (key == "rate") {
                spec.rate = parse_double(value);
            } else if (key == "trials") {
                spec.trials = parse_count(value);
            } else if (key == "seed") {
                spec.seed = parse_count(value);
            } else if (key == "output") {
                spec.output = value;
            } else if (key == "evaluator") {
                spec.evaluator = parse_evaluator(value);
            } else if (key == "analytic") {
                spec.analytic = parse_method(value);
            } else {
                throw fail(line_no, "unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw fail(line_no, key + ": " + e.what());
        }
    }
    if (seen.count("dims") && (seen.count("n") || seen.count("q") || seen.count("l"))) {
        throw fail(seen["dims"], "dims conflicts with n/q/l");
    }

    if (auto v = find_violation(spec)) {
        // Dimension problems may have been written as dims = N,Q,L.
        std::string anchor = v->field;
        if ((v->field == "q" || v->field == "dims") && seen.count("dims")) {
            anchor = "dims";
        } else if (v->field == "dims") {
            anchor = spec.n < 1 ? "n" : "l";
        }
        const int line = seen.count(anchor) ? seen[anchor] : 0;
        if (line > 0) throw fail(line, v->field + ": " + v->message);
        throw SpecError(src + ": " + v->field + ": " + v->message);
    }
    return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path.string() + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_spec(buffer.str(), path.string());
}

}  // namespace rislab
