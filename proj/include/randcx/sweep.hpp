#ifndef RANDCX_SWEEP_HPP
#define RANDCX_SWEEP_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "randcx/complex.hpp"
#include "randcx/csv.hpp"
#include "randcx/density.hpp"
#include "randcx/gf2.hpp"
#include "randcx/homology.hpp"
#include "randcx/pi1.hpp"
#include "randcx/random.hpp"
#include "randcx/rational.hpp"
#include "randcx/rng.hpp"
#include "randcx/stats.hpp"

namespace randcx {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// One analysis run on every sampled complex.
struct CheckSpec {
    enum class Kind { h1_gf2, h1_gfq, sc_certify, sparse3, link_stats, snf };
    Kind kind = Kind::h1_gf2;
    std::int64_t q = 2;
    Rational eps;
    std::size_t m = 0;

    /// "h1_gf2", "h1_gfq(q)", "sc_certify", "sparse3(eps,m)", "link_stats",
    /// "snf". ConfigError otherwise.
    static CheckSpec parse(std::string_view text)
    {
        auto bad = [&](const std::string& why) -> CheckSpec {
            fail(ErrorKind::config_error, "check '" + std::string(text) + "': " + why);
        };
        auto args_of = [&](std::string_view prefix) -> std::vector<std::string> {
            std::string_view inner = text.substr(prefix.size());
            if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')') {
                bad("expected arguments in parentheses");
            }
            inner = inner.substr(1, inner.size() - 2);
            std::vector<std::string> out;
            std::size_t start = 0;
            while (true) {
                auto comma = inner.find(',', start);
                auto piece = inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start);
                while (!piece.empty() && piece.front() == ' ') {
                    piece.remove_prefix(1);
                }
                while (!piece.empty() && piece.back() == ' ') {
                    piece.remove_suffix(1);
                }
                out.emplace_back(piece);
                if (comma == std::string_view::npos) {
                    break;
                }
                start = comma + 1;
            }
            return out;
        };
        auto to_count = [&](const std::string& s) -> std::int64_t {
            if (s.empty() || s.size() > 12 || s.find_first_not_of("0123456789") != std::string::npos) {
                bad("'" + s + "' is not a count");
            }
            return std::stoll(s);
        };

        CheckSpec c;
        if (text == "h1_gf2") {
            c.kind = Kind::h1_gf2;
        } else if (text == "sc_certify") {
            c.kind = Kind::sc_certify;
        } else if (text == "link_stats") {
            c.kind = Kind::link_stats;
        } else if (text == "snf") {
            c.kind = Kind::snf;
        } else if (text.starts_with("h1_gfq")) {
            auto args = args_of("h1_gfq");
            if (args.size() != 1) {
                bad("expected one argument");
            }
            c.kind = Kind::h1_gfq;
            c.q = to_count(args[0]);
            if (!is_prime(c.q)) {
                bad("q must be prime");
            }
        } else if (text.starts_with("sparse3")) {
            auto args = args_of("sparse3");
            if (args.size() != 2) {
                bad("expected eps and m");
            }
            c.kind = Kind::sparse3;
            try {
                c.eps = parse_rational(args[0]);
            } catch (const Error&) {
                bad("bad eps");
            }
            if (c.eps < 0) {
                bad("eps must be nonnegative");
            }
            c.m = static_cast<std::size_t>(to_count(args[1]));
        } else {
            bad("unknown check");
        }
        return c;
    }

    std::string name() const
    {
        switch (kind) {
        case Kind::h1_gf2: return "h1_gf2";
        case Kind::h1_gfq: return "h1_gfq(" + std::to_string(q) + ")";
        case Kind::sc_certify: return "sc_certify";
        case Kind::sparse3: return "sparse3(" + to_string(eps) + "," + std::to_string(m) + ")";
        case Kind::link_stats: return "link_stats";
        case Kind::snf: return "snf";
        }
        return "?";
    }
};

/// p = c * n^a, evaluated per n and rounded to 12 decimals.
struct ScaledP {
    double c = 1.0;
    double a = 0.0;
};

struct SweepConfig {
    enum class Mode { independent, process };

    std::vector<int> n;
    std::vector<Probability> p;
    std::vector<ScaledP> p_scaled;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::vector<CheckSpec> checks;
    std::string csv_path;
    std::string summary_path;
    unsigned threads = 0; // 0: RANDCX_THREADS or 1
    bool timing = false;
    bool coupled = false;
    Mode mode = Mode::independent;

    /// Probabilities of the cells for a given n, explicit values first.
    std::vector<Probability> probabilities_for(int n_value) const
    {
        std::vector<Probability> out = p;
        for (const auto& s : p_scaled) {
            double value = s.c * std::pow(static_cast<double>(n_value), s.a);
            if (!(value >= 0.0) || value > 1.0) {
                fail(ErrorKind::config_error, "scaled p = " + std::to_string(value) + " at n = " +
                                                  std::to_string(n_value) + " is not a probability");
            }
            out.push_back(Probability::from_double(value));
        }
        // A value listed twice, explicitly or through p_scaled, is one cell.
        std::vector<Probability> unique;
        for (const auto& q : out) {
            if (std::none_of(unique.begin(), unique.end(), [&](const Probability& u) { return u.text() == q.text(); })) {
                unique.push_back(q);
            }
        }
        return unique;
    }

    void validate() const
    {
        if (n.empty()) {
            fail(ErrorKind::config_error, "n grid is empty");
        }
        for (int v : n) {
            if (v < 3 || v > 2000) {
                fail(ErrorKind::config_error, "n = " + std::to_string(v) + " outside 3..2000");
            }
        }
        if (trials < 1) {
            fail(ErrorKind::config_error, "trials must be at least 1");
        }
        if (mode == Mode::independent) {
            if (p.empty() && p_scaled.empty()) {
                fail(ErrorKind::config_error, "p grid is empty");
            }
            if (checks.empty()) {
                fail(ErrorKind::config_error, "no checks selected");
            }
            for (int v : n) {
                (void)probabilities_for(v);
            }
        }
    }
};

namespace detail {

/// A value in the key = value config format.
struct ConfigValue {
    enum class Kind { number, string, boolean, array };
    Kind kind = Kind::number;
    std::string text;
    bool flag = false;
    std::vector<ConfigValue> items;
};

class ConfigParser {
public:
    ConfigParser(std::string_view src, std::size_t line) : src_(src), line_(line) {}

    ConfigValue value()
    {
        skip_space();
        if (pos_ >= src_.size()) {
            error("missing value");
        }
        char c = src_[pos_];
        if (c == '[') {
            ++pos_;
            ConfigValue v;
            v.kind = ConfigValue::Kind::array;
            skip_space();
            if (peek() == ']') {
                ++pos_;
                return v;
            }
            while (true) {
                v.items.push_back(value());
                skip_space();
                if (peek() == ',') {
                    ++pos_;
                    skip_space();
                    if (peek() == ']') {
                        ++pos_;
                        return v;
                    }
                    continue;
                }
                if (peek() == ']') {
                    ++pos_;
                    return v;
                }
                error("expected ',' or ']'");
            }
        }
        if (c == '"') {
            ++pos_;
            ConfigValue v;
            v.kind = ConfigValue::Kind::string;
            while (true) {
                if (pos_ >= src_.size()) {
                    error("unterminated string");
                }
                char d = src_[pos_++];
                if (d == '"') {
                    return v;
                }
                if (d == '\\') {
                    if (pos_ >= src_.size()) {
                        error("unterminated string");
                    }
                    d = src_[pos_++];
                }
                v.text += d;
            }
        }
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
                                      src_[pos_] == '-' || src_[pos_] == '+' || src_[pos_] == '/' ||
                                      src_[pos_] == '_')) {
            ++pos_;
        }
        std::string word(src_.substr(start, pos_ - start));
        if (word.empty()) {
            error("unexpected character '" + std::string(1, c) + "'");
        }
        ConfigValue v;
        if (word == "true" || word == "false") {
            v.kind = ConfigValue::Kind::boolean;
            v.flag = word == "true";
        } else {
            v.kind = ConfigValue::Kind::number;
        }
        v.text = word;
        return v;
    }

    void finish()
    {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] != '#') {
            error("trailing characters");
        }
    }

    [[noreturn]] void error(const std::string& what) const
    {
        fail(ErrorKind::config_error, "line " + std::to_string(line_) + ": " + what);
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    void skip_space()
    {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) {
            ++pos_;
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

inline std::int64_t config_integer(const ConfigValue& v, const std::string& key, std::int64_t lo, std::int64_t hi)
{
    if (v.kind != ConfigValue::Kind::number || v.text.empty() ||
        v.text.find_first_not_of("0123456789") != std::string::npos || v.text.size() > 18) {
        fail(ErrorKind::config_error, key + ": expected a nonnegative integer");
    }
    auto value = std::stoll(v.text);
    if (value < lo || value > hi) {
        fail(ErrorKind::config_error, key + ": " + v.text + " out of range");
    }
    return value;
}

inline double config_real(const ConfigValue& v, const std::string& key)
{
    if (v.kind != ConfigValue::Kind::number) {
        fail(ErrorKind::config_error, key + ": expected a number");
    }
    try {
        std::size_t used = 0;
        double d = std::stod(v.text, &used);
        if (used != v.text.size()) {
            throw std::invalid_argument(v.text);
        }
        return d;
    } catch (const std::exception&) {
        fail(ErrorKind::config_error, key + ": '" + v.text + "' is not a number");
    }
}

inline const std::vector<ConfigValue>& config_array(const ConfigValue& v, const std::string& key)
{
    if (v.kind != ConfigValue::Kind::array) {
        fail(ErrorKind::config_error, key + ": expected an array");
    }
    return v.items;
}

inline std::string config_string(const ConfigValue& v, const std::string& key)
{
    if (v.kind != ConfigValue::Kind::string) {
        fail(ErrorKind::config_error, key + ": expected a quoted string");
    }
    return v.text;
}

inline bool config_bool(const ConfigValue& v, const std::string& key)
{
    if (v.kind != ConfigValue::Kind::boolean) {
        fail(ErrorKind::config_error, key + ": expected true or false");
    }
    return v.flag;
}

} // namespace detail

/// Parses the sweep config: one `key = value` per line, `#` comments, values
/// are integers, decimals, quoted strings, booleans or bracketed arrays.
/// Keys: n, p, p_scaled, trials, seed, checks, csv, summary, threads,
/// timing, coupled, mode. Unknown or repeated keys are ConfigError.
inline SweepConfig parse_sweep_config(std::string_view text)
{
    SweepConfig cfg;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(ErrorKind::config_error, "line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(line.substr(first, eq - first));
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) {
            key.pop_back();
        }
        if (!seen.insert(key).second) {
            fail(ErrorKind::config_error, "line " + std::to_string(line_no) + ": repeated key '" + key + "'");
        }
        detail::ConfigParser parser(line.substr(eq + 1), line_no);
        auto value = parser.value();
        parser.finish();

        try {
            if (key == "n") {
                for (const auto& item : detail::config_array(value, key)) {
                    cfg.n.push_back(static_cast<int>(detail::config_integer(item, key, 3, 2000)));
                }
            } else if (key == "p") {
                for (const auto& item : detail::config_array(value, key)) {
                    if (item.kind != detail::ConfigValue::Kind::number) {
                        fail(ErrorKind::config_error, "p: expected numbers");
                    }
                    cfg.p.push_back(Probability::parse(item.text));
                }
            } else if (key == "p_scaled") {
                for (const auto& item : detail::config_array(value, key)) {
                    const auto& pair = detail::config_array(item, key);
                    if (pair.size() != 2) {
                        fail(ErrorKind::config_error, "p_scaled: entries are [c, a]");
                    }
                    cfg.p_scaled.push_back({detail::config_real(pair[0], key), detail::config_real(pair[1], key)});
                }
            } else if (key == "trials") {
                cfg.trials = static_cast<std::size_t>(detail::config_integer(value, key, 1, 100'000'000));
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(detail::config_integer(value, key, 0, INT64_MAX));
            } else if (key == "checks") {
                for (const auto& item : detail::config_array(value, key)) {
                    cfg.checks.push_back(CheckSpec::parse(detail::config_string(item, key)));
                }
            } else if (key == "csv") {
                cfg.csv_path = detail::config_string(value, key);
            } else if (key == "summary") {
                cfg.summary_path = detail::config_string(value, key);
            } else if (key == "threads") {
                cfg.threads = static_cast<unsigned>(detail::config_integer(value, key, 0, 1024));
            } else if (key == "timing") {
                cfg.timing = detail::config_bool(value, key);
            } else if (key == "coupled") {
                cfg.coupled = detail::config_bool(value, key);
            } else if (key == "mode") {
                auto mode = detail::config_string(value, key);
                if (mode == "independent") {
                    cfg.mode = SweepConfig::Mode::independent;
                } else if (mode == "process") {
                    cfg.mode = SweepConfig::Mode::process;
                } else {
                    fail(ErrorKind::config_error, "mode must be \"independent\" or \"process\"");
                }
            } else {
                fail(ErrorKind::config_error, "unknown key '" + key + "'");
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::config_error) {
                fail(ErrorKind::config_error, "line " + std::to_string(line_no) + ": " +
                                                  std::string(e.what()).substr(std::string("ConfigError: ").size()));
            }
            fail(ErrorKind::config_error, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::config_error, "cannot read " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_config(buffer.str());
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& sweep_csv_columns()
{
    static const std::vector<std::string> columns{"n", "p", "trial", "seed", "f2", "check", "outcome", "detail", "ms"};
    return columns;
}

struct TrialRow {
    int n = 0;
    std::string p;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t f2 = 0;
    std::string check;
    std::string outcome; // "1", "0" or "error"
    std::string detail;
    std::string ms;
};

struct CellSummary {
    int n = 0;
    std::string p;
    std::string check;
    std::size_t successes = 0;
    std::size_t trials = 0; // rows without errors
    std::size_t errors = 0;
    double mean_f2 = 0.0;
    Interval wilson;

    double frequency() const
    {
        return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    }
};

struct SweepResult {
    std::vector<TrialRow> rows;
    std::vector<CellSummary> summary;

    std::string csv() const
    {
        std::string out = csv_line(sweep_csv_columns());
        for (const auto& r : rows) {
            out += csv_line({std::to_string(r.n), r.p, std::to_string(r.trial), std::to_string(r.seed),
                             std::to_string(r.f2), r.check, r.outcome, r.detail, r.ms});
        }
        return out;
    }

    /// One JSON object per cell; the first line records the conventions.
    std::string summary_jsonl() const
    {
        std::string out = nlohmann::json{{"log", "natural"}, {"interval", "wilson95"}}.dump() + "\n";
        for (const auto& s : summary) {
            nlohmann::json j{{"n", s.n},
                             {"p", s.p},
                             {"check", s.check},
                             {"successes", s.successes},
                             {"trials", s.trials},
                             {"errors", s.errors},
                             {"frequency", s.frequency()},
                             {"wilson_low", s.wilson.low},
                             {"wilson_high", s.wilson.high},
                             {"mean_f2", s.mean_f2}};
            out += j.dump() + "\n";
        }
        return out;
    }
};

namespace detail {

inline std::string join_faces(const std::vector<Face>& faces)
{
    std::string out;
    for (const auto& f : faces) {
        if (!out.empty()) {
            out += ' ';
        }
        out += to_string(f);
    }
    return out;
}

/// Outcome and detail of one check on one sample.
inline std::pair<std::string, std::string> run_check(const CheckSpec& check, const Complex2& x)
{
    switch (check.kind) {
    case CheckSpec::Kind::h1_gf2:
    case CheckSpec::Kind::h1_gfq: {
        auto coeff = check.kind == CheckSpec::Kind::h1_gf2 ? Coefficients::gf2() : Coefficients::gfq(check.q);
        auto b = betti(x, coeff);
        return {b.b1 == 0 ? "1" : "0", "b1=" + std::to_string(b.b1)};
    }
    case CheckSpec::Kind::sc_certify: {
        auto cert = certify_simply_connected(x);
        return {cert.certified ? "1" : "0", "failing_pairs=" + std::to_string(cert.failing_pairs.size())};
    }
    case CheckSpec::Kind::sparse3: {
        auto verdict = check_sparse3(x, check.eps, check.m);
        return {verdict.sparse ? "1" : "0", verdict.sparse ? "" : "witness=" + join_faces(verdict.witness)};
    }
    case CheckSpec::Kind::link_stats: {
        if (x.n() < 4) {
            fail(ErrorKind::too_small, "link statistics need n >= 4");
        }
        auto g = link_intersection_graph(x, 1, 2);
        return {g.has_edge({3, 4}) ? "1" : "0", "edges=" + std::to_string(g.edges().size())};
    }
    case CheckSpec::Kind::snf: {
        auto h = h1_integral(x);
        std::string torsion;
        for (auto t : h.torsion) {
            torsion += (torsion.empty() ? "" : " ") + std::to_string(t);
        }
        bool trivial = h.rank == 0 && h.torsion.empty();
        return {trivial ? "1" : "0", "rank=" + std::to_string(h.rank) + ";torsion=" + torsion};
    }
    }
    return {"error", "unknown check"};
}

/// Adds faces in arrival order until H1(GF(2)) vanishes; returns the number
/// of faces used.
inline std::size_t h1_gf2_hitting_count(int n, std::uint64_t seed, std::uint64_t trial)
{
    auto order = arrival_order(n, seed, trial);
    auto empty = build_complex(n, full_skeleton, {});
    const std::size_t f1 = empty.f1();
    const std::size_t target = f1 - static_cast<std::size_t>(n - 1);
    Gf2Basis basis(f1);
    std::vector<std::uint64_t> row(basis.words());
    std::size_t used = 0;
    while (basis.rank() < target) {
        const Face& f = order[used++].second;
        std::fill(row.begin(), row.end(), 0);
        for (const auto& e : f.boundary()) {
            auto idx = *empty.edge_index(e);
            row[idx / 64] |= std::uint64_t{1} << (idx % 64);
        }
        basis.insert(row);
    }
    return used;
}

inline unsigned resolve_threads(unsigned configured)
{
    if (const char* env = std::getenv("RANDCX_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) {
            return static_cast<unsigned>(v);
        }
    }
    return configured ? configured : 1;
}

inline std::string format_ms(std::chrono::steady_clock::duration d)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::chrono::duration<double, std::milli>(d).count());
    return buf;
}

} // namespace detail

/// Runs every (n, p) cell for every trial. Each trial samples one complex and
/// applies all checks to it. Failures inside a check become rows with
/// outcome "error". Rows come out in (n, p, trial, check) order no matter how
/// many threads run, and the ms column stays empty unless timing is on, so
/// the CSV is reproducible. Threads: RANDCX_THREADS if set, else the config.
inline SweepResult run_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    struct Task {
        int n;
        Probability p;
        std::size_t trial;
    };
    std::vector<Task> tasks;
    for (int n : cfg.n) {
        if (cfg.mode == SweepConfig::Mode::process) {
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                tasks.push_back({n, Probability{}, t});
            }
            continue;
        }
        for (const auto& p : cfg.probabilities_for(n)) {
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                tasks.push_back({n, p, t});
            }
        }
    }

    std::vector<std::vector<TrialRow>> results(tasks.size());
    auto work = [&](std::size_t index) {
        const Task& task = tasks[index];
        auto& out = results[index];
        TrialRow base;
        base.n = task.n;
        base.trial = task.trial;
        base.seed = cfg.seed;
        if (cfg.mode == SweepConfig::Mode::process) {
            base.p = "process";
            base.check = "h1_gf2_hitting";
            auto start = std::chrono::steady_clock::now();
            try {
                base.f2 = detail::h1_gf2_hitting_count(task.n, cfg.seed, task.trial);
                base.outcome = "1";
                base.detail = "p_hit=" + to_string(Rational(static_cast<std::int64_t>(base.f2),
                                                            static_cast<std::int64_t>(choose3(task.n))));
            } catch (const Error& e) {
                base.outcome = "error";
                base.detail = e.what();
            }
            if (cfg.timing) {
                base.ms = detail::format_ms(std::chrono::steady_clock::now() - start);
            }
            out.push_back(base);
            return;
        }
        base.p = task.p.text();
        std::optional<Complex2> sample;
        std::string sample_error;
        try {
            sample = cfg.coupled ? gen_Y_coupled(task.n, task.p, cfg.seed, task.trial)
                                 : gen_Y(task.n, task.p, make_rng_spec(cfg.seed, "Y", task.n, task.p, task.trial));
            base.f2 = sample->f2();
        } catch (const Error& e) {
            sample_error = e.what();
        }
        for (const auto& check : cfg.checks) {
            TrialRow row = base;
            row.check = check.name();
            auto start = std::chrono::steady_clock::now();
            if (!sample) {
                row.outcome = "error";
                row.detail = sample_error;
            } else {
                try {
                    std::tie(row.outcome, row.detail) = detail::run_check(check, *sample);
                } catch (const Error& e) {
                    row.outcome = "error";
                    row.detail = e.what();
                }
            }
            if (cfg.timing) {
                row.ms = detail::format_ms(std::chrono::steady_clock::now() - start);
            }
            out.push_back(std::move(row));
        }
    };

    unsigned threads = std::min<std::size_t>(detail::resolve_threads(cfg.threads), std::max<std::size_t>(tasks.size(), 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            work(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < tasks.size(); i = next++) {
                    work(i);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    SweepResult result;
    std::map<std::tuple<int, std::string, std::string>, std::size_t> cell_index;
    std::vector<double> f2_sums;
    for (auto& rows : results) {
        for (auto& row : rows) {
            auto key = std::make_tuple(row.n, row.p, row.check);
            auto [it, inserted] = cell_index.emplace(key, result.summary.size());
            if (inserted) {
                CellSummary cell;
                cell.n = row.n;
                cell.p = row.p;
                cell.check = row.check;
                result.summary.push_back(std::move(cell));
                f2_sums.push_back(0.0);
            }
            auto& s = result.summary[it->second];
            if (row.outcome == "error") {
                ++s.errors;
            } else {
                ++s.trials;
                s.successes += row.outcome == "1";
                f2_sums[it->second] += static_cast<double>(row.f2);
            }
            result.rows.push_back(std::move(row));
        }
    }
    for (std::size_t i = 0; i < result.summary.size(); ++i) {
        auto& s = result.summary[i];
        s.wilson = wilson_interval(s.successes, s.trials);
        s.mean_f2 = s.trials ? f2_sums[i] / static_cast<double>(s.trials) : 0.0;
    }
    return result;
}

/// Runs the sweep and writes the CSV and summary files named in the config
/// (skipping any left empty).
inline SweepResult run_sweep_to_files(const SweepConfig& cfg)
{
    auto result = run_sweep(cfg);
    auto write = [](const std::string& path, const std::string& text) {
        if (path.empty()) {
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            fail(ErrorKind::config_error, "cannot write " + path);
        }
        out << text;
    };
    write(cfg.csv_path, result.csv());
    write(cfg.summary_path, result.summary_jsonl());
    return result;
}

} // namespace randcx

#endif
