#include "entxfer/cli.hpp"

#include "entxfer/sweep.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace entxfer::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::set<std::string> kCommands = {"tmss-en", "transfer", "bosonic-compare", "optimize",
                                         "table1", "parity", "sequential"};

const std::set<std::string> kBoolKeys = {"refine"};

const std::map<std::string, std::set<std::string>> kCommandKeys = {
    {"tmss-en", {"r", "cutoff", "epsilon", "output", "format"}},
    {"transfer",
     {"n", "r", "kind", "tau", "tau-min", "tau-max", "tau-step", "cutoff", "epsilon", "output",
      "format"}},
    {"bosonic-compare",
     {"n", "r", "tau-min", "tau-max", "tau-step", "cutoff", "epsilon", "output", "format"}},
    {"optimize",
     {"n", "r-min", "r-max", "r-step", "tau-min", "tau-max", "tau-step", "refine", "epsilon",
      "output", "format"}},
    {"table1", {"n-max", "budget", "refine", "epsilon", "output", "format"}},
    {"parity",
     {"n", "r", "parity", "parity-mode", "tau", "tau-min", "tau-max", "tau-step", "cutoff",
      "epsilon", "output", "format"}},
    {"sequential",
     {"r", "alpha", "tau", "tau1", "tau2", "tau3", "outcomes", "tau-min", "tau-max", "tau-step",
      "cutoff", "epsilon", "output", "format"}},
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// typed access to the merged key/value map
struct Params {
    const std::map<std::string, std::string>& values;

    bool has(const std::string& key) const { return values.count(key) > 0; }

    double number(const std::string& key) const {
        const auto it = values.find(key);
        if (it == values.end()) throw UsageError("missing required parameter --" + key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw UsageError("parameter --" + key + " expects a decimal number, got '" + it->second + "'");
        }
    }
    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }
    int integer(const std::string& key) const {
        const double v = number(key);
        if (v != std::floor(v)) throw UsageError("parameter --" + key + " expects an integer");
        return static_cast<int>(v);
    }
    int integer_or(const std::string& key, int fallback) const {
        return has(key) ? integer(key) : fallback;
    }
    bool flag_or(const std::string& key, bool fallback) const {
        const auto it = values.find(key);
        if (it == values.end()) return fallback;
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        throw UsageError("parameter --" + key + " expects true or false");
    }
    std::string word(const std::string& key, const std::set<std::string>& allowed) const {
        const auto it = values.find(key);
        if (it == values.end()) throw UsageError("missing required parameter --" + key);
        if (!allowed.count(it->second)) {
            std::string opts;
            for (const auto& o : allowed) opts += (opts.empty() ? "" : "|") + o;
            throw UsageError("parameter --" + key + " must be one of {" + opts + "}");
        }
        return it->second;
    }
    std::string text_or(const std::string& key, const std::string& fallback) const {
        const auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
};

std::optional<int> cutoff_of(const Params& p) {
    if (!p.has("cutoff")) return std::nullopt;
    const int c = p.integer("cutoff");
    if (c < 1) throw UsageError("--cutoff must be >= 1");
    return c;
}

double epsilon_of(const Params& p) {
    const double eps = p.number_or("epsilon", 1e-8);
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("--epsilon must lie in (0,1)");
    return eps;
}

sweep::Range range_of(const Params& p, const std::string& prefix) {
    sweep::Range g{p.number(prefix + "-min"), p.number(prefix + "-max"), p.number(prefix + "-step")};
    if (!(g.step > 0.0)) throw UsageError("--" + prefix + "-step must be > 0");
    if (g.max < g.min) throw UsageError("--" + prefix + "-max must be >= --" + prefix + "-min");
    return g;
}

bool has_range(const Params& p, const std::string& prefix) {
    const bool any = p.has(prefix + "-min") || p.has(prefix + "-max") || p.has(prefix + "-step");
    const bool all = p.has(prefix + "-min") && p.has(prefix + "-max") && p.has(prefix + "-step");
    if (any && !all) {
        throw UsageError("--" + prefix + "-min/max/step must be given together");
    }
    return all;
}

// ---------------------------------------------------------------------------
// output formatting

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string text() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_sig(row[i]);
            os << "\n";
        }
        return os.str();
    }
};

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        if (!f.good()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

json diagnostics_json(const std::map<std::string, double>& d) {
    json out = json::object();
    for (const auto& [k, v] : d) out[k] = v;
    return out;
}

json curve_json(const std::vector<sweep::CurvePoint>& curve, const char* x_name) {
    json pts = json::array();
    json errors = json::array();
    for (const auto& pt : curve) {
        if (pt.ok) {
            pts.push_back({{x_name, pt.tau},
                           {"log_negativity", pt.log_negativity},
                           {"probability", pt.probability}});
        } else {
            errors.push_back({{x_name, pt.tau}, {"error", pt.error}});
        }
    }
    json out{{"curve", std::move(pts)}};
    if (!errors.empty()) out["errors"] = std::move(errors);
    return out;
}

// one command's products: a JSON data object, optionally a CSV rendering
struct CommandOutput {
    json data;
    std::optional<Csv> csv;
    std::optional<int> cutoff;
    std::optional<double> truncation_deficit;
};

// ---------------------------------------------------------------------------
// command implementations

CommandOutput run_tmss_en(const Params& p) {
    const double r = p.number("r");
    if (!(r >= 0.0)) throw UsageError("--r must be >= 0");
    const double eps = epsilon_of(p);
    const int cutoff = cutoff_of(p).value_or(std::max(1, states::choose_cutoff(r, eps)));
    const auto tmss = states::two_mode_squeezed_state({r, cutoff});
    const ent::DensityOperator pure{
        tmss.state.layout, Matrix(tmss.state.amplitudes * tmss.state.amplitudes.adjoint())};
    const double truncated = ent::log_negativity(pure, {1});

    CommandOutput out;
    out.cutoff = cutoff;
    out.truncation_deficit = 1.0 - tmss.retained_weight;
    out.data = {{"r", r},
                {"exact", ent::tmss_log_negativity_exact(r)},
                {"truncated", truncated},
                {"cutoff", cutoff},
                {"truncation_deficit", 1.0 - tmss.retained_weight}};
    return out;
}

CommandOutput run_transfer(const Params& p, bool force_bosonic) {
    const int n = p.integer("n");
    if (n < 1) throw UsageError("--n must be >= 1");
    const double r = p.number("r");
    const std::string kind_word =
        force_bosonic ? std::string("bosonic") : p.text_or("kind", "collective");
    if (kind_word != "collective" && kind_word != "bosonic") {
        throw UsageError("--kind must be collective or bosonic");
    }
    const auto kind = kind_word == "bosonic" ? ops::CouplingKind::BosonicReference
                                             : ops::CouplingKind::Collective;
    proto::TransferParams params{n, r, 0.0, cutoff_of(p), kind, epsilon_of(p)};
    proto::PassiveEngine engine(params);

    CommandOutput out;
    out.cutoff = engine.cutoff();
    out.truncation_deficit = engine.truncation_deficit();
    if (has_range(p, "tau")) {
        const auto grid = range_of(p, "tau");
        auto curve = sweep::scan_time([&](double tau) { return engine.at(tau); }, grid);
        out.data = curve_json(curve, "tau");
        out.data["n"] = n;
        out.data["r"] = r;
        out.data["kind"] = kind_word;
        Csv csv{{"tau", "log_negativity"}, {}};
        for (const auto& pt : curve) {
            if (pt.ok) csv.rows.push_back({pt.tau, pt.log_negativity});
        }
        out.csv = std::move(csv);
    } else {
        const double tau = p.number("tau");
        const auto res = engine.at(tau);
        out.data = {{"n", n},
                    {"r", r},
                    {"tau", tau},
                    {"kind", kind_word},
                    {"log_negativity", res.log_negativity},
                    {"negativity", res.negativity},
                    {"probability", res.probability},
                    {"diagnostics", diagnostics_json(res.diagnostics)}};
    }
    return out;
}

CommandOutput run_bosonic_compare(const Params& p) {
    const int n = p.integer("n");
    if (n < 1) throw UsageError("--n must be >= 1");
    const double r = p.number("r");
    const double eps = epsilon_of(p);
    if (!has_range(p, "tau")) throw UsageError("bosonic-compare requires --tau-min/--tau-max/--tau-step");
    const auto grid = range_of(p, "tau");

    proto::PassiveEngine collective({n, r, 0.0, cutoff_of(p), ops::CouplingKind::Collective, eps});
    proto::PassiveEngine bosonic({n, r, 0.0, cutoff_of(p), ops::CouplingKind::BosonicReference, eps});
    const auto taus = grid.points();
    std::vector<double> c_vals(taus.size()), b_vals(taus.size());
    sweep::parallel_for_index(taus.size(), [&](std::size_t i) {
        c_vals[i] = collective.at(taus[i]).log_negativity;
        b_vals[i] = bosonic.at(taus[i]).log_negativity;
    });

    CommandOutput out;
    out.cutoff = collective.cutoff();
    out.truncation_deficit = collective.truncation_deficit();
    json pts = json::array();
    Csv csv{{"tau", "collective", "bosonic"}, {}};
    for (std::size_t i = 0; i < taus.size(); ++i) {
        pts.push_back({{"tau", taus[i]}, {"collective", c_vals[i]}, {"bosonic", b_vals[i]}});
        csv.rows.push_back({taus[i], c_vals[i], b_vals[i]});
    }
    out.data = {{"n", n}, {"r", r}, {"curve", std::move(pts)}};
    out.csv = std::move(csv);
    return out;
}

json row_json(const sweep::OptimumRow& row) {
    return {{"n", row.n_qubits},
            {"r_opt", row.r_opt},
            {"log_negativity", row.log_negativity_max},
            {"eff", row.eff},
            {"tau_at_max", row.tau_at_max},
            {"cutoff", row.cutoff},
            {"boundary_warning", row.boundary_warning}};
}

CommandOutput run_optimize(const Params& p) {
    const int n = p.integer("n");
    if (n < 1) throw UsageError("--n must be >= 1");
    const auto r_grid = has_range(p, "r") ? range_of(p, "r") : sweep::default_r_grid();
    const auto tau_grid = has_range(p, "tau") ? range_of(p, "tau") : sweep::default_tau_grid();
    const bool refine = p.flag_or("refine", true);
    const auto row = sweep::optimize_transfer(n, r_grid, tau_grid, refine, epsilon_of(p));

    CommandOutput out;
    out.cutoff = row.cutoff;
    out.data = row_json(row);
    return out;
}

CommandOutput run_table1(const Params& p) {
    const int n_max = p.integer_or("n-max", 5);
    if (n_max < 1) throw UsageError("--n-max must be >= 1");
    const int budget = p.integer_or("budget", 10);
    const bool refine = p.flag_or("refine", true);
    const auto table = sweep::table1(n_max, budget, refine, epsilon_of(p));

    CommandOutput out;
    json rows = json::array();
    Csv csv{{"N", "r_opt", "E_N", "eff", "tau_at_max"}, {}};
    for (const auto& row : table.rows) {
        rows.push_back(row_json(row));
        csv.rows.push_back({double(row.n_qubits), row.r_opt, row.log_negativity_max, row.eff,
                            row.tau_at_max});
    }
    out.data = {{"rows", std::move(rows)},
                {"truncated", table.truncated},
                {"eff_monotone", table.eff_monotone},
                {"r_opt_monotone", table.r_opt_monotone}};
    out.csv = std::move(csv);
    return out;
}

CommandOutput run_parity(const Params& p) {
    const int n = p.integer("n");
    if (n < 1) throw UsageError("--n must be >= 1");
    const double r = p.number("r");
    const auto parity = p.word("parity", {"even", "odd"}) == std::string("even") ? proto::Parity::Even
                                                                                 : proto::Parity::Odd;
    const auto mode = p.text_or("parity-mode", "total");
    if (mode != "total" && mode != "per-mode") throw UsageError("--parity-mode must be total or per-mode");
    const auto parity_mode = mode == std::string("total") ? proto::ParityMode::Total
                                                          : proto::ParityMode::PerMode;
    proto::PassiveEngine engine({n, r, 0.0, cutoff_of(p), ops::CouplingKind::Collective, epsilon_of(p)});

    CommandOutput out;
    out.cutoff = engine.cutoff();
    out.truncation_deficit = engine.truncation_deficit();
    if (has_range(p, "tau")) {
        const auto grid = range_of(p, "tau");
        auto curve = sweep::scan_time(
            [&](double tau) { return engine.parity_at(tau, parity, parity_mode); }, grid);
        out.data = curve_json(curve, "tau");
        out.data["n"] = n;
        out.data["r"] = r;
        out.data["parity"] = mode;
        Csv csv{{"tau", "log_negativity", "probability"}, {}};
        for (const auto& pt : curve) {
            if (pt.ok) csv.rows.push_back({pt.tau, pt.log_negativity, pt.probability});
        }
        out.csv = std::move(csv);
    } else {
        const double tau = p.number("tau");
        const auto res = engine.parity_at(tau, parity, parity_mode);
        out.data = {{"n", n},
                    {"r", r},
                    {"tau", tau},
                    {"log_negativity", res.log_negativity},
                    {"probability", res.probability},
                    {"diagnostics", diagnostics_json(res.diagnostics)}};
    }
    return out;
}

std::vector<std::array<proto::AncillaOutcome, 2>> parse_outcomes(std::string text,
                                                                std::size_t rounds) {
    std::string flat;
    for (char c : text) {
        if (c == ',' || c == ' ') continue;
        if (c != 'p' && c != 'o') throw UsageError("--outcomes must use 'p' (psi) and 'o' (perp)");
        flat.push_back(c);
    }
    if (flat.empty()) flat.assign(2 * rounds, 'p');
    if (flat.size() != 2 * rounds) {
        throw UsageError("--outcomes needs two characters per measured round (" +
                         std::to_string(2 * rounds) + " expected)");
    }
    std::vector<std::array<proto::AncillaOutcome, 2>> out(rounds);
    for (std::size_t i = 0; i < rounds; ++i) {
        for (int j = 0; j < 2; ++j) {
            out[i][static_cast<std::size_t>(j)] = flat[2 * i + static_cast<std::size_t>(j)] == 'p'
                                                      ? proto::AncillaOutcome::Psi
                                                      : proto::AncillaOutcome::PsiPerp;
        }
    }
    return out;
}

CommandOutput run_sequential(const Params& p) {
    const double r = p.number("r");
    const double alpha = p.number("alpha");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("--alpha must lie in [0,1]");

    std::vector<double> later;
    if (p.has("tau2")) later.push_back(p.number("tau2"));
    if (p.has("tau3")) {
        if (later.empty()) throw UsageError("--tau3 requires --tau2");
        later.push_back(p.number("tau3"));
    }
    proto::MeasurementSpec measurement;
    measurement.alpha = alpha;
    measurement.outcomes = parse_outcomes(p.text_or("outcomes", ""), later.size());

    proto::SequentialEngine engine(r, cutoff_of(p), epsilon_of(p));
    CommandOutput out;
    out.cutoff = engine.cutoff();

    const bool scanning = has_range(p, "tau");
    if (scanning && (p.has("tau1") || p.has("tau"))) {
        throw UsageError("give either --tau1 or a --tau-min/--tau-max/--tau-step scan, not both");
    }
    if (scanning) {
        const auto grid = range_of(p, "tau");
        auto curve = sweep::scan_time(
            [&](double tau1) {
                std::vector<double> taus{tau1};
                taus.insert(taus.end(), later.begin(), later.end());
                return engine.run(taus, measurement);
            },
            grid);
        out.data = curve_json(curve, "tau1");
        out.data["r"] = r;
        out.data["alpha"] = alpha;
        Csv csv{{"tau1", "log_negativity", "probability"}, {}};
        for (const auto& pt : curve) {
            if (pt.ok) csv.rows.push_back({pt.tau, pt.log_negativity, pt.probability});
        }
        out.csv = std::move(csv);
    } else {
        const double tau1 = p.has("tau1") ? p.number("tau1") : p.number("tau");
        std::vector<double> taus{tau1};
        taus.insert(taus.end(), later.begin(), later.end());
        const auto res = engine.run(taus, measurement);
        out.data = {{"r", r},
                    {"alpha", alpha},
                    {"taus", taus},
                    {"log_negativity", res.log_negativity},
                    {"probability", res.probability},
                    {"diagnostics", diagnostics_json(res.diagnostics)}};
    }
    return out;
}

// ---------------------------------------------------------------------------
// argument handling

RunConfig parse_args(const std::vector<std::string>& args) {
    std::map<std::string, std::string> explicit_values;
    std::string command;
    std::string config_path;

    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) {
            if (!command.empty()) throw UsageError("unexpected positional argument '" + a + "'");
            command = a;
            continue;
        }
        std::string key = a.substr(2);
        std::string value;
        bool has_value = false;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
            has_value = true;
        }
        if (key.empty()) throw UsageError("malformed flag '" + a + "'");
        if (key == "config") {
            if (!has_value) {
                if (++i >= args.size()) throw UsageError("--config expects a path");
                value = args[i];
            }
            config_path = value;
            continue;
        }
        bool negated = false;
        if (!has_value && key.rfind("no-", 0) == 0 && kBoolKeys.count(key.substr(3))) {
            key = key.substr(3);
            negated = true;
        }
        if (kBoolKeys.count(key)) {
            if (!has_value) value = negated ? "false" : "true";
        } else if (!has_value) {
            if (++i >= args.size()) throw UsageError("flag --" + key + " expects a value");
            value = args[i];
        }
        explicit_values[key] = value;
    }

    RunConfig config;
    config.values = explicit_values;
    config.command = command;
    if (!config_path.empty()) {
        for (const auto& [k, v] : parse_config_file(config_path)) {
            if (k == "command") {
                if (command.empty()) config.command = v;
            } else if (!explicit_values.count(k)) {
                config.values[k] = v;
            }
        }
    }
    if (config.command.empty()) {
        throw UsageError("no command given; expected one of tmss-en, transfer, bosonic-compare, "
                         "optimize, table1, parity, sequential");
    }
    if (!kCommands.count(config.command)) throw UsageError("unknown command '" + config.command + "'");
    const auto& allowed = kCommandKeys.at(config.command);
    for (const auto& [k, v] : config.values) {
        if (!allowed.count(k)) throw UsageError("unknown parameter --" + k + " for command " + config.command);
    }
    return config;
}

} // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
        out[key] = value;
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out_stream, std::ostream& err_stream) {
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const UsageError& e) {
        err_stream << "usage error: " << e.what() << "\n";
        return 2;
    }

    json manifest{{"command", config.command}, {"version", kVersion}};
    json config_echo = json::object();
    for (const auto& [k, v] : config.values) config_echo[k] = v;
    manifest["config"] = std::move(config_echo);

    const Params params{config.values};
    const std::string format = params.text_or("format", "json");
    const std::string output_path = params.text_or("output", "");

    const auto started = std::chrono::steady_clock::now();
    CommandOutput result;
    try {
        if (format != "json" && format != "csv") throw UsageError("--format must be csv or json");
        if (config.command == "tmss-en") result = run_tmss_en(params);
        else if (config.command == "transfer") result = run_transfer(params, false);
        else if (config.command == "bosonic-compare") result = run_bosonic_compare(params);
        else if (config.command == "optimize") result = run_optimize(params);
        else if (config.command == "table1") result = run_table1(params);
        else if (config.command == "parity") result = run_parity(params);
        else result = run_sequential(params);
    } catch (const UsageError& e) {
        err_stream << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json error{{"type", "numerical"}, {"message", e.what()}};
        if (const auto* zero = dynamic_cast<const proto::ZeroProbabilityOutcome*>(&e)) {
            error["type"] = "zero_probability";
            error["round"] = zero->round();
        }
        manifest["error"] = std::move(error);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        manifest["wall_time_s"] = elapsed.count();
        json envelope{{"manifest", manifest}};
        try {
            if (!output_path.empty()) {
                const std::string manifest_path =
                    format == "csv" ? output_path + ".manifest.json" : output_path;
                manifest["outputs"] = json::array({manifest_path});
                envelope["manifest"] = manifest;
                write_atomic(manifest_path, envelope.dump(2) + "\n");
            } else {
                out_stream << envelope.dump(2) << "\n";
            }
        } catch (const std::exception& io) {
            err_stream << "error: " << io.what() << "\n";
        }
        err_stream << "error: " << e.what() << "\n";
        return 1;
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    manifest["wall_time_s"] = elapsed.count();
    if (result.cutoff) manifest["cutoff"] = *result.cutoff;
    if (result.truncation_deficit) manifest["truncation_deficit"] = *result.truncation_deficit;

    try {
        if (format == "csv") {
            if (!result.csv) throw UsageError("command " + config.command + " has no CSV rendering; use --format json");
            if (!output_path.empty()) {
                manifest["outputs"] = json::array({output_path, output_path + ".manifest.json"});
                write_atomic(output_path, result.csv->text());
                write_atomic(output_path + ".manifest.json",
                             json{{"manifest", manifest}}.dump(2) + "\n");
            } else {
                out_stream << result.csv->text();
            }
        } else {
            json envelope;
            if (!output_path.empty()) manifest["outputs"] = json::array({output_path});
            envelope["manifest"] = manifest;
            envelope["data"] = result.data;
            if (!output_path.empty()) {
                write_atomic(output_path, envelope.dump(2) + "\n");
            } else {
                out_stream << envelope.dump(2) << "\n";
            }
        }
    } catch (const UsageError& e) {
        err_stream << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err_stream << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace entxfer::cli
