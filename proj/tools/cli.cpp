#include "dynbc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "dynbc/error.hpp"
#include "dynbc/mittag_leffler.hpp"
#include "dynbc/spectral.hpp"
#include "dynbc/stoch.hpp"
#include "dynbc/verify.hpp"

namespace dynbc::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

double parse_double(const KeyValues& kv, const std::string& key) {
    const std::string& s = kv.at(key);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a finite number, got '" + s + "'");
    }
}

long long parse_int(const KeyValues& kv, const std::string& key) {
    const std::string& s = kv.at(key);
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + s + "'");
    }
}

bool parse_bool(const KeyValues& kv, const std::string& key) {
    const std::string& s = kv.at(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + s + "'");
}

std::vector<double> parse_list(const KeyValues& kv, const std::string& key) {
    std::vector<double> out;
    const std::string& s = kv.at(key);
    if (trim(s).empty()) return out;
    for (const auto& item : split(s, ',')) {
        KeyValues one{{key, item}};
        out.push_back(parse_double(one, key));
    }
    return out;
}

std::vector<Point> parse_points(const KeyValues& kv, const std::string& key, int dim) {
    std::vector<Point> out;
    const std::string& s = kv.at(key);
    if (trim(s).empty()) return out;
    for (const auto& item : split(s, ';')) {
        KeyValues one{{key, item}};
        const auto c = parse_list(one, key);
        if (static_cast<int>(c.size()) != dim)
            throw ConfigError(key + ": point '" + item + "' needs " + std::to_string(dim) + " coordinates");
        Point p{};
        for (int i = 0; i < dim; ++i) p[i] = c[i];
        out.push_back(p);
    }
    return out;
}

// A table of preformatted cells, written as CSV or JSON.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::string s;
        auto line = [&s](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) s += ',';
                s += cells[i];
            }
            s += '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return s;
    }

    std::string json() const {
        ordered_json j;
        j["columns"] = header;
        j["rows"] = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row = ordered_json::array();
            for (const auto& c : r) {
                if (c.empty())
                    row.push_back(nullptr);
                else
                    row.push_back(std::stod(c));
            }
            j["rows"].push_back(row);
        }
        return j.dump(2) + "\n";
    }
};

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    f << content;
    if (!f) throw ConfigError("failed writing '" + p.string() + "'");
}

void emit(const RunConfig& cfg, const std::string& name, const Table& table, std::ostream& out) {
    if (cfg.output_dir.empty()) {
        out << (cfg.output_format == "json" ? table.json() : table.csv());
        return;
    }
    std::filesystem::create_directories(cfg.output_dir);
    const auto base = std::filesystem::path(cfg.output_dir) / name;
    write_file(base.string() + (cfg.output_format == "json" ? ".json" : ".csv"),
               cfg.output_format == "json" ? table.json() : table.csv());
}

std::vector<std::string> point_cells(const Point& x, int dim) {
    std::vector<std::string> c;
    for (int i = 0; i < dim; ++i) c.push_back(fmt(x[i]));
    return c;
}

std::vector<std::string> point_header(int dim) {
    std::vector<std::string> h{"x1", "x2"};
    if (dim == 3) h.push_back("x3");
    return h;
}

void report_condition(const RunConfig& cfg, std::ostream& err) {
    const auto c = check_spectral_condition(cfg.domain(), cfg.bc);
    err << "spectral condition: lambda_1 = " << fmt(c.first_eigenvalue) << (c.ok ? " (ok)" : " (violated)")
        << "; k <= l R (N-1) " << (c.radius_formula_ok ? "holds" : "fails") << '\n';
    if (!c.ok) err << "warning: lambda_1 < 0, the series solution is not available\n";
    if (c.discrepancy) err << "warning: " << c.warning << '\n';
}

void require_condition(const RunConfig& cfg) {
    const auto c = check_spectral_condition(cfg.domain(), cfg.bc);
    if (!c.ok) throw PreconditionError("spectral condition fails: lambda_1 = " + fmt(c.first_eigenvalue) + " < 0");
}

int cmd_eigen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto dom = cfg.domain();
    Table t{{"degree", "multiplicity", "lambda", "lambda_total"}, {}};
    BoundaryParams no_kill = cfg.bc;
    no_kill.Lambda = 0.0;
    for (int d = 0; d <= cfg.n_max; ++d) {
        const int mult = dom.dim() == 2 ? (d == 0 ? 1 : 2) : 2 * d + 1;
        const double lam = eigenvalue_for_degree(dom, no_kill, d);
        t.rows.push_back({std::to_string(d), std::to_string(mult), fmt(lam), fmt(lam + cfg.bc.Lambda)});
    }
    emit(cfg, "eigen", t, out);
    report_condition(cfg, err);
    return kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_condition(cfg);
    const auto field = cfg.datum().spectral(cfg.n_max);
    if (field.aliased()) err << "warning: datum has content beyond degree " << cfg.n_max << " (grid residual "
                             << fmt(field.grid_residual()) << ")\n";
    double sub_alpha = 0.0;
    if (cfg.solve_subordination) {
        if (const auto* s = std::get_if<BernsteinSymbol>(&cfg.time_model); s && !s->is_stable())
            throw ConfigError("solve.subordination needs a Caputo or stable time model");
        sub_alpha = model_alpha(cfg.time_model);
    }
    Table t;
    t.header = {"t"};
    for (const auto& h : point_header(cfg.dim)) t.header.push_back(h);
    t.header.push_back("u");
    if (cfg.solve_subordination) t.header.push_back("u_subordinated");
    for (double time : cfg.times) {
        for (const auto& x : cfg.points) {
            std::vector<std::string> row{fmt(time)};
            for (auto& c : point_cells(x, cfg.dim)) row.push_back(c);
            row.push_back(fmt(evaluate_solution(field, cfg.bc, cfg.time_model, time, x, cfg.solve_eps)));
            if (cfg.solve_subordination) row.push_back(fmt(subordinated_solution(field, cfg.bc, sub_alpha, time, x)));
            t.rows.push_back(std::move(row));
        }
    }
    emit(cfg, "solve", t, out);
    return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto dom = cfg.domain();
    const auto datum = cfg.datum();
    const BoundaryFunction u0 = [&datum](const Point& y) { return datum(y); };
    Table t{{"t", "x1", "x2", "mean", "stderr", "n"}, {}};
    for (double time : cfg.times) {
        for (const auto& x : cfg.points) {
            const auto e = estimate_solution(dom, cfg.bc, u0, time, x, cfg.mc);
            t.rows.push_back({fmt(time), fmt(x[0]), fmt(x[1]), fmt(e.mean), fmt(e.std_error), std::to_string(e.n)});
        }
    }
    emit(cfg, "simulate", t, out);
    return kOk;
}

std::string compare_json(const RunConfig& cfg, const ComparisonReport& rep) {
    ordered_json j;
    j["command"] = "compare";
    j["passed"] = rep.passed;
    j["max_abs_z"] = rep.max_abs_z;
    j["z_threshold"] = 4.0;
    j["n_points"] = rep.points.size();
    std::size_t exact = 0;
    std::size_t failed = 0;
    for (const auto& p : rep.points) {
        if (!p.z) ++exact;
        if ((p.z && !(std::abs(*p.z) < 4.0)) || (!p.z && !p.exact_ok)) ++failed;
    }
    j["n_exact"] = exact;
    j["n_failed"] = failed;
    j["seeds"] = {{"mc", cfg.mc.seed}};
    ordered_json params;
    params["domain"] = {{"dim", cfg.dim}, {"radius", cfg.radius}};
    params["bc"] = {{"k", cfg.bc.k}, {"l", cfg.bc.l}, {"lambda", cfg.bc.Lambda}};
    params["time"] = {{"model", cfg.model_name}, {"alpha", cfg.alpha}, {"theta", cfg.theta}, {"step", cfg.tempered_step}};
    params["datum"] = {{"name", cfg.datum().name()}, {"n_max", cfg.n_max}};
    params["mc"] = {{"paths", cfg.mc.n_paths}};
    params["times"] = cfg.times;
    ordered_json pts = ordered_json::array();
    for (const auto& x : cfg.points) pts.push_back({x[0], x[1]});
    params["points"] = pts;
    j["parameters"] = params;
    return j.dump(2) + "\n";
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.dim != 2) throw PreconditionError("compare needs the Monte Carlo route, which is only available in dimension 2");
    const auto rep = compare(cfg.domain(), cfg.bc, cfg.datum(), cfg.times, cfg.points, cfg.mc, {cfg.n_max, 4.0});
    const std::string csv = comparison_csv(rep);
    const std::string json = compare_json(cfg, rep);
    if (cfg.output_dir.empty()) {
        out << (cfg.output_format == "json" ? json : csv);
    } else {
        std::filesystem::create_directories(cfg.output_dir);
        write_file(std::filesystem::path(cfg.output_dir) / "compare.csv", csv);
        write_file(std::filesystem::path(cfg.output_dir) / "compare.json", json);
    }
    err << "compare: max |z| = " << fmt(rep.max_abs_z) << (rep.passed ? " (pass)" : " (FAIL)") << '\n';
    return rep.passed ? kOk : kComparisonFailure;
}

int cmd_mlf(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const MLParams p(cfg.mlf_alpha, cfg.mlf_beta);
    Table t{{"alpha", "beta", "z", "value"}, {}};
    for (double z : cfg.mlf_z) t.rows.push_back({fmt(cfg.mlf_alpha), fmt(cfg.mlf_beta), fmt(z), fmt(ml_e(p, z))});
    emit(cfg, "mlf", t, out);
    return kOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto dom = cfg.domain();
    const std::string& kind = cfg.sample_kind;
    std::function<double(RngStream&)> draw;
    if (kind == "stable") {
        draw = [&](RngStream& r) { return sample_stable(r, cfg.alpha); };
    } else if (kind == "inverse-stable") {
        draw = [&](RngStream& r) { return sample_inverse_stable(r, cfg.alpha, cfg.sample_t); };
    } else if (kind == "inverse-tempered") {
        const double step = cfg.tempered_step > 0.0 ? cfg.tempered_step : 1e-3 * cfg.sample_t;
        draw = [&, step](RngStream& r) { return sample_inverse_tempered(r, cfg.alpha, cfg.theta, cfg.sample_t, step); };
    } else if (kind == "exit-angle") {
        if (cfg.dim != 2) throw ConfigError("sample.kind = exit-angle needs domain.dim = 2");
        draw = [&](RngStream& r) { return sample_exit_point(r, dom, cfg.sample_x).angle; };
    } else if (kind == "boundary-increment") {
        const auto y0 = BoundaryPoint::on_circle(0.0, cfg.radius);
        draw = [&, y0](RngStream& r) {
            return std::remainder(sample_boundary_process(r, dom, cfg.bc, y0, cfg.sample_t).angle, 2.0 * std::numbers::pi);
        };
    }
    Table t{{"value"}, {}};
    const std::uint64_t block = cfg.mc.block_size;
    for (std::uint64_t b = 0; b * block < cfg.sample_n; ++b) {
        RngStream rng(cfg.mc.seed, b);
        const std::uint64_t count = std::min(block, cfg.sample_n - b * block);
        for (std::uint64_t i = 0; i < count; ++i) t.rows.push_back({fmt(draw(rng))});
    }
    emit(cfg, "sample", t, out);
    return kOk;
}

}  // namespace

const KeyValues& default_keys() {
    static const KeyValues keys{
        {"domain.dim", "2"},
        {"domain.radius", "1"},
        {"bc.k", "-1"},
        {"bc.l", "1"},
        {"bc.lambda", "0"},
        {"time.model", "caputo"},
        {"time.alpha", "0.5"},
        {"time.theta", "0"},
        {"time.step", "0"},
        {"datum.kind", "named"},
        {"datum.name", ""},
        {"datum.path", ""},
        {"datum.n_max", "16"},
        {"eval.times", "1"},
        {"eval.points", ""},
        {"mc.paths", "100000"},
        {"mc.seed", "1"},
        {"mc.shards", "1"},
        {"solve.eps", "0"},
        {"solve.subordination", "false"},
        {"mlf.alpha", "0.5"},
        {"mlf.beta", "1"},
        {"mlf.z", "-1"},
        {"sample.kind", "stable"},
        {"sample.n", "1000"},
        {"sample.t", "1"},
        {"sample.x", ""},
        {"output.dir", ""},
        {"output.format", "csv"},
    };
    return keys;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!default_keys().contains(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

BoundaryDatum RunConfig::datum() const {
    if (keys.at("datum.kind") == "csv") return BoundaryDatum::from_csv(domain(), keys.at("datum.path"), n_max);
    const std::string& name = keys.at("datum.name");
    if (name.empty()) return BoundaryDatum::parse(domain(), dim == 2 ? "cos:1" : "basis:1:0");
    return BoundaryDatum::parse(domain(), name);
}

RunConfig RunConfig::from_keys(const KeyValues& overrides) {
    RunConfig c;
    c.keys = default_keys();
    for (const auto& [k, v] : overrides) {
        if (!c.keys.contains(k)) throw ConfigError("unknown key '" + k + "'");
        c.keys[k] = v;
    }
    const KeyValues& kv = c.keys;

    c.dim = static_cast<int>(parse_int(kv, "domain.dim"));
    if (c.dim != 2 && c.dim != 3) throw ConfigError("domain.dim must be 2 or 3");
    c.radius = parse_double(kv, "domain.radius");
    if (!(c.radius > 0.0)) throw ConfigError("domain.radius must be positive");

    c.bc = {parse_double(kv, "bc.k"), parse_double(kv, "bc.l"), parse_double(kv, "bc.lambda")};
    try {
        c.bc.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("bc: ") + e.what());
    }

    c.model_name = kv.at("time.model");
    c.alpha = parse_double(kv, "time.alpha");
    c.theta = parse_double(kv, "time.theta");
    c.tempered_step = parse_double(kv, "time.step");
    if (!(c.alpha > 0.0 && c.alpha <= 1.0)) throw ConfigError("time.alpha must lie in (0, 1]");
    if (!(c.theta >= 0.0)) throw ConfigError("time.theta must be nonnegative");
    if (!(c.tempered_step >= 0.0)) throw ConfigError("time.step must be nonnegative");
    if (c.model_name == "caputo") {
        if (c.theta != 0.0) throw ConfigError("time.theta requires time.model = symbol");
        c.time_model = Caputo{FractionalOrder(c.alpha)};
    } else if (c.model_name == "symbol") {
        c.time_model = c.theta > 0.0 ? BernsteinSymbol::tempered(c.alpha, c.theta) : BernsteinSymbol::stable(c.alpha);
    } else {
        throw ConfigError("time.model must be caputo or symbol");
    }

    const auto n_max = parse_int(kv, "datum.n_max");
    if (n_max < 0 || n_max > 512) throw ConfigError("datum.n_max must lie in [0, 512]");
    c.n_max = static_cast<int>(n_max);
    const std::string& kind = kv.at("datum.kind");
    if (kind == "csv") {
        if (!std::filesystem::is_regular_file(kv.at("datum.path")))
            throw ConfigError("datum.path '" + kv.at("datum.path") + "' does not exist");
    } else if (kind != "named") {
        throw ConfigError("datum.kind must be named or csv");
    }
    (void)c.datum();  // parse the selector or file now

    c.times = parse_list(kv, "eval.times");
    for (double t : c.times)
        if (!(t >= 0.0)) throw ConfigError("eval.times must be nonnegative");
    c.points = parse_points(kv, "eval.points", c.dim);
    if (trim(kv.at("eval.points")).empty()) c.points = {Point{0.5, 0.0, 0.0}};
    const DomainSpec dom = c.domain();
    for (const auto& x : c.points)
        if (!dom.contains(x)) throw ConfigError("eval.points: point outside the closed domain");

    const auto paths = parse_int(kv, "mc.paths");
    const auto seed = parse_int(kv, "mc.seed");
    const auto shards = parse_int(kv, "mc.shards");
    if (paths < 1) throw ConfigError("mc.paths must be positive");
    if (seed < 0) throw ConfigError("mc.seed must be nonnegative");
    if (shards < 1 || shards > 1024) throw ConfigError("mc.shards must lie in [1, 1024]");
    c.mc.n_paths = static_cast<std::uint64_t>(paths);
    c.mc.seed = static_cast<std::uint64_t>(seed);
    c.mc.n_shards = static_cast<int>(shards);
    c.mc.time_model = c.time_model;
    c.mc.tempered_step = c.tempered_step;
    c.mc.validate();

    c.solve_eps = parse_double(kv, "solve.eps");
    if (!(c.solve_eps >= 0.0)) throw ConfigError("solve.eps must be nonnegative");
    c.solve_subordination = parse_bool(kv, "solve.subordination");

    c.mlf_alpha = parse_double(kv, "mlf.alpha");
    c.mlf_beta = parse_double(kv, "mlf.beta");
    try {
        (void)MLParams(c.mlf_alpha, c.mlf_beta);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("mlf: ") + e.what());
    }
    c.mlf_z = parse_list(kv, "mlf.z");
    for (double z : c.mlf_z)
        if (z > 0.0) throw ConfigError("mlf.z: only z <= 0 is supported");

    c.sample_kind = kv.at("sample.kind");
    static const std::vector<std::string> kinds{"stable", "inverse-stable", "inverse-tempered", "exit-angle",
                                                "boundary-increment"};
    if (std::find(kinds.begin(), kinds.end(), c.sample_kind) == kinds.end())
        throw ConfigError("sample.kind must be one of stable, inverse-stable, inverse-tempered, exit-angle, "
                          "boundary-increment");
    const auto n = parse_int(kv, "sample.n");
    if (n < 0) throw ConfigError("sample.n must be nonnegative");
    c.sample_n = static_cast<std::uint64_t>(n);
    c.sample_t = parse_double(kv, "sample.t");
    if (!(c.sample_t >= 0.0)) throw ConfigError("sample.t must be nonnegative");
    const auto sx = parse_points(kv, "sample.x", c.dim);
    if (sx.size() > 1) throw ConfigError("sample.x must be a single point");
    c.sample_x = sx.empty() ? Point{} : sx[0];

    c.output_dir = kv.at("output.dir");
    c.output_format = kv.at("output.format");
    if (c.output_format != "csv" && c.output_format != "json") throw ConfigError("output.format must be csv or json");
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamic boundary conditions: spectral and Monte Carlo solvers", "dynbc"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(const RunConfig&, std::ostream&, std::ostream&);
    };
    const std::vector<Command> commands{
        {"eigen", "Boundary eigenvalues and the spectral condition", cmd_eigen},
        {"solve", "u(t, x) by the spectral route", cmd_solve},
        {"simulate", "u(t, x) by Monte Carlo", cmd_simulate},
        {"compare", "Spectral against Monte Carlo on eval.times x eval.points", cmd_compare},
        {"mlf", "Mittag-Leffler function E_{alpha,beta}(z)", cmd_mlf},
        {"sample", "Raw variates as single-column CSV", cmd_sample},
    };

    std::string config_path;
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    std::vector<CLI::App*> subs;
    for (const auto& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("-c,--config", config_path, "Config file of dotted key = value lines")
            ->check(CLI::ExistingFile);
        for (const auto& [key, def] : default_keys()) {
            CLI::Option* opt = sub->add_option("--" + key, values[key], "default: " + (def.empty() ? "\"\"" : def));
            opt->allow_extra_args(false);
            options.emplace_back(key, opt);
        }
        subs.push_back(sub);
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    std::size_t which = 0;
    for (; which < subs.size(); ++which)
        if (subs[which]->parsed()) break;

    try {
        KeyValues kv;
        if (!config_path.empty()) kv = read_config_file(config_path);
        for (const auto& [key, opt] : options)
            if (opt->count() > 0) kv[key] = values[key];
        const RunConfig cfg = RunConfig::from_keys(kv);
        return commands[which].fn(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kPreconditionError;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}

}  // namespace dynbc::cli
