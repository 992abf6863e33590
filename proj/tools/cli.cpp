#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include "heatcontent/asymptotics.hpp"
#include "heatcontent/bounds.hpp"
#include "heatcontent/content.hpp"
#include "heatcontent/parallel.hpp"
#include "heatcontent/shape_json.hpp"

namespace heatcontent::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GridFlags {
    double tmin = 1e-4;
    double tmax = 1e-1;
    std::size_t points = 24;
    std::string spacing = "log";
};

struct Common {
    std::string shape_path;
    std::string out_dir = ".";
    std::uint64_t samples = 1u << 20;
    std::uint64_t seed = 1;
    std::size_t jobs = 0;
};

std::size_t env_jobs() {
    if (const char* v = std::getenv("HEATCONTENT_JOBS")) {
        try {
            const long n = std::stol(v);
            if (n > 0) return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
    }
    return 0;
}

void add_common(CLI::App* app, Common& c, bool shape_required = true) {
    auto* opt = app->add_option("shape", c.shape_path, "Shape description (JSON)");
    if (shape_required) opt->required();
    app->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    app->add_option("--samples", c.samples, "Monte Carlo sample budget (rounded up to a power of two)")
        ->capture_default_str();
    app->add_option("--seed", c.seed, "Top-level seed")->capture_default_str();
    app->add_option("--jobs", c.jobs, "Worker threads (default: HEATCONTENT_JOBS or hardware)");
}

void add_grid(CLI::App* app, GridFlags& g) {
    app->add_option("--tmin", g.tmin, "Smallest time")->capture_default_str();
    app->add_option("--tmax", g.tmax, "Largest time")->capture_default_str();
    app->add_option("--points", g.points, "Number of grid points")->capture_default_str();
    app->add_option("--spacing", g.spacing, "Grid spacing")->check(CLI::IsMember({"log", "linear"}))->capture_default_str();
}

content::TimeGrid make_grid(const GridFlags& g) {
    return g.spacing == "linear" ? content::TimeGrid::linear(g.tmin, g.tmax, g.points)
                                 : content::TimeGrid::log(g.tmin, g.tmax, g.points);
}

json grid_json(const content::TimeGrid& g) {
    return {{"spacing", std::string(content::to_string(g.spacing))}, {"times", g.times}};
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Replay arguments: everything except the shape path and the output directory.
std::vector<std::string> replay_args(const std::vector<std::string>& args, const std::string& shape_path) {
    std::vector<std::string> out;
    bool shape_seen = false;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--out") {
            ++i;
            continue;
        }
        if (a.rfind("--out=", 0) == 0) continue;
        if (!shape_seen && a == shape_path) {
            shape_seen = true;
            continue;
        }
        out.push_back(a);
    }
    return out;
}

struct Manifest {
    json doc;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Manifest(const std::vector<std::string>& args, const Common& c, const geometry::Shape& shape) {
        doc["tool"] = "heatcontent";
        doc["version"] = kVersion;
        doc["command"] = args.front();
        doc["args"] = replay_args(args, c.shape_path);
        doc["shape"] = geometry::shape_to_json(shape);
        doc["seed"] = c.seed;
        doc["samples"] = c.samples;
        doc["started_at"] = utc_now();
        doc["outputs"] = json::array();
    }

    void add_output(const fs::path& p) { doc["outputs"].push_back(p.filename().string()); }

    void write(const fs::path& dir) {
        doc["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ofstream f(dir / "manifest.json");
        f << doc.dump(2) << '\n';
    }
};

fs::path prepare_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

void apply_jobs(const Common& c) {
    const std::size_t j = c.jobs ? c.jobs : env_jobs();
    if (j) set_default_jobs(j);
}

// compute -------------------------------------------------------------------

struct ComputeFlags {
    Common common;
    GridFlags grid;
    std::string quantity = "H";
    std::string method = "auto";
    double x_max = 1e3;
};

int cmd_compute(const std::vector<std::string>& args, const ComputeFlags& f, std::ostream& out) {
    apply_jobs(f.common);
    const auto shape = geometry::load_shape_file(f.common.shape_path);
    const auto grid = make_grid(f.grid);
    content::CurveOptions opts;
    opts.quantity = content::quantity_from_string(f.quantity);
    opts.method = content::curve_method_from_string(f.method);
    opts.samples = f.common.samples;
    opts.seed = f.common.seed;
    opts.horn_x_max = f.x_max;
    Manifest manifest(args, f.common, shape);
    const auto curve = content::compute_curve(shape, grid, opts);

    const fs::path dir = prepare_dir(f.common.out_dir);
    const fs::path csv = dir / "curve.csv";
    {
        std::ofstream file(csv);
        content::write_csv(file, curve);
    }
    manifest.doc["grid"] = grid_json(grid);
    manifest.doc["quantity"] = f.quantity;
    manifest.doc["method"] = f.method;
    manifest.add_output(csv);
    manifest.write(dir);
    out << "wrote " << csv.string() << " (" << curve.values.size() << " rows)\n";
    return kSuccess;
}

// verify --------------------------------------------------------------------

struct VerifyFlags {
    Common common;
    GridFlags grid{1e-3, 1e-1, 8, "log"};
    std::string suite = "all";
    std::size_t probes = 50;
    std::size_t pairs = 8;
};

struct SuiteOutcome {
    std::vector<bounds::BoundReport> reports;
    std::string skipped;
};

const std::vector<std::string> kSuites = {"main", "mu", "nu", "trivial", "scaling", "subadd", "geom", "lemmas"};

SuiteOutcome run_suite(const std::string& suite, const geometry::Shape& shape, const content::TimeGrid& grid,
                       const VerifyFlags& f, std::uint64_t seed) {
    SuiteOutcome o;
    const auto& ts = grid.times;
    const auto n = f.common.samples;
    try {
        if (suite == "main") {
            for (std::size_t i = 0; i < ts.size(); ++i)
                o.reports.push_back(bounds::verify_main_theorem(shape, ts[i], n, derive_seed(seed, i)));
        } else if (suite == "mu") {
            for (std::size_t i = 0; i < ts.size(); ++i)
                o.reports.push_back(bounds::verify_mu_sandwich(shape, ts[i], n, derive_seed(seed, i)));
        } else if (suite == "nu") {
            for (std::size_t i = 0; i < ts.size(); ++i)
                o.reports.push_back(bounds::verify_nu_sandwich(shape, ts[i], n, derive_seed(seed, i)));
        } else if (suite == "trivial") {
            for (std::size_t i = 0; i < ts.size(); ++i)
                o.reports.push_back(bounds::verify_trivial_bounds(shape, ts[i], n, derive_seed(seed, i)));
        } else if (suite == "scaling") {
            for (std::size_t i = 0; i + 1 < ts.size(); ++i)
                o.reports.push_back(bounds::verify_time_scaling(shape, ts[i], ts[i + 1], n, derive_seed(seed, i)));
        } else if (suite == "subadd") {
            Rng rng(seed);
            const double a = std::log(ts.front());
            const double b = std::log(ts.back());
            for (std::size_t i = 0; i < f.pairs; ++i) {
                const double s = std::exp(rng.uniform(a, b));
                const double t = std::exp(rng.uniform(a, b));
                o.reports.push_back(bounds::verify_subadditivity(shape, s, t, n, derive_seed(seed, i + 1)));
            }
        } else if (suite == "geom") {
            o.reports = bounds::verify_geometric_props(shape);
        } else if (suite == "lemmas") {
            for (std::size_t i = 0; i < ts.size(); ++i) {
                auto r = bounds::verify_pointwise_lemmas(shape, ts[i], f.probes, derive_seed(seed, i));
                o.reports.insert(o.reports.end(), r.begin(), r.end());
            }
        }
    } catch (const HypothesisError& e) {
        o.reports.clear();
        o.skipped = e.what();
    }
    return o;
}

int cmd_verify(const std::vector<std::string>& args, const VerifyFlags& f, std::ostream& out) {
    apply_jobs(f.common);
    const auto shape = geometry::load_shape_file(f.common.shape_path);
    const auto grid = make_grid(f.grid);
    Manifest manifest(args, f.common, shape);
    const std::vector<std::string> suites = f.suite == "all" ? kSuites : std::vector<std::string>{f.suite};

    std::vector<SuiteOutcome> outcomes(suites.size());
    parallel_for(suites.size(), [&](std::size_t i) {
        outcomes[i] = run_suite(suites[i], shape, grid, f, derive_seed(f.common.seed, i));
    });

    const fs::path dir = prepare_dir(f.common.out_dir);
    const fs::path jsonl = dir / "reports.jsonl";
    std::ofstream file(jsonl);
    std::size_t failures = 0, marginal = 0, total = 0;
    json summary = json::array();
    for (std::size_t i = 0; i < suites.size(); ++i) {
        auto& o = outcomes[i];
        if (!o.skipped.empty()) {
            file << json{{"suite", suites[i]}, {"skipped", o.skipped}}.dump() << '\n';
            out << "suite " << suites[i] << ": skipped (" << o.skipped << ")\n";
            summary.push_back({{"suite", suites[i]}, {"skipped", o.skipped}});
            continue;
        }
        bounds::canonical_order(o.reports);
        std::size_t fails = 0;
        for (const auto& r : o.reports) {
            json j = bounds::to_json(r);
            j["suite"] = suites[i];
            file << j.dump() << '\n';
            fails += r.hard_failure() ? 1 : 0;
            marginal += r.marginal ? 1 : 0;
        }
        failures += fails;
        total += o.reports.size();
        out << "suite " << suites[i] << ": " << o.reports.size() - fails << "/" << o.reports.size() << " pass\n";
        bounds::write_table(out, o.reports);
        summary.push_back({{"suite", suites[i]}, {"reports", o.reports.size()}, {"failures", fails}});
    }
    file.close();
    manifest.doc["grid"] = grid_json(grid);
    manifest.doc["suite"] = f.suite;
    manifest.doc["summary"] = summary;
    manifest.add_output(jsonl);
    manifest.write(dir);
    out << "total: " << total << " reports, " << failures << " failures, " << marginal << " marginal\n";
    return failures ? kVerificationFailure : kSuccess;
}

// fit -----------------------------------------------------------------------

struct FitFlags {
    Common common;
    std::string model = "sqrt";
    std::string curve_path;
    std::string quantity = "H";
    double tmin = -1.0;
    double tmax = -1.0;
    std::size_t points = 25;
    double p = 1.0;
};

void print_fit(std::ostream& out, const asymptotics::FitResult& r) {
    out << std::left << std::setw(16) << "model" << std::setw(20) << "predicted" << std::setw(20) << "fitted"
        << "relative error\n";
    out << std::left << std::setw(16) << asymptotics::to_string(r.model) << std::setw(20) << std::setprecision(10)
        << r.predicted << std::setw(20) << r.coefficient << std::setprecision(4) << r.relative_error << '\n';
}

int cmd_fit(const std::vector<std::string>& args, FitFlags f, std::ostream& out) {
    apply_jobs(f.common);
    const auto shape = geometry::load_shape_file(f.common.shape_path);
    const bool horn = f.model == "horn";
    if (f.tmin < 0) f.tmin = horn ? 1e-3 : (f.model == "lp" ? 1e-4 : 1e-5);
    if (f.tmax < 0) f.tmax = horn || f.model == "lp" ? 1e-1 : 1e-3;
    if (f.model == "h3" && shape.kind() != geometry::Kind::ball)
        throw HypothesisError("the h3 model is defined for balls only");
    Manifest manifest(args, f.common, shape);
    const fs::path dir = prepare_dir(f.common.out_dir);
    json result;

    if (f.model == "lp") {
        const auto grid = content::TimeGrid::log(f.tmin, f.tmax, f.points);
        const auto seq = asymptotics::lp_convergence_check(shape, f.p, grid, f.common.samples, f.common.seed);
        bool monotone = true;
        for (std::size_t i = 1; i < seq.size(); ++i)
            monotone = monotone && seq[i].upper() >= seq[i - 1].lower();
        json rows = json::array();
        out << std::left << std::setw(24) << "t" << std::setw(24) << "norm_p^p" << "radius\n";
        for (std::size_t i = 0; i < seq.size(); ++i) {
            rows.push_back({{"t", grid.times[i]}, {"value", seq[i].value}, {"error_radius", seq[i].error_radius}});
            out << std::left << std::setw(24) << content::format_number(grid.times[i]) << std::setw(24)
                << content::format_number(seq[i].value) << content::format_number(seq[i].error_radius) << '\n';
        }
        out << "decreasing as t -> 0: " << (monotone ? "yes" : "no") << '\n';
        result = {{"model", "lp"}, {"p", f.p}, {"sequence", rows}, {"decreasing_as_t_to_0", monotone}};
        manifest.doc["grid"] = grid_json(grid);
    } else {
        const content::HeatCurve curve = [&] {
            if (!f.curve_path.empty()) {
                std::ifstream in(f.curve_path);
                if (!in) throw InvalidInput("cannot open curve file " + f.curve_path);
                return content::read_csv(in, shape, content::quantity_from_string(f.quantity));
            }
            content::CurveOptions opts;
            opts.quantity = horn ? content::Quantity::H : content::Quantity::F;
            opts.samples = f.common.samples;
            opts.seed = f.common.seed;
            return content::compute_curve(shape, content::TimeGrid::log(f.tmin, f.tmax, f.points), opts);
        }();
        asymptotics::FitResult r;
        if (f.model == "sqrt")
            r = asymptotics::fit_perimeter_coefficient(curve, {f.tmin, f.tmax});
        else if (f.model == "h3")
            r = asymptotics::h3_check_ball(curve, {f.tmin, f.tmax});
        else {
            if (f.tmin < curve.grid.times.front() || f.tmax > curve.grid.times.back()) {
                if (f.tmax < curve.grid.times.front() || f.tmin > curve.grid.times.back())
                    throw InvalidInput("fit window lies outside the curve range");
            }
            content::HeatCurve windowed = curve;
            windowed.values.clear();
            std::vector<double> ts;
            for (std::size_t i = 0; i < curve.grid.times.size(); ++i) {
                if (curve.grid.times[i] >= f.tmin && curve.grid.times[i] <= f.tmax) {
                    ts.push_back(curve.grid.times[i]);
                    windowed.values.push_back(curve.values[i]);
                }
            }
            windowed.grid = content::TimeGrid::explicit_times(ts);
            r = asymptotics::horn_exponent(windowed);
        }
        print_fit(out, r);
        result = asymptotics::to_json(r);
    }
    const fs::path path = dir / "fit.json";
    std::ofstream(path) << result.dump(2) << '\n';
    manifest.doc["model"] = f.model;
    manifest.add_output(path);
    manifest.write(dir);
    return kSuccess;
}

// sweep ---------------------------------------------------------------------

struct SweepEntry {
    std::string name;
    std::string command;
    std::string shape_path;
    json inline_shape;
    std::vector<std::string> args;
};

std::vector<SweepEntry> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": not valid JSON (" + e.what() + ")");
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw InvalidInput(path + ": expected an object with an \"entries\" array");
    const fs::path base = fs::path(path).parent_path();
    const std::regex name_re("[A-Za-z0-9_.-]+");
    std::set<std::string> names;
    std::vector<SweepEntry> entries;
    for (std::size_t i = 0; i < doc["entries"].size(); ++i) {
        const json& e = doc["entries"][i];
        const std::string where = path + ": entries[" + std::to_string(i) + "]";
        if (!e.is_object()) throw InvalidInput(where + " must be an object");
        SweepEntry s;
        if (!e.contains("name") || !e["name"].is_string()) throw InvalidInput(where + ": missing string \"name\"");
        s.name = e["name"].get<std::string>();
        if (!std::regex_match(s.name, name_re)) throw InvalidInput(where + ": name must match [A-Za-z0-9_.-]+");
        if (!names.insert(s.name).second) throw InvalidInput(where + ": duplicate name " + s.name);
        if (!e.contains("command") || !e["command"].is_string()) throw InvalidInput(where + ": missing \"command\"");
        s.command = e["command"].get<std::string>();
        if (s.command != "compute" && s.command != "verify" && s.command != "fit")
            throw InvalidInput(where + ": command must be compute, verify or fit");
        if (!e.contains("shape")) throw InvalidInput(where + ": missing \"shape\"");
        if (e["shape"].is_string()) {
            s.shape_path = (base / e["shape"].get<std::string>()).string();
        } else if (e["shape"].is_object()) {
            s.inline_shape = e["shape"];
        } else {
            throw InvalidInput(where + ": \"shape\" must be a path or an object");
        }
        if (e.contains("args")) {
            if (!e["args"].is_array()) throw InvalidInput(where + ": \"args\" must be an array of strings");
            for (const auto& a : e["args"]) {
                if (!a.is_string()) throw InvalidInput(where + ": \"args\" must be an array of strings");
                const auto v = a.get<std::string>();
                if (v == "--out" || v.rfind("--out=", 0) == 0) throw InvalidInput(where + ": \"--out\" is set by the sweep");
                s.args.push_back(v);
            }
        }
        entries.push_back(std::move(s));
    }
    return entries;
}

int cmd_sweep(const std::string& config, const std::string& out_dir, std::size_t jobs, std::ostream& out) {
    const std::size_t j = jobs ? jobs : env_jobs();
    if (j) set_default_jobs(j);
    const auto entries = parse_config(config);
    const fs::path dir = prepare_dir(out_dir);
    std::vector<int> codes(entries.size(), kSuccess);
    std::vector<std::string> messages(entries.size());
    parallel_for(
        entries.size(),
        [&](std::size_t i) {
            const auto& e = entries[i];
            const fs::path edir = dir / e.name;
            fs::create_directories(edir);
            std::string shape_path = e.shape_path;
            if (shape_path.empty()) {
                shape_path = (edir / "shape.json").string();
                std::ofstream(shape_path) << e.inline_shape.dump(2) << '\n';
            }
            std::vector<std::string> args = {e.command, shape_path};
            args.insert(args.end(), e.args.begin(), e.args.end());
            args.push_back("--out");
            args.push_back(edir.string());
            std::ostringstream so, se;
            codes[i] = run(args, so, se);
            messages[i] = se.str();
            std::ofstream(edir / "stdout.txt") << so.str();
            std::ofstream(edir / "stderr.txt") << se.str();
        },
        j ? j : default_jobs());

    json summary;
    summary["config"] = fs::path(config).filename().string();
    summary["entries"] = json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const char* status = codes[i] == kSuccess ? "ok" : (codes[i] == kVerificationFailure ? "verification_failed" : "error");
        failed += codes[i] != kSuccess;
        json e = {{"name", entries[i].name}, {"command", entries[i].command}, {"exit_code", codes[i]}, {"status", status}};
        if (codes[i] != kSuccess && !messages[i].empty()) e["message"] = messages[i];
        summary["entries"].push_back(e);
        out << std::left << std::setw(32) << entries[i].name << status << '\n';
    }
    summary["failed"] = failed;
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    out << entries.size() - failed << "/" << entries.size() << " entries ok\n";
    return failed ? kVerificationFailure : kSuccess;
}

// rerun ---------------------------------------------------------------------

int cmd_rerun(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
    std::ifstream in(manifest_path);
    if (!in) throw InvalidInput("cannot open manifest " + manifest_path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InvalidInput(manifest_path + ": not valid JSON (" + e.what() + ")");
    }
    for (const char* key : {"command", "args", "shape"})
        if (!doc.contains(key)) throw InvalidInput(manifest_path + ": missing \"" + key + "\"");
    const fs::path dir = prepare_dir(out_dir);
    const fs::path shape = dir / "shape.json";
    geometry::shape_from_json(doc["shape"]);
    std::ofstream(shape) << doc["shape"].dump(2) << '\n';
    std::vector<std::string> args = {doc["command"].get<std::string>(), shape.string()};
    for (const auto& a : doc["args"]) args.push_back(a.get<std::string>());
    args.push_back("--out");
    args.push_back(dir.string());
    return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heat content of open sets in R^m: estimators, bound verification, asymptotic fits", "heatcontent"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ComputeFlags cf;
    auto* compute = app.add_subcommand("compute", "Compute an H or F curve and write CSV + manifest");
    add_common(compute, cf.common);
    add_grid(compute, cf.grid);
    compute->add_option("--quantity", cf.quantity, "H or F")->check(CLI::IsMember({"H", "F"}))->capture_default_str();
    compute->add_option("--method", cf.method, "auto|exact|quadrature|mc")
        ->check(CLI::IsMember({"auto", "exact", "quadrature", "mc"}))
        ->capture_default_str();
    compute->add_option("--xmax", cf.x_max, "Slice cut for the Monte Carlo horn path")->capture_default_str();

    VerifyFlags vf;
    auto* verify = app.add_subcommand("verify", "Check heat content inequalities and write JSON-lines reports");
    add_common(verify, vf.common);
    add_grid(verify, vf.grid);
    verify->add_option("--suite", vf.suite, "main|mu|nu|trivial|scaling|subadd|geom|lemmas|all")
        ->check(CLI::IsMember({"main", "mu", "nu", "trivial", "scaling", "subadd", "geom", "lemmas", "all"}))
        ->capture_default_str();
    verify->add_option("--probes", vf.probes, "Probe points per time for the lemma suite")->capture_default_str();
    verify->add_option("--pairs", vf.pairs, "Random (s, t) pairs for the subadditivity suite")->capture_default_str();

    FitFlags ff;
    auto* fit = app.add_subcommand("fit", "Fit small-time coefficients or the horn exponent");
    add_common(fit, ff.common);
    fit->add_option("--model", ff.model, "sqrt|h3|horn|lp")
        ->check(CLI::IsMember({"sqrt", "h3", "horn", "lp"}))
        ->capture_default_str();
    fit->add_option("--curve", ff.curve_path, "Existing curve CSV (else computed)");
    fit->add_option("--quantity", ff.quantity, "Quantity held by --curve")->check(CLI::IsMember({"H", "F"}));
    fit->add_option("--tmin", ff.tmin, "Window start");
    fit->add_option("--tmax", ff.tmax, "Window end");
    fit->add_option("--points", ff.points, "Grid points when the curve is computed")->capture_default_str();
    fit->add_option("--p", ff.p, "Exponent for the lp model")->capture_default_str();

    std::string config, sweep_out = "sweep-out";
    std::size_t sweep_jobs = 0;
    auto* sweep = app.add_subcommand("sweep", "Run every entry of a JSON config");
    sweep->add_option("config", config, "Sweep config (JSON)")->required();
    sweep->add_option("--out", sweep_out, "Output directory")->capture_default_str();
    sweep->add_option("--jobs", sweep_jobs, "Concurrent entries (default: HEATCONTENT_JOBS or hardware)");

    std::string manifest, rerun_out = "rerun-out";
    auto* rerun = app.add_subcommand("rerun", "Replay a manifest written by compute, verify or fit");
    rerun->add_option("manifest", manifest, "manifest.json")->required();
    rerun->add_option("--out", rerun_out, "Output directory")->capture_default_str();

    std::vector<const char*> argv = {"heatcontent"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*compute) return cmd_compute(args, cf, out);
        if (*verify) return cmd_verify(args, vf, out);
        if (*fit) return cmd_fit(args, ff, out);
        if (*sweep) return cmd_sweep(config, sweep_out, sweep_jobs, out);
        if (*rerun) return cmd_rerun(manifest, rerun_out, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace heatcontent::cli
