#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dicola/bench.hpp"
#include "dicola/citest.hpp"
#include "dicola/dicola.hpp"
#include "dicola/errors.hpp"
#include "dicola/fci.hpp"
#include "dicola/graph_io.hpp"
#include "dicola/oracle.hpp"
#include "dicola/synth.hpp"
#include "settings.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace dicola;
using namespace dicola::cli;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailure = 2;
constexpr int kCounterexample = 3;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("dicola");
    spdlog::set_default_logger(logger);
    const char* env = std::getenv("DICOLA_LOG");
    const std::string level = env ? env : "error";
    if (level == "error")
        spdlog::set_level(spdlog::level::err);
    else if (level == "info")
        spdlog::set_level(spdlog::level::info);
    else if (level == "debug")
        spdlog::set_level(spdlog::level::debug);
    else
        throw UsageError("DICOLA_LOG must be error, info or debug");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(line);
    return out;
}

std::optional<int> max_cond(const Settings& s) {
    if (s.max_cond < 0) return std::nullopt;
    return s.max_cond;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

void validate_common(const Settings& s) {
    require(s.alpha > 0 && s.alpha < 1, "--alpha must lie in (0, 1)");
    require(s.timeout_factor > 0, "--timeout-factor must be positive");
    require(s.workers >= 1, "--workers must be at least 1");
    require(s.tester == "oracle" || s.tester == "fisherz", "--tester must be oracle or fisherz");
}

int cmd_gen(const Settings& s) {
    require(s.n >= 1, "--n must be at least 1");
    require(s.degree >= 0 && s.degree <= s.n - 1, "--degree must lie in [0, n-1]");
    require(s.latents >= 0, "--latents must be non-negative");
    require(s.samples >= 0, "--samples must be non-negative");
    require(!s.out.empty(), "gen needs --out");
    Rng rng(s.seed);
    const Scenario sc = make_scenario(s.n, s.degree, s.latents, rng);
    std::optional<Dataset> data;
    if (s.samples > 0) data = sample(sc.sem, s.samples, rng);
    save_scenario(s.out, sc, data ? &*data : nullptr);
    if (sc.latent_shortfall)
        spdlog::warn("only {} of {} requested latents had two or more children", sc.latents.size(), s.latents);
    std::cout << "wrote " << s.out << ": " << sc.dag.num_edges() << " DAG edges, " << sc.latents.size()
              << " latents, " << sc.true_mag.num_edges() << " MAG edges\n";
    return kOk;
}

int cmd_project(const Settings& s) {
    require(!s.dag.empty(), "project needs --dag");
    const MixedGraph dag = load_graph(s.dag, GraphKind::Dag);
    std::vector<std::string> hidden;
    if (!s.latents_file.empty()) hidden = read_lines(s.latents_file);
    for (const auto& h : hidden)
        if (!dag.vertices().contains(h)) throw InputError("latent " + h + " is not a vertex of the DAG");
    std::vector<std::string> observed;
    for (const auto& v : dag.names())
        if (std::find(hidden.begin(), hidden.end(), v) == hidden.end()) observed.push_back(v);
    write_text(s.out, write_graph(latent_project(dag, observed)));
    return kOk;
}

// The truth may be a scenario bundle, a MAG, or a DAG (projected onto `observed`
// when given, onto all of its vertices otherwise).
MixedGraph load_truth(const std::string& path, const std::vector<std::string>& observed) {
    if (fs::is_directory(path)) {
        auto mag = load_scenario(path).mag;
        return observed.empty() ? mag : latent_project(mag, observed);
    }
    MixedGraph g = load_graph(path);
    if (g.kind() == GraphKind::Pag) throw InputError("--truth must be a DAG or MAG, not a PAG");
    if (g.kind() == GraphKind::Dag) return latent_project(g, observed.empty() ? g.names() : observed);
    return observed.empty() ? g : latent_project(g, observed);
}

int cmd_discover(const Settings& s) {
    validate_common(s);
    require(s.method == "fci" || s.method == "dicola+fci", "--method must be fci or dicola+fci");
    require(s.max_cond >= -1, "--max-cond must be non-negative");
    const bool oracle = s.tester == "oracle";
    require(!oracle || !s.truth.empty(), "the oracle tester needs --truth");
    require(oracle || !s.data.empty(), "the fisherz tester needs --data");

    std::shared_ptr<const Dataset> data;
    std::vector<std::string> observed;
    if (!oracle) {
        data = std::make_shared<const Dataset>(Dataset::load_csv(s.data));
        observed = data->columns().names();
    }
    std::optional<MixedGraph> truth;
    if (!s.truth.empty()) truth = load_truth(s.truth, observed);
    if (oracle) observed = truth->names();

    std::unique_ptr<CiTester> tester;
    if (oracle)
        tester = std::make_unique<OracleTester>(*truth);
    else
        tester = std::make_unique<FisherZTester>(data, s.alpha);
    tester->set_deadline(CiTester::Clock::now() + std::chrono::duration_cast<CiTester::Clock::duration>(
                                                      std::chrono::duration<double>(s.timeout_factor * observed.size())));

    FciOptions fo;
    fo.max_cond = max_cond(s);
    fo.policy = oracle ? OrientationPolicy::Strict : OrientationPolicy::Lenient;
    const FciLearner base(fo);
    DicolaResult res = s.method == "fci" ? run_base(observed, *tester, base) : run_dicola(observed, *tester, base);
    if (truth && !res.report.timed_out) res.report.metrics = skeleton_metrics(skeleton(res.pag), skeleton(*truth));
    write_text(s.out, res.report.to_json());
    if (res.report.timed_out) {
        spdlog::error("run timed out after {} CI tests", res.report.ci_tests);
        return kFailure;
    }
    if (!s.pag.empty()) save_graph(s.pag, res.pag);
    return kOk;
}

int cmd_verify(const Settings& s) {
    require(s.suite == "all" || std::find(kSuites.begin(), kSuites.end(), s.suite) != kSuites.end(),
            "--suite must be all, theorems, projection, uig or recovery");
    require(s.n_max >= 2 && s.n_max <= 10, "--n-max must lie in [2, 10]");
    require(s.trials >= 1, "--trials must be at least 1");
    VerifyOptions o;
    o.suite = s.suite;
    o.n_max = s.n_max;
    o.trials = s.trials;
    o.seed = s.seed;
    o.out = s.out.empty() ? fs::temp_directory_path() / "dicola-verify" : fs::path(s.out);
    int status = kOk;
    for (const auto& r : run_verify(o)) {
        std::cout << r.suite << ": " << r.trials << " trials, " << r.checks << " checks";
        if (r.counterexample) {
            std::cout << ", counterexample (" << r.what << ") saved to " << r.counterexample->string();
            status = kCounterexample;
        }
        std::cout << '\n';
    }
    return status;
}

int cmd_bench(const Settings& s) {
    validate_common(s);
    ExperimentConfig cfg;
    cfg.seed = s.seed;
    cfg.n = s.n;
    cfg.avg_degree = s.degree;
    cfg.n_latent = s.latents;
    cfg.n_samples = s.samples;
    cfg.alpha = s.alpha;
    cfg.reps = s.reps;
    cfg.methods = s.methods;
    cfg.max_cond = max_cond(s);
    cfg.timeout_factor = s.timeout_factor;
    cfg.workers = s.workers;
    cfg.tester = s.tester == "oracle" ? TesterKind::Oracle : TesterKind::FisherZ;
    try {
        cfg.validate();
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
    const auto report = run_experiment(cfg);
    if (!s.csv.empty()) write_text(s.csv, rows_csv(report.rows));
    write_text(s.json, summary_json(report));
    return kOk;
}

// The config file is read before the real parse so that flags override it.
std::string find_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    Settings s;
    CLI::App app{"Causal discovery with latent variables by recursive decomposition"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config;
    app.add_option("--config", config, "JSON file with default flag values");
    app.add_option("--seed", s.seed, "Master seed");

    auto add_tester_flags = [&](CLI::App* c) {
        c->add_option("--alpha", s.alpha, "Significance level of the Fisher-Z test");
        c->add_option("--max-cond", s.max_cond, "Largest conditioning set (default: unbounded)");
        c->add_option("--timeout-factor", s.timeout_factor, "Run budget in seconds per variable");
        c->add_option("--tester", s.tester, "oracle or fisherz");
    };

    auto* gen = app.add_subcommand("gen", "Generate a scenario bundle");
    gen->add_option("--n", s.n, "Number of DAG vertices");
    gen->add_option("--degree", s.degree, "Average degree");
    gen->add_option("--latents", s.latents, "Number of latent variables");
    gen->add_option("--samples", s.samples, "Rows of data.csv (0 for none)");
    gen->add_option("--out", s.out, "Bundle directory");

    auto* project = app.add_subcommand("project", "Project a DAG onto its observed variables");
    project->add_option("--dag", s.dag, "DAG graph file");
    project->add_option("--latents-file", s.latents_file, "Latent names, one per line");
    project->add_option("--out", s.out, "Output MAG file (default: stdout)");

    auto* discover = app.add_subcommand("discover", "Learn a PAG from data or an oracle");
    discover->add_option("--method", s.method, "fci or dicola+fci");
    discover->add_option("--data", s.data, "CSV data file");
    discover->add_option("--truth", s.truth, "True DAG, MAG or scenario bundle");
    discover->add_option("--out", s.out, "Run report JSON (default: stdout)");
    discover->add_option("--pag", s.pag, "Learned PAG file");
    add_tester_flags(discover);

    auto* verify = app.add_subcommand("verify", "Fuzz the library against brute-force references");
    verify->add_option("--suite", s.suite, "all, theorems, projection, uig or recovery");
    verify->add_option("--n-max", s.n_max, "Largest number of observed variables");
    verify->add_option("--trials", s.trials, "Random systems per suite");
    verify->add_option("--out", s.out, "Directory for counterexample bundles");

    auto* bench = app.add_subcommand("bench", "Run a synthetic experiment");
    bench->add_option("--n", s.n, "Number of DAG vertices");
    bench->add_option("--degree", s.degree, "Average degree");
    bench->add_option("--latents", s.latents, "Number of latent variables");
    bench->add_option("--samples", s.samples, "Samples per dataset");
    bench->add_option("--reps", s.reps, "Repetitions");
    bench->add_option("--methods", s.methods, "Methods to compare")->delimiter(',');
    bench->add_option("--workers", s.workers, "Concurrent repetitions");
    bench->add_option("--csv", s.csv, "Per-run CSV file");
    bench->add_option("--json", s.json, "Summary JSON (default: stdout)");
    add_tester_flags(bench);

    try {
        setup_logging();
        if (auto path = find_config(argc, argv); !path.empty()) apply_config_file(path, s);
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(s);
        if (project->parsed()) return cmd_project(s);
        if (discover->parsed()) return cmd_discover(s);
        if (verify->parsed()) return cmd_verify(s);
        return cmd_bench(s);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n' << app.help();
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
