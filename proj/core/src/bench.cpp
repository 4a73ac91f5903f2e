#include "dicola/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "dicola/citest.hpp"
#include "dicola/dicola.hpp"
#include "dicola/errors.hpp"
#include "dicola/fci.hpp"
#include "dicola/synth.hpp"

namespace dicola {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd out;
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return out;
}

std::vector<RunRow> run_repetition(const ExperimentConfig& cfg, int rep) {
    const std::uint64_t seed = repetition_seed(cfg.seed, rep);
    Rng rng(seed);
    Scenario sc = make_scenario(cfg.n, cfg.avg_degree, cfg.n_latent, rng);
    std::shared_ptr<const Dataset> data;
    if (cfg.tester == TesterKind::FisherZ)
        data = std::make_shared<const Dataset>(sample(sc.sem, cfg.n_samples, rng).select(sc.observed));
    const UndirectedGraph truth = skeleton(sc.true_mag);

    FciOptions fo;
    fo.max_cond = cfg.max_cond;
    fo.policy = cfg.tester == TesterKind::Oracle ? OrientationPolicy::Strict : OrientationPolicy::Lenient;
    const FciLearner base(fo);

    std::vector<RunRow> rows;
    for (const auto& method : cfg.methods) {
        RunRow row;
        row.rep = rep;
        row.seed = seed;
        row.method = method;
        row.n = cfg.n;
        row.n_latent = static_cast<int>(sc.latents.size());
        row.n_samples = cfg.tester == TesterKind::FisherZ ? cfg.n_samples : 0;

        std::unique_ptr<CiTester> tester;
        if (data)
            tester = std::make_unique<FisherZTester>(data, cfg.alpha);
        else
            tester = std::make_unique<OracleTester>(sc.true_mag);
        const auto start = std::chrono::steady_clock::now();
        tester->set_deadline(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                         std::chrono::duration<double>(cfg.timeout_seconds())));
        try {
            DicolaResult res = method == "fci" ? run_base(sc.observed, *tester, base)
                                               : run_dicola(sc.observed, *tester, base);
            row.timeout = res.report.timed_out;
            if (!row.timeout) row.metrics = skeleton_metrics(skeleton(res.pag), truth);
        } catch (const std::exception& e) {
            row.error = e.what();
            spdlog::warn("rep {} method {} failed: {}", rep, method, e.what());
        }
        row.ci_tests = tester->count();
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        spdlog::debug("rep {} {}: {} tests, {:.3f}s, f1 {:.3f}{}", rep, method, row.ci_tests, row.wall_seconds,
                      row.metrics.f1, row.timeout ? " (timeout)" : "");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (reps < 1) throw InputError("reps must be at least 1");
    if (n < 1) throw InputError("n must be at least 1");
    if (avg_degree < 0 || avg_degree > n - 1) throw InputError("avg_degree must lie in [0, n-1]");
    if (n_latent < 0) throw InputError("n_latent must be non-negative");
    if (n_samples < 1) throw InputError("n_samples must be at least 1");
    if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1)");
    if (max_cond && *max_cond < 0) throw InputError("max_cond must be non-negative");
    if (!(timeout_factor > 0)) throw InputError("timeout_factor must be positive");
    if (workers < 1) throw InputError("workers must be at least 1");
    if (methods.empty()) throw InputError("no methods given");
    for (const auto& m : methods)
        if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end()) throw InputError("unknown method: " + m);
}

std::uint64_t repetition_seed(std::uint64_t master, int rep) {
    return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(rep) + 1));
}

std::vector<MethodSummary> summarize(const std::vector<RunRow>& rows, const std::vector<std::string>& methods) {
    std::vector<MethodSummary> out;
    for (const auto& method : methods) {
        MethodSummary s;
        s.method = method;
        std::vector<double> tests, wall, p, r, f;
        for (const auto& row : rows) {
            if (row.method != method) continue;
            ++s.runs;
            if (row.timeout) {
                ++s.timeouts;
                continue;
            }
            if (!row.error.empty()) {
                ++s.errors;
                continue;
            }
            ++s.completed;
            tests.push_back(static_cast<double>(row.ci_tests));
            wall.push_back(row.wall_seconds);
            p.push_back(row.metrics.precision);
            r.push_back(row.metrics.recall);
            f.push_back(row.metrics.f1);
        }
        s.timeout_rate = s.runs ? static_cast<double>(s.timeouts) / s.runs : 0.0;
        auto set = [](const std::vector<double>& xs, double& mean, double& sd) {
            auto m = mean_sd(xs);
            mean = m.mean;
            sd = m.sd;
        };
        set(tests, s.mean_ci_tests, s.sd_ci_tests);
        set(wall, s.mean_wall_seconds, s.sd_wall_seconds);
        set(p, s.mean_precision, s.sd_precision);
        set(r, s.mean_recall, s.sd_recall);
        set(f, s.mean_f1, s.sd_f1);
        out.push_back(s);
    }
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report{cfg, {}, {}};
    std::vector<std::vector<RunRow>> per_rep(cfg.reps);
    std::atomic<int> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (int rep = next++; rep < cfg.reps; rep = next++) {
            try {
                per_rep[rep] = run_repetition(cfg, rep);
                spdlog::info("repetition {}/{} done", rep + 1, cfg.reps);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    const int threads = std::min(cfg.workers, cfg.reps);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (auto& rows : per_rep)
        for (auto& row : rows) report.rows.push_back(std::move(row));
    report.summary = summarize(report.rows, cfg.methods);
    return report;
}

std::string rows_csv(const std::vector<RunRow>& rows) {
    std::ostringstream out;
    out.precision(10);
    out << "seed,method,n,n_latent,n_samples,ci_tests,wall_seconds,precision,recall,f1,timeout,error\n";
    for (const auto& r : rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        out << r.seed << ',' << r.method << ',' << r.n << ',' << r.n_latent << ',' << r.n_samples << ','
            << r.ci_tests << ',' << r.wall_seconds << ',' << r.metrics.precision << ',' << r.metrics.recall << ','
            << r.metrics.f1 << ',' << (r.timeout ? 1 : 0) << ',' << err << '\n';
    }
    return out.str();
}

std::string summary_json(const ExperimentReport& report, int indent) {
    const auto& c = report.config;
    nlohmann::json j;
    j["config"] = {{"seed", c.seed},
                   {"n", c.n},
                   {"avg_degree", c.avg_degree},
                   {"n_latent", c.n_latent},
                   {"n_samples", c.n_samples},
                   {"alpha", c.alpha},
                   {"reps", c.reps},
                   {"methods", c.methods},
                   {"max_cond", c.max_cond ? nlohmann::json(*c.max_cond) : nlohmann::json()},
                   {"timeout_factor", c.timeout_factor},
                   {"tester", c.tester == TesterKind::Oracle ? "oracle" : "fisherz"}};
    j["methods"] = nlohmann::json::array();
    for (const auto& s : report.summary) {
        j["methods"].push_back({{"method", s.method},
                                {"runs", s.runs},
                                {"completed", s.completed},
                                {"timeouts", s.timeouts},
                                {"errors", s.errors},
                                {"timeout_rate", s.timeout_rate},
                                {"ci_tests", {{"mean", s.mean_ci_tests}, {"sd", s.sd_ci_tests}}},
                                {"wall_seconds", {{"mean", s.mean_wall_seconds}, {"sd", s.sd_wall_seconds}}},
                                {"precision", {{"mean", s.mean_precision}, {"sd", s.sd_precision}}},
                                {"recall", {{"mean", s.mean_recall}, {"sd", s.sd_recall}}},
                                {"f1", {{"mean", s.mean_f1}, {"sd", s.sd_f1}}}});
    }
    return j.dump(indent);
}

}  // namespace dicola
