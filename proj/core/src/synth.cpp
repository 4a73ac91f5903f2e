#include "dicola/synth.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "dicola/citest.hpp"
#include "dicola/errors.hpp"
#include "dicola/fci.hpp"
#include "dicola/graph_io.hpp"
#include "dicola/oracle.hpp"

namespace dicola {

MixedGraph er_dag(int n, double d, Rng& rng) {
    if (n < 1) throw InputError("er_dag: n must be at least 1");
    if (!(d >= 0.0) || d > n - 1) throw InputError("er_dag: degree must lie in [0, n-1]");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    MixedGraph g(GraphKind::Dag, std::move(names));
    if (n == 1) return g;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution keep(d / (n - 1));
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (keep(rng)) {
                const int u = order[i], v = order[j];
                edges.push_back(u < v ? Edge{u, v, Mark::Tail, Mark::Arrow} : Edge{v, u, Mark::Arrow, Mark::Tail});
            }
    return MixedGraph::from_edges(GraphKind::Dag, g.vertices(), edges);
}

double Sem::weight(int from, int to) const {
    auto it = weights.find({from, to});
    if (it == weights.end()) throw InputError("no edge " + dag.name(from) + " -> " + dag.name(to));
    return it->second;
}

std::vector<int> topological_order(const MixedGraph& dag) {
    const int n = dag.size();
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(dag.parents(v).size());
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<int> out;
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        out.push_back(v);
        for (int c : dag.children(v))
            if (--indeg[c] == 0) ready.push(c);
    }
    if (static_cast<int>(out.size()) != n) throw InputError("graph has a directed cycle");
    return out;
}

Sem assign_sem(const MixedGraph& dag, Rng& rng) {
    if (dag.kind() != GraphKind::Dag) throw InputError("assign_sem needs a DAG");
    Sem sem{dag, {}, topological_order(dag)};
    std::uniform_real_distribution<double> mag(0.5, 1.0);
    std::bernoulli_distribution positive(0.5);
    for (const auto& e : dag.edges()) {
        const bool forward = e.at_b == Mark::Arrow;
        const int from = forward ? e.a : e.b;
        const int to = forward ? e.b : e.a;
        double u = mag(rng);
        while (u <= 0.5) u = mag(rng);
        sem.weights[{from, to}] = positive(rng) ? u : -u;
    }
    return sem;
}

Dataset sample(const Sem& sem, int m, Rng& rng) {
    if (m < 1) throw InputError("sample: m must be at least 1");
    const int n = sem.dag.size();
    Eigen::MatrixXd x(m, n);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int v : sem.order) {
        for (int r = 0; r < m; ++r) x(r, v) = noise(rng);
        for (int p : sem.dag.parents(v)) x.col(v) += sem.weight(p, v) * x.col(p);
    }
    return Dataset(sem.dag.names(), std::move(x));
}

LatentChoice choose_latents(const MixedGraph& dag, int count, Rng& rng) {
    if (count < 0) throw InputError("choose_latents: count must be non-negative");
    std::vector<int> eligible;
    for (int v = 0; v < dag.size(); ++v)
        if (dag.children(v).size() >= 2) eligible.push_back(v);
    LatentChoice out;
    std::vector<int> picked;
    if (static_cast<int>(eligible.size()) <= count) {
        picked = eligible;
        out.shortfall = static_cast<int>(eligible.size()) < count;
    } else {
        std::sample(eligible.begin(), eligible.end(), std::back_inserter(picked), count, rng);
    }
    std::sort(picked.begin(), picked.end());
    out.latents = dag.vertices().names_of(picked);
    return out;
}

Scenario scenario_from_dag(MixedGraph dag, int n_latent, Rng& rng) {
    auto choice = choose_latents(dag, n_latent, rng);
    Sem sem = assign_sem(dag, rng);
    std::vector<std::string> observed;
    for (const auto& name : dag.names())
        if (std::find(choice.latents.begin(), choice.latents.end(), name) == choice.latents.end())
            observed.push_back(name);
    MixedGraph mag = latent_project(dag, observed);
    std::optional<MixedGraph> pag;
    if (static_cast<int>(observed.size()) <= kTruePagLimit) {
        OracleTester oracle(mag);
        pag = fci(observed, oracle);
    }
    return Scenario{std::move(dag), std::move(sem), std::move(choice.latents), std::move(observed),
                    std::move(mag), std::move(pag), choice.shortfall};
}

Scenario make_scenario(int n, double d, int n_latent, Rng& rng) {
    return scenario_from_dag(er_dag(n, d, rng), n_latent, rng);
}

void save_scenario(const std::filesystem::path& dir, const Scenario& s, const Dataset* data) {
    std::filesystem::create_directories(dir);
    save_graph(dir / "truth.graph", s.dag);
    save_graph(dir / "mag.graph", s.true_mag);
    std::ofstream lat(dir / "latents.txt");
    if (!lat) throw InputError("cannot write " + (dir / "latents.txt").string());
    for (const auto& l : s.latents) lat << l << '\n';
    if (data) data->select(s.observed).save_csv(dir / "data.csv");
}

ScenarioBundle load_scenario(const std::filesystem::path& dir) {
    ScenarioBundle b{load_graph(dir / "truth.graph", GraphKind::Dag), {}, load_graph(dir / "mag.graph", GraphKind::Mag),
                     std::nullopt};
    std::ifstream lat(dir / "latents.txt");
    if (!lat) throw InputError("missing " + (dir / "latents.txt").string());
    for (std::string line; std::getline(lat, line);)
        if (!line.empty()) b.latents.push_back(line);
    if (std::filesystem::exists(dir / "data.csv")) b.data = Dataset::load_csv(dir / "data.csv");
    return b;
}

}  // namespace dicola
