#ifndef DICOLA_SYNTH_HPP
#define DICOLA_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dicola/dataset.hpp"
#include "dicola/graph.hpp"

namespace dicola {

using Rng = std::mt19937_64;

/// Erdos-Renyi DAG over X1..Xn: uniformly random vertex order, each forward
/// pair kept with probability d / (n - 1).
MixedGraph er_dag(int n, double d, Rng& rng);

/// Linear-Gaussian SEM with unit-variance noise.
struct Sem {
    MixedGraph dag;
    std::map<std::pair<int, int>, double> weights;  // (parent, child)
    std::vector<int> order;                         // topological

    double weight(int from, int to) const;
};

std::vector<int> topological_order(const MixedGraph& dag);

/// Weights s * u with s uniform on {-1, +1} and u uniform on (0.5, 1).
Sem assign_sem(const MixedGraph& dag, Rng& rng);

/// Ancestral sampling; one column per DAG vertex, latents included.
Dataset sample(const Sem& sem, int m, Rng& rng);

struct LatentChoice {
    std::vector<std::string> latents;  // in DAG order
    bool shortfall = false;
};

/// Uniform draw without replacement among vertices with at least two children.
LatentChoice choose_latents(const MixedGraph& dag, int count, Rng& rng);

struct Scenario {
    MixedGraph dag;
    Sem sem;
    std::vector<std::string> latents;
    std::vector<std::string> observed;
    MixedGraph true_mag;
    std::optional<MixedGraph> true_pag;
    bool latent_shortfall = false;
};

inline constexpr int kTruePagLimit = 12;

/// er_dag, choose_latents, assign_sem and latent_project in that order. The
/// true PAG comes from FCI with an oracle on the true MAG when n <= 12.
Scenario make_scenario(int n, double d, int n_latent, Rng& rng);

/// Assembles a scenario around a given DAG (e.g. a loaded benchmark network).
Scenario scenario_from_dag(MixedGraph dag, int n_latent, Rng& rng);

/// Directory with truth.graph, latents.txt, mag.graph and, when given, data.csv
/// restricted to the observed columns.
void save_scenario(const std::filesystem::path& dir, const Scenario& s, const Dataset* data = nullptr);

struct ScenarioBundle {
    MixedGraph dag;
    std::vector<std::string> latents;
    MixedGraph mag;
    std::optional<Dataset> data;
};

ScenarioBundle load_scenario(const std::filesystem::path& dir);

}  // namespace dicola

#endif  // DICOLA_SYNTH_HPP
