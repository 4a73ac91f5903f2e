#ifndef DICOLA_DICOLA_HPP
#define DICOLA_DICOLA_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dicola/citest.hpp"
#include "dicola/decompose.hpp"
#include "dicola/fci.hpp"
#include "dicola/metrics.hpp"
#include "dicola/sepset.hpp"

namespace dicola {

/// A leaf has no split and no children. A split node has exactly two children,
/// over a u c and b u c.
struct DecompositionTree {
    std::vector<std::string> vars;
    std::optional<Tripartition> split;
    double score = 0.0;
    std::vector<DecompositionTree> children;

    bool is_leaf() const { return children.empty(); }
    std::size_t num_leaves() const;
    std::size_t max_leaf_size() const;
    std::vector<std::vector<std::string>> leaves() const;
};

struct DicolaOptions {
    DecomposeOptions decompose;
    /// Children start from the parent UIG and retest only separator pairs
    /// (see refine_uig). Off means a full relearn at every node. Ignored
    /// when a custom blanket learner is set.
    bool inherit_uig = true;
};

/// Union of the two edge sets, minus pairs inside c that either child lacks.
/// `order` fixes the vertex order of the result; a, b, c order is used when empty.
LocalResult merge_skeletons(const LocalResult& lac, const LocalResult& lbc, const Tripartition& p,
                            std::span<const std::string> order = {});

struct RecursiveResult {
    LocalResult local;
    DecompositionTree tree;
    int asymmetric_pairs = 0;
};

RecursiveResult recursive_learn(std::span<const std::string> k, CiTester& tester, const BaseLearner& base,
                                const DicolaOptions& options = {});

struct RunReport {
    std::string method = "dicola+fci";
    int n = 0;
    int n_latent = 0;
    std::uint64_t ci_tests = 0;
    double wall_seconds = 0.0;
    std::size_t k_max = 0;
    std::size_t num_leaves = 0;
    std::optional<DecompositionTree> tree;
    std::optional<MixedGraph> pag;
    std::optional<SkeletonMetrics> metrics;
    int asymmetric_pairs = 0;
    int orientation_conflicts = 0;
    bool timed_out = false;

    /// Single JSON document. `include_timing` false drops wall_seconds so two
    /// runs can be compared byte for byte.
    std::string to_json(bool include_timing = true, int indent = 2) const;
};

struct DicolaResult {
    MixedGraph pag;  // edgeless when the run timed out
    RunReport report;
};

/// Recursive decomposition, leaf skeletons from the base learner, bottom-up
/// merge, then a single orientation pass on the merged skeleton. A TimeoutError
/// from the tester ends the run with `report.timed_out` set.
DicolaResult run_dicola(std::span<const std::string> o, CiTester& tester, const BaseLearner& base,
                    const DicolaOptions& options = {});

/// Standalone base learner with the same report shape.
DicolaResult run_base(std::span<const std::string> o, CiTester& tester, const BaseLearner& base);

}  // namespace dicola

#endif  // DICOLA_DICOLA_HPP
