#ifndef DICOLA_DECOMPOSE_HPP
#define DICOLA_DECOMPOSE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dicola/citest.hpp"
#include "dicola/graph.hpp"
#include "dicola/mb.hpp"

namespace dicola {

/// (a, b, c) with a and b separated by c. Each set keeps the order of the
/// variable set it was cut from.
struct Tripartition {
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::vector<std::string> c;

    std::vector<std::string> left() const;   // a u c
    std::vector<std::string> right() const;  // b u c
    bool operator==(const Tripartition&) const = default;
};

/// |c| / min(|a u c|, |b u c|)
double balancing_score(const Tripartition& p);

struct UigResult {
    UndirectedGraph uig;
    std::uint64_t tests_used = 0;
    /// Pairs where only one of the two blankets contained the other variable.
    int asymmetric_pairs = 0;
};

/// Undirected independence graph over k: x - y iff y is in the blanket of x or
/// x in the blanket of y.
UigResult construct_uig(std::span<const std::string> k, CiTester& tester, const MbLearner& mb = TotalConditioning{});

/// UIG over the vertices of `inherited` when that graph is the parent UIG
/// restricted to one side a u c of a valid split. Blankets of a-vertices stay
/// inside a u c, so only pairs within `retest` (the separator c) are tested
/// again, one total-conditioning test per pair.
UigResult refine_uig(UndirectedGraph inherited, std::span<const std::string> retest, CiTester& tester);

/// Clique tree of a min-fill triangulation.
struct JunctionTree {
    std::vector<int> elimination_order;
    std::vector<std::vector<int>> cliques;     // maximal cliques, each sorted
    std::vector<std::pair<int, int>> edges;    // indices into `cliques`
    UndirectedGraph triangulated;
};

JunctionTree junction_tree(const UndirectedGraph& u);

enum class CandidateMode {
    JunctionTree,  // separators from clique-tree edge intersections
    Exhaustive     // every minimal separator; small graphs only
};

/// Candidate tripartitions with non-empty a and b. Components left after
/// removing c are grouped greedily: largest first, each to the smaller side.
std::vector<Tripartition> vertex_cut_candidates(const UndirectedGraph& u,
                                                CandidateMode mode = CandidateMode::JunctionTree);

struct DecompositionResult {
    std::optional<Tripartition> partition;
    bool flag = false;
    UndirectedGraph uig;
    double score = 0.0;
    std::uint64_t tests_used = 0;
    int asymmetric_pairs = 0;
};

struct DecomposeOptions {
    CandidateMode mode = CandidateMode::JunctionTree;
    const MbLearner* mb = nullptr;  // TotalConditioning when null
};

/// Picks the lowest-score candidate that makes progress; ties go to the
/// lexicographically smallest sorted c, then the smallest sorted a.
std::optional<Tripartition> choose_candidate(std::span<const Tripartition> candidates, std::size_t parent_size);

DecompositionResult find_decomposition(std::span<const std::string> k, CiTester& tester,
                                       const DecomposeOptions& options = {});

/// The candidate search of find_decomposition on an already known UIG. No tests.
DecompositionResult decompose_uig(UndirectedGraph uig, const DecomposeOptions& options = {});

}  // namespace dicola

#endif  // DICOLA_DECOMPOSE_HPP
