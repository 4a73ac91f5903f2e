#ifndef DICOLA_FCI_HPP
#define DICOLA_FCI_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dicola/citest.hpp"
#include "dicola/graph.hpp"
#include "dicola/sepset.hpp"

namespace dicola {

/// Strict throws InconsistencyError when a rule would overwrite a non-circle
/// mark. Lenient skips the assignment and counts it, which is what finite
/// data usually needs.
enum class OrientationPolicy { Strict, Lenient };

struct FciOptions {
    std::optional<int> max_cond;  // largest conditioning set; unbounded when empty
    bool possible_dsep = true;
    OrientationPolicy policy = OrientationPolicy::Strict;
};

/// Adjacency search (PC-stable rounds, then Possible-D-SEP removals).
LocalResult learn_skeleton(std::span<const std::string> k, CiTester& tester, const FciOptions& options = {});

/// Possible-D-SEP(x) in a partially oriented graph: vertices reachable from x
/// along paths whose every interior triple is a collider or a triangle.
std::vector<int> possible_d_sep(const MixedGraph& pag, int x);

/// Vertices with a possibly directed path into one of `targets` (targets
/// included), as a membership mask.
std::vector<char> possible_ancestors(const MixedGraph& pag, std::span<const int> targets);

/// All marks Circle, then arrowheads for every unshielded collider.
MixedGraph orient_v_structures(const UndirectedGraph& s, const SepsetMap& sep);

struct OrientationStats {
    int conflicts = 0;
    int changes = 0;
    /// Uncovered-path searches cut short by the expansion budget.
    int truncated_searches = 0;
};

/// Rules R1-R4 and R8-R10 to a fixed point. Only Circle marks are replaced.
MixedGraph apply_orientation_rules(MixedGraph p, const SepsetMap& sep,
                                   OrientationPolicy policy = OrientationPolicy::Strict,
                                   OrientationStats* stats = nullptr);

MixedGraph fci(std::span<const std::string> k, CiTester& tester, const FciOptions& options = {});

/// A structure learner whose skeleton phase can run on a subset of variables,
/// with orientation kept separate so a caller can orient a merged skeleton.
class BaseLearner {
public:
    virtual ~BaseLearner() = default;
    virtual std::string name() const = 0;
    virtual LocalResult learn_skeleton(std::span<const std::string> k, CiTester& tester) const = 0;
    virtual MixedGraph orient(const LocalResult& local, OrientationStats* stats = nullptr) const = 0;
};

class FciLearner final : public BaseLearner {
public:
    FciLearner() = default;
    explicit FciLearner(FciOptions options) : options_(options) {}

    std::string name() const override { return "fci"; }
    LocalResult learn_skeleton(std::span<const std::string> k, CiTester& tester) const override;
    MixedGraph orient(const LocalResult& local, OrientationStats* stats = nullptr) const override;
    const FciOptions& options() const { return options_; }

private:
    FciOptions options_;
};

}  // namespace dicola

#endif  // DICOLA_FCI_HPP
