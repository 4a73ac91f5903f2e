#ifndef DICOLA_MB_HPP
#define DICOLA_MB_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dicola/citest.hpp"

namespace dicola {

struct MbResult {
    int target;
    std::vector<int> blanket;  // sorted tester indices
    std::uint64_t tests_used = 0;
};

/// Markov-blanket learner relative to a variable subset.
class MbLearner {
public:
    virtual ~MbLearner() = default;
    /// `k` holds tester indices and must contain `x`.
    virtual MbResult learn(std::span<const int> k, int x, CiTester& tester) const = 0;
    /// Blankets of every member of k, in k's order. Defaults to one `learn` per target.
    virtual std::vector<MbResult> learn_all(std::span<const int> k, CiTester& tester) const;
};

/// Total Conditioning: y is in the blanket of x iff x and y are dependent given
/// every other variable of k. Issues exactly |k| - 1 tests.
class TotalConditioning final : public MbLearner {
public:
    MbResult learn(std::span<const int> k, int x, CiTester& tester) const override;
    /// The test for (x, y) given the rest of k decides both blankets, so each
    /// unordered pair is tested once. `tests_used` is charged to the lower-indexed target.
    std::vector<MbResult> learn_all(std::span<const int> k, CiTester& tester) const override;
};

MbResult mb_learn(std::span<const int> k, int x, CiTester& tester);
std::vector<std::string> mb_learn(std::span<const std::string> k, std::string_view x, CiTester& tester);

}  // namespace dicola

#endif  // DICOLA_MB_HPP
