#include "dicola/mb.hpp"

#include <algorithm>

#include "dicola/errors.hpp"

namespace dicola {

MbResult TotalConditioning::learn(std::span<const int> k, int x, CiTester& tester) const {
    if (std::find(k.begin(), k.end(), x) == k.end()) throw InputError("mb_learn: target not in variable set");
    if (k.size() < 2) throw InputError("mb_learn: variable set needs at least two members");
    MbResult out{x, {}, 0};
    std::vector<int> rest;
    rest.reserve(k.size());
    for (int y : k) {
        if (y == x) continue;
        rest.clear();
        for (int v : k)
            if (v != x && v != y) rest.push_back(v);
        ++out.tests_used;
        if (!tester.test_independence(x, y, rest)) out.blanket.push_back(y);
    }
    std::sort(out.blanket.begin(), out.blanket.end());
    return out;
}

std::vector<MbResult> MbLearner::learn_all(std::span<const int> k, CiTester& tester) const {
    std::vector<MbResult> out;
    out.reserve(k.size());
    for (int x : k) out.push_back(learn(k, x, tester));
    return out;
}

std::vector<MbResult> TotalConditioning::learn_all(std::span<const int> k, CiTester& tester) const {
    std::vector<MbResult> out;
    for (int x : k) out.push_back(MbResult{x, {}, 0});
    std::vector<int> rest;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = i + 1; j < k.size(); ++j) {
            rest.clear();
            for (std::size_t v = 0; v < k.size(); ++v)
                if (v != i && v != j) rest.push_back(k[v]);
            ++out[i].tests_used;
            if (!tester.test_independence(k[i], k[j], rest)) {
                out[i].blanket.push_back(k[j]);
                out[j].blanket.push_back(k[i]);
            }
        }
    for (auto& r : out) std::sort(r.blanket.begin(), r.blanket.end());
    return out;
}

MbResult mb_learn(std::span<const int> k, int x, CiTester& tester) { return TotalConditioning{}.learn(k, x, tester); }

std::vector<std::string> mb_learn(std::span<const std::string> k, std::string_view x, CiTester& tester) {
    const auto& vars = tester.variables();
    auto ki = vars.indices_of(k);
    auto res = mb_learn(ki, vars.index_of(x), tester);
    return vars.names_of(res.blanket);
}

}  // namespace dicola
