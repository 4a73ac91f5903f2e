#include "dicola/metrics.hpp"

#include <algorithm>

#include "dicola/errors.hpp"

namespace dicola {

SkeletonMetrics skeleton_metrics(const UndirectedGraph& est, const UndirectedGraph& truth) {
    auto a = est.names();
    auto b = truth.names();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InputError("skeleton_metrics: vertex sets differ");

    SkeletonMetrics m;
    for (auto [u, v] : est.edges()) {
        if (truth.adjacent(est.name(u), est.name(v)))
            ++m.tp;
        else
            ++m.fp;
    }
    for (auto [u, v] : truth.edges())
        if (!est.adjacent(truth.name(u), truth.name(v))) ++m.fn;

    m.precision = m.tp + m.fp == 0 ? 1.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    m.recall = m.tp + m.fn == 0 ? 1.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

}  // namespace dicola
