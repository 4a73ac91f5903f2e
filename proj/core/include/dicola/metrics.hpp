#ifndef DICOLA_METRICS_HPP
#define DICOLA_METRICS_HPP

#include <cstddef>

#include "dicola/graph.hpp"

namespace dicola {

struct SkeletonMetrics {
    double precision = 1.0;
    double recall = 1.0;
    double f1 = 1.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

/// Adjacency-level comparison. Vertex sets must match by name (order may
/// differ). Precision and recall are 1.0 when their denominator is zero.
SkeletonMetrics skeleton_metrics(const UndirectedGraph& est, const UndirectedGraph& truth);

}  // namespace dicola

#endif  // DICOLA_METRICS_HPP
