#ifndef XWORD_MATCHING_HPP
#define XWORD_MATCHING_HPP

#include <optional>
#include <vector>

#include "xword/error.hpp"

namespace xword::matching {

// Simple bipartite graph with non-negative integer edge weights.
struct WeightedBipartiteGraph {
    int n_left = 0;
    int n_right = 0;
    struct Edge {
        int left;
        int right;
        long long weight;
    };
    std::vector<Edge> edges;

    void add_edge(int l, int r, long long w);
};

struct Matching {
    std::vector<std::pair<int, int>> edges;  // (left, right), sorted by left
    long long weight = 0;
};

// Maximum total weight; among maximum-weight matchings, one of maximum
// cardinality (a zero-weight edge beats leaving both endpoints exposed).
Matching max_weight_matching(const WeightedBipartiteGraph& g);

// Maximum-weight matching among those saturating every vertex of
// required_left; nullopt when no matching saturates them.
std::optional<Matching> max_weight_saturating_matching(const WeightedBipartiteGraph& g,
                                                       const std::vector<int>& required_left);

}  // namespace xword::matching

#endif
