#include "xword/matching.hpp"

#include <algorithm>
#include <limits>

namespace xword::matching {

void WeightedBipartiteGraph::add_edge(int l, int r, long long w) {
    if (l < 0 || l >= n_left || r < 0 || r >= n_right)
        fail(Errc::ValidationError, "matching edge endpoint out of range");
    if (w < 0) fail(Errc::ValidationError, "matching edge weights must be non-negative");
    edges.push_back({l, r, w});
}

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// Square assignment problem, maximizing. value[i][j] == 0 marks a non-edge.
// Returns for each row the matched column. Shortest-augmenting-path scheme
// with potentials, O(n^3).
std::vector<int> solve_assignment(const std::vector<std::vector<long long>>& value) {
    int n = (int)value.size();
    std::vector<long long> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; i++) {
        p[0] = i;
        int j0 = 0;
        std::vector<long long> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            long long delta = kInf;
            for (int j = 1; j <= n; j++) {
                if (used[j]) continue;
                // minimize cost = -value, shifted into the potential scheme
                long long cur = -value[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; j++) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; j++)
        if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

Matching run(const WeightedBipartiteGraph& g, const std::vector<int>& required_left,
             bool* feasible) {
    int n = std::max(g.n_left, g.n_right);
    Matching m;
    if (feasible) *feasible = true;
    if (n == 0) return m;

    // Lexicographic (saturation, weight, cardinality) objective folded into a
    // single integer per edge: weight * K + 1, plus BIG on required rows.
    long long total_w = 0;
    for (const auto& e : g.edges) total_w = checked_add(total_w, e.weight);
    long long k_card = n + 1;
    long long base_max = checked_add(checked_mul(k_card, total_w), n + 1);
    long long big = checked_add(base_max, 1);
    if (checked_mul(big, (long long)n + 1) > kInf / 2)
        fail(Errc::Overflow, "matching weights too large");

    std::vector<char> required(g.n_left, 0);
    for (int l : required_left) {
        if (l < 0 || l >= g.n_left)
            fail(Errc::ValidationError, "required vertex out of range");
        required[l] = 1;
    }

    std::vector<std::vector<long long>> value(n, std::vector<long long>(n, 0));
    for (const auto& e : g.edges) {
        long long v = checked_add(checked_mul(e.weight, k_card), 1);
        if (required[e.left]) v = checked_add(v, big);
        value[e.left][e.right] = std::max(value[e.left][e.right], v);
    }

    std::vector<int> row_to_col = solve_assignment(value);
    std::vector<std::vector<long long>> orig(g.n_left, std::vector<long long>(g.n_right, -1));
    for (const auto& e : g.edges)
        orig[e.left][e.right] = std::max(orig[e.left][e.right], e.weight);

    for (int l = 0; l < g.n_left; l++) {
        int r = row_to_col[l];
        bool matched = r >= 0 && r < g.n_right && orig[l][r] >= 0;
        if (matched) {
            m.edges.emplace_back(l, r);
            m.weight = checked_add(m.weight, orig[l][r]);
        } else if (required[l] && feasible) {
            *feasible = false;
        }
    }
    return m;
}

}  // namespace

Matching max_weight_matching(const WeightedBipartiteGraph& g) { return run(g, {}, nullptr); }

std::optional<Matching> max_weight_saturating_matching(const WeightedBipartiteGraph& g,
                                                       const std::vector<int>& required_left) {
    bool feasible = true;
    Matching m = run(g, required_left, &feasible);
    if (!feasible) return std::nullopt;
    return m;
}

}  // namespace xword::matching
