#ifndef XWORD_TREEWIDTH_HPP
#define XWORD_TREEWIDTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "xword/core.hpp"
#include "xword/exact.hpp"

namespace xword::tw {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;      // sorted vertex lists
    std::vector<std::pair<int, int>> edges;  // tree edges between bag indices
    int width() const;
};

enum class Method { MinFill, MinDegree, ExactSmall };

// MinFill / MinDegree eliminate greedily; ExactSmall (<= 12 vertices) finds
// an optimal elimination order by dynamic programming over subsets.
TreeDecomposition tree_decomposition(const GridGraph& g, Method method = Method::MinFill);

// The three defining properties: vertices covered, edges covered, and the
// bags containing each vertex form a connected subtree.
bool valid_decomposition(const GridGraph& g, const TreeDecomposition& td,
                         std::string* why = nullptr);

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    int vertex = -1;  // introduced / forgotten vertex
    std::vector<int> bag;
    int child0 = -1;
    int child1 = -1;
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;  // children precede parents
    int root = -1;
    int width() const;
};

// Rooted nice form of equal width: empty leaf and root bags, single-vertex
// introduce/forget steps, joins with identical child bags.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root = 0);

bool valid_nice(const GridGraph& g, const NiceTreeDecomposition& ntd, std::string* why = nullptr);

// One DP table row: words on the bag (kEmpty allowed), the weight of that
// partial assignment restricted to the bag, and the best weight over the
// subtree consistent with it.
struct DpEntry {
    std::vector<int> sigma;
    long long w = 0;
    long long wm = 0;
};

struct Instrumentation {
    // (bag size, entries kept) per nice node, in evaluation order
    std::vector<std::pair<int, std::size_t>> table_sizes;
    // introduce-extension attempts; grows as (m+1)^2 per edge on width-1 paths
    long long extension_attempts = 0;
    // full tables, only captured when capture_tables is set
    bool capture_tables = false;
    std::vector<std::vector<DpEntry>> tables;
    std::vector<std::vector<int>> node_bags;
};

// Bottom-up (m+1)^tw dynamic program, reuse mode only.
exact::SolveResult solve_treewidth(const Instance& inst, const exact::SolveOptions& opts = {},
                                   Instrumentation* instr = nullptr);

// Same DP with the empty word disallowed: a surviving root entry is a
// complete fill.
std::optional<Assignment> decide_treewidth(const Instance& inst,
                                           const exact::SolveOptions& opts = {},
                                           exact::SolveStats* stats = nullptr);

}  // namespace xword::tw

#endif
