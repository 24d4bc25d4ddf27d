#ifndef XWORD_EXACT_HPP
#define XWORD_EXACT_HPP

#include <optional>
#include <vector>

#include "xword/core.hpp"

namespace xword::exact {

struct SolveStats {
    long long nodes = 0;       // backtracking decision points
    long long candidates = 0;  // enumerated candidate solutions / table extensions
};

struct SolveResult {
    long long weight = 0;
    Assignment best;
    SolveStats stats;
    // Best explored assignment that fills every slot, when one was seen.
    std::optional<std::pair<long long, Assignment>> best_complete;
};

struct SolveOptions {
    long long budget = 10'000'000;
    int jobs = 1;
};

enum class Algo { Auto, Oracle, Enum, VertexCover, Treewidth, Prefilled };

const char* algo_name(Algo a);

// Exhaustive backtracking over slot -> word-or-empty with consistency
// pruning. Reference solver; intended for small instances.
SolveResult oracle(const Instance& inst, const SolveOptions& opts = {});

// Solvers for instances whose shared cells are all pre-filled.
SolveResult solve_prefilled_reuse(const Instance& inst, const SolveOptions& opts = {});
SolveResult solve_prefilled_noreuse(const Instance& inst, const SolveOptions& opts = {});

// Letter enumeration over shared cells (reuse), or filled-slot subsets plus
// letters with a saturating matching (no reuse).
SolveResult solve_enum_reuse(const Instance& inst, const SolveOptions& opts = {});
SolveResult solve_enum_noreuse(const Instance& inst, const SolveOptions& opts = {});

// Enumerates word tuples on a vertex cover of the grid graph and completes
// the independent remainder greedily (reuse) or by matching (no reuse).
SolveResult solve_vertex_cover(const Instance& inst, const std::vector<int>& cover,
                               const SolveOptions& opts = {});

// Dispatches on algo (weights replaced by 1) and reports whether a complete
// fill exists; returns the fill itself when found.
struct DecideResult {
    std::optional<Assignment> fill;
    SolveStats stats;
    Algo used = Algo::Oracle;
};
DecideResult decide_stats(const Instance& inst, Algo algo = Algo::Oracle,
                          const SolveOptions& opts = {});
std::optional<Assignment> decide_full(const Instance& inst, Algo algo = Algo::Oracle,
                                      const SolveOptions& opts = {});
bool decide(const Instance& inst, Algo algo = Algo::Oracle, const SolveOptions& opts = {});

bool all_shared_prefilled(const Instance& inst);

// The `auto` policy of the CLI: prefilled if applicable, else treewidth for
// reuse instances of small width, else vertex cover when one side is small,
// else enumeration, else the oracle.
Algo choose_algo(const Instance& inst, const SolveOptions& opts = {});

// Instance with every letter weight set to 1 (the decision-to-optimization
// reduction).
Instance with_unit_weights(const Instance& inst);

}  // namespace xword::exact

#endif
