#ifndef XWORD_GENERATORS_HPP
#define XWORD_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "xword/core.hpp"

namespace xword::gen {

// ------------------------------------------------------------ side inputs

// Distinct positive integers x_1..x_3n; the generator shifts them by 6n when
// needed so that every value exceeds 6n.
struct ThreePartitionInput {
    std::vector<long long> values;
};

// Clauses as signed 1-based literals.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

// Variable and clause groups of size <= groups, at most one variable of any
// V_i appearing in any C_j.
struct SparseCnf {
    CnfFormula formula;
    int groups = 0;                               // sqrt(N)
    std::vector<std::vector<int>> var_groups;     // 1-based variables
    std::vector<std::vector<int>> clause_groups;  // 0-based clause indices
};

struct SimpleGraph {
    int n = 0;                                // vertices 1..n
    std::vector<std::pair<int, int>> edges;   // u < v
};

struct UlcEdge {
    int u = 0, v = 0;           // u < v
    std::vector<int> perm;      // label(v) = perm[label(u) - 1], values 1..R
};

struct UlcInstance {
    int n = 0;
    int R = 0;
    std::vector<UlcEdge> edges;
};

CnfFormula parse_dimacs(const std::string& text);
SimpleGraph parse_graph(const std::string& text);  // optional `v n` line, `e u v` lines
std::vector<long long> parse_integer_list(const std::string& text);
// `n <int>`, `R <int>`, then per edge `edge u v` followed by R lines, the
// t-th holding pi(t).
UlcInstance parse_ulc(const std::string& text);

// -------------------------------------------------------------- witnesses

struct IndsetWitness {
    std::vector<int> vertices;
};
struct TpartWitness {
    std::vector<std::array<int, 3>> triples;  // 1-based indices into values
};
struct AssignmentWitness {
    std::vector<bool> values;  // values[i] = variable i+1
};
struct UlcWitness {
    std::vector<int> labels;  // per vertex, 0 = unlabeled
};
using Witness = std::variant<IndsetWitness, TpartWitness, AssignmentWitness, UlcWitness>;

// ------------------------------------------------------ generated output

struct IndsetMeta {
    SimpleGraph g;
    int k = 0;
    bool noreuse_variant = false;
    int suffix_len = 0;
};
struct TpartMeta {
    std::vector<long long> values;  // after the +6n shift
    int n = 0;
    long long target = 0;
    std::vector<std::array<int, 3>> triples;  // 1-based, ascending
    bool not_enough_triples = false;
};
struct X1satMeta {
    CnfFormula f;
};
struct SparseMeta {
    SparseCnf s;
};
struct UlcMeta {
    UlcInstance u;
};

struct GeneratedInstance {
    Instance instance;
    std::string kind;
    std::vector<std::string> comments;  // provenance, embedded in the file
    std::variant<IndsetMeta, TpartMeta, X1satMeta, SparseMeta, UlcMeta> meta;
};

// -------------------------------------------------------------- generators

// k horizontal slots of length 2|E|-1 against |E| vertical slots of length
// 2k-1; fillable iff the graph has an independent set of size k. The
// no-reuse variant appends binary suffix rows to the vertical slots and a
// suffixed copy of each vertical word per edge.
GeneratedInstance gen_from_independent_set(const SimpleGraph& g, int k,
                                           bool noreuse_variant = false);

// Union-of-stars construction from 3-Partition; binary alphabet, no reuse.
// When fewer than n triples sum to the target the result is a canonical
// unfillable one-slot instance with the provenance flag set.
GeneratedInstance gen_from_three_partition(const ThreePartitionInput& input);

// Caps variable occurrences at three by introducing fresh variables linked
// with an implication cycle; preserves exactly-1 satisfiability (and plain
// satisfiability) in both directions.
CnfFormula restrict_sat(const CnfFormula& f);

// Matching-of-T-shapes construction from Restricted Exactly-1 (3,2)-SAT
// over a three-letter alphabet, no reuse.
GeneratedInstance gen_from_x1sat(const CnfFormula& f);

struct SparseReport {
    int attempts = 0;
    int colors = 0;
    int N = 0;
    std::vector<int> removed_clauses;  // indices into the occurrence-reduced formula
    double removed_fraction = 0.0;
    bool sizes_ok = true;
};

// Occurrence reduction, padding to a perfect square, random coloring with
// C*sqrt(N) colors (C defaults to 8/sqrt(epsilon)), then deletion of the
// clause endpoint of every duplicate class-pair edge. Redraws until class
// sizes fit; bounded retries, best attempt wins.
SparseCnf sparse_partition(const CnfFormula& f, double epsilon, std::uint64_t seed,
                           SparseReport* report = nullptr);

bool valid_sparse(const SparseCnf& s, std::string* why = nullptr);

// 2*sqrt(N) slots of pairwise distinct lengths over a binary alphabet; one
// horizontal word per assignment of a variable group, one vertical word per
// satisfying assignment of a clause group.
GeneratedInstance gen_from_sparse_sat(const SparseCnf& s, long long word_budget = 1'000'000);

// The N x N unique-label-cover construction: slot i carries labels at the
// even positions shared with its neighbors. R is capped at 9 so labels fit
// single-symbol letters.
GeneratedInstance gen_from_ulc(const UlcInstance& u);

// Maps a source-problem certificate to an assignment; complete fill for the
// decision reductions. Rejects witnesses that do not certify a yes-instance.
Assignment witness_to_solution(const GeneratedInstance& gen, const Witness& w);

}  // namespace xword::gen

#endif
