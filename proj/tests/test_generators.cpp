#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "xword/exact.hpp"
#include "xword/generators.hpp"
#include "xword/io.hpp"

using namespace xword;
using namespace testutil;

namespace {

bool gen_decide(const gen::GeneratedInstance& g) {
    return exact::decide(g.instance, exact::Algo::Oracle, {50'000'000, 1});
}

std::pair<int, int> grid_dims(const Instance& inst) {
    int r = 0, c = 0;
    for (Cell cell : inst.grid.cells()) {
        r = std::max(r, cell.row);
        c = std::max(c, cell.col);
    }
    return {r, c};
}

std::multiset<int> slot_lengths(const Instance& inst) {
    std::multiset<int> ls;
    for (const Slot& s : inst.grid.slots()) ls.insert(s.length);
    return ls;
}

}  // namespace

// ------------------------------------------------------------ restrict_sat

TEST_CASE("restrict_sat rewrites a four-occurrence variable") {
    gen::CnfFormula f{2, {{1, 2}, {1, -2}, {1, 2}, {-1}}};  // x1 four times, x2 three
    gen::CnfFormula r = gen::restrict_sat(f);
    CHECK(r.num_vars == 2 + 4);
    CHECK(r.clauses.size() == 4 + 4);  // four binary cycle clauses
    std::vector<int> occ(r.num_vars + 1, 0);
    for (auto& cl : r.clauses)
        for (int lit : cl) occ[std::abs(lit)]++;
    for (int v = 1; v <= r.num_vars; v++) CHECK(occ[v] <= 3);
    CHECK(occ[1] == 0);  // the original variable is gone
}

TEST_CASE("restrict_sat is the identity on three-occurrence formulas") {
    gen::CnfFormula f{2, {{1, 2}, {-1, -2}, {1, -2}}};
    gen::CnfFormula r = gen::restrict_sat(f);
    CHECK(r.num_vars == f.num_vars);
    CHECK(r.clauses == f.clauses);
}

TEST_CASE("restrict_sat preserves exactly-1 satisfiability") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 60; it++) {
        int nv = 2 + (int)(rng() % 3);
        int nc = 1 + (int)(rng() % 5);
        gen::CnfFormula f{nv, {}};
        for (int c = 0; c < nc; c++) {
            int len = std::min(nv, 2 + (int)(rng() % 2));
            std::vector<int> cl;
            std::set<int> used;
            while ((int)cl.size() < len) {
                int v = 1 + (int)(rng() % nv);
                if (!used.insert(v).second) continue;
                cl.push_back(rng() % 2 ? v : -v);
            }
            f.clauses.push_back(cl);
        }
        gen::CnfFormula r = gen::restrict_sat(f);
        CHECK(brute_exactly_one(f) == brute_exactly_one(r));
        CHECK(brute_sat(f) == brute_sat(r));
    }
}

// ------------------------------------------------------------------ x1sat

TEST_CASE("x1sat on (x1 or x2) produces the expected lengths and fills") {
    gen::CnfFormula f{2, {{1, 2}}};
    gen::GeneratedInstance g = gen::gen_from_x1sat(f);

    std::multiset<int> expected{7, 7, 3, 10, 10, 4, 2, 2};
    CHECK(slot_lengths(g.instance) == expected);
    std::multiset<int> word_lengths;
    for (const std::string& w : g.instance.dict.words()) word_lengths.insert((int)w.size());
    CHECK(word_lengths == expected);

    CHECK_FALSE(g.instance.reuse);
    GraphClassification c = classify_graph(g.instance.grid, grid_graph(g.instance.grid));
    CHECK(c.is_matching);
    CHECK(gen_decide(g));

    // witness x1 = T, x2 = F has exactly one true literal
    Assignment a = gen::witness_to_solution(g, gen::AssignmentWitness{{true, false}});
    CHECK(is_complete_fill(g.instance, a));

    try {
        gen::witness_to_solution(g, gen::AssignmentWitness{{true, true}});
        FAIL("expected WitnessRejected");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::WitnessRejected);
    }
}

TEST_CASE("x1sat rejects malformed inputs") {
    try {
        gen::gen_from_x1sat(gen::CnfFormula{1, {{1, -1}}});
        FAIL("expected NotRestrictedForm");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::NotRestrictedForm);
    }
    try {
        gen::gen_from_x1sat(gen::CnfFormula{1, {{1}}});
        FAIL("expected NotRestrictedForm");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::NotRestrictedForm);
    }
    try {
        gen::gen_from_x1sat(gen::CnfFormula{2, {{1, 2}, {1, -2}, {1, 2}, {-1, 2}}});
        FAIL("expected NotRestrictedForm");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::NotRestrictedForm);
    }
}

TEST_CASE("x1sat generation is deterministic") {
    gen::CnfFormula f{3, {{1, 2, 3}, {-1, -2}}};
    std::string once = write_instance(gen::gen_from_x1sat(f).instance,
                                      gen::gen_from_x1sat(f).comments);
    std::string twice = write_instance(gen::gen_from_x1sat(f).instance,
                                       gen::gen_from_x1sat(f).comments);
    CHECK(once == twice);
}

// ------------------------------------------------------------ 3-partition

TEST_CASE("3-partition n=1 matches the worked construction") {
    gen::GeneratedInstance g = gen::gen_from_three_partition({{1, 2, 3}});  // shifts to 7,8,9
    auto* meta = std::get_if<gen::TpartMeta>(&g.meta);
    REQUIRE(meta);
    CHECK(meta->values == std::vector<long long>{7, 8, 9});
    CHECK(meta->target == 24);
    CHECK_FALSE(meta->not_enough_triples);

    CHECK(g.instance.dict.index_of("!*!*!") >= 0);
    const Slot& interesting = g.instance.grid.slot(g.instance.grid.index_of("g0"));
    CHECK(interesting.length == 5);
    std::map<int, int> vertical_len_by_col;
    for (const Slot& s : g.instance.grid.slots())
        if (s.dir == Orientation::V) vertical_len_by_col[s.start.col] = s.length;
    CHECK(vertical_len_by_col == std::map<int, int>{{1, 7}, {3, 8}, {5, 9}});

    GraphClassification c = classify_graph(g.instance.grid, grid_graph(g.instance.grid));
    CHECK(c.is_union_of_stars);
    CHECK(gen_decide(g));

    Assignment a = gen::witness_to_solution(g, gen::TpartWitness{{{{1, 2, 3}}}});
    CHECK(is_complete_fill(g.instance, a));
}

TEST_CASE("3-partition rejects bad value lists") {
    try {
        gen::gen_from_three_partition({{7, 7, 9}});
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::ValidationError);
    }
    try {
        gen::gen_from_three_partition({{20, 21, 23, 24, 25, 26}});  // sum 139, not 2B
        FAIL("expected BadSum");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::BadSum);
    }
}

TEST_CASE("3-partition with too few triples emits the canonical no-instance") {
    // shifted values {13,14,16,17,18,42} admit no target triple at all
    gen::GeneratedInstance g = gen::gen_from_three_partition({{1, 2, 4, 5, 6, 30}});
    auto* meta = std::get_if<gen::TpartMeta>(&g.meta);
    REQUIRE(meta);
    CHECK(meta->not_enough_triples);
    CHECK(g.instance.grid.size() == 1);
    CHECK_FALSE(gen_decide(g));
    CHECK_FALSE(brute_three_partition({1, 2, 4, 5, 6, 30}));
}

// --------------------------------------------------------- independent set

TEST_CASE("independent set on P4 with k=2") {
    gen::SimpleGraph p4{4, {{1, 2}, {2, 3}, {3, 4}}};
    gen::GeneratedInstance g = gen::gen_from_independent_set(p4, 2, false);
    CHECK(g.instance.reuse);
    CHECK(grid_dims(g.instance) == std::pair<int, int>{3, 5});  // 2k-1 rows, 2|E|-1 columns
    CHECK(gen_decide(g));
    CHECK(brute_independent_set(p4, 2));

    Assignment a = gen::witness_to_solution(g, gen::IndsetWitness{{1, 3}});
    CHECK(is_complete_fill(g.instance, a));
    Assignment b = gen::witness_to_solution(g, gen::IndsetWitness{{1, 4}});
    CHECK(is_complete_fill(g.instance, b));
}

TEST_CASE("independent set on K3 with k=2 is unfillable") {
    gen::SimpleGraph k3{3, {{1, 2}, {1, 3}, {2, 3}}};
    gen::GeneratedInstance g = gen::gen_from_independent_set(k3, 2, false);
    CHECK_FALSE(gen_decide(g));
    CHECK_FALSE(brute_independent_set(k3, 2));
    try {
        gen::witness_to_solution(g, gen::IndsetWitness{{1, 2}});
        FAIL("expected WitnessRejected");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::WitnessRejected);
    }
}

TEST_CASE("independent set input validation") {
    gen::SimpleGraph p3{3, {{1, 2}, {2, 3}}};
    try {
        gen::gen_from_independent_set(p3, 2, false);  // |E| == k
        FAIL("expected EdgeCountEqualsK");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::EdgeCountEqualsK);
    }
    gen::SimpleGraph isolated{4, {{1, 2}, {2, 3}}};
    try {
        gen::gen_from_independent_set(isolated, 3, false);
        FAIL("expected IsolatedVertex");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::IsolatedVertex);
    }
}

TEST_CASE("no-reuse variant keeps decision fidelity even with many vertical slots") {
    // C4 has |E| = 4 vertical slots; the suffixed word copies make the
    // no-reuse fill possible exactly when an independent set exists
    gen::SimpleGraph c4{4, {{1, 2}, {1, 4}, {2, 3}, {3, 4}}};
    gen::GeneratedInstance yes = gen::gen_from_independent_set(c4, 2, true);
    CHECK_FALSE(yes.instance.reuse);
    CHECK(gen_decide(yes));
    Assignment a = gen::witness_to_solution(yes, gen::IndsetWitness{{1, 3}});
    CHECK(is_complete_fill(yes.instance, a));

    gen::SimpleGraph k4{4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
    gen::GeneratedInstance no = gen::gen_from_independent_set(k4, 2, true);
    CHECK_FALSE(gen_decide(no));
}

TEST_CASE("both indset variants track the brute-force answer on random graphs") {
    std::mt19937_64 rng(555);
    int checked = 0;
    for (int it = 0; it < 120 && checked < 40; it++) {
        int n = 3 + (int)(rng() % 3);
        gen::SimpleGraph g{n, {}};
        std::vector<int> deg(n + 1, 0);
        for (int u = 1; u <= n; u++)
            for (int v = u + 1; v <= n; v++)
                if (rng() % 2) {
                    g.edges.emplace_back(u, v);
                    deg[u]++;
                    deg[v]++;
                }
        bool isolated = false;
        for (int v = 1; v <= n; v++)
            if (deg[v] == 0) isolated = true;
        int k = 2 + (int)(rng() % 2);
        if (isolated || (int)g.edges.size() < 2 || (int)g.edges.size() == k) continue;
        bool truth = brute_independent_set(g, k);
        CHECK(gen_decide(gen::gen_from_independent_set(g, k, false)) == truth);
        CHECK(gen_decide(gen::gen_from_independent_set(g, k, true)) == truth);
        checked++;
    }
    CHECK(checked >= 30);
}

// -------------------------------------------------------- sparse partition

TEST_CASE("sparse_partition on a one-clause formula is trivially sparse") {
    gen::CnfFormula f{1, {{1}}};
    gen::SparseReport report;
    gen::SparseCnf s = gen::sparse_partition(f, 0.5, 1, &report);
    std::string why;
    CHECK_MESSAGE(gen::valid_sparse(s, &why), why);
    CHECK(report.removed_clauses.empty());
}

TEST_CASE("sparse_partition output always satisfies the sparse invariants") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 25; it++) {
        int nv = 3 + (int)(rng() % 8);
        int nc = 2 + (int)(rng() % 12);
        gen::CnfFormula f{nv, {}};
        for (int c = 0; c < nc; c++) {
            std::vector<int> cl;
            std::set<int> used;
            int len = 1 + (int)(rng() % 3);
            while ((int)cl.size() < len) {
                int v = 1 + (int)(rng() % nv);
                if (!used.insert(v).second) continue;
                cl.push_back(rng() % 2 ? v : -v);
            }
            f.clauses.push_back(cl);
        }
        gen::SparseCnf s = gen::sparse_partition(f, 0.25 + 0.25 * (it % 3), it, nullptr);
        std::string why;
        CHECK_MESSAGE(gen::valid_sparse(s, &why), why);
    }
}

TEST_CASE("sparse_partition is reproducible for a fixed seed") {
    std::mt19937_64 rng(32);
    gen::CnfFormula f{12, {}};
    for (int c = 0; c < 20; c++) {
        std::vector<int> cl;
        std::set<int> used;
        while ((int)cl.size() < 3) {
            int v = 1 + (int)(rng() % 12);
            if (!used.insert(v).second) continue;
            cl.push_back(rng() % 2 ? v : -v);
        }
        f.clauses.push_back(cl);
    }
    gen::SparseReport r1, r2;
    gen::SparseCnf s1 = gen::sparse_partition(f, 0.5, 424242, &r1);
    gen::SparseCnf s2 = gen::sparse_partition(f, 0.5, 424242, &r2);
    CHECK(s1.formula.clauses == s2.formula.clauses);
    CHECK(s1.var_groups == s2.var_groups);
    CHECK(s1.clause_groups == s2.clause_groups);
    CHECK(r1.removed_clauses == r2.removed_clauses);
    CHECK(r1.removed_fraction == r2.removed_fraction);
    // regression baseline for this corpus and seed: the occurrence-reduced
    // formula has 72 clauses, 13 of which the coloring deletes
    std::size_t reduced_clauses = gen::restrict_sat(f).clauses.size();
    CHECK(reduced_clauses == 72);
    CHECK(r1.removed_clauses.size() == 13);
    CHECK(r1.removed_fraction ==
          doctest::Approx((double)r1.removed_clauses.size() / (double)reduced_clauses));
}

// -------------------------------------------------------------- sparse sat

TEST_CASE("sparse sat with a single positive clause") {
    gen::SparseCnf s;
    s.groups = 1;
    s.formula = {1, {{1}}};
    s.var_groups = {{1}};
    s.clause_groups = {{0}};
    gen::GeneratedInstance g = gen::gen_from_sparse_sat(s);
    CHECK(g.instance.grid.size() == 2);
    CHECK(slot_lengths(g.instance) == std::multiset<int>{4, 7});
    CHECK(g.instance.dict.index_of("0000") >= 0);
    CHECK(g.instance.dict.index_of("1000") >= 0);
    CHECK(g.instance.dict.index_of("1000000") >= 0);
    CHECK(g.instance.dict.size() == 3);
    CHECK(gen_decide(g));
    Assignment a = gen::witness_to_solution(g, gen::AssignmentWitness{{true}});
    CHECK(is_complete_fill(g.instance, a));
}

TEST_CASE("contradictory clauses in one group leave the vertical slot wordless") {
    // both clauses land in C_1, so no assignment satisfies the whole group
    gen::SparseCnf s;
    s.groups = 2;
    s.formula = {1, {{1}, {-1}}};
    s.var_groups = {{1}, {}};
    s.clause_groups = {{0, 1}, {}};
    gen::GeneratedInstance g = gen::gen_from_sparse_sat(s);
    CHECK_FALSE(gen_decide(g));
    CHECK_FALSE(brute_sat(s.formula));
}

TEST_CASE("sparse sat structure: 2 sqrt(N) slots with distinct lengths") {
    gen::SparseCnf s;
    s.groups = 2;  // N = 4
    s.formula = {3, {{1, 2}, {-1, 3}}};
    s.var_groups = {{1}, {2, 3}};
    s.clause_groups = {{0}, {1}};
    std::string why;
    REQUIRE_MESSAGE(gen::valid_sparse(s, &why), why);
    gen::GeneratedInstance g = gen::gen_from_sparse_sat(s);
    CHECK((int)g.instance.grid.size() == 2 * s.groups);
    std::set<int> lens;
    for (const Slot& slot : g.instance.grid.slots()) lens.insert(slot.length);
    CHECK(lens.size() == g.instance.grid.size());
    CHECK(gen_decide(g) == brute_sat(s.formula));
}

// -------------------------------------------------------------------- ulc

TEST_CASE("single-edge unique label cover with the identity constraint") {
    gen::UlcInstance u{2, 1, {{1, 2, {1}}}};
    gen::GeneratedInstance g = gen::gen_from_ulc(u);
    // all slot lengths distinct; longest horizontal below shortest vertical
    int longest_h = 0, shortest_v = 1 << 30;
    for (const Slot& s : g.instance.grid.slots()) {
        if (s.dir == Orientation::H) longest_h = std::max(longest_h, s.length);
        else shortest_v = std::min(shortest_v, s.length);
    }
    CHECK(longest_h == 3 * u.n + u.n * u.n);
    CHECK(shortest_v == longest_h + 1);

    Assignment a = gen::witness_to_solution(g, gen::UlcWitness{{1, 1}});
    EvalResult ev = evaluate(g.instance, a);
    CHECK(ev.valid);
    int placed = 0;
    for (int w : a.word_of)
        if (w != kEmpty) placed++;
    CHECK(placed == 2 * u.n);
}

TEST_CASE("ulc witness violations report the conflicting cell") {
    // swap constraint: label(2) must differ from label(1)
    gen::UlcInstance u{2, 2, {{1, 2, {2, 1}}}};
    gen::GeneratedInstance g = gen::gen_from_ulc(u);
    Assignment ok = gen::witness_to_solution(g, gen::UlcWitness{{1, 2}});
    CHECK(evaluate(g.instance, ok).valid);
    try {
        gen::witness_to_solution(g, gen::UlcWitness{{1, 1}});
        FAIL("expected WitnessRejected");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::WitnessRejected);
        CHECK(std::string(e.what()).find("(2,4)") != std::string::npos);
    }
    // partial labelings place 2|V'| words
    Assignment partial = gen::witness_to_solution(g, gen::UlcWitness{{1, 0}});
    int placed = 0;
    for (int w : partial.word_of)
        if (w != kEmpty) placed++;
    CHECK(placed == 2);
}

TEST_CASE("ulc every horizontal crosses every vertical at (2i,2j)") {
    gen::UlcInstance u{3, 2, {{1, 2, {2, 1}}, {2, 3, {1, 2}}}};
    gen::GeneratedInstance g = gen::gen_from_ulc(u);
    CHECK(g.instance.grid.shared_cells().size() == (std::size_t)(u.n * u.n));
    for (const SharedCell& sc : g.instance.grid.shared_cells()) {
        CHECK(sc.cell.row % 2 == 0);
        CHECK(sc.cell.col % 2 == 0);
    }
}

TEST_CASE("ulc rejects out-of-range label counts") {
    try {
        gen::gen_from_ulc(gen::UlcInstance{2, 10, {}});
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::ValidationError);
    }
}

// ---------------------------------------------------------------- parsers

TEST_CASE("side-input parsers") {
    gen::CnfFormula f = gen::parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3 0\n");
    CHECK(f.num_vars == 3);
    CHECK(f.clauses == std::vector<std::vector<int>>{{1, -2}, {2, 3}});

    gen::SimpleGraph g = gen::parse_graph("# graph\nv 4\ne 1 2\ne 3 2\n");
    CHECK(g.n == 4);
    CHECK(g.edges == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});

    CHECK(gen::parse_integer_list("7\n8 9\n") == std::vector<long long>{7, 8, 9});

    gen::UlcInstance u = gen::parse_ulc("n 2\nR 2\nedge 1 2\n2\n1\n");
    CHECK(u.n == 2);
    CHECK(u.R == 2);
    REQUIRE(u.edges.size() == 1);
    CHECK(u.edges[0].perm == std::vector<int>{2, 1});
}

TEST_CASE("generated instances round-trip through the file format byte-identically") {
    gen::SimpleGraph p4{4, {{1, 2}, {2, 3}, {3, 4}}};
    std::vector<gen::GeneratedInstance> gens;
    gens.push_back(gen::gen_from_independent_set(p4, 2, false));
    gens.push_back(gen::gen_from_independent_set(p4, 2, true));
    gens.push_back(gen::gen_from_three_partition({{1, 2, 3}}));
    gens.push_back(gen::gen_from_x1sat(gen::CnfFormula{2, {{1, 2}}}));
    gens.push_back(gen::gen_from_ulc(gen::UlcInstance{2, 1, {{1, 2, {1}}}}));
    for (const auto& g : gens) {
        std::string text = write_instance(g.instance, g.comments);
        CHECK(write_instance(parse_instance(text), g.comments) == text);
    }
}
