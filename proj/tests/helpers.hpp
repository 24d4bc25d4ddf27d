#ifndef XWORD_TEST_HELPERS_HPP
#define XWORD_TEST_HELPERS_HPP

// Test-only reference implementations. Everything here goes through
// core::evaluate and plain enumeration only, independent of the solver
// paths under test.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "xword/core.hpp"
#include "xword/generators.hpp"
#include "xword/matching.hpp"

namespace testutil {

using namespace xword;

inline Instance fix_cross(bool reuse, std::map<Cell, char> prefills = {}) {
    Alphabet alphabet("ab", {{'a', 1}, {'b', 2}});
    Grid grid = validate_grid({{"h1", Orientation::H, {1, 1}, 2},
                               {"v1", Orientation::V, {1, 1}, 2}});
    Dictionary dict({"ab", "bb"}, alphabet);
    return make_instance(std::move(grid), std::move(alphabet), std::move(dict),
                         std::move(prefills), reuse);
}

struct BruteResult {
    long long weight = 0;
    Assignment best;
    bool complete_exists = false;
    long long complete_weight = 0;
};

// Exhaustive reference over per-slot fitting words plus EMPTY.
inline BruteResult brute_force(const Instance& inst) {
    int n = (int)inst.grid.size();
    std::vector<std::vector<int>> choices(n);
    for (int i = 0; i < n; i++) {
        for (int w = 0; w < (int)inst.dict.size(); w++)
            if ((int)inst.dict.word(w).size() == inst.grid.slot(i).length) choices[i].push_back(w);
        choices[i].push_back(kEmpty);
    }
    BruteResult res;
    res.best = Assignment::all_empty(n);
    Assignment cur = Assignment::all_empty(n);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            EvalResult ev = evaluate(inst, cur);
            if (!ev.valid) return;
            if (ev.weight > res.weight ||
                (ev.weight == res.weight && assignment_less(cur, res.best))) {
                res.weight = ev.weight;
                res.best = cur;
            }
            if (cur.complete()) {
                if (!res.complete_exists || ev.weight > res.complete_weight)
                    res.complete_weight = ev.weight;
                res.complete_exists = true;
            }
            return;
        }
        for (int w : choices[i]) {
            cur.word_of[i] = w;
            self(self, i + 1);
        }
        cur.word_of[i] = kEmpty;
    };
    rec(rec, 0);
    return res;
}

// Brute-force matchings by trying all edge subsets (graphs up to ~15 edges).
inline long long brute_matching_weight(const matching::WeightedBipartiteGraph& g) {
    long long best = 0;
    int e = (int)g.edges.size();
    for (long long mask = 0; mask < (1LL << e); mask++) {
        std::set<int> ls, rs;
        long long w = 0;
        bool ok = true;
        for (int i = 0; i < e && ok; i++) {
            if (!(mask >> i & 1)) continue;
            if (!ls.insert(g.edges[i].left).second || !rs.insert(g.edges[i].right).second)
                ok = false;
            w += g.edges[i].weight;
        }
        if (ok) best = std::max(best, w);
    }
    return best;
}

inline std::optional<long long> brute_saturating_weight(const matching::WeightedBipartiteGraph& g,
                                                        const std::vector<int>& required) {
    std::optional<long long> best;
    int e = (int)g.edges.size();
    for (long long mask = 0; mask < (1LL << e); mask++) {
        std::set<int> ls, rs;
        long long w = 0;
        bool ok = true;
        for (int i = 0; i < e && ok; i++) {
            if (!(mask >> i & 1)) continue;
            if (!ls.insert(g.edges[i].left).second || !rs.insert(g.edges[i].right).second)
                ok = false;
            w += g.edges[i].weight;
        }
        if (!ok) continue;
        bool sat = true;
        for (int r : required)
            if (!ls.count(r)) sat = false;
        if (!sat) continue;
        if (!best || w > *best) best = w;
    }
    return best;
}

// Seeded random instance: at most 6 slots, 8 words, 3 letters, weights <= 5,
// at most 6 shared cells.
inline Instance random_instance(std::mt19937_64& rng, bool reuse) {
    auto draw = [&](int lo, int hi) {
        return lo + (int)(rng() % (unsigned long long)(hi - lo + 1));
    };
    for (int attempt = 0;; attempt++) {
        int ell = draw(1, 3);
        std::string letters = std::string("abc").substr(0, ell);
        std::map<char, long long> weights;
        for (char c : letters) weights[c] = draw(0, 5);

        int nh = draw(1, 3), nv = draw(1, 3);
        std::vector<Slot> slots;
        for (int i = 0; i < nh; i++)
            slots.push_back({"h" + std::to_string(i), Orientation::H,
                             {draw(1, 5), draw(1, 3)}, draw(2, 4)});
        for (int i = 0; i < nv; i++)
            slots.push_back({"v" + std::to_string(i), Orientation::V,
                             {draw(1, 3), draw(1, 5)}, draw(2, 4)});
        Grid grid;
        try {
            grid = validate_grid(std::move(slots));
        } catch (const Error&) {
            continue;
        }
        if (grid.shared_cells().size() > 6) continue;

        std::set<int> lens;
        for (const Slot& s : grid.slots()) lens.insert(s.length);
        std::vector<int> len_list(lens.begin(), lens.end());
        std::set<std::string> words;
        int m = draw(1, 8);
        for (int t = 0; t < m; t++) {
            int len = len_list[draw(0, (int)len_list.size() - 1)];
            std::string w;
            for (int i = 0; i < len; i++) w.push_back(letters[draw(0, ell - 1)]);
            words.insert(w);
        }
        Alphabet alphabet(letters, weights);
        Dictionary dict(std::vector<std::string>(words.begin(), words.end()), alphabet);
        return make_instance(std::move(grid), std::move(alphabet), std::move(dict), {}, reuse);
    }
}

// staircase of crossing length-5 slots whose grid graph is a path; every
// word of the binary dictionary fits every slot
inline Instance path_instance(int slots, int words) {
    std::vector<Slot> list;
    int r = 1, c = 1;
    for (int i = 0; i < slots; i++) {
        std::string id = "s" + std::string(i < 10 ? "0" : "") + std::to_string(i);
        if (i % 2 == 0) {
            list.push_back({id, Orientation::H, {r, c}, 5});
            c += 4;
        } else {
            list.push_back({id, Orientation::V, {r, c}, 5});
            r += 4;
        }
    }
    Alphabet alphabet("ab", {{'a', 1}, {'b', 2}});
    std::vector<std::string> ws;
    for (int w = 0; w < words; w++) {
        std::string s;
        for (int b = 4; b >= 0; b--) s.push_back((w >> b & 1) ? 'b' : 'a');
        ws.push_back(s);
    }
    Dictionary dict(std::move(ws), alphabet);
    return make_instance(validate_grid(std::move(list)), std::move(alphabet), std::move(dict), {},
                         true);
}

// adds a random prefill letter on every shared cell
inline Instance with_full_shared_prefills(const Instance& inst, std::mt19937_64& rng) {
    std::map<Cell, char> prefills = inst.prefills;
    const std::string& letters = inst.alphabet.letters();
    for (const SharedCell& sc : inst.grid.shared_cells())
        prefills[sc.cell] = letters[rng() % letters.size()];
    return make_instance(inst.grid, inst.alphabet, inst.dict, std::move(prefills), inst.reuse);
}

// sprinkles prefills over arbitrary grid cells
inline Instance with_random_prefills(const Instance& inst, std::mt19937_64& rng) {
    std::map<Cell, char> prefills = inst.prefills;
    const std::string& letters = inst.alphabet.letters();
    for (Cell c : inst.grid.cells())
        if (rng() % 5 == 0) prefills[c] = letters[rng() % letters.size()];
    return make_instance(inst.grid, inst.alphabet, inst.dict, std::move(prefills), inst.reuse);
}

// ------------------------------------------------- source-problem deciders

inline bool brute_three_partition(const std::vector<long long>& values) {
    int n = (int)values.size() / 3;
    long long sum = 0;
    for (long long v : values) sum += v;
    if (values.size() % 3 != 0 || sum % n != 0) return false;
    long long target = sum / n;
    std::vector<int> order(values.size());
    for (std::size_t i = 0; i < values.size(); i++) order[i] = (int)i;
    std::vector<char> used(values.size(), 0);
    auto rec = [&](auto&& self, int remaining) -> bool {
        if (remaining == 0) return true;
        int first = -1;
        for (std::size_t i = 0; i < values.size(); i++)
            if (!used[i]) {
                first = (int)i;
                break;
            }
        if (first < 0) return false;
        used[first] = 1;
        for (std::size_t j = first + 1; j < values.size(); j++) {
            if (used[j]) continue;
            used[j] = 1;
            for (std::size_t k = j + 1; k < values.size(); k++) {
                if (used[k]) continue;
                if (values[first] + values[j] + values[k] != target) continue;
                used[k] = 1;
                if (self(self, remaining - 1)) return true;
                used[k] = 0;
            }
            used[j] = 0;
        }
        used[first] = 0;
        return false;
    };
    return rec(rec, n);
}

inline int count_true_literals(const gen::CnfFormula& f, int clause, unsigned long long bits) {
    int t = 0;
    for (int lit : f.clauses[clause]) {
        bool val = (bits >> (std::abs(lit) - 1)) & 1;
        if (lit > 0 ? val : !val) t++;
    }
    return t;
}

inline bool brute_exactly_one(const gen::CnfFormula& f) {
    for (unsigned long long bits = 0; bits < (1ULL << f.num_vars); bits++) {
        bool ok = true;
        for (std::size_t c = 0; c < f.clauses.size() && ok; c++)
            if (count_true_literals(f, (int)c, bits) != 1) ok = false;
        if (ok) return true;
    }
    return f.clauses.empty();
}

inline bool brute_sat(const gen::CnfFormula& f) {
    for (unsigned long long bits = 0; bits < (1ULL << f.num_vars); bits++) {
        bool ok = true;
        for (std::size_t c = 0; c < f.clauses.size() && ok; c++)
            if (count_true_literals(f, (int)c, bits) == 0) ok = false;
        if (ok) return true;
    }
    return f.clauses.empty();
}

inline bool brute_independent_set(const gen::SimpleGraph& g, int k) {
    for (unsigned long long mask = 0; mask < (1ULL << g.n); mask++) {
        if (__builtin_popcountll(mask) != k) continue;
        bool ok = true;
        for (auto& [u, v] : g.edges)
            if ((mask >> (u - 1) & 1) && (mask >> (v - 1) & 1)) ok = false;
        if (ok) return true;
    }
    return false;
}

}  // namespace testutil

#endif
