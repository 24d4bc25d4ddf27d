#include "xword/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "xword/matching.hpp"
#include "xword/treewidth.hpp"

namespace xword::exact {

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::Auto: return "auto";
        case Algo::Oracle: return "oracle";
        case Algo::Enum: return "enum";
        case Algo::VertexCover: return "vc";
        case Algo::Treewidth: return "treewidth";
        case Algo::Prefilled: return "prefilled";
    }
    return "?";
}

namespace {

// Deterministic reduction target: higher weight wins, ties go to the
// lexicographically smallest assignment (EMPTY last). Order-independent, so
// parallel chunks can be merged in any order.
struct Best {
    bool has = false;
    long long weight = 0;
    Assignment a;
    std::optional<std::pair<long long, Assignment>> complete;

    void offer(long long w, const Assignment& cand) {
        if (!has || w > weight || (w == weight && assignment_less(cand, a))) {
            has = true;
            weight = w;
            a = cand;
        }
        if (cand.complete()) {
            if (!complete || w > complete->first ||
                (w == complete->first && assignment_less(cand, complete->second))) {
                complete = {w, cand};
            }
        }
    }
    void merge(const Best& o) {
        if (o.has) offer(o.weight, o.a);
        if (o.complete) {
            if (!complete || o.complete->first > complete->first ||
                (o.complete->first == complete->first &&
                 assignment_less(o.complete->second, complete->second)))
                complete = o.complete;
        }
    }
};

SolveResult finish(const Instance& inst, Best best, SolveStats stats) {
    SolveResult res;
    res.stats = stats;
    if (!best.has) {
        res.best = Assignment::all_empty(inst.grid.size());
        res.weight = evaluate(inst, res.best).weight;
    } else {
        res.best = best.a;
        res.weight = best.weight;
    }
    res.best_complete = std::move(best.complete);
    return res;
}

// Evaluates candidates [0, count) with a per-worker Best, merged in worker
// order; any jobs value yields the same result.
template <class F>
Best parallel_reduce(long long count, int jobs, F&& eval_candidate) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count < 2 * jobs) {
        Best best;
        for (long long i = 0; i < count; i++) eval_candidate(i, best);
        return best;
    }
    std::vector<Best> locals(jobs);
    std::vector<std::thread> threads;
    long long chunk = (count + jobs - 1) / jobs;
    for (int t = 0; t < jobs; t++) {
        long long lo = t * chunk, hi = std::min(count, lo + chunk);
        threads.emplace_back([&, t, lo, hi] {
            for (long long i = lo; i < hi; i++) eval_candidate(i, locals[t]);
        });
    }
    for (auto& th : threads) th.join();
    Best best;
    for (auto& l : locals) best.merge(l);
    return best;
}

std::vector<std::vector<int>> fit_lists_by_length(const Instance& inst) {
    std::vector<std::vector<int>> fits(inst.grid.size());
    for (int i = 0; i < (int)inst.grid.size(); i++)
        for (int w = 0; w < (int)inst.dict.size(); w++)
            if ((int)inst.dict.word(w).size() == inst.grid.slot(i).length) fits[i].push_back(w);
    return fits;
}

bool fits2(const Slot& slot, std::string_view word, const std::map<Cell, char>& a,
           const std::map<Cell, char>& b) {
    return fits(slot, word, a) && fits(slot, word, b);
}

long long pow_capped(long long base, long long exp, long long cap) {
    long long r = 1;
    for (long long i = 0; i < exp; i++) {
        if (r > cap / std::max(base, 1LL)) return cap + 1;
        r *= base;
        if (r > cap) return cap + 1;
    }
    return r;
}

// Greedy completion used by the reuse-mode solvers: place the heaviest
// fitting word (lowest index on ties); never leave a fillable slot empty.
int greedy_pick(const Instance& inst, int slot, const std::vector<int>& fit_list,
                const std::map<Cell, char>& c1, const std::map<Cell, char>& c2) {
    int best = kEmpty;
    long long best_w = -1;
    for (int w : fit_list) {
        if (!fits2(inst.grid.slot(slot), inst.dict.word(w), c1, c2)) continue;
        long long ww = inst.word_weight(w);
        if (ww > best_w) {
            best_w = ww;
            best = w;
        }
    }
    return best;
}

}  // namespace

bool all_shared_prefilled(const Instance& inst) {
    for (const SharedCell& sc : inst.grid.shared_cells())
        if (!inst.prefills.count(sc.cell)) return false;
    return true;
}

Instance with_unit_weights(const Instance& inst) {
    std::map<char, long long> w;
    for (char c : inst.alphabet.letters()) w[c] = 1;
    Alphabet unit(inst.alphabet.letters(), std::move(w));
    return Instance{inst.grid, std::move(unit), inst.dict, inst.prefills, inst.reuse};
}

// ---------------------------------------------------------------- oracle

namespace {

struct OracleCtx {
    const Instance& inst;
    const std::vector<std::vector<int>>& fit_lists;
    long long budget;
    bool complete_only = false;
    bool stop_at_first_complete = false;

    std::map<Cell, char> letters;
    std::vector<char> used;
    Assignment cur;
    long long weight = 0;
    long long nodes = 0;
    Best best;
    bool done = false;

    OracleCtx(const Instance& i, const std::vector<std::vector<int>>& f, long long b)
        : inst(i), fit_lists(f), budget(b), used(i.dict.size(), 0) {
        cur = Assignment::all_empty(i.grid.size());
    }

    bool try_place(int slot, int w, std::vector<Cell>& added) {
        const Slot& s = inst.grid.slot(slot);
        const std::string& word = inst.dict.word(w);
        for (int off = 1; off <= s.length; off++) {
            Cell c = s.cell_at(off);
            char letter = word[off - 1];
            auto it = letters.find(c);
            if (it != letters.end() && it->second != letter) return false;
            auto pf = inst.prefills.find(c);
            if (pf != inst.prefills.end() && pf->second != letter) return false;
        }
        for (int off = 1; off <= s.length; off++) {
            Cell c = s.cell_at(off);
            char letter = word[off - 1];
            if (letters.emplace(c, letter).second) {
                weight += inst.letter_weight(letter);
                added.push_back(c);
            }
        }
        return true;
    }

    void unplace(const std::vector<Cell>& added) {
        for (Cell c : added) {
            weight -= inst.letter_weight(letters.at(c));
            letters.erase(c);
        }
    }

    void dfs(int slot) {
        if (done) return;
        if (slot == (int)inst.grid.size()) {
            best.offer(weight, cur);
            if (stop_at_first_complete && cur.complete()) done = true;
            return;
        }
        for (int w : fit_lists[slot]) {
            if (++nodes > budget) fail(Errc::BudgetExceeded, "oracle node budget exhausted");
            if (!inst.reuse && used[w]) continue;
            std::vector<Cell> added;
            if (!try_place(slot, w, added)) {
                unplace(added);
                continue;
            }
            used[w] = 1;
            cur.word_of[slot] = w;
            dfs(slot + 1);
            cur.word_of[slot] = kEmpty;
            used[w] = 0;
            unplace(added);
            if (done) return;
        }
        if (!complete_only) {
            if (++nodes > budget) fail(Errc::BudgetExceeded, "oracle node budget exhausted");
            dfs(slot + 1);
        }
    }
};

}  // namespace

SolveResult oracle(const Instance& inst, const SolveOptions& opts) {
    auto fit_lists = fit_lists_by_length(inst);
    OracleCtx ctx(inst, fit_lists, opts.budget);
    ctx.dfs(0);
    SolveStats stats;
    stats.nodes = ctx.nodes;
    stats.candidates = ctx.nodes;
    return finish(inst, std::move(ctx.best), stats);
}

// ------------------------------------------------------------- prefilled

namespace {

void require_prefilled(const Instance& inst, bool reuse_wanted) {
    if (inst.reuse != reuse_wanted)
        fail(Errc::PreconditionViolated,
             reuse_wanted ? "solver requires reuse mode" : "solver requires no-reuse mode");
    if (!all_shared_prefilled(inst))
        fail(Errc::PreconditionViolated, "not every shared cell is pre-filled");
}

}  // namespace

SolveResult solve_prefilled_reuse(const Instance& inst, const SolveOptions& opts) {
    (void)opts;
    require_prefilled(inst, true);
    auto fit_lists = fit_lists_by_length(inst);
    static const std::map<Cell, char> kNoExtra;
    Assignment a = Assignment::all_empty(inst.grid.size());
    SolveStats stats;
    for (int i = 0; i < (int)inst.grid.size(); i++) {
        a.word_of[i] = greedy_pick(inst, i, fit_lists[i], inst.prefills, kNoExtra);
        stats.candidates += (long long)fit_lists[i].size();
    }
    EvalResult ev = evaluate(inst, a);
    Best best;
    best.offer(ev.weight, a);
    return finish(inst, std::move(best), stats);
}

namespace {

// Core of the no-reuse solvers: the filled slots F are fixed, every shared
// cell covered by F carries a fixed letter, and a saturating matching places
// distinct words on F (optional slots may join the matching for free).
// The returned value is exactly the weight of the produced assignment.
std::optional<std::pair<long long, Assignment>> saturating_candidate(
    const Instance& inst, const std::vector<std::vector<int>>& fit_lists,
    const std::vector<int>& filled, const std::vector<int>& optional_slots,
    const std::map<Cell, char>& cell_letters) {
    matching::WeightedBipartiteGraph g;
    std::vector<int> left_slots = filled;
    left_slots.insert(left_slots.end(), optional_slots.begin(), optional_slots.end());
    g.n_left = (int)left_slots.size();
    g.n_right = (int)inst.dict.size();
    for (int li = 0; li < (int)left_slots.size(); li++) {
        int slot = left_slots[li];
        long long imposed = 0;
        for (int sci : inst.grid.shared_of(slot)) {
            Cell c = inst.grid.shared_cells()[sci].cell;
            auto it = cell_letters.find(c);
            if (it != cell_letters.end()) imposed = checked_add(imposed, inst.letter_weight(it->second));
        }
        for (int w : fit_lists[slot]) {
            if (!fits2(inst.grid.slot(slot), inst.dict.word(w), inst.prefills, cell_letters)) continue;
            g.add_edge(li, w, inst.word_weight(w) - imposed);
        }
    }
    std::vector<int> required(filled.size());
    for (int i = 0; i < (int)filled.size(); i++) required[i] = i;
    auto m = matching::max_weight_saturating_matching(g, required);
    if (!m) return std::nullopt;

    Assignment a = Assignment::all_empty(inst.grid.size());
    for (auto& [li, w] : m->edges) a.word_of[left_slots[li]] = w;
    long long value = m->weight;
    std::set<int> fset(filled.begin(), filled.end());
    for (const SharedCell& sc : inst.grid.shared_cells()) {
        if (fset.count(sc.hslot) || fset.count(sc.vslot))
            value = checked_add(value, inst.letter_weight(cell_letters.at(sc.cell)));
    }
    return {{value, a}};
}

}  // namespace

SolveResult solve_prefilled_noreuse(const Instance& inst, const SolveOptions& opts) {
    require_prefilled(inst, false);
    auto fit_lists = fit_lists_by_length(inst);

    // Slots touching a shared cell; only their fill pattern affects how often
    // a shared cell is counted, so the subset enumeration ranges over them.
    std::vector<int> crossing, plain;
    for (int i = 0; i < (int)inst.grid.size(); i++)
        (inst.grid.shared_of(i).empty() ? plain : crossing).push_back(i);
    if (crossing.size() >= 62 || (1LL << crossing.size()) > opts.budget)
        fail(Errc::BudgetExceeded, "too many crossing slots for subset enumeration");

    long long n_masks = 1LL << crossing.size();
    SolveStats stats;
    stats.candidates = n_masks;
    Best best = parallel_reduce(n_masks, opts.jobs, [&](long long mask, Best& local) {
        std::vector<int> filled;
        for (std::size_t b = 0; b < crossing.size(); b++)
            if (mask & (1LL << b)) filled.push_back(crossing[b]);
        auto cand = saturating_candidate(inst, fit_lists, filled, plain, inst.prefills);
        if (!cand) return;
        EvalResult ev = evaluate(inst, cand->second);
        local.offer(ev.weight, cand->second);
    });
    return finish(inst, std::move(best), stats);
}

// ------------------------------------------------------------ enumeration

SolveResult solve_enum_reuse(const Instance& inst, const SolveOptions& opts) {
    if (!inst.reuse) fail(Errc::PreconditionViolated, "solver requires reuse mode");
    auto fit_lists = fit_lists_by_length(inst);
    const auto& shared = inst.grid.shared_cells();
    long long ell = (long long)inst.alphabet.size();
    long long count = pow_capped(ell, (long long)shared.size(), opts.budget);
    if (count > opts.budget)
        fail(Errc::BudgetExceeded, "letter combinations exceed the budget");

    SolveStats stats;
    stats.candidates = count;
    const std::string& letters = inst.alphabet.letters();
    Best best = parallel_reduce(count, opts.jobs, [&](long long idx, Best& local) {
        std::map<Cell, char> guess;
        long long rem = idx;
        for (const SharedCell& sc : shared) {
            guess[sc.cell] = letters[rem % ell];
            rem /= ell;
        }
        Assignment a = Assignment::all_empty(inst.grid.size());
        for (int i = 0; i < (int)inst.grid.size(); i++)
            a.word_of[i] = greedy_pick(inst, i, fit_lists[i], inst.prefills, guess);
        EvalResult ev = evaluate(inst, a);
        local.offer(ev.weight, a);
    });
    return finish(inst, std::move(best), stats);
}

SolveResult solve_enum_noreuse(const Instance& inst, const SolveOptions& opts) {
    if (inst.reuse) fail(Errc::PreconditionViolated, "solver requires no-reuse mode");
    auto fit_lists = fit_lists_by_length(inst);
    int n = (int)inst.grid.size();
    const auto& shared = inst.grid.shared_cells();
    long long ell = (long long)inst.alphabet.size();
    if (n >= 62 || (1LL << n) > opts.budget)
        fail(Errc::BudgetExceeded, "too many slots for subset enumeration");

    // Candidate count: sum over F of ell^(cells covered by F).
    std::vector<long long> combos(1LL << n);
    long long total = 0;
    for (long long mask = 0; mask < (1LL << n); mask++) {
        int covered = 0;
        for (const SharedCell& sc : shared)
            if ((mask >> sc.hslot & 1) || (mask >> sc.vslot & 1)) covered++;
        combos[mask] = pow_capped(ell, covered, opts.budget);
        total += combos[mask];
        if (combos[mask] > opts.budget || total > opts.budget)
            fail(Errc::BudgetExceeded, "letter combinations exceed the budget");
    }
    SolveStats stats;
    stats.candidates = total;

    const std::string& letters = inst.alphabet.letters();
    Best best;
    for (long long mask = 0; mask < (1LL << n); mask++) {
        std::vector<int> filled, cover_cells;
        for (int i = 0; i < n; i++)
            if (mask >> i & 1) filled.push_back(i);
        for (int sci = 0; sci < (int)shared.size(); sci++)
            if ((mask >> shared[sci].hslot & 1) || (mask >> shared[sci].vslot & 1))
                cover_cells.push_back(sci);
        for (long long idx = 0; idx < combos[mask]; idx++) {
            std::map<Cell, char> guess;
            long long rem = idx;
            for (int sci : cover_cells) {
                guess[shared[sci].cell] = letters[rem % ell];
                rem /= ell;
            }
            auto cand = saturating_candidate(inst, fit_lists, filled, {}, guess);
            if (!cand) continue;
            EvalResult ev = evaluate(inst, cand->second);
            best.offer(ev.weight, cand->second);
        }
    }
    return finish(inst, std::move(best), stats);
}

// ----------------------------------------------------------- vertex cover

SolveResult solve_vertex_cover(const Instance& inst, const std::vector<int>& cover,
                               const SolveOptions& opts) {
    int n = (int)inst.grid.size();
    std::vector<char> in_cover(n, 0);
    for (int s : cover) {
        if (s < 0 || s >= n) fail(Errc::NotAVertexCover, "cover slot index out of range");
        in_cover[s] = 1;
    }
    for (const SharedCell& sc : inst.grid.shared_cells())
        if (!in_cover[sc.hslot] && !in_cover[sc.vslot])
            fail(Errc::NotAVertexCover, "shared cell not touched by the cover");

    auto fit_lists = fit_lists_by_length(inst);
    std::vector<int> cov(cover.begin(), cover.end());
    std::sort(cov.begin(), cov.end());
    cov.erase(std::unique(cov.begin(), cov.end()), cov.end());
    std::vector<int> rest;
    for (int i = 0; i < n; i++)
        if (!in_cover[i]) rest.push_back(i);

    // Tuple space: per cover slot the words that fit its prefills, plus EMPTY.
    std::vector<std::vector<int>> choices(cov.size());
    long long count = 1;
    for (std::size_t i = 0; i < cov.size(); i++) {
        for (int w : fit_lists[cov[i]])
            if (fits(inst.grid.slot(cov[i]), inst.dict.word(w), inst.prefills))
                choices[i].push_back(w);
        choices[i].push_back(kEmpty);
        count = checked_mul(count, (long long)choices[i].size());
        if (count > opts.budget) fail(Errc::BudgetExceeded, "cover tuples exceed the budget");
    }

    SolveStats stats;
    stats.candidates = count;
    Best best = parallel_reduce(count, opts.jobs, [&](long long idx, Best& local) {
        std::vector<int> tuple(cov.size());
        long long rem = idx;
        for (std::size_t i = 0; i < cov.size(); i++) {
            tuple[i] = choices[i][rem % choices[i].size()];
            rem /= choices[i].size();
        }
        // internal consistency: shared cells between cover slots, reuse rule
        std::map<Cell, char> imposed;
        std::set<int> used;
        for (std::size_t i = 0; i < cov.size(); i++) {
            int w = tuple[i];
            if (w == kEmpty) continue;
            if (!inst.reuse && !used.insert(w).second) return;
            const Slot& s = inst.grid.slot(cov[i]);
            const std::string& word = inst.dict.word(w);
            for (int off = 1; off <= s.length; off++) {
                auto [it, fresh] = imposed.emplace(s.cell_at(off), word[off - 1]);
                if (!fresh && it->second != word[off - 1]) return;
            }
        }
        Assignment a = Assignment::all_empty(inst.grid.size());
        for (std::size_t i = 0; i < cov.size(); i++) a.word_of[cov[i]] = tuple[i];

        if (inst.reuse) {
            for (int slot : rest) a.word_of[slot] = greedy_pick(inst, slot, fit_lists[slot], inst.prefills, imposed);
        } else {
            matching::WeightedBipartiteGraph g;
            g.n_left = (int)rest.size();
            g.n_right = (int)inst.dict.size();
            for (int li = 0; li < (int)rest.size(); li++) {
                int slot = rest[li];
                long long reduction = 0;
                for (int sci : inst.grid.shared_of(slot)) {
                    const SharedCell& sc = inst.grid.shared_cells()[sci];
                    int other = sc.hslot == slot ? sc.vslot : sc.hslot;
                    if (in_cover[other] && a.word_of[other] != kEmpty) {
                        auto it = imposed.find(sc.cell);
                        reduction = checked_add(reduction, inst.letter_weight(it->second));
                    }
                }
                for (int w : fit_lists[slot]) {
                    if (used.count(w)) continue;
                    if (!fits2(inst.grid.slot(slot), inst.dict.word(w), inst.prefills, imposed)) continue;
                    g.add_edge(li, w, inst.word_weight(w) - reduction);
                }
            }
            matching::Matching m = matching::max_weight_matching(g);
            for (auto& [li, w] : m.edges) a.word_of[rest[li]] = w;
        }
        EvalResult ev = evaluate(inst, a);
        if (!ev.valid) return;
        local.offer(ev.weight, a);
    });
    return finish(inst, std::move(best), stats);
}

// ----------------------------------------------------------------- decide

Algo choose_algo(const Instance& inst, const SolveOptions& opts) {
    if (all_shared_prefilled(inst)) return Algo::Prefilled;
    long long m1 = (long long)inst.dict.size() + 1;
    if (inst.reuse) {
        GridGraph g = grid_graph(inst.grid);
        tw::TreeDecomposition td = tw::tree_decomposition(g, tw::Method::MinFill);
        long long per_bag = pow_capped(m1, td.width() + 1, opts.budget);
        if (checked_mul(per_bag, std::max<long long>(1, (long long)inst.grid.size())) <= opts.budget)
            return Algo::Treewidth;
    }
    GraphClassification cls = classify_graph(inst.grid, grid_graph(inst.grid));
    if (pow_capped(m1, (long long)cls.vertex_cover_hint.size(), opts.budget) <= opts.budget / 4)
        return Algo::VertexCover;
    if (inst.reuse) {
        if (pow_capped((long long)inst.alphabet.size(), (long long)inst.grid.shared_cells().size(),
                       opts.budget) <= opts.budget)
            return Algo::Enum;
    } else if (inst.grid.size() < 20) {
        return Algo::Enum;
    }
    return Algo::Oracle;
}

DecideResult decide_stats(const Instance& inst, Algo algo, const SolveOptions& opts) {
    if (algo == Algo::Auto) algo = choose_algo(inst, opts);
    Instance unit = with_unit_weights(inst);
    DecideResult out;
    out.used = algo;
    auto from_result = [&](const SolveResult& r) {
        out.stats = r.stats;
        if (r.best_complete) out.fill = r.best_complete->second;
    };
    switch (algo) {
        case Algo::Oracle: {
            auto fit_lists = fit_lists_by_length(unit);
            OracleCtx ctx(unit, fit_lists, opts.budget);
            ctx.complete_only = true;
            ctx.stop_at_first_complete = true;
            ctx.dfs(0);
            out.stats.nodes = out.stats.candidates = ctx.nodes;
            if (ctx.best.complete) out.fill = ctx.best.complete->second;
            return out;
        }
        case Algo::Enum:
            from_result(unit.reuse ? solve_enum_reuse(unit, opts) : solve_enum_noreuse(unit, opts));
            return out;
        case Algo::VertexCover: {
            GraphClassification cls = classify_graph(unit.grid, grid_graph(unit.grid));
            from_result(solve_vertex_cover(unit, cls.vertex_cover_hint, opts));
            return out;
        }
        case Algo::Treewidth:
            out.fill = tw::decide_treewidth(unit, opts, &out.stats);
            return out;
        case Algo::Prefilled:
            from_result(unit.reuse ? solve_prefilled_reuse(unit, opts)
                                   : solve_prefilled_noreuse(unit, opts));
            return out;
        case Algo::Auto: break;
    }
    fail(Errc::ValidationError, "unreachable algo");
}

std::optional<Assignment> decide_full(const Instance& inst, Algo algo, const SolveOptions& opts) {
    return decide_stats(inst, algo, opts).fill;
}

bool decide(const Instance& inst, Algo algo, const SolveOptions& opts) {
    return decide_stats(inst, algo, opts).fill.has_value();
}

}  // namespace xword::exact
