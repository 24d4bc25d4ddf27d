#include "xword/approx.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "xword/matching.hpp"

namespace xword::approx {

namespace {

struct Pass {
    std::vector<int> guess_side;     // slot indices, canonical order
    std::vector<int> complete_side;  // the other orientation
};

// Max-weight fitting word for one slot, lowest index on ties; EMPTY only
// when nothing fits (placing a fitting word never lowers the weight).
int greedy_pick(const Instance& inst, int slot, const std::vector<int>& fit_list,
                const std::map<Cell, char>& constraints) {
    int best = kEmpty;
    long long best_w = -1;
    for (int w : fit_list) {
        if (!fits(inst.grid.slot(slot), inst.dict.word(w), inst.prefills)) continue;
        if (!fits(inst.grid.slot(slot), inst.dict.word(w), constraints)) continue;
        long long ww = inst.word_weight(w);
        if (ww > best_w) {
            best_w = ww;
            best = w;
        }
    }
    return best;
}

struct BestCandidate {
    bool has = false;
    long long weight = 0;
    Assignment a;

    void offer(long long w, const Assignment& cand) {
        if (!has || w > weight || (w == weight && assignment_less(cand, a))) {
            has = true;
            weight = w;
            a = cand;
        }
    }
};

}  // namespace

Ratio parse_epsilon(const std::string& text) {
    auto bad = [&] { fail(Errc::InvalidEpsilon, "cannot parse epsilon '" + text + "'"); };
    Ratio r;
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            r.num = std::stoll(text.substr(0, slash));
            r.den = std::stoll(text.substr(slash + 1));
        } else if (auto dot = text.find('.'); dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            r.num = std::stoll(digits);
            r.den = 1;
            for (std::size_t i = dot + 1; i < text.size(); i++) r.den = checked_mul(r.den, 10);
        } else {
            r.num = std::stoll(text);
            r.den = 1;
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        bad();
    }
    if (r.den <= 0 || r.num <= 0) fail(Errc::InvalidEpsilon, "epsilon must be positive");
    long long g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

Result approx_solve(const Instance& inst, Ratio eps, const exact::SolveOptions& opts) {
    if (eps.num <= 0 || eps.den <= 0 || eps.num > eps.den)
        fail(Errc::InvalidEpsilon, "epsilon must lie in (0, 1]");

    const Grid& grid = inst.grid;
    int n = (int)grid.size();
    std::vector<int> hs, vs;
    for (int i = 0; i < n; i++)
        (grid.slot(i).dir == Orientation::H ? hs : vs).push_back(i);
    int h = (int)hs.size();

    Params params;
    params.n = n;
    params.h = h;
    long long inv_eps = (eps.den + eps.num - 1) / eps.num;  // ceil(1/eps)
    params.kv = (int)std::min<long long>(inv_eps, n - h);
    params.rv = params.kv == 0 ? 0 : (int)(((n - h) + params.kv - 1) / params.kv);
    params.kh = (int)std::min<long long>(inv_eps, h);
    params.rh = params.kh == 0 ? 0 : (int)((h + params.kh - 1) / params.kh);

    std::vector<std::vector<int>> fit_lists(n);
    for (int i = 0; i < n; i++)
        for (int w = 0; w < (int)inst.dict.size(); w++)
            if ((int)inst.dict.word(w).size() == grid.slot(i).length) fit_lists[i].push_back(w);

    BestCandidate best;
    long long candidates = 0;

    auto run_pass = [&](const std::vector<int>& guess_pool, const std::vector<int>& complete_pool,
                        int group_size, int groups) {
        // group g = consecutive chunk of the guess side; everything else on
        // that side stays empty
        int chunks = guess_pool.empty() ? 1 : groups;
        for (int gi = 0; gi < chunks; gi++) {
            std::vector<int> group;
            if (!guess_pool.empty()) {
                int lo = gi * group_size;
                int hi = std::min<int>((int)guess_pool.size(), lo + group_size);
                for (int t = lo; t < hi; t++) group.push_back(guess_pool[t]);
            }
            // choices per group slot: fitting words plus EMPTY
            std::vector<std::vector<int>> choices(group.size());
            long long tuple_count = 1;
            for (std::size_t i = 0; i < group.size(); i++) {
                for (int w : fit_lists[group[i]])
                    if (fits(grid.slot(group[i]), inst.dict.word(w), inst.prefills))
                        choices[i].push_back(w);
                choices[i].push_back(kEmpty);
                tuple_count = checked_mul(tuple_count, (long long)choices[i].size());
                if (tuple_count > opts.budget)
                    fail(Errc::BudgetExceeded, "group tuples exceed the budget");
            }
            candidates += tuple_count;
            if (candidates > opts.budget)
                fail(Errc::BudgetExceeded, "group tuples exceed the budget");

            for (long long idx = 0; idx < tuple_count; idx++) {
                std::vector<int> tuple(group.size());
                long long rem = idx;
                for (std::size_t i = 0; i < group.size(); i++) {
                    tuple[i] = choices[i][rem % choices[i].size()];
                    rem /= choices[i].size();
                }
                if (!inst.reuse) {
                    std::set<int> seen;
                    bool dup = false;
                    for (int w : tuple)
                        if (w != kEmpty && !seen.insert(w).second) dup = true;
                    if (dup) continue;
                }
                // letters imposed by the guessed words (same-orientation slots
                // never share cells, so no internal conflicts arise)
                std::map<Cell, char> imposed;
                std::set<int> used;
                Assignment a = Assignment::all_empty(n);
                for (std::size_t i = 0; i < group.size(); i++) {
                    if (tuple[i] == kEmpty) continue;
                    a.word_of[group[i]] = tuple[i];
                    used.insert(tuple[i]);
                    const Slot& s = grid.slot(group[i]);
                    const std::string& word = inst.dict.word(tuple[i]);
                    for (int off = 1; off <= s.length; off++)
                        imposed[s.cell_at(off)] = word[off - 1];
                }
                if (inst.reuse) {
                    for (int slot : complete_pool)
                        a.word_of[slot] = greedy_pick(inst, slot, fit_lists[slot], imposed);
                } else {
                    matching::WeightedBipartiteGraph g;
                    g.n_left = (int)complete_pool.size();
                    g.n_right = (int)inst.dict.size();
                    for (int li = 0; li < (int)complete_pool.size(); li++) {
                        int slot = complete_pool[li];
                        long long reduction = 0;
                        for (int sci : grid.shared_of(slot)) {
                            const SharedCell& sc = grid.shared_cells()[sci];
                            int other = sc.hslot == slot ? sc.vslot : sc.hslot;
                            if (a.word_of[other] != kEmpty)
                                reduction = checked_add(reduction,
                                                        inst.letter_weight(imposed.at(sc.cell)));
                        }
                        for (int w : fit_lists[slot]) {
                            if (used.count(w)) continue;
                            if (!fits(grid.slot(slot), inst.dict.word(w), inst.prefills)) continue;
                            if (!fits(grid.slot(slot), inst.dict.word(w), imposed)) continue;
                            g.add_edge(li, w, inst.word_weight(w) - reduction);
                        }
                    }
                    matching::Matching m = matching::max_weight_matching(g);
                    for (auto& [li, w] : m.edges) a.word_of[complete_pool[li]] = w;
                }
                EvalResult ev = evaluate(inst, a);
                if (!ev.valid) continue;
                best.offer(ev.weight, a);
            }
        }
    };

    run_pass(vs, hs, params.kv, params.rv);
    run_pass(hs, vs, params.kh, params.rh);

    Result out;
    out.params = params;
    out.certificate.epsilon = eps;
    out.certificate.n = n;
    // 1/2 + 1/(2(eps n + 1)) = (p n + 2 q) / (2 (p n + q)) with eps = p/q
    out.certificate.bound_num = checked_add(checked_mul(eps.num, n), 2 * eps.den);
    out.certificate.bound_den = checked_mul(2, checked_add(checked_mul(eps.num, n), eps.den));
    out.solve.stats.candidates = candidates;
    if (best.has) {
        out.solve.weight = best.weight;
        out.solve.best = best.a;
        if (best.a.complete()) out.solve.best_complete = {best.weight, best.a};
    } else {
        out.solve.best = Assignment::all_empty(n);
        out.solve.weight = evaluate(inst, out.solve.best).weight;
    }
    return out;
}

}  // namespace xword::approx
