#include "xword/treewidth.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace xword::tw {

int TreeDecomposition::width() const {
    std::size_t mx = 0;
    for (const auto& b : bags) mx = std::max(mx, b.size());
    return (int)mx - 1;
}

int NiceTreeDecomposition::width() const {
    std::size_t mx = 0;
    for (const auto& n : nodes) mx = std::max(mx, n.bag.size());
    return (int)mx - 1;
}

namespace {

// Gavril-style decomposition from an elimination order: the bag of v is v
// plus its neighbors in the running fill graph; each bag hangs off the bag
// of its earliest-eliminated surviving neighbor.
TreeDecomposition build_from_order(const GridGraph& g, const std::vector<int>& order) {
    int n = g.n;
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<int>> adj(n);
    for (auto& [u, v] : g.edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<int> pos(n);
    for (int i = 0; i < n; i++) pos[order[i]] = i;

    td.bags.resize(n);
    for (int i = 0; i < n; i++) {
        int v = order[i];
        std::vector<int> nb(adj[v].begin(), adj[v].end());
        td.bags[i] = nb;
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
        for (int a : nb)
            for (int b : nb)
                if (a != b) adj[a].insert(b);
        for (int a : nb) adj[a].erase(v);
        adj[v].clear();
        if (!nb.empty()) {
            int earliest = *std::min_element(nb.begin(), nb.end(),
                                             [&](int a, int b) { return pos[a] < pos[b]; });
            td.edges.emplace_back(i, pos[earliest]);
        } else if (i + 1 < n) {
            td.edges.emplace_back(i, i + 1);
        }
    }

    // drop bags contained in a tree neighbor
    bool changed = true;
    while (changed && td.bags.size() > 1) {
        changed = false;
        for (auto& [a, b] : td.edges) {
            int sub = -1, super = -1;
            if (std::includes(td.bags[b].begin(), td.bags[b].end(), td.bags[a].begin(),
                              td.bags[a].end())) {
                sub = a;
                super = b;
            } else if (std::includes(td.bags[a].begin(), td.bags[a].end(), td.bags[b].begin(),
                                     td.bags[b].end())) {
                sub = b;
                super = a;
            }
            if (sub < 0) continue;
            std::vector<std::pair<int, int>> new_edges;
            for (auto& [x, y] : td.edges) {
                int nx = x == sub ? super : x, ny = y == sub ? super : y;
                if (nx != ny) new_edges.emplace_back(nx, ny);
            }
            td.edges = std::move(new_edges);
            td.bags.erase(td.bags.begin() + sub);
            for (auto& [x, y] : td.edges) {
                if (x > sub) x--;
                if (y > sub) y--;
            }
            changed = true;
            break;
        }
    }
    return td;
}

std::vector<int> greedy_order(const GridGraph& g, bool min_fill) {
    int n = g.n;
    std::vector<std::set<int>> adj(n);
    for (auto& [u, v] : g.edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> gone(n, 0);
    std::vector<int> order;
    for (int step = 0; step < n; step++) {
        int best = -1;
        long long best_score = -1;
        for (int v = 0; v < n; v++) {
            if (gone[v]) continue;
            long long score;
            if (min_fill) {
                score = 0;
                std::vector<int> nb(adj[v].begin(), adj[v].end());
                for (std::size_t i = 0; i < nb.size(); i++)
                    for (std::size_t j = i + 1; j < nb.size(); j++)
                        if (!adj[nb[i]].count(nb[j])) score++;
            } else {
                score = (long long)adj[v].size();
            }
            if (best < 0 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        order.push_back(best);
        gone[best] = 1;
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (int a : nb)
            for (int b : nb)
                if (a != b) adj[a].insert(b);
        for (int a : nb) adj[a].erase(best);
        adj[best].clear();
    }
    return order;
}

// Number of vertices outside S + {v} reachable from v through S: this is
// v's degree at the moment it is eliminated after S in the fill graph.
int reach_degree(const GridGraph& g, int v, unsigned s_mask) {
    unsigned seen = 1u << v;
    std::vector<int> stack{v};
    int degree = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : g.adj[u]) {
            if (seen & (1u << w)) continue;
            seen |= 1u << w;
            if (s_mask & (1u << w)) stack.push_back(w);
            else degree++;
        }
    }
    return degree;
}

std::vector<int> exact_order(const GridGraph& g) {
    int n = g.n;
    if (n > 12) fail(Errc::TooLargeForExact, "exact decomposition supports at most 12 vertices");
    unsigned full = n == 0 ? 0 : (1u << n) - 1;
    std::vector<int> q(full + 1, 0);
    q[0] = -1;
    for (unsigned s = 1; s <= full; s++) {
        int best = INT32_MAX;
        for (int v = 0; v < n; v++) {
            if (!(s & (1u << v))) continue;
            unsigned rest = s & ~(1u << v);
            best = std::min(best, std::max(q[rest], reach_degree(g, v, rest)));
        }
        q[s] = best;
        if (full == 0) break;
    }
    std::vector<int> order(n);
    unsigned s = full;
    for (int i = n - 1; i >= 0; i--) {
        for (int v = 0; v < n; v++) {
            if (!(s & (1u << v))) continue;
            unsigned rest = s & ~(1u << v);
            if (std::max(q[rest], reach_degree(g, v, rest)) == q[s]) {
                order[i] = v;
                s = rest;
                break;
            }
        }
    }
    return order;
}

}  // namespace

TreeDecomposition tree_decomposition(const GridGraph& g, Method method) {
    std::vector<int> order;
    switch (method) {
        case Method::MinFill: order = greedy_order(g, true); break;
        case Method::MinDegree: order = greedy_order(g, false); break;
        case Method::ExactSmall: order = exact_order(g); break;
    }
    TreeDecomposition td = build_from_order(g, order);
    std::string why;
    if (!valid_decomposition(g, td, &why))
        fail(Errc::ValidationError, "internal: produced decomposition invalid: " + why);
    return td;
}

bool valid_decomposition(const GridGraph& g, const TreeDecomposition& td, std::string* why) {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    int nb = (int)td.bags.size();
    if (nb == 0) return bad("no bags");
    if ((int)td.edges.size() != nb - 1) return bad("tree edge count");
    std::vector<std::vector<int>> tadj(nb);
    for (auto& [a, b] : td.edges) {
        if (a < 0 || a >= nb || b < 0 || b >= nb || a == b) return bad("bad tree edge");
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    std::vector<char> seen(nb, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : tadj[u])
            if (!seen[v]) {
                seen[v] = 1;
                count++;
                stack.push_back(v);
            }
    }
    if (count != nb) return bad("tree not connected");

    std::vector<char> covered(g.n, 0);
    for (const auto& bag : td.bags)
        for (int v : bag) {
            if (v < 0 || v >= g.n) return bad("bag vertex out of range");
            covered[v] = 1;
        }
    for (int v = 0; v < g.n; v++)
        if (!covered[v]) return bad("vertex " + std::to_string(v) + " in no bag");
    for (auto& [u, v] : g.edges) {
        bool found = false;
        for (const auto& bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) {
                found = true;
                break;
            }
        if (!found) return bad("edge not covered");
    }
    for (int v = 0; v < g.n; v++) {
        std::vector<int> holders;
        for (int i = 0; i < nb; i++)
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) holders.push_back(i);
        std::set<int> holder_set(holders.begin(), holders.end());
        std::vector<int> st{holders[0]};
        std::set<int> vis{holders[0]};
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (int w : tadj[u])
                if (holder_set.count(w) && !vis.count(w)) {
                    vis.insert(w);
                    st.push_back(w);
                }
        }
        if (vis.size() != holders.size()) return bad("vertex subtree disconnected");
    }
    return true;
}

// ------------------------------------------------------------- nice form

namespace {

struct NiceBuilder {
    const TreeDecomposition& td;
    std::vector<std::vector<int>> adj;
    NiceTreeDecomposition out;

    explicit NiceBuilder(const TreeDecomposition& t) : td(t) {
        adj.resize(td.bags.size());
        for (auto& [a, b] : td.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }

    int add(NiceNode n) {
        out.nodes.push_back(std::move(n));
        return (int)out.nodes.size() - 1;
    }

    int leaf_chain(const std::vector<int>& target) {
        int cur = add({NodeKind::Leaf, -1, {}, -1, -1});
        std::vector<int> bag;
        for (int v : target) {
            bag.push_back(v);
            cur = add({NodeKind::Introduce, v, bag, cur, -1});
        }
        return cur;
    }

    // chain from an existing node (bag = from) to bag = to
    int morph(int node, std::vector<int> from, const std::vector<int>& to) {
        for (int v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            std::vector<int> nb;
            for (int u : out.nodes[node].bag)
                if (u != v) nb.push_back(u);
            node = add({NodeKind::Forget, v, nb, node, -1});
        }
        for (int v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            std::vector<int> nb = out.nodes[node].bag;
            nb.insert(std::lower_bound(nb.begin(), nb.end(), v), v);
            node = add({NodeKind::Introduce, v, nb, node, -1});
        }
        return node;
    }

    int build(int bag, int parent) {
        std::vector<int> kids;
        for (int c : adj[bag])
            if (c != parent) kids.push_back(c);
        if (kids.empty()) return leaf_chain(td.bags[bag]);
        std::vector<int> parts;
        for (int c : kids) parts.push_back(morph(build(c, bag), td.bags[c], td.bags[bag]));
        int acc = parts[0];
        for (std::size_t i = 1; i < parts.size(); i++)
            acc = add({NodeKind::Join, -1, td.bags[bag], acc, parts[i]});
        return acc;
    }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root) {
    if (td.bags.empty()) fail(Errc::ValidationError, "decomposition has no bags");
    if (root < 0 || root >= (int)td.bags.size())
        fail(Errc::ValidationError, "nice-form root out of range");
    NiceBuilder b(td);
    int top = b.build(root, -1);
    top = b.morph(top, td.bags[root], {});
    b.out.root = top;
    return std::move(b.out);
}

bool valid_nice(const GridGraph& g, const NiceTreeDecomposition& ntd, std::string* why) {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (ntd.root < 0 || ntd.root >= (int)ntd.nodes.size()) return bad("bad root");
    std::vector<int> parent(ntd.nodes.size(), -1);
    for (int i = 0; i < (int)ntd.nodes.size(); i++) {
        const NiceNode& n = ntd.nodes[i];
        for (int c : {n.child0, n.child1}) {
            if (c == -1) continue;
            if (c < 0 || c >= i) return bad("children must precede parents");
            if (parent[c] != -1) return bad("node with two parents");
            parent[c] = i;
        }
        auto diff_one = [&](const std::vector<int>& big, const std::vector<int>& small, int v) {
            if (big.size() != small.size() + 1 || v < 0) return false;
            std::vector<int> merged = small;
            merged.insert(std::lower_bound(merged.begin(), merged.end(), v), v);
            return merged == big;
        };
        switch (n.kind) {
            case NodeKind::Leaf:
                if (!n.bag.empty() || n.child0 != -1 || n.child1 != -1) return bad("leaf shape");
                break;
            case NodeKind::Introduce:
                if (n.child0 == -1 || n.child1 != -1) return bad("introduce children");
                if (!diff_one(n.bag, ntd.nodes[n.child0].bag, n.vertex))
                    return bad("introduce must add exactly its vertex");
                break;
            case NodeKind::Forget:
                if (n.child0 == -1 || n.child1 != -1) return bad("forget children");
                if (!diff_one(ntd.nodes[n.child0].bag, n.bag, n.vertex))
                    return bad("forget must drop exactly its vertex");
                break;
            case NodeKind::Join:
                if (n.child0 == -1 || n.child1 == -1) return bad("join children");
                if (ntd.nodes[n.child0].bag != n.bag || ntd.nodes[n.child1].bag != n.bag)
                    return bad("join bags must match");
                break;
        }
    }
    if (!ntd.nodes[ntd.root].bag.empty()) return bad("root bag must be empty");
    for (int i = 0; i < (int)ntd.nodes.size(); i++)
        if (i != ntd.root && parent[i] == -1) return bad("forest, not a tree");

    TreeDecomposition td;
    for (const auto& n : ntd.nodes) td.bags.push_back(n.bag);
    for (int i = 0; i < (int)ntd.nodes.size(); i++)
        if (i != ntd.root) td.edges.emplace_back(i, parent[i]);
    std::string inner;
    if (!valid_decomposition(g, td, &inner)) return bad("underlying decomposition: " + inner);
    return true;
}

// -------------------------------------------------------------------- DP

namespace {

struct Row {
    long long w = 0;
    long long wm = 0;
};

using Table = std::map<std::vector<int>, Row>;

struct Dp {
    const Instance& inst;
    const NiceTreeDecomposition& ntd;
    bool allow_empty;
    long long budget;
    long long rows_created = 0;
    long long attempts = 0;

    std::vector<Table> tables;
    std::vector<std::map<std::vector<int>, int>> forget_choice;
    Instrumentation* instr;

    Dp(const Instance& i, const NiceTreeDecomposition& t, bool empty_ok, long long b,
       Instrumentation* ins)
        : inst(i), ntd(t), allow_empty(empty_ok), budget(b), instr(ins) {
        tables.resize(ntd.nodes.size());
        forget_choice.resize(ntd.nodes.size());
    }

    void bump() {
        if (++rows_created > budget) fail(Errc::BudgetExceeded, "dp table budget exhausted");
    }

    // letter imposed by word `d` on the shared cell index sci from slot u
    char letter_at(int u, int sci, int d) const {
        const SharedCell& sc = inst.grid.shared_cells()[sci];
        int off = sc.hslot == u ? sc.hpos : sc.vpos;
        return inst.dict.word(d)[off - 1];
    }

    // weight delta of placing d on u against the placed words of `others`
    long long delta(int u, int d, const std::vector<int>& bag,
                    const std::vector<int>& sigma) const {
        long long dw = inst.word_weight(d);
        for (int sci : inst.grid.shared_of(u)) {
            const SharedCell& sc = inst.grid.shared_cells()[sci];
            int other = sc.hslot == u ? sc.vslot : sc.hslot;
            auto it = std::lower_bound(bag.begin(), bag.end(), other);
            if (it == bag.end() || *it != other) continue;
            int oword = sigma[it - bag.begin()];
            if (oword == kEmpty) continue;
            dw -= inst.letter_weight(inst.dict.word(d)[(sc.hslot == u ? sc.hpos : sc.vpos) - 1]);
        }
        return dw;
    }

    bool consistent(int u, int d, const std::vector<int>& bag,
                    const std::vector<int>& sigma) const {
        const Slot& slot = inst.grid.slot(u);
        if ((int)inst.dict.word(d).size() != slot.length) return false;
        if (!fits(slot, inst.dict.word(d), inst.prefills)) return false;
        for (int sci : inst.grid.shared_of(u)) {
            const SharedCell& sc = inst.grid.shared_cells()[sci];
            int other = sc.hslot == u ? sc.vslot : sc.hslot;
            auto it = std::lower_bound(bag.begin(), bag.end(), other);
            if (it == bag.end() || *it != other) continue;
            int oword = sigma[it - bag.begin()];
            if (oword == kEmpty) continue;
            char mine = inst.dict.word(d)[(sc.hslot == u ? sc.hpos : sc.vpos) - 1];
            char theirs = letter_at(other, sci, oword);
            if (mine != theirs) return false;
        }
        return true;
    }

    void run() {
        int m = (int)inst.dict.size();
        for (int ni = 0; ni < (int)ntd.nodes.size(); ni++) {
            const NiceNode& node = ntd.nodes[ni];
            Table& table = tables[ni];
            switch (node.kind) {
                case NodeKind::Leaf:
                    table[{}] = Row{0, 0};
                    bump();
                    break;
                case NodeKind::Introduce: {
                    const Table& child = tables[node.child0];
                    const std::vector<int>& cbag = ntd.nodes[node.child0].bag;
                    int u = node.vertex;
                    std::size_t upos =
                        std::lower_bound(node.bag.begin(), node.bag.end(), u) - node.bag.begin();
                    for (const auto& [csigma, crow] : child) {
                        for (int d = -1; d < m; d++) {
                            attempts++;
                            if (d == kEmpty && !allow_empty) continue;
                            long long dw = 0;
                            if (d != kEmpty) {
                                if (!consistent(u, d, cbag, csigma)) continue;
                                dw = delta(u, d, cbag, csigma);
                            }
                            std::vector<int> sigma = csigma;
                            sigma.insert(sigma.begin() + upos, d);
                            table[sigma] = Row{crow.w + dw, crow.wm + dw};
                            bump();
                        }
                    }
                    break;
                }
                case NodeKind::Forget: {
                    const Table& child = tables[node.child0];
                    const std::vector<int>& cbag = ntd.nodes[node.child0].bag;
                    int u = node.vertex;
                    std::size_t upos =
                        std::lower_bound(cbag.begin(), cbag.end(), u) - cbag.begin();
                    for (const auto& [csigma, crow] : child) {
                        int d = csigma[upos];
                        std::vector<int> sigma = csigma;
                        sigma.erase(sigma.begin() + upos);
                        long long dw = d == kEmpty ? 0 : delta(u, d, node.bag, sigma);
                        Row row{crow.w - dw, crow.wm};
                        auto [it, fresh] = table.emplace(sigma, row);
                        if (fresh) {
                            bump();
                            forget_choice[ni][sigma] = d;
                        } else if (row.wm > it->second.wm) {
                            it->second = row;
                            forget_choice[ni][sigma] = d;
                        }
                    }
                    break;
                }
                case NodeKind::Join: {
                    const Table& c0 = tables[node.child0];
                    const Table& c1 = tables[node.child1];
                    for (const auto& [sigma, r0] : c0) {
                        auto it = c1.find(sigma);
                        if (it == c1.end()) continue;
                        table[sigma] = Row{r0.w, r0.wm + it->second.wm - r0.w};
                        bump();
                    }
                    break;
                }
            }
            if (instr) {
                instr->table_sizes.emplace_back((int)node.bag.size(), table.size());
                if (instr->capture_tables) {
                    std::vector<DpEntry> entries;
                    for (const auto& [sigma, row] : table)
                        entries.push_back({sigma, row.w, row.wm});
                    instr->tables.push_back(std::move(entries));
                    instr->node_bags.push_back(node.bag);
                }
            }
        }
    }

    void reconstruct(int ni, const std::vector<int>& sigma, Assignment& out) const {
        const NiceNode& node = ntd.nodes[ni];
        switch (node.kind) {
            case NodeKind::Leaf:
                return;
            case NodeKind::Introduce: {
                std::size_t upos =
                    std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) -
                    node.bag.begin();
                out.word_of[node.vertex] = sigma[upos];
                std::vector<int> csigma = sigma;
                csigma.erase(csigma.begin() + upos);
                reconstruct(node.child0, csigma, out);
                return;
            }
            case NodeKind::Forget: {
                const std::vector<int>& cbag = ntd.nodes[node.child0].bag;
                std::size_t upos =
                    std::lower_bound(cbag.begin(), cbag.end(), node.vertex) - cbag.begin();
                std::vector<int> csigma = sigma;
                csigma.insert(csigma.begin() + upos, forget_choice[ni].at(sigma));
                reconstruct(node.child0, csigma, out);
                return;
            }
            case NodeKind::Join:
                reconstruct(node.child0, sigma, out);
                reconstruct(node.child1, sigma, out);
                return;
        }
    }
};

NiceTreeDecomposition decompose(const Instance& inst) {
    GridGraph g = grid_graph(inst.grid);
    TreeDecomposition td = tree_decomposition(g, Method::MinFill);
    NiceTreeDecomposition ntd = make_nice(td, 0);
    std::string why;
    if (!valid_nice(g, ntd, &why)) fail(Errc::ValidationError, "internal: nice form invalid: " + why);
    return ntd;
}

}  // namespace

exact::SolveResult solve_treewidth(const Instance& inst, const exact::SolveOptions& opts,
                                   Instrumentation* instr) {
    if (!inst.reuse) fail(Errc::ReuseRequired, "the treewidth DP handles reuse mode only");
    NiceTreeDecomposition ntd = decompose(inst);
    Dp dp(inst, ntd, true, opts.budget, instr);
    dp.run();
    const Table& root = dp.tables[ntd.root];
    exact::SolveResult res;
    res.stats.nodes = dp.rows_created;
    res.stats.candidates = dp.attempts;
    if (instr) instr->extension_attempts = dp.attempts;
    res.best = Assignment::all_empty(inst.grid.size());
    auto it = root.find({});
    if (it != root.end()) {
        dp.reconstruct(ntd.root, {}, res.best);
        res.weight = it->second.wm;
        EvalResult check = evaluate(inst, res.best);
        if (!check.valid || check.weight != res.weight)
            fail(Errc::ValidationError, "internal: dp reconstruction mismatch");
        if (res.best.complete()) res.best_complete = {res.weight, res.best};
    }
    return res;
}

std::optional<Assignment> decide_treewidth(const Instance& inst, const exact::SolveOptions& opts,
                                           exact::SolveStats* stats) {
    if (!inst.reuse) fail(Errc::ReuseRequired, "the treewidth DP handles reuse mode only");
    NiceTreeDecomposition ntd = decompose(inst);
    Dp dp(inst, ntd, false, opts.budget, nullptr);
    dp.run();
    if (stats) {
        stats->nodes = dp.rows_created;
        stats->candidates = dp.attempts;
    }
    const Table& root = dp.tables[ntd.root];
    auto it = root.find({});
    if (it == root.end()) return std::nullopt;
    Assignment a = Assignment::all_empty(inst.grid.size());
    dp.reconstruct(ntd.root, {}, a);
    EvalResult check = evaluate(inst, a);
    if (!check.valid || !a.complete())
        fail(Errc::ValidationError, "internal: dp reconstruction mismatch");
    return a;
}

}  // namespace xword::tw
