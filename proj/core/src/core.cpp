#include "xword/core.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace xword {

const char* errc_name(Errc e) {
    switch (e) {
        case Errc::OverlapSameOrientation: return "OverlapSameOrientation";
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::LengthTooSmall: return "LengthTooSmall";
        case Errc::ValidationError: return "ValidationError";
        case Errc::UnknownLetter: return "UnknownLetter";
        case Errc::UnknownSlot: return "UnknownSlot";
        case Errc::UnknownWord: return "UnknownWord";
        case Errc::InvalidAssignment: return "InvalidAssignment";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::ReuseRequired: return "ReuseRequired";
        case Errc::NotAVertexCover: return "NotAVertexCover";
        case Errc::TooLargeForExact: return "TooLargeForExact";
        case Errc::InvalidEpsilon: return "InvalidEpsilon";
        case Errc::Overflow: return "Overflow";
        case Errc::BadSum: return "BadSum";
        case Errc::EdgeCountEqualsK: return "EdgeCountEqualsK";
        case Errc::IsolatedVertex: return "IsolatedVertex";
        case Errc::NotRestrictedForm: return "NotRestrictedForm";
        case Errc::MalformedWitness: return "MalformedWitness";
        case Errc::WitnessRejected: return "WitnessRejected";
    }
    return "Error";
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "integer addition overflow");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "integer multiplication overflow");
    return r;
}

Alphabet::Alphabet(std::string letters, std::map<char, long long> weights)
    : letters_(std::move(letters)), weights_(std::move(weights)) {
    if (letters_.empty()) fail(Errc::ValidationError, "alphabet must contain at least one letter");
    std::set<char> seen;
    for (char c : letters_) {
        if (!seen.insert(c).second)
            fail(Errc::ValidationError, std::string("duplicate letter '") + c + "'");
    }
    for (auto& [c, w] : weights_) {
        if (!seen.count(c)) fail(Errc::UnknownLetter, std::string("weight for unknown letter '") + c + "'");
        if (w < 0) fail(Errc::ValidationError, "letter weights must be non-negative");
    }
    for (char c : letters_) weights_.try_emplace(c, 0);
}

bool Alphabet::contains(char c) const { return weights_.count(c) != 0; }

long long Alphabet::weight(char c) const {
    auto it = weights_.find(c);
    if (it == weights_.end()) fail(Errc::UnknownLetter, std::string("letter '") + c + "'");
    return it->second;
}

bool Slot::contains(Cell c) const { return offset_of(c) != 0; }

int Slot::offset_of(Cell c) const {
    if (dir == Orientation::H) {
        if (c.row != start.row || c.col < start.col || c.col >= start.col + length) return 0;
        return c.col - start.col + 1;
    }
    if (c.col != start.col || c.row < start.row || c.row >= start.row + length) return 0;
    return c.row - start.row + 1;
}

int Grid::index_of(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? -1 : it->second;
}

Grid validate_grid(std::vector<Slot> slots) {
    std::sort(slots.begin(), slots.end(),
              [](const Slot& a, const Slot& b) { return a.id < b.id; });
    Grid g;
    for (int i = 0; i < (int)slots.size(); i++) {
        const Slot& s = slots[i];
        if (s.id.empty()) fail(Errc::ValidationError, "empty slot id");
        if (s.length < 2) fail(Errc::LengthTooSmall, "slot '" + s.id + "' has length " + std::to_string(s.length));
        if (s.start.row < 1 || s.start.col < 1)
            fail(Errc::ValidationError, "slot '" + s.id + "' starts outside the grid");
        if (!g.by_id_.emplace(s.id, i).second) fail(Errc::DuplicateId, "slot id '" + s.id + "'");
    }
    g.slots_ = std::move(slots);

    // cell -> (h slot, v slot) occupancy
    std::map<Cell, std::pair<int, int>> occ;
    for (int i = 0; i < (int)g.slots_.size(); i++) {
        const Slot& s = g.slots_[i];
        for (int off = 1; off <= s.length; off++) {
            Cell c = s.cell_at(off);
            auto& slot_pair = occ.try_emplace(c, std::pair<int, int>{-1, -1}).first->second;
            int& side = s.dir == Orientation::H ? slot_pair.first : slot_pair.second;
            if (side != -1)
                fail(Errc::OverlapSameOrientation,
                     "slots '" + g.slots_[side].id + "' and '" + s.id + "' share cell (" +
                         std::to_string(c.row) + "," + std::to_string(c.col) + ")");
            side = i;
        }
    }
    g.shared_of_.assign(g.slots_.size(), {});
    for (auto& [cell, hv] : occ) {
        g.cells_.push_back(cell);
        if (hv.first != -1 && hv.second != -1) {
            SharedCell sc;
            sc.cell = cell;
            sc.hslot = hv.first;
            sc.hpos = g.slots_[hv.first].offset_of(cell);
            sc.vslot = hv.second;
            sc.vpos = g.slots_[hv.second].offset_of(cell);
            int idx = (int)g.shared_.size();
            g.shared_.push_back(sc);
            g.shared_of_[sc.hslot].push_back(idx);
            g.shared_of_[sc.vslot].push_back(idx);
        }
    }
    return g;
}

Dictionary::Dictionary(std::vector<std::string> words, const Alphabet& alphabet) {
    std::sort(words.begin(), words.end());
    for (std::size_t i = 0; i < words.size(); i++) {
        if (words[i].empty()) fail(Errc::ValidationError, "empty word");
        if (i > 0 && words[i] == words[i - 1])
            fail(Errc::ValidationError, "duplicate word '" + words[i] + "'");
        for (char c : words[i])
            if (!alphabet.contains(c))
                fail(Errc::UnknownLetter, std::string("word letter '") + c + "' not in alphabet");
    }
    words_ = std::move(words);
}

int Dictionary::index_of(std::string_view w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w) return -1;
    return (int)(it - words_.begin());
}

long long Instance::word_weight(int w) const {
    long long total = 0;
    for (char c : dict.word(w)) total = checked_add(total, alphabet.weight(c));
    return total;
}

Instance make_instance(Grid grid, Alphabet alphabet, Dictionary dict,
                       std::map<Cell, char> prefills, bool reuse) {
    Instance inst{std::move(grid), std::move(alphabet), std::move(dict), std::move(prefills), reuse};
    for (auto& [cell, letter] : inst.prefills) {
        if (!inst.alphabet.contains(letter))
            fail(Errc::UnknownLetter, std::string("prefill letter '") + letter + "'");
        bool inside = std::binary_search(inst.grid.cells().begin(), inst.grid.cells().end(), cell);
        if (!inside)
            fail(Errc::ValidationError, "prefill at (" + std::to_string(cell.row) + "," +
                                            std::to_string(cell.col) + ") lies in no slot");
    }
    return inst;
}

bool Assignment::complete() const {
    return std::all_of(word_of.begin(), word_of.end(), [](int w) { return w != kEmpty; });
}

bool assignment_less(const Assignment& a, const Assignment& b) {
    auto key = [](int w) { return w == kEmpty ? std::numeric_limits<int>::max() : w; };
    for (std::size_t i = 0; i < a.word_of.size() && i < b.word_of.size(); i++) {
        if (key(a.word_of[i]) != key(b.word_of[i])) return key(a.word_of[i]) < key(b.word_of[i]);
    }
    return a.word_of.size() < b.word_of.size();
}

EvalResult evaluate(const Instance& inst, const Assignment& a) {
    const Grid& grid = inst.grid;
    if (a.word_of.size() != grid.size())
        fail(Errc::UnknownSlot, "assignment covers " + std::to_string(a.word_of.size()) +
                                    " slots, grid has " + std::to_string(grid.size()));
    EvalResult res;
    std::map<Cell, char> letters;
    std::set<int> used;
    for (int i = 0; i < (int)grid.size(); i++) {
        int w = a.word_of[i];
        if (w == kEmpty) continue;
        if (w < 0 || w >= (int)inst.dict.size())
            fail(Errc::UnknownWord, "word index " + std::to_string(w));
        const Slot& s = grid.slot(i);
        const std::string& word = inst.dict.word(w);
        if ((int)word.size() != s.length) {
            res.reason = "word '" + word + "' does not fit slot '" + s.id + "'";
            return res;
        }
        if (!inst.reuse && !used.insert(w).second) {
            res.reason = "word '" + word + "' used more than once";
            return res;
        }
        for (int off = 1; off <= s.length; off++) {
            Cell c = s.cell_at(off);
            char letter = word[off - 1];
            auto [it, fresh] = letters.emplace(c, letter);
            if (!fresh && it->second != letter) {
                res.reason = "conflict at (" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
                return res;
            }
            auto pf = inst.prefills.find(c);
            if (pf != inst.prefills.end() && pf->second != letter) {
                res.reason = "prefill conflict at (" + std::to_string(c.row) + "," +
                             std::to_string(c.col) + ")";
                return res;
            }
        }
    }
    res.valid = true;
    for (auto& [cell, letter] : letters) {
        res.weight = checked_add(res.weight, inst.alphabet.weight(letter));
        res.covered.emplace_back(cell, letter);
    }
    return res;
}

bool is_complete_fill(const Instance& inst, const Assignment& a) {
    EvalResult r = evaluate(inst, a);
    if (!r.valid) fail(Errc::InvalidAssignment, r.reason);
    return a.complete();
}

bool fits(const Slot& slot, std::string_view word, const std::map<Cell, char>& fixed) {
    if ((int)word.size() != slot.length) return false;
    for (int off = 1; off <= slot.length; off++) {
        auto it = fixed.find(slot.cell_at(off));
        if (it != fixed.end() && it->second != word[off - 1]) return false;
    }
    return true;
}

GridGraph grid_graph(const Grid& grid) {
    GridGraph g;
    g.n = (int)grid.size();
    g.adj.assign(g.n, {});
    for (const SharedCell& sc : grid.shared_cells()) {
        g.edges.emplace_back(sc.hslot, sc.vslot);
        g.adj[sc.hslot].push_back(sc.vslot);
        g.adj[sc.vslot].push_back(sc.hslot);
    }
    return g;
}

GraphClassification classify_graph(const Grid& grid, const GridGraph& g) {
    GraphClassification c;
    std::vector<int> deg(g.n, 0);
    for (auto& [u, v] : g.edges) {
        deg[u]++;
        deg[v]++;
    }
    c.max_degree = g.n == 0 ? 0 : *std::max_element(deg.begin(), deg.end());
    c.is_matching = c.max_degree <= 1;

    std::vector<int> comp(g.n, -1);
    c.is_union_of_stars = true;
    for (int s = 0; s < g.n; s++) {
        if (comp[s] != -1) continue;
        c.components++;
        std::vector<int> stack{s}, members;
        comp[s] = s;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int v : g.adj[u])
                if (comp[v] == -1) {
                    comp[v] = s;
                    stack.push_back(v);
                }
        }
        // A component is a star iff some vertex is an endpoint of all of its
        // edges and every other vertex has degree <= 1.
        long long comp_edges = 0;
        int center = members[0];
        for (int u : members) {
            comp_edges += deg[u];
            if (deg[u] > deg[center]) center = u;
        }
        comp_edges /= 2;
        bool star = deg[center] == comp_edges;
        for (int u : members)
            if (u != center && deg[u] > 1) star = false;
        if (!star) c.is_union_of_stars = false;
    }

    std::vector<int> hside, vside;
    for (int i = 0; i < g.n; i++) {
        if (deg[i] == 0) continue;
        (grid.slot(i).dir == Orientation::H ? hside : vside).push_back(i);
    }
    c.vertex_cover_hint = hside.size() <= vside.size() ? hside : vside;
    return c;
}

std::string render_grid(const Instance& inst, const Assignment* a) {
    int maxr = 0, maxc = 0;
    for (Cell c : inst.grid.cells()) {
        maxr = std::max(maxr, c.row);
        maxc = std::max(maxc, c.col);
    }
    std::vector<std::string> rows(maxr, std::string(maxc, '#'));
    for (Cell c : inst.grid.cells()) rows[c.row - 1][c.col - 1] = '.';
    for (auto& [cell, letter] : inst.prefills) rows[cell.row - 1][cell.col - 1] = letter;
    if (a) {
        EvalResult r = evaluate(inst, *a);
        for (auto& [cell, letter] : r.covered) rows[cell.row - 1][cell.col - 1] = letter;
    }
    std::ostringstream out;
    for (auto& row : rows) out << row << "\n";
    return out.str();
}

}  // namespace xword
