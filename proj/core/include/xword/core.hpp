#ifndef XWORD_CORE_HPP
#define XWORD_CORE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xword/error.hpp"

namespace xword {

// A grid cell, 1-indexed, rows top to bottom, columns left to right.
struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

// Letters with non-negative integer weights. Letters keep the order in
// which they were declared; weights default to 0.
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(std::string letters, std::map<char, long long> weights);

    const std::string& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool contains(char c) const;
    long long weight(char c) const;
    const std::map<char, long long>& weights() const { return weights_; }

private:
    std::string letters_;
    std::map<char, long long> weights_;
};

enum class Orientation { H, V };

struct Slot {
    std::string id;
    Orientation dir = Orientation::H;
    Cell start;
    int length = 0;

    // offset is 1-indexed, like the positions used for shared cells
    Cell cell_at(int offset) const {
        return dir == Orientation::H ? Cell{start.row, start.col + offset - 1}
                                     : Cell{start.row + offset - 1, start.col};
    }
    bool contains(Cell c) const;
    int offset_of(Cell c) const;  // 1-indexed; 0 if not contained
};

// A cell lying in one horizontal and one vertical slot. Slots are stored as
// indices into Grid::slots(). hpos/vpos are 1-indexed offsets.
struct SharedCell {
    Cell cell;
    int hslot = -1;
    int hpos = 0;
    int vslot = -1;
    int vpos = 0;
};

// Validated slot geometry with derived indices. Slots are kept sorted by id;
// that order is the canonical slot order used everywhere (files, assignments,
// tie-breaking).
class Grid {
public:
    Grid() = default;

    const std::vector<Slot>& slots() const { return slots_; }
    std::size_t size() const { return slots_.size(); }
    const Slot& slot(int i) const { return slots_[i]; }
    int index_of(const std::string& id) const;  // -1 if absent

    const std::vector<SharedCell>& shared_cells() const { return shared_; }
    // Shared-cell indices touching a given slot.
    const std::vector<int>& shared_of(int slot) const { return shared_of_[slot]; }
    // All cells of the grid (union over slots), sorted.
    const std::vector<Cell>& cells() const { return cells_; }

    friend Grid validate_grid(std::vector<Slot> slots);

private:
    std::vector<Slot> slots_;
    std::map<std::string, int> by_id_;
    std::vector<SharedCell> shared_;
    std::vector<std::vector<int>> shared_of_;
    std::vector<Cell> cells_;
};

// Rejects duplicate ids, lengths < 2 and same-orientation overlaps.
Grid validate_grid(std::vector<Slot> slots);

// Words over an alphabet, pairwise distinct, canonically sorted.
class Dictionary {
public:
    Dictionary() = default;
    Dictionary(std::vector<std::string> words, const Alphabet& alphabet);

    const std::vector<std::string>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    const std::string& word(int i) const { return words_[i]; }
    int index_of(std::string_view w) const;  // -1 if absent

private:
    std::vector<std::string> words_;
};

struct Instance {
    Grid grid;
    Alphabet alphabet;
    Dictionary dict;
    std::map<Cell, char> prefills;
    bool reuse = true;

    long long word_weight(int w) const;
    long long letter_weight(char c) const { return alphabet.weight(c); }
};

// Checks prefill placement and letters; call after assembling the pieces.
Instance make_instance(Grid grid, Alphabet alphabet, Dictionary dict,
                       std::map<Cell, char> prefills, bool reuse);

// Word index per slot (canonical slot order); kEmpty leaves the slot blank.
inline constexpr int kEmpty = -1;

struct Assignment {
    std::vector<int> word_of;

    static Assignment all_empty(std::size_t n) { return Assignment{std::vector<int>(n, kEmpty)}; }
    bool complete() const;
};

// Total order used for tie-breaking: by slot, smaller word index first,
// EMPTY after every word.
bool assignment_less(const Assignment& a, const Assignment& b);

struct EvalResult {
    bool valid = false;
    long long weight = 0;
    std::vector<std::pair<Cell, char>> covered;  // sorted by cell
    std::string reason;                          // set when invalid
};

// Checks fits, crossing agreement, prefill agreement and (no-reuse) word
// distinctness; weight counts each covered cell once.
EvalResult evaluate(const Instance& inst, const Assignment& a);

bool is_complete_fill(const Instance& inst, const Assignment& a);

// true iff lengths match and every fixed cell of the slot agrees with the word.
bool fits(const Slot& slot, std::string_view word, const std::map<Cell, char>& fixed);

// Bipartite intersection graph of slots: one vertex per slot, one edge per
// shared cell.
struct GridGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // (hslot, vslot), aligned with Grid::shared_cells()
    std::vector<std::vector<int>> adj;
};

GridGraph grid_graph(const Grid& grid);

struct GraphClassification {
    bool is_matching = false;
    bool is_union_of_stars = false;
    int components = 0;
    int max_degree = 0;
    std::vector<int> vertex_cover_hint;  // slot indices, a valid vertex cover
};

GraphClassification classify_graph(const Grid& grid, const GridGraph& g);

// ASCII picture: '#' outside slots, '.' for blank slot cells, letters for
// cells written by the assignment or by prefills.
std::string render_grid(const Instance& inst, const Assignment* a = nullptr);

}  // namespace xword

#endif
