#include "xword/io.hpp"

#include <cctype>
#include <sstream>

namespace xword {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        number++;
        std::size_t first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#') continue;
        Line line{number, {}};
        std::istringstream ls(raw);
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        lines.push_back(std::move(line));
    }
    return lines;
}

long long parse_int(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(Errc::SyntaxError, "expected integer, got '" + tok + "'", line);
    }
}

char parse_letter(const std::string& tok, int line) {
    if (tok.size() != 1 || !std::isgraph((unsigned char)tok[0]) || tok[0] == '#')
        fail(Errc::SyntaxError, "expected a single letter, got '" + tok + "'", line);
    return tok[0];
}

void expect_arity(const Line& line, std::size_t n) {
    if (line.tokens.size() != n)
        fail(Errc::SyntaxError, "expected " + std::to_string(n - 1) + " arguments after '" +
                                    line.tokens[0] + "'", line.number);
}

}  // namespace

Instance parse_instance(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens != std::vector<std::string>{"XW", "1"})
        fail(Errc::SyntaxError, "missing 'XW 1' header", lines.empty() ? 1 : lines[0].number);

    std::string letters;
    std::map<char, long long> weights;
    bool reuse = true;
    std::vector<Slot> slots;
    std::map<Cell, char> prefills;
    std::vector<std::string> words;
    bool have_alphabet = false;

    for (std::size_t i = 1; i < lines.size(); i++) {
        const Line& line = lines[i];
        const std::string& kw = line.tokens[0];
        if (kw == "alphabet") {
            expect_arity(line, 2);
            letters = line.tokens[1];
            for (char c : letters)
                if (!std::isgraph((unsigned char)c) || c == '#')
                    fail(Errc::SyntaxError, "alphabet letters must be visible symbols other than '#'",
                         line.number);
            have_alphabet = true;
        } else if (kw == "weight") {
            expect_arity(line, 3);
            char c = parse_letter(line.tokens[1], line.number);
            weights[c] = parse_int(line.tokens[2], line.number);
        } else if (kw == "reuse") {
            expect_arity(line, 2);
            if (line.tokens[1] == "true") reuse = true;
            else if (line.tokens[1] == "false") reuse = false;
            else fail(Errc::SyntaxError, "reuse must be true or false", line.number);
        } else if (kw == "slot") {
            expect_arity(line, 6);
            Slot s;
            s.id = line.tokens[1];
            if (line.tokens[2] == "H") s.dir = Orientation::H;
            else if (line.tokens[2] == "V") s.dir = Orientation::V;
            else fail(Errc::SyntaxError, "orientation must be H or V", line.number);
            s.start.row = (int)parse_int(line.tokens[3], line.number);
            s.start.col = (int)parse_int(line.tokens[4], line.number);
            s.length = (int)parse_int(line.tokens[5], line.number);
            slots.push_back(std::move(s));
        } else if (kw == "prefill") {
            expect_arity(line, 4);
            Cell c{(int)parse_int(line.tokens[1], line.number),
                   (int)parse_int(line.tokens[2], line.number)};
            prefills[c] = parse_letter(line.tokens[3], line.number);
        } else if (kw == "word") {
            expect_arity(line, 2);
            words.push_back(line.tokens[1]);
        } else {
            fail(Errc::SyntaxError, "unknown directive '" + kw + "'", line.number);
        }
    }
    if (!have_alphabet) fail(Errc::SyntaxError, "missing alphabet line");

    Alphabet alphabet(letters, weights);
    Grid grid = validate_grid(std::move(slots));
    Dictionary dict(std::move(words), alphabet);
    return make_instance(std::move(grid), std::move(alphabet), std::move(dict),
                         std::move(prefills), reuse);
}

std::string write_instance(const Instance& inst, const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "XW 1\n";
    out << "alphabet " << inst.alphabet.letters() << "\n";
    for (char c : inst.alphabet.letters()) {
        long long w = inst.alphabet.weight(c);
        if (w != 0) out << "weight " << c << " " << w << "\n";
    }
    out << "reuse " << (inst.reuse ? "true" : "false") << "\n";
    for (const Slot& s : inst.grid.slots())
        out << "slot " << s.id << " " << (s.dir == Orientation::H ? "H" : "V") << " "
            << s.start.row << " " << s.start.col << " " << s.length << "\n";
    for (auto& [cell, letter] : inst.prefills)
        out << "prefill " << cell.row << " " << cell.col << " " << letter << "\n";
    for (const std::string& w : inst.dict.words()) out << "word " << w << "\n";
    return out.str();
}

Assignment parse_solution(const std::string& text, const Instance& inst) {
    Assignment a = Assignment::all_empty(inst.grid.size());
    std::vector<bool> seen(inst.grid.size(), false);
    for (const Line& line : tokenize(text)) {
        const std::string& kw = line.tokens[0];
        if (kw != "assign" && kw != "empty")
            fail(Errc::SyntaxError, "unknown directive '" + kw + "'", line.number);
        expect_arity(line, kw == "assign" ? 3u : 2u);
        int slot = inst.grid.index_of(line.tokens[1]);
        if (slot < 0) fail(Errc::UnknownSlot, "slot '" + line.tokens[1] + "'", line.number);
        if (seen[slot])
            fail(Errc::SyntaxError, "slot '" + line.tokens[1] + "' mentioned twice", line.number);
        seen[slot] = true;
        if (kw == "assign") {
            int w = inst.dict.index_of(line.tokens[2]);
            if (w < 0) fail(Errc::UnknownWord, "word '" + line.tokens[2] + "'", line.number);
            a.word_of[slot] = w;
        }
    }
    for (std::size_t i = 0; i < seen.size(); i++)
        if (!seen[i])
            fail(Errc::SyntaxError, "incomplete solution: slot '" + inst.grid.slot((int)i).id +
                                        "' not mentioned");
    return a;
}

std::string write_solution(const Instance& inst, const Assignment& a) {
    if (a.word_of.size() != inst.grid.size())
        fail(Errc::UnknownSlot, "assignment does not match the grid");
    std::ostringstream out;
    for (int i = 0; i < (int)inst.grid.size(); i++) {
        if (a.word_of[i] == kEmpty) out << "empty " << inst.grid.slot(i).id << "\n";
        else out << "assign " << inst.grid.slot(i).id << " " << inst.dict.word(a.word_of[i]) << "\n";
    }
    return out.str();
}

}  // namespace xword
