#include "xword/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace xword::gen {

namespace {

std::string pad_num(int v, int width) {
    std::string s = std::to_string(v);
    while ((int)s.size() < width) s.insert(s.begin(), '0');
    return s;
}

int digits(int v) { return (int)std::to_string(std::max(v, 1)).size(); }

int ceil_log2(long long v) {
    int s = 0;
    while ((1LL << s) < v) s++;
    return s;
}

std::vector<std::vector<std::string>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        std::size_t first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#') continue;
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

long long to_int(const std::string& tok) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(Errc::SyntaxError, "expected integer, got '" + tok + "'");
    }
}

Alphabet unit_alphabet(std::string letters) {
    std::map<char, long long> w;
    for (char c : letters) w[c] = 1;
    return Alphabet(std::move(letters), std::move(w));
}

}  // namespace

// --------------------------------------------------------------- parsers

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula f;
    std::istringstream in(text);
    std::string tok;
    bool have_header = false;
    std::vector<int> cur;
    while (in >> tok) {
        if (tok == "c" || tok[0] == 'c' || tok == "%") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            long long nv, nc;
            if (!(in >> fmt >> nv >> nc) || fmt != "cnf")
                fail(Errc::SyntaxError, "bad DIMACS header");
            f.num_vars = (int)nv;
            have_header = true;
            continue;
        }
        long long lit = to_int(tok);
        if (!have_header) fail(Errc::SyntaxError, "literal before DIMACS header");
        if (lit == 0) {
            if (cur.empty()) fail(Errc::ValidationError, "empty clause");
            f.clauses.push_back(cur);
            cur.clear();
        } else {
            if (std::abs(lit) > f.num_vars)
                fail(Errc::ValidationError, "literal out of range: " + tok);
            cur.push_back((int)lit);
        }
    }
    if (!cur.empty()) fail(Errc::SyntaxError, "clause not terminated by 0");
    if (!have_header) fail(Errc::SyntaxError, "missing DIMACS header");
    return f;
}

SimpleGraph parse_graph(const std::string& text) {
    SimpleGraph g;
    for (auto& toks : tokenize_lines(text)) {
        if (toks[0] == "v" && toks.size() == 2) {
            g.n = (int)to_int(toks[1]);
        } else if (toks[0] == "e" && toks.size() == 3) {
            int u = (int)to_int(toks[1]), v = (int)to_int(toks[2]);
            if (u == v) fail(Errc::ValidationError, "self-loop");
            if (u > v) std::swap(u, v);
            g.edges.emplace_back(u, v);
            g.n = std::max({g.n, u, v});
        } else {
            fail(Errc::SyntaxError, "expected 'v n' or 'e u v', got '" + toks[0] + "'");
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
        fail(Errc::ValidationError, "duplicate edge");
    return g;
}

std::vector<long long> parse_integer_list(const std::string& text) {
    std::vector<long long> out;
    for (auto& toks : tokenize_lines(text))
        for (auto& t : toks) out.push_back(to_int(t));
    return out;
}

UlcInstance parse_ulc(const std::string& text) {
    UlcInstance u;
    auto lines = tokenize_lines(text);
    std::size_t i = 0;
    while (i < lines.size()) {
        auto& toks = lines[i];
        if (toks[0] == "n" && toks.size() == 2) {
            u.n = (int)to_int(toks[1]);
            i++;
        } else if (toks[0] == "R" && toks.size() == 2) {
            u.R = (int)to_int(toks[1]);
            i++;
        } else if (toks[0] == "edge" && toks.size() == 3) {
            if (u.R <= 0) fail(Errc::SyntaxError, "R must be declared before edges");
            UlcEdge e;
            e.u = (int)to_int(toks[1]);
            e.v = (int)to_int(toks[2]);
            i++;
            for (int t = 0; t < u.R; t++) {
                if (i >= lines.size() || lines[i].size() != 1)
                    fail(Errc::SyntaxError, "expected permutation value line");
                e.perm.push_back((int)to_int(lines[i][0]));
                i++;
            }
            u.edges.push_back(std::move(e));
        } else {
            fail(Errc::SyntaxError, "unexpected line '" + toks[0] + "'");
        }
    }
    return u;
}

// --------------------------------------------------------- independent set

namespace {

struct IndsetLayout {
    const SimpleGraph& g;
    int k;
    int suffix_len;  // 0 in the reuse variant

    int E() const { return (int)g.edges.size(); }

    std::string vertex_word(int v) const {
        std::string w(2 * E() - 1, '0');
        for (int j = 1; j <= E(); j++)
            if (g.edges[j - 1].first == v || g.edges[j - 1].second == v) w[2 * j - 2] = '1';
        return w;
    }

    // pattern 0 places no 1; pattern t in [1..k] places a 1 facing the t-th
    // horizontal slot; copy picks the binary suffix in the no-reuse variant
    std::string vertical_word(int pattern, int copy) const {
        std::string w(2 * k - 1 + suffix_len, '0');
        if (pattern >= 1) w[2 * pattern - 2] = '1';
        for (int b = 0; b < suffix_len; b++)
            if (copy >> (suffix_len - 1 - b) & 1) w[2 * k - 1 + b] = '1';
        return w;
    }
};

}  // namespace

GeneratedInstance gen_from_independent_set(const SimpleGraph& g, int k, bool noreuse_variant) {
    int E = (int)g.edges.size();
    if (k < 2) fail(Errc::ValidationError, "k must be at least 2 (slots need length >= 2)");
    if (E < 2) fail(Errc::ValidationError, "graph needs at least 2 edges (slots need length >= 2)");
    if (E == k) fail(Errc::EdgeCountEqualsK, "|E| = k = " + std::to_string(k));
    std::vector<int> deg(g.n + 1, 0);
    for (auto& [u, v] : g.edges) {
        if (u < 1 || v > g.n) fail(Errc::ValidationError, "edge endpoint out of range");
        deg[u]++;
        deg[v]++;
    }
    for (int v = 1; v <= g.n; v++)
        if (deg[v] == 0) fail(Errc::IsolatedVertex, "vertex " + std::to_string(v));

    int suffix_len = 0;
    if (noreuse_variant) {
        suffix_len = std::max(1, ceil_log2(E));
        // keep vertical and horizontal lengths distinct so word roles stay forced
        while (2 * k - 1 + suffix_len == 2 * E - 1) suffix_len++;
    }
    IndsetLayout layout{g, k, suffix_len};

    std::vector<Slot> slots;
    int hw = digits(k), vw = digits(E);
    for (int i = 1; i <= k; i++)
        slots.push_back({"h" + pad_num(i, hw), Orientation::H, {2 * i - 1, 1}, 2 * E - 1});
    for (int j = 1; j <= E; j++)
        slots.push_back({"v" + pad_num(j, vw), Orientation::V, {1, 2 * j - 1}, 2 * k - 1 + suffix_len});

    std::set<std::string> words;
    for (int v = 1; v <= g.n; v++) words.insert(layout.vertex_word(v));
    for (int p = 0; p <= k; p++) {
        if (noreuse_variant)
            for (int c = 0; c < E; c++) words.insert(layout.vertical_word(p, c));
        else
            words.insert(layout.vertical_word(p, 0));
    }

    Alphabet alphabet = unit_alphabet("01");
    Dictionary dict(std::vector<std::string>(words.begin(), words.end()), alphabet);
    Instance inst = make_instance(validate_grid(std::move(slots)), std::move(alphabet),
                                  std::move(dict), {}, !noreuse_variant);

    GeneratedInstance out;
    out.kind = "indset";
    out.comments = {"generator: indset",
                    "k=" + std::to_string(k) + " vertices=" + std::to_string(g.n) +
                        " edges=" + std::to_string(E) +
                        " noreuse_variant=" + (noreuse_variant ? "true" : "false"),
                    "witness schema: k vertex ids forming an independent set"};
    out.instance = std::move(inst);
    out.meta = IndsetMeta{g, k, noreuse_variant, suffix_len};
    return out;
}

// ----------------------------------------------------------- 3-partition

namespace {

struct TpartLayout {
    const std::vector<long long>& values;  // shifted, 1-based access via index-1
    int n;

    // the c-th word of length x_i: c = 0 starts with '!', the others with
    // '*'; a binary counter over {*,!} keeps same-length words distinct
    std::string value_word(int i, int c) const {
        std::string w(values[i - 1], '*');
        w[0] = c == 0 ? '!' : '*';
        int bits = std::max(1, ceil_log2(std::max(n, 2)));
        for (int b = 0; b < bits; b++)
            if (c >> (bits - 1 - b) & 1) w[1 + b] = '!';
        return w;
    }

    std::string triple_word(const std::array<int, 3>& t) const {
        std::string w(6 * n - 1, '*');
        for (int idx : t) w[2 * idx - 2] = '!';
        return w;
    }
};

}  // namespace

GeneratedInstance gen_from_three_partition(const ThreePartitionInput& input) {
    std::vector<long long> x = input.values;
    if (x.empty() || x.size() % 3 != 0)
        fail(Errc::ValidationError, "need 3n positive integers");
    int n = (int)x.size() / 3;
    {
        std::set<long long> s(x.begin(), x.end());
        if ((int)s.size() != (int)x.size())
            fail(Errc::ValidationError, "values must be distinct");
    }
    for (long long v : x)
        if (v <= 0) fail(Errc::ValidationError, "values must be positive");
    long long sum = 0;
    for (long long v : x) sum = checked_add(sum, v);
    if (sum % n != 0) fail(Errc::BadSum, "sum not divisible by n");
    if (*std::min_element(x.begin(), x.end()) <= 6 * n) {
        for (long long& v : x) v += 6 * n;
        sum += 18LL * n * n;
    }
    long long target = sum / n;

    std::vector<std::array<int, 3>> triples;
    for (int i = 1; i <= 3 * n; i++)
        for (int j = i + 1; j <= 3 * n; j++)
            for (int k = j + 1; k <= 3 * n; k++)
                if (x[i - 1] + x[j - 1] + x[k - 1] == target) triples.push_back({i, j, k});
    int f = (int)triples.size();

    GeneratedInstance out;
    out.kind = "threepartition";
    TpartMeta meta{x, n, target, triples, f < n};

    if (f < n) {
        // canonical unfillable instance so decide() still answers "no"
        std::vector<Slot> slots{{"g0", Orientation::H, {1, 1}, 2}};
        Alphabet alphabet = unit_alphabet("*!");
        Dictionary dict({}, alphabet);
        Instance inst = make_instance(validate_grid(std::move(slots)), std::move(alphabet),
                                      std::move(dict), {}, false);
        out.comments = {"generator: threepartition",
                        "n=" + std::to_string(n) + " triples=" + std::to_string(f) +
                            " not_enough_triples=true",
                        "witness schema: n index triples partitioning the values"};
        out.instance = std::move(inst);
        out.meta = std::move(meta);
        return out;
    }

    TpartLayout layout{x, n};
    std::set<std::string> words;
    for (int i = 1; i <= 3 * n; i++)
        for (int c = 0; c < n; c++) words.insert(layout.value_word(i, c));
    for (auto& t : triples) words.insert(layout.triple_word(t));

    long long maxx = *std::max_element(x.begin(), x.end());
    std::vector<Slot> slots;
    int tw = digits(f);
    int vw = digits(3 * n);
    int row = 1;
    for (int t = 0; t < n; t++) {
        slots.push_back({"g" + pad_num(t, tw), Orientation::H, {row, 1}, 6 * n - 1});
        for (int i = 1; i <= 3 * n; i++)
            slots.push_back({"v" + pad_num(t, tw) + "_" + pad_num(i, vw), Orientation::V,
                             {row, 2 * i - 1}, (int)x[i - 1]});
        row += (int)maxx + 1;
    }
    for (int t = n; t < f; t++) {
        slots.push_back({"w" + pad_num(t, tw), Orientation::H, {row, 1}, 6 * n - 1});
        row += 2;
    }

    Alphabet alphabet = unit_alphabet("*!");
    Dictionary dict(std::vector<std::string>(words.begin(), words.end()), alphabet);
    Instance inst = make_instance(validate_grid(std::move(slots)), std::move(alphabet),
                                  std::move(dict), {}, false);
    out.comments = {"generator: threepartition",
                    "n=" + std::to_string(n) + " target=" + std::to_string(target) +
                        " triples=" + std::to_string(f),
                    "witness schema: n index triples partitioning the values"};
    out.instance = std::move(inst);
    out.meta = std::move(meta);
    return out;
}

// ------------------------------------------------------------ restrict_sat

CnfFormula restrict_sat(const CnfFormula& f) {
    std::vector<int> occ(f.num_vars + 1, 0);
    for (auto& cl : f.clauses)
        for (int lit : cl) occ[std::abs(lit)]++;

    CnfFormula out;
    out.clauses = f.clauses;
    out.num_vars = f.num_vars;
    for (int v = 1; v <= f.num_vars; v++) {
        if (occ[v] <= 3) continue;
        // fresh variable per appearance plus an implication cycle
        std::vector<int> fresh;
        for (int t = 0; t < occ[v]; t++) fresh.push_back(++out.num_vars);
        int next = 0;
        for (auto& cl : out.clauses)
            for (int& lit : cl)
                if (std::abs(lit) == v) lit = lit > 0 ? fresh[next++] : -fresh[next++];
        for (int t = 0; t < occ[v]; t++)
            out.clauses.push_back({-fresh[t], fresh[(t + 1) % occ[v]]});
    }
    return out;
}

// ----------------------------------------------------------------- x1sat

namespace {

struct X1Layout {
    int n = 0;  // variables
    int m = 0;  // clauses
    struct Occ {
        int var;        // 1-based
        int k;          // occurrence number within the variable, 1-based
        int clause;     // 1-based
        bool positive;
    };
    std::vector<Occ> occs;                 // clause-major order
    std::vector<std::vector<int>> byvar;   // per var: indices into occs
    std::vector<int> nl;                   // literals per clause

    static X1Layout build(const CnfFormula& f) {
        X1Layout L;
        L.n = f.num_vars;
        L.m = (int)f.clauses.size();
        L.byvar.resize(f.num_vars + 1);
        L.nl.resize(L.m);
        for (int j = 0; j < L.m; j++) {
            const auto& cl = f.clauses[j];
            if (cl.size() < 2 || cl.size() > 3)
                fail(Errc::NotRestrictedForm, "clauses must have 2 or 3 literals");
            std::set<int> vars_here;
            L.nl[j] = (int)cl.size();
            for (int lit : cl) {
                int v = std::abs(lit);
                if (v < 1 || v > f.num_vars) fail(Errc::ValidationError, "literal out of range");
                if (!vars_here.insert(v).second)
                    fail(Errc::NotRestrictedForm, "variable repeated inside a clause");
                L.byvar[v].push_back((int)L.occs.size());
                L.occs.push_back({v, (int)L.byvar[v].size(), j + 1, lit > 0});
            }
        }
        for (int v = 1; v <= f.num_vars; v++)
            if (L.byvar[v].size() > 3)
                fail(Errc::NotRestrictedForm, "variable " + std::to_string(v) +
                                                  " appears more than three times");
        return L;
    }

    int a(int var) const { return (int)byvar[var].size(); }
    static char sym(int t) { return (char)('0' + t); }

    std::string word_tf(int var, int k, bool T) const {
        const Occ& o = occs[byvar[var][k - 1]];
        std::string w(m + n + 3 * var + k, '1');
        w.front() = o.positive == T ? sym(1) : sym(2);
        int kp = T ? k : (k < a(var) ? k + 1 : 1);
        w.back() = sym(kp);
        return w;
    }

    std::string word_dik(int var, int k) const {
        std::string w(m + var + 1, '1');
        w.front() = sym(k);
        return w;
    }

    std::string clause_word(int j, int t) const {  // j, t 1-based
        std::string w(1 + j, '1');
        if (t == 1) w.front() = sym(2);
        else w[1] = sym(t - 1);
        return w;
    }
};

}  // namespace

GeneratedInstance gen_from_x1sat(const CnfFormula& f) {
    X1Layout L = X1Layout::build(f);

    std::set<std::string> words;
    for (int v = 1; v <= L.n; v++)
        for (int k = 1; k <= L.a(v); k++) {
            words.insert(L.word_tf(v, k, true));
            words.insert(L.word_tf(v, k, false));
            words.insert(L.word_dik(v, k));
        }
    for (int j = 1; j <= L.m; j++)
        for (int t = 1; t <= L.nl[j - 1]; t++) words.insert(L.clause_word(j, t));

    std::vector<Slot> slots;
    int lw = digits((int)L.occs.size());
    int row = 1;
    for (int li = 0; li < (int)L.occs.size(); li++) {
        const X1Layout::Occ& o = L.occs[li];
        int hlen = L.m + L.n + 3 * o.var + o.k;
        std::string base = "l" + pad_num(li, lw) + "_";
        // type 1: vertical hangs from the last cell of the horizontal
        slots.push_back({base + "a", Orientation::H, {row, 1}, hlen});
        slots.push_back({base + "b", Orientation::V, {row, hlen}, L.m + o.var + 1});
        row += L.m + o.var + 2;
        // type 2: the pair shares its first cells
        slots.push_back({base + "c", Orientation::H, {row, 1}, hlen});
        slots.push_back({base + "d", Orientation::V, {row, 1}, o.clause + 1});
        row += o.clause + 2;
    }

    Alphabet alphabet = unit_alphabet("123");
    Dictionary dict(std::vector<std::string>(words.begin(), words.end()), alphabet);
    Instance inst = make_instance(validate_grid(std::move(slots)), std::move(alphabet),
                                  std::move(dict), {}, false);

    GeneratedInstance out;
    out.kind = "x1sat";
    out.comments = {"generator: x1sat",
                    "vars=" + std::to_string(L.n) + " clauses=" + std::to_string(L.m) +
                        " literals=" + std::to_string(L.occs.size()),
                    "witness schema: one T/F value per variable, exactly one true literal per clause"};
    out.instance = std::move(inst);
    out.meta = X1satMeta{f};
    return out;
}

// ------------------------------------------------------- sparse partition

SparseCnf sparse_partition(const CnfFormula& f, double epsilon, std::uint64_t seed,
                           SparseReport* report) {
    if (epsilon <= 0 || epsilon > 1) fail(Errc::InvalidEpsilon, "epsilon must lie in (0,1]");
    for (auto& cl : f.clauses) {
        if (cl.empty()) fail(Errc::ValidationError, "empty clause");
        if (cl.size() > 3) fail(Errc::ValidationError, "input must be 3-CNF");
    }
    CnfFormula g = restrict_sat(f);
    int nv = g.num_vars;
    int nc = (int)g.clauses.size();

    int side = 1;
    while (side * side < std::max({nv, nc, 1})) side++;
    int n0 = side * side;
    double big_c = std::max(1.0, 8.0 / std::sqrt(epsilon));
    int colors = std::max(1, (int)std::ceil(big_c * side));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, colors - 1);

    // distinct (variable, clause) incidence pairs
    std::set<std::pair<int, int>> inc;
    for (int j = 0; j < nc; j++)
        for (int lit : g.clauses[j]) inc.insert({std::abs(lit), j});

    std::vector<int> best_vc, best_cc;
    int best_max_class = INT32_MAX;
    bool sizes_ok = false;
    int attempts = 0;
    for (; attempts < 32; attempts++) {
        std::vector<int> vcolor(n0 + 1), ccolor(n0);  // dummies included
        std::vector<int> class_size(colors, 0);
        for (int v = 1; v <= n0; v++) class_size[vcolor[v] = pick(rng)]++;
        for (int j = 0; j < n0; j++) class_size[ccolor[j] = pick(rng)]++;
        int mx = *std::max_element(class_size.begin(), class_size.end());
        if (mx < best_max_class) {
            best_max_class = mx;
            best_vc = vcolor;
            best_cc = ccolor;
        }
        if (mx <= side) {
            best_vc = vcolor;
            best_cc = ccolor;
            sizes_ok = true;
            attempts++;
            break;
        }
    }

    // delete the clause endpoint of every edge in a duplicate class pair
    std::map<std::pair<int, int>, int> pair_count;
    for (auto& [v, j] : inc) pair_count[{best_vc[v], best_cc[j]}]++;
    std::set<int> removed;
    for (auto& [v, j] : inc)
        if (pair_count[{best_vc[v], best_cc[j]}] >= 2) removed.insert(j);

    SparseCnf out;
    out.groups = colors;
    out.formula.num_vars = nv;
    out.var_groups.assign(colors, {});
    out.clause_groups.assign(colors, {});
    for (int v = 1; v <= nv; v++) out.var_groups[best_vc[v]].push_back(v);
    for (int j = 0; j < nc; j++) {
        if (removed.count(j)) continue;
        int nj = (int)out.formula.clauses.size();
        out.formula.clauses.push_back(g.clauses[j]);
        out.clause_groups[best_cc[j]].push_back(nj);
    }

    if (report) {
        report->attempts = attempts;
        report->colors = colors;
        report->N = colors * colors;
        report->removed_clauses.assign(removed.begin(), removed.end());
        report->removed_fraction = nc == 0 ? 0.0 : (double)removed.size() / (double)nc;
        report->sizes_ok = sizes_ok;
    }
    std::string why;
    if (!valid_sparse(out, &why))
        fail(Errc::ValidationError, "internal: sparse output invalid: " + why);
    return out;
}

bool valid_sparse(const SparseCnf& s, std::string* why) {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    int sq = s.groups;
    if (sq <= 0) return bad("no groups");
    long long N = (long long)sq * sq;
    if ((int)s.var_groups.size() != sq || (int)s.clause_groups.size() != sq)
        return bad("group count mismatch");
    if (s.formula.num_vars > N || (long long)s.formula.clauses.size() > N)
        return bad("formula too large for N");

    std::vector<int> vgroup(s.formula.num_vars + 1, -1);
    for (int i = 0; i < sq; i++) {
        if ((long long)s.var_groups[i].size() > sq) return bad("variable group too large");
        for (int v : s.var_groups[i]) {
            if (v < 1 || v > s.formula.num_vars || vgroup[v] != -1) return bad("bad variable group");
            vgroup[v] = i;
        }
    }
    for (int v = 1; v <= s.formula.num_vars; v++)
        if (vgroup[v] == -1) return bad("variable in no group");

    std::vector<int> cgroup(s.formula.clauses.size(), -1);
    for (int j = 0; j < sq; j++) {
        if ((long long)s.clause_groups[j].size() > sq) return bad("clause group too large");
        for (int c : s.clause_groups[j]) {
            if (c < 0 || c >= (int)s.formula.clauses.size() || cgroup[c] != -1)
                return bad("bad clause group");
            cgroup[c] = j;
        }
    }
    for (std::size_t c = 0; c < s.formula.clauses.size(); c++)
        if (cgroup[c] == -1) return bad("clause in no group");

    std::vector<int> occ(s.formula.num_vars + 1, 0);
    for (auto& cl : s.formula.clauses) {
        if (cl.empty() || cl.size() > 3) return bad("clause size");
        for (int lit : cl) {
            int v = std::abs(lit);
            if (v < 1 || v > s.formula.num_vars) return bad("literal out of range");
            occ[v]++;
        }
    }
    for (int v = 1; v <= s.formula.num_vars; v++)
        if (occ[v] > 3) return bad("variable appears more than three times");

    // at most one variable of V_i appears in C_j
    std::vector<std::vector<std::set<int>>> seen(sq, std::vector<std::set<int>>(sq));
    for (std::size_t c = 0; c < s.formula.clauses.size(); c++)
        for (int lit : s.formula.clauses[c]) {
            int v = std::abs(lit);
            seen[vgroup[v]][cgroup[c]].insert(v);
        }
    for (int i = 0; i < sq; i++)
        for (int j = 0; j < sq; j++)
            if (seen[i][j].size() > 1) return bad("two variables of one group meet a clause group");
    return true;
}

// -------------------------------------------------------------- sparse sat

namespace {

struct SparseLayout {
    const SparseCnf& s;
    std::vector<std::vector<int>> uv;        // uv[i][j] = unique var of V_i meeting C_j, or 0
    std::vector<std::vector<int>> cvars;     // per clause group: sorted distinct variables

    explicit SparseLayout(const SparseCnf& sc) : s(sc) {
        int sq = s.groups;
        std::vector<int> vgroup(s.formula.num_vars + 1, -1);
        for (int i = 0; i < sq; i++)
            for (int v : s.var_groups[i]) vgroup[v] = i;
        uv.assign(sq, std::vector<int>(sq, 0));
        cvars.assign(sq, {});
        for (int j = 0; j < sq; j++) {
            std::set<int> vars;
            for (int c : s.clause_groups[j])
                for (int lit : s.formula.clauses[c]) vars.insert(std::abs(lit));
            cvars[j].assign(vars.begin(), vars.end());
            for (int v : cvars[j]) uv[vgroup[v]][j] = v;
        }
    }

    std::string h_word(int i, const std::map<int, bool>& sigma) const {
        int sq = s.groups;
        std::string w(2 * sq + 2 * (i + 1), '0');
        for (int j = 0; j < sq; j++)
            if (uv[i][j]) w[2 * j] = sigma.at(uv[i][j]) ? '1' : '0';
        return w;
    }

    std::string v_word(int j, const std::map<int, bool>& sigma) const {
        int sq = s.groups;
        std::string w(5 * sq + 2 * (j + 1), '0');
        for (int i = 0; i < sq; i++)
            if (uv[i][j]) w[2 * i] = sigma.at(uv[i][j]) ? '1' : '0';
        return w;
    }

    bool group_satisfied(int j, const std::map<int, bool>& sigma) const {
        for (int c : s.clause_groups[j]) {
            bool sat = false;
            for (int lit : s.formula.clauses[c]) {
                bool val = sigma.at(std::abs(lit));
                if (lit > 0 ? val : !val) sat = true;
            }
            if (!sat) return false;
        }
        return true;
    }
};

std::map<int, bool> nth_assignment(const std::vector<int>& vars, long long idx) {
    std::map<int, bool> sigma;
    for (std::size_t b = 0; b < vars.size(); b++) sigma[vars[b]] = (idx >> b) & 1;
    return sigma;
}

}  // namespace

GeneratedInstance gen_from_sparse_sat(const SparseCnf& s, long long word_budget) {
    std::string why;
    if (!valid_sparse(s, &why)) fail(Errc::ValidationError, "not a sparse formula: " + why);
    SparseLayout L(s);
    int sq = s.groups;

    long long total = 0;
    for (int i = 0; i < sq; i++) {
        if ((long long)s.var_groups[i].size() > 40)
            fail(Errc::BudgetExceeded, "variable group too large to enumerate");
        total += 1LL << s.var_groups[i].size();
    }
    for (int j = 0; j < sq; j++) {
        if ((long long)L.cvars[j].size() > 40)
            fail(Errc::BudgetExceeded, "clause group variables too large to enumerate");
        total += 1LL << L.cvars[j].size();
    }
    if (total > word_budget) fail(Errc::BudgetExceeded, "word enumeration exceeds the budget");

    std::set<std::string> words;
    for (int i = 0; i < sq; i++)
        for (long long idx = 0; idx < (1LL << s.var_groups[i].size()); idx++)
            words.insert(L.h_word(i, nth_assignment(s.var_groups[i], idx)));
    for (int j = 0; j < sq; j++)
        for (long long idx = 0; idx < (1LL << L.cvars[j].size()); idx++) {
            auto sigma = nth_assignment(L.cvars[j], idx);
            if (L.group_satisfied(j, sigma)) words.insert(L.v_word(j, sigma));
        }

    std::vector<Slot> slots;
    int w = digits(sq);
    for (int i = 1; i <= sq; i++)
        slots.push_back({"h" + pad_num(i, w), Orientation::H, {2 * i - 1, 1}, 2 * sq + 2 * i});
    for (int j = 1; j <= sq; j++)
        slots.push_back({"v" + pad_num(j, w), Orientation::V, {1, 2 * j - 1}, 5 * sq + 2 * j});

    Alphabet alphabet = unit_alphabet("01");
    Dictionary dict(std::vector<std::string>(words.begin(), words.end()), alphabet);
    Instance inst = make_instance(validate_grid(std::move(slots)), std::move(alphabet),
                                  std::move(dict), {}, false);

    GeneratedInstance out;
    out.kind = "sparsesat";
    out.comments = {"generator: sparsesat",
                    "N=" + std::to_string((long long)sq * sq) + " groups=" + std::to_string(sq) +
                        " vars=" + std::to_string(s.formula.num_vars) +
                        " clauses=" + std::to_string(s.formula.clauses.size()),
                    "witness schema: one boolean per variable satisfying every clause"};
    out.instance = std::move(inst);
    out.meta = SparseMeta{s};
    return out;
}

// -------------------------------------------------------------------- ulc

namespace {

struct UlcLayout {
    const UlcInstance& u;
    // neighbor -> edge index, per vertex (1-based)
    std::vector<std::map<int, int>> nb;

    explicit UlcLayout(const UlcInstance& ui) : u(ui) {
        nb.assign(u.n + 1, {});
        for (int e = 0; e < (int)u.edges.size(); e++) {
            nb[u.edges[e].u][u.edges[e].v] = e;
            nb[u.edges[e].v][u.edges[e].u] = e;
        }
    }

    static char sym(int label) { return (char)('0' + label); }

    // the label the edge forces on vertex `want` when `given` carries alpha
    int forced_label(int e, int given, int alpha) const {
        const UlcEdge& ed = u.edges[e];
        if (given == ed.u) return ed.perm[alpha - 1];
        for (int b = 1; b <= u.R; b++)
            if (ed.perm[b - 1] == alpha) return b;
        fail(Errc::ValidationError, "permutation not a bijection");
    }

    std::string h_word(int i, int alpha) const {  // i 1-based
        std::string w(2 * u.n + u.n * u.n + i, '*');
        w[2 * i - 1] = sym(alpha);
        for (auto& [j, e] : nb[i]) w[2 * j - 1] = sym(alpha);
        return w;
    }

    std::string v_word(int j, int alpha) const {
        std::string w(3 * u.n + u.n * u.n + j, '*');
        w[2 * j - 1] = sym(alpha);
        for (auto& [i, e] : nb[j]) w[2 * i - 1] = sym(forced_label(e, j, alpha));
        return w;
    }
};

}  // namespace

GeneratedInstance gen_from_ulc(const UlcInstance& input) {
    UlcInstance u = input;
    if (u.n < 1) fail(Errc::ValidationError, "need at least one vertex");
    if (u.R < 1) fail(Errc::ValidationError, "need at least one label");
    if (u.R > 9) fail(Errc::ValidationError, "labels are single symbols; R must be at most 9");
    std::set<std::pair<int, int>> seen;
    for (UlcEdge& e : u.edges) {
        if (e.u == e.v) fail(Errc::ValidationError, "self-loop");
        if (e.u < 1 || e.v < 1 || e.u > u.n || e.v > u.n)
            fail(Errc::ValidationError, "edge endpoint out of range");
        if (e.u > e.v) {
            // normalize to u < v, inverting the constraint
            std::vector<int> inv(u.R);
            for (int a = 1; a <= u.R; a++) {
                int b = e.perm[a - 1];
                if (b < 1 || b > u.R) fail(Errc::ValidationError, "permutation value out of range");
                inv[b - 1] = a;
            }
            std::swap(e.u, e.v);
            e.perm = inv;
        }
        if ((int)e.perm.size() != u.R) fail(Errc::ValidationError, "permutation length != R");
        std::set<int> vals(e.perm.begin(), e.perm.end());
        if ((int)vals.size() != u.R || *vals.begin() < 1 || *vals.rbegin() > u.R)
            fail(Errc::ValidationError, "constraint is not a permutation of [R]");
        if (!seen.insert({e.u, e.v}).second) fail(Errc::ValidationError, "duplicate edge");
    }
    std::sort(u.edges.begin(), u.edges.end(),
              [](const UlcEdge& a, const UlcEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

    UlcLayout L(u);
    std::set<std::string> words;
    for (int i = 1; i <= u.n; i++)
        for (int a = 1; a <= u.R; a++) words.insert(L.h_word(i, a));
    for (int j = 1; j <= u.n; j++)
        for (int a = 1; a <= u.R; a++) words.insert(L.v_word(j, a));

    std::vector<Slot> slots;
    int w = digits(u.n);
    for (int i = 1; i <= u.n; i++)
        slots.push_back({"h" + pad_num(i, w), Orientation::H, {2 * i, 1}, 2 * u.n + u.n * u.n + i});
    for (int j = 1; j <= u.n; j++)
        slots.push_back({"v" + pad_num(j, w), Orientation::V, {1, 2 * j}, 3 * u.n + u.n * u.n + j});

    std::string letters;
    for (int a = 1; a <= u.R; a++) letters.push_back(UlcLayout::sym(a));
    letters.push_back('*');
    Alphabet alphabet = unit_alphabet(letters);
    Dictionary dict(std::vector<std::string>(words.begin(), words.end()), alphabet);
    Instance inst = make_instance(validate_grid(std::move(slots)), std::move(alphabet),
                                  std::move(dict), {}, false);

    GeneratedInstance out;
    out.kind = "ulc";
    out.comments = {"generator: ulc",
                    "n=" + std::to_string(u.n) + " R=" + std::to_string(u.R) +
                        " edges=" + std::to_string(u.edges.size()),
                    "witness schema: one label per vertex (0 = unlabeled) satisfying all"
                    " induced constraints"};
    out.instance = std::move(inst);
    out.meta = UlcMeta{u};
    return out;
}

// --------------------------------------------------------------- witnesses

namespace {

Assignment checked_assignment(const GeneratedInstance& gen, Assignment a) {
    EvalResult ev = evaluate(gen.instance, a);
    if (!ev.valid)
        fail(Errc::WitnessRejected, "translated assignment invalid: " + ev.reason);
    return a;
}

int must_index(const Instance& inst, const std::string& word) {
    int idx = inst.dict.index_of(word);
    if (idx < 0) fail(Errc::WitnessRejected, "expected word missing from dictionary: " + word);
    return idx;
}

Assignment translate_indset(const GeneratedInstance& gen, const IndsetMeta& meta,
                            const IndsetWitness& w) {
    const SimpleGraph& g = meta.g;
    std::vector<int> vs = w.vertices;
    std::sort(vs.begin(), vs.end());
    if ((int)vs.size() != meta.k) fail(Errc::MalformedWitness, "witness must list k vertices");
    for (int v : vs)
        if (v < 1 || v > g.n) fail(Errc::MalformedWitness, "vertex out of range");
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        fail(Errc::MalformedWitness, "vertices must be distinct");
    for (auto& [a, b] : g.edges)
        if (std::binary_search(vs.begin(), vs.end(), a) &&
            std::binary_search(vs.begin(), vs.end(), b))
            fail(Errc::WitnessRejected, "not an independent set: edge (" + std::to_string(a) +
                                            "," + std::to_string(b) + ")");

    IndsetLayout layout{g, meta.k, meta.suffix_len};
    const Instance& inst = gen.instance;
    Assignment a = Assignment::all_empty(inst.grid.size());
    int E = (int)g.edges.size();
    int hw = digits(meta.k), vw = digits(E);
    for (int i = 1; i <= meta.k; i++) {
        int slot = inst.grid.index_of("h" + pad_num(i, hw));
        a.word_of[slot] = must_index(inst, layout.vertex_word(vs[i - 1]));
    }
    for (int j = 1; j <= E; j++) {
        int pattern = 0;
        for (int i = 1; i <= meta.k; i++) {
            int v = vs[i - 1];
            if (g.edges[j - 1].first == v || g.edges[j - 1].second == v) pattern = i;
        }
        int copy = meta.noreuse_variant ? j - 1 : 0;
        int slot = inst.grid.index_of("v" + pad_num(j, vw));
        a.word_of[slot] = must_index(inst, layout.vertical_word(pattern, copy));
    }
    return checked_assignment(gen, std::move(a));
}

Assignment translate_tpart(const GeneratedInstance& gen, const TpartMeta& meta,
                           const TpartWitness& w) {
    if (meta.not_enough_triples)
        fail(Errc::WitnessRejected, "instance encodes a no-instance (not enough triples)");
    int n = meta.n;
    if ((int)w.triples.size() != n) fail(Errc::MalformedWitness, "witness must list n triples");
    std::vector<std::array<int, 3>> ts = w.triples;
    std::vector<char> usedv(3 * n + 1, 0);
    for (auto& t : ts) {
        std::array<int, 3> s = t;
        std::sort(s.begin(), s.end());
        t = s;
        long long sum = 0;
        for (int idx : t) {
            if (idx < 1 || idx > 3 * n) fail(Errc::MalformedWitness, "index out of range");
            if (usedv[idx]) fail(Errc::WitnessRejected, "index used twice");
            usedv[idx] = 1;
            sum += meta.values[idx - 1];
        }
        if (sum != meta.target) fail(Errc::WitnessRejected, "triple does not reach the target sum");
    }
    std::sort(ts.begin(), ts.end());

    TpartLayout layout{meta.values, n};
    const Instance& inst = gen.instance;
    Assignment a = Assignment::all_empty(inst.grid.size());
    int f = (int)meta.triples.size();
    int tw = digits(f), vw = digits(3 * n);

    std::set<std::string> leftovers;
    for (auto& t : meta.triples) leftovers.insert(layout.triple_word(t));
    std::vector<int> star_counter(3 * n + 1, 0);  // next '*' copy per value

    for (int t = 0; t < n; t++) {
        std::string word = layout.triple_word(ts[t]);
        leftovers.erase(word);
        a.word_of[inst.grid.index_of("g" + pad_num(t, tw))] = must_index(inst, word);
        for (int i = 1; i <= 3 * n; i++) {
            bool bang = std::find(ts[t].begin(), ts[t].end(), i) != ts[t].end();
            int c = bang ? 0 : ++star_counter[i];
            a.word_of[inst.grid.index_of("v" + pad_num(t, tw) + "_" + pad_num(i, vw))] =
                must_index(inst, layout.value_word(i, c));
        }
    }
    int t = n;
    for (const std::string& word : leftovers) {
        a.word_of[inst.grid.index_of("w" + pad_num(t, tw))] = must_index(inst, word);
        t++;
    }
    return checked_assignment(gen, std::move(a));
}

Assignment translate_x1sat(const GeneratedInstance& gen, const X1satMeta& meta,
                           const AssignmentWitness& w) {
    X1Layout L = X1Layout::build(meta.f);
    if ((int)w.values.size() != L.n)
        fail(Errc::MalformedWitness, "witness must assign every variable");
    for (int j = 0; j < L.m; j++) {
        int true_lits = 0;
        for (int lit : meta.f.clauses[j]) {
            bool val = w.values[std::abs(lit) - 1];
            if (lit > 0 ? val : !val) true_lits++;
        }
        if (true_lits != 1)
            fail(Errc::WitnessRejected,
                 "clause " + std::to_string(j + 1) + " has " + std::to_string(true_lits) +
                     " true literals");
    }

    const Instance& inst = gen.instance;
    Assignment a = Assignment::all_empty(inst.grid.size());
    int lw = digits((int)L.occs.size());
    // clause words in deterministic order: the satisfied literal takes the
    // s2-word, the others take the s1-words in occurrence order
    std::vector<int> next_false_word(L.m, 2);
    for (int li = 0; li < (int)L.occs.size(); li++) {
        const X1Layout::Occ& o = L.occs[li];
        bool t = w.values[o.var - 1];
        std::string base = "l" + pad_num(li, lw) + "_";
        a.word_of[inst.grid.index_of(base + "a")] = must_index(inst, L.word_tf(o.var, o.k, t));
        int kp = t ? o.k : (o.k < L.a(o.var) ? o.k + 1 : 1);
        a.word_of[inst.grid.index_of(base + "b")] = must_index(inst, L.word_dik(o.var, kp));
        a.word_of[inst.grid.index_of(base + "c")] = must_index(inst, L.word_tf(o.var, o.k, !t));
        bool lit_true = o.positive == t;
        int clause_t = lit_true ? 1 : next_false_word[o.clause - 1]++;
        a.word_of[inst.grid.index_of(base + "d")] =
            must_index(inst, L.clause_word(o.clause, clause_t));
    }
    return checked_assignment(gen, std::move(a));
}

Assignment translate_sparse(const GeneratedInstance& gen, const SparseMeta& meta,
                            const AssignmentWitness& w) {
    const SparseCnf& s = meta.s;
    if ((int)w.values.size() != s.formula.num_vars)
        fail(Errc::MalformedWitness, "witness must assign every variable");
    for (std::size_t c = 0; c < s.formula.clauses.size(); c++) {
        bool sat = false;
        for (int lit : s.formula.clauses[c]) {
            bool val = w.values[std::abs(lit) - 1];
            if (lit > 0 ? val : !val) sat = true;
        }
        if (!sat) fail(Errc::WitnessRejected, "clause " + std::to_string(c + 1) + " unsatisfied");
    }
    SparseLayout L(s);
    const Instance& inst = gen.instance;
    Assignment a = Assignment::all_empty(inst.grid.size());
    int sq = s.groups;
    int wd = digits(sq);
    for (int i = 0; i < sq; i++) {
        std::map<int, bool> sigma;
        for (int v : s.var_groups[i]) sigma[v] = w.values[v - 1];
        a.word_of[inst.grid.index_of("h" + pad_num(i + 1, wd))] =
            must_index(inst, L.h_word(i, sigma));
    }
    for (int j = 0; j < sq; j++) {
        std::map<int, bool> sigma;
        for (int v : L.cvars[j]) sigma[v] = w.values[v - 1];
        a.word_of[inst.grid.index_of("v" + pad_num(j + 1, wd))] =
            must_index(inst, L.v_word(j, sigma));
    }
    return checked_assignment(gen, std::move(a));
}

Assignment translate_ulc(const GeneratedInstance& gen, const UlcMeta& meta, const UlcWitness& w) {
    const UlcInstance& u = meta.u;
    if ((int)w.labels.size() != u.n) fail(Errc::MalformedWitness, "witness must cover every vertex");
    for (int lab : w.labels)
        if (lab < 0 || lab > u.R) fail(Errc::MalformedWitness, "label out of range");
    for (const UlcEdge& e : u.edges) {
        int lu = w.labels[e.u - 1], lv = w.labels[e.v - 1];
        if (lu == 0 || lv == 0) continue;
        if (e.perm[lu - 1] != lv)
            fail(Errc::WitnessRejected, "constraint violated at shared cell (" +
                                            std::to_string(2 * e.u) + "," +
                                            std::to_string(2 * e.v) + ")");
    }
    UlcLayout L(u);
    const Instance& inst = gen.instance;
    Assignment a = Assignment::all_empty(inst.grid.size());
    int wd = digits(u.n);
    for (int i = 1; i <= u.n; i++) {
        int lab = w.labels[i - 1];
        if (lab == 0) continue;
        a.word_of[inst.grid.index_of("h" + pad_num(i, wd))] = must_index(inst, L.h_word(i, lab));
        a.word_of[inst.grid.index_of("v" + pad_num(i, wd))] = must_index(inst, L.v_word(i, lab));
    }
    return checked_assignment(gen, std::move(a));
}

}  // namespace

Assignment witness_to_solution(const GeneratedInstance& gen, const Witness& w) {
    if (auto* m = std::get_if<IndsetMeta>(&gen.meta)) {
        auto* ww = std::get_if<IndsetWitness>(&w);
        if (!ww) fail(Errc::MalformedWitness, "expected an independent-set witness");
        return translate_indset(gen, *m, *ww);
    }
    if (auto* m = std::get_if<TpartMeta>(&gen.meta)) {
        auto* ww = std::get_if<TpartWitness>(&w);
        if (!ww) fail(Errc::MalformedWitness, "expected a triple-partition witness");
        return translate_tpart(gen, *m, *ww);
    }
    if (auto* m = std::get_if<X1satMeta>(&gen.meta)) {
        auto* ww = std::get_if<AssignmentWitness>(&w);
        if (!ww) fail(Errc::MalformedWitness, "expected an assignment witness");
        return translate_x1sat(gen, *m, *ww);
    }
    if (auto* m = std::get_if<SparseMeta>(&gen.meta)) {
        auto* ww = std::get_if<AssignmentWitness>(&w);
        if (!ww) fail(Errc::MalformedWitness, "expected an assignment witness");
        return translate_sparse(gen, *m, *ww);
    }
    if (auto* m = std::get_if<UlcMeta>(&gen.meta)) {
        auto* ww = std::get_if<UlcWitness>(&w);
        if (!ww) fail(Errc::MalformedWitness, "expected a labeling witness");
        return translate_ulc(gen, *m, *ww);
    }
    fail(Errc::MalformedWitness, "unknown generator kind");
}

}  // namespace xword::gen
