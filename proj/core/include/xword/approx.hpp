#ifndef XWORD_APPROX_HPP
#define XWORD_APPROX_HPP

#include "xword/core.hpp"
#include "xword/exact.hpp"

namespace xword::approx {

// epsilon as an exact rational in (0, 1]
struct Ratio {
    long long num = 1;
    long long den = 1;
};

struct Params {
    int n = 0;   // total slots
    int h = 0;   // horizontal slots
    int kv = 0;  // vertical group size bound
    int rv = 0;  // vertical group count
    int kh = 0;
    int rh = 0;
};

struct Certificate {
    Ratio epsilon;
    int n = 0;
    // guaranteed ratio 1/2 + 1/(2(eps*n+1)) as an exact fraction
    long long bound_num = 0;
    long long bound_den = 1;
    double bound() const { return (double)bound_num / (double)bound_den; }
};

struct Result {
    exact::SolveResult solve;
    Certificate certificate;
    Params params;
};

// Two passes: guess word tuples on bounded groups of vertical slots and
// complete the horizontals optimally (greedy under reuse, matching over the
// unused words otherwise), then the symmetric horizontal pass; the heavier
// candidate wins. Every candidate is scored by core evaluation.
Result approx_solve(const Instance& inst, Ratio epsilon, const exact::SolveOptions& opts = {});

Ratio parse_epsilon(const std::string& text);  // decimal or fraction, e.g. "0.5", "1", "1/3"

}  // namespace xword::approx

#endif
