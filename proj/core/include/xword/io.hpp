#ifndef XWORD_IO_HPP
#define XWORD_IO_HPP

#include <string>
#include <vector>

#include "xword/core.hpp"

namespace xword {

// Line-oriented UTF-8 instance format, '#' starts a comment line:
//
//   XW 1
//   alphabet ab
//   weight b 2          (optional, default 0)
//   reuse true          (optional, default true)
//   slot h1 H 1 1 2
//   prefill 1 1 b       (optional)
//   word ab
//
// Writing is canonical: slots sorted by id, words in dictionary order,
// weight lines only for non-zero weights. parse(write(x)) == x and
// write(parse(text)) canonicalizes text.
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst,
                           const std::vector<std::string>& comments = {});

// Solution format, one line per slot:
//
//   assign h1 bb
//   empty v1
Assignment parse_solution(const std::string& text, const Instance& inst);
std::string write_solution(const Instance& inst, const Assignment& a);

}  // namespace xword

#endif
