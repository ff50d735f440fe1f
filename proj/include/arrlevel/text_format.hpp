#pragma once

// Text formats shared by the library and the command line tool.
//
// Arrangement:
//   dim <n>
//   h <w_1> ... <w_n> = <a>      (one line per hyperplane; integers or p/q)
//
// Poset (atomistic, order = inclusion of atom sets):
//   a0 <atom-id>                 (optional; cone output only)
//   elements <N>
//   e <id> rank <r> atoms {i,j,...}
//
// Atom ids are element ids of rank-one elements. `#` starts a comment.

#include "arrlevel/arrangement.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arrlevel {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class InputKind { Arrangement, Poset };

/// Looks at the first keyword: `dim` means arrangement, `elements` or `a0` a poset.
InputKind detect_kind(std::string_view text);

Arrangement parse_arrangement(std::string_view text);
std::string write_arrangement(const Arrangement& a);

struct PosetElementRecord {
  std::size_t id = 0;
  int rank = 0;
  std::vector<std::size_t> atoms;
};

struct PosetRecord {
  std::optional<std::size_t> a0;
  std::vector<PosetElementRecord> elements;
};

PosetRecord parse_poset(std::string_view text);
std::string write_poset(const PosetRecord& record);

}  // namespace arrlevel
