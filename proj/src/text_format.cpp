#include "arrlevel/text_format.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace arrlevel {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::size_t parse_count(const std::string& token, std::size_t line) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line, "expected a nonnegative integer, got '" + token + "'");
  try {
    return std::stoul(token);
  } catch (const std::exception&) {
    throw ParseError(line, "integer out of range: '" + token + "'");
  }
}

}  // namespace

InputKind detect_kind(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  const std::string& head = lines.front().tokens.front();
  if (head == "dim") return InputKind::Arrangement;
  if (head == "elements" || head == "a0") return InputKind::Poset;
  throw ParseError(lines.front().number, "unknown header '" + head + "'");
}

Arrangement parse_arrangement(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty input, expected 'dim <n>'");
  const Line& header = lines.front();
  if (header.tokens.size() != 2 || header.tokens[0] != "dim")
    throw ParseError(header.number, "expected 'dim <n>'");
  const std::size_t n = parse_count(header.tokens[1], header.number);
  std::vector<Hyperplane> hyperplanes;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto& t = line.tokens;
    if (t[0] != "h") throw ParseError(line.number, "expected a hyperplane line starting with 'h'");
    if (t.size() != n + 3 || t[n + 1] != "=")
      throw ParseError(line.number, "expected 'h' followed by " + std::to_string(n) + " coefficients, '=' and an offset");
    Hyperplane h;
    try {
      for (std::size_t j = 1; j <= n; ++j) h.normal.push_back(parse_rational(t[j]));
      h.offset = parse_rational(t[n + 2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
    if (is_zero(h.normal)) throw ParseError(line.number, "hyperplane has a zero normal");
    hyperplanes.push_back(std::move(h));
  }
  try {
    return Arrangement(n, std::move(hyperplanes));
  } catch (const std::invalid_argument& e) {
    // report against the offending hyperplane line when we can find it
    std::string what = e.what();
    std::size_t line = header.number;
    if (what.rfind("hyperplane ", 0) == 0) {
      std::size_t idx = std::stoul(what.substr(11));
      if (idx + 1 < lines.size()) line = lines[idx + 1].number;
    }
    throw ParseError(line, what);
  }
}

std::string write_arrangement(const Arrangement& a) {
  std::string out = "dim " + std::to_string(a.dim()) + "\n";
  for (const auto& h : a.hyperplanes()) {
    out += "h";
    for (const auto& w : h.normal) out += " " + to_string(w);
    out += " = " + to_string(h.offset) + "\n";
  }
  return out;
}

PosetRecord parse_poset(std::string_view text) {
  auto lines = tokenize(text);
  PosetRecord record;
  std::optional<std::size_t> declared;
  std::size_t declared_line = 1;
  std::set<std::size_t> ids;
  for (const Line& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "a0") {
      if (t.size() != 2) throw ParseError(line.number, "expected 'a0 <atom-id>'");
      if (record.a0) throw ParseError(line.number, "duplicate a0 line");
      record.a0 = parse_count(t[1], line.number);
    } else if (t[0] == "elements") {
      if (t.size() != 2) throw ParseError(line.number, "expected 'elements <N>'");
      if (declared) throw ParseError(line.number, "duplicate elements line");
      declared = parse_count(t[1], line.number);
      declared_line = line.number;
    } else if (t[0] == "e") {
      if (!declared) throw ParseError(line.number, "element before 'elements <N>'");
      if (t.size() < 5 || t[2] != "rank" || t[4] != "atoms")
        throw ParseError(line.number, "expected 'e <id> rank <r> atoms {..}'");
      PosetElementRecord e;
      e.id = parse_count(t[1], line.number);
      e.rank = static_cast<int>(parse_count(t[3], line.number));
      std::string set;
      for (std::size_t j = 5; j < t.size(); ++j) set += t[j];
      if (set.size() < 2 || set.front() != '{' || set.back() != '}')
        throw ParseError(line.number, "atom set must be written as {i,j,...}");
      std::string body = set.substr(1, set.size() - 2);
      std::size_t p = 0;
      while (!body.empty() && p <= body.size()) {
        std::size_t comma = body.find(',', p);
        if (comma == std::string::npos) comma = body.size();
        e.atoms.push_back(parse_count(body.substr(p, comma - p), line.number));
        p = comma + 1;
      }
      if (!ids.insert(e.id).second) throw ParseError(line.number, "duplicate element id " + std::to_string(e.id));
      record.elements.push_back(std::move(e));
    } else {
      throw ParseError(line.number, "unknown keyword '" + t[0] + "'");
    }
  }
  if (!declared) throw ParseError(declared_line, "missing 'elements <N>'");
  if (record.elements.size() != *declared)
    throw ParseError(declared_line, "declared " + std::to_string(*declared) + " elements, found " +
                                        std::to_string(record.elements.size()));
  for (const auto& e : record.elements)
    for (auto a : e.atoms)
      if (!ids.count(a)) throw ParseError(declared_line, "atom id " + std::to_string(a) + " is not an element id");
  if (record.a0 && !ids.count(*record.a0)) throw ParseError(declared_line, "a0 is not an element id");
  return record;
}

std::string write_poset(const PosetRecord& record) {
  std::string out;
  if (record.a0) out += "a0 " + std::to_string(*record.a0) + "\n";
  out += "elements " + std::to_string(record.elements.size()) + "\n";
  for (const auto& e : record.elements) {
    out += "e " + std::to_string(e.id) + " rank " + std::to_string(e.rank) + " atoms {";
    for (std::size_t j = 0; j < e.atoms.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(e.atoms[j]);
    }
    out += "}\n";
  }
  return out;
}

}  // namespace arrlevel
