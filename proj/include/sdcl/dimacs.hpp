#pragma once

#include <cctype>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdcl/clause.hpp"
#include "sdcl/formula.hpp"

namespace sdcl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct DimacsWarnings {
  std::size_t dropped_tautologies = 0;
  bool variables_exceed_header = false;
  bool clause_count_mismatch = false;
  bool unterminated_last_clause = false;
};

namespace detail {

inline bool parse_int(std::string_view tok, long long& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Reads DIMACS CNF. Clause order is preserved; literals are canonicalized.
inline Formula parse_dimacs(std::istream& in, DimacsWarnings* warnings = nullptr) {
  DimacsWarnings local;
  DimacsWarnings& warn = warnings ? *warnings : local;

  bool have_header = false;
  long long declared_vars = 0;
  long long declared_clauses = 0;
  std::size_t clauses_read = 0;
  Var max_var = 0;
  Formula f;
  std::vector<Literal> pending;
  bool pending_open = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0].front() == 'c') continue;
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      if (toks.size() != 4 || toks[1] != "cnf" || !detail::parse_int(toks[2], declared_vars) ||
          !detail::parse_int(toks[3], declared_clauses) || declared_vars < 0 || declared_clauses < 0 ||
          declared_vars > std::numeric_limits<int>::max())
        throw ParseError(lineno, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause data before the problem line");
    for (std::string_view tok : toks) {
      long long v = 0;
      if (!detail::parse_int(tok, v)) throw ParseError(lineno, "not an integer: '" + std::string(tok) + "'");
      if (v == 0) {
        if (tok.front() == '-') throw ParseError(lineno, "literal index 0 inside a clause");
        auto c = Clause::try_make(std::move(pending));
        pending.clear();
        pending_open = false;
        ++clauses_read;
        if (!c) {
          ++warn.dropped_tautologies;
          continue;
        }
        f.add(std::move(*c));
        continue;
      }
      if (v > std::numeric_limits<int>::max() || v < -std::numeric_limits<int>::max())
        throw ParseError(lineno, "literal out of range");
      const Literal l = Literal::from_dimacs(static_cast<int>(v));
      max_var = std::max(max_var, l.variable());
      pending.push_back(l);
      pending_open = true;
    }
  }
  if (!have_header) throw ParseError(lineno, "missing problem line");
  if (pending_open) {
    warn.unterminated_last_clause = true;
    ++clauses_read;
    if (auto c = Clause::try_make(std::move(pending)))
      f.add(std::move(*c));
    else
      ++warn.dropped_tautologies;
  }
  if (max_var > declared_vars) warn.variables_exceed_header = true;
  if (static_cast<long long>(clauses_read) != declared_clauses) warn.clause_count_mismatch = true;
  f.ensure_variables(static_cast<Var>(declared_vars));
  f.ensure_variables(max_var);
  return f;
}

inline Formula parse_dimacs(std::string_view text, DimacsWarnings* warnings = nullptr) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, warnings);
}

inline void write_clause(std::ostream& out, const Clause& c) {
  for (Literal l : c) out << l.to_dimacs() << ' ';
  out << "0\n";
}

/// Writes the live clauses only.
inline void write_dimacs(std::ostream& out, const Formula& f) {
  out << "p cnf " << f.num_variables() << ' ' << f.live_clauses() << '\n';
  f.for_each_alive([&](ClauseRef, const Clause& c) { write_clause(out, c); });
}

inline std::string write_dimacs(const Formula& f) {
  std::ostringstream os;
  write_dimacs(os, f);
  return os.str();
}

}  // namespace sdcl
