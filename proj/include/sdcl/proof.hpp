#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sdcl/clause.hpp"
#include "sdcl/dimacs.hpp"

namespace sdcl {

struct ProofEvent {
  enum class Kind { add, remove };

  Kind kind = Kind::add;
  Clause clause;
  bool transient = false;  // informational, additions only

  static ProofEvent add(Clause c, bool transient = false) { return {Kind::add, std::move(c), transient}; }
  static ProofEvent remove(Clause c) { return {Kind::remove, std::move(c), false}; }
  bool is_add() const { return kind == Kind::add; }
  bool operator==(const ProofEvent&) const = default;
};

/// Ordered clause additions and deletions in the order they were derived.
class ProofTrace {
 public:
  void add(const Clause& c, bool transient = false) { events_.push_back(ProofEvent::add(c, transient)); }
  void remove(const Clause& c) { events_.push_back(ProofEvent::remove(c)); }

  const std::vector<ProofEvent>& events() const { return events_; }
  std::vector<ProofEvent>& events() { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  bool contains_empty_clause() const {
    for (const ProofEvent& e : events_)
      if (e.is_add() && e.clause.empty()) return true;
    return false;
  }

  bool operator==(const ProofTrace&) const = default;

 private:
  std::vector<ProofEvent> events_;
};

/// DRAT-compatible text: additions as literal lists, deletions prefixed with
/// "d", every line terminated by 0. Transient additions are preceded by a
/// "c t" comment.
inline void write_proof(std::ostream& out, const ProofTrace& trace) {
  for (const ProofEvent& e : trace.events()) {
    if (e.is_add() && e.transient) out << "c t\n";
    if (!e.is_add()) out << "d ";
    write_clause(out, e.clause);
  }
}

inline std::string write_proof(const ProofTrace& trace) {
  std::ostringstream os;
  write_proof(os, trace);
  return os.str();
}

inline ProofTrace parse_proof(std::istream& in) {
  ProofTrace trace;
  std::string line;
  std::size_t lineno = 0;
  bool next_transient = false;
  std::vector<Literal> lits;
  bool in_clause = false;
  bool deletion = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0].front() == 'c') {
      if (toks.size() == 2 && toks[0] == "c" && toks[1] == "t") next_transient = true;
      continue;
    }
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i] == "d" && !in_clause) {
        deletion = true;
        in_clause = true;
        continue;
      }
      long long v = 0;
      if (!detail::parse_int(toks[i], v)) throw ParseError(lineno, "bad proof token '" + std::string(toks[i]) + "'");
      in_clause = true;
      if (v == 0) {
        auto c = Clause::try_make(std::move(lits));
        lits.clear();
        if (!c) throw ParseError(lineno, "tautological clause in proof");
        if (deletion)
          trace.remove(*c);
        else
          trace.add(*c, next_transient);
        next_transient = false;
        deletion = false;
        in_clause = false;
        continue;
      }
      if (v > std::numeric_limits<int>::max() || v < -std::numeric_limits<int>::max())
        throw ParseError(lineno, "literal out of range");
      lits.push_back(Literal::from_dimacs(static_cast<int>(v)));
    }
  }
  if (in_clause) throw ParseError(lineno, "unterminated proof line");
  return trace;
}

inline ProofTrace parse_proof(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_proof(in);
}

}  // namespace sdcl
