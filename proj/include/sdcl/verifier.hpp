#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdcl/clause.hpp"
#include "sdcl/formula.hpp"
#include "sdcl/proof.hpp"

namespace sdcl {

/// Clause database with reverse-unit-propagation checks.
///
/// Propagation here is a plain false-literal counter per clause over
/// occurrence lists, independent of the solver's watched-literal engine.
class RupChecker {
 public:
  RupChecker() = default;
  explicit RupChecker(const Formula& f) {
    f.for_each_alive([&](ClauseRef, const Clause& c) { insert(c); });
  }

  void insert(const Clause& c) {
    const std::uint32_t idx = static_cast<std::uint32_t>(clauses_.size());
    clauses_.push_back(c);
    alive_.push_back(true);
    grow(c.max_variable());
    for (Literal l : c) occurrences_[l.code()].push_back(idx);
    by_literals_[c].push_back(idx);
  }

  /// Removes one live copy of `c`; false if there is none.
  bool erase(const Clause& c) {
    auto it = by_literals_.find(c);
    if (it == by_literals_.end() || it->second.empty()) return false;
    alive_[it->second.back()] = false;
    it->second.pop_back();
    if (it->second.empty()) by_literals_.erase(it);
    return true;
  }

  bool contains(const Clause& c) const { return by_literals_.count(c) != 0; }

  /// True iff assigning the negation of every literal of `c` and propagating
  /// yields a falsified clause.
  bool check(const Clause& c) {
    Var max_var = c.max_variable();
    if (num_vars_ > max_var) max_var = num_vars_;
    values_.assign(max_var + 1, 0);
    false_count_.assign(clauses_.size(), 0);
    queue_.clear();

    for (Literal l : c)
      if (!set_true(~l)) return true;
    for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
      if (!alive_[i]) continue;
      if (clauses_[i].empty()) return true;
      if (clauses_[i].size() == 1 && !set_true(clauses_[i][0])) return true;
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Literal falsified = ~queue_[head];
      if (falsified.code() >= occurrences_.size()) continue;
      for (std::uint32_t idx : occurrences_[falsified.code()]) {
        if (!alive_[idx]) continue;
        const Clause& cl = clauses_[idx];
        const std::uint32_t count = ++false_count_[idx];
        if (count == cl.size()) return true;
        if (count + 1 == cl.size()) {
          for (Literal l : cl) {
            const int v = value(l);
            if (v == 1) break;
            if (v == 0) {
              set_true(l);
              break;
            }
          }
        }
      }
    }
    return false;
  }

 private:
  void grow(Var v) {
    if (v > num_vars_) num_vars_ = v;
    if (occurrences_.size() < 2 * (num_vars_ + 1)) occurrences_.resize(2 * (num_vars_ + 1));
  }

  int value(Literal l) const {
    const int v = values_[l.variable()];
    return l.is_negative() ? -v : v;
  }

  bool set_true(Literal l) {
    const int v = value(l);
    if (v == -1) return false;
    if (v == 1) return true;
    values_[l.variable()] = static_cast<std::int8_t>(l.is_positive() ? 1 : -1);
    queue_.push_back(l);
    return true;
  }

  std::vector<Clause> clauses_;
  std::vector<bool> alive_;
  std::vector<std::vector<std::uint32_t>> occurrences_;
  std::map<Clause, std::vector<std::uint32_t>> by_literals_;
  Var num_vars_ = 0;

  std::vector<std::int8_t> values_;
  std::vector<std::uint32_t> false_count_;
  std::vector<Literal> queue_;
};

inline bool check_rup(const Formula& db, const Clause& c) {
  RupChecker checker(db);
  return checker.check(c);
}

struct Verdict {
  bool verified = false;
  std::size_t step = 0;  // index of the first failing event when rejected
  std::string reason;

  static Verdict accept() { return Verdict{true, 0, {}}; }
  static Verdict reject(std::size_t step, std::string reason) { return Verdict{false, step, std::move(reason)}; }
};

/// Replays `trace` against `original`. Checking stops at the first added
/// empty clause.
inline Verdict verify(const Formula& original, const ProofTrace& trace) {
  RupChecker db(original);
  const auto& events = trace.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    const ProofEvent& e = events[i];
    if (e.is_add()) {
      if (!db.check(e.clause)) return Verdict::reject(i, "clause " + e.clause.to_string() + " is not RUP");
      if (e.clause.empty()) return Verdict::accept();
      db.insert(e.clause);
    } else if (!db.erase(e.clause)) {
      return Verdict::reject(i, "deleted clause " + e.clause.to_string() + " is not in the database");
    }
  }
  return Verdict::reject(events.size(), "proof does not derive the empty clause");
}

}  // namespace sdcl
