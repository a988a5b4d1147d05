#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sdcl/clause.hpp"

namespace sdcl {

/// Stable handle on a clause of a Formula. Identifiers are never reused.
struct ClauseRef {
  std::uint32_t id = 0;
  auto operator<=>(const ClauseRef&) const = default;
};

/// Indexed clause database. Deleted clauses are tombstoned so that references
/// stay valid for proof logging; `compacted()` produces a fresh database.
class Formula {
 public:
  Formula() = default;
  explicit Formula(Var num_variables) : num_variables_(num_variables) {}

  ClauseRef add(Clause c, bool transient = false) {
    ensure_variables(c.max_variable());
    total_live_literals_ += c.size();
    ++live_clauses_;
    if (!transient) ++live_permanent_;
    entries_.push_back(Entry{std::move(c), true, transient});
    return ClauseRef{static_cast<std::uint32_t>(entries_.size() - 1)};
  }

  void remove(ClauseRef r) {
    Entry& e = checked(r);
    e.alive = false;
    total_live_literals_ -= e.clause.size();
    --live_clauses_;
    if (!e.transient) --live_permanent_;
  }

  /// Dereferences a live clause; deleted or unknown references throw.
  const Clause& at(ClauseRef r) const { return checked(r).clause; }

  /// Access regardless of liveness (for watch-list cleanup and diagnostics).
  const Clause& raw(ClauseRef r) const { return entries_.at(r.id).clause; }

  bool contains(ClauseRef r) const { return r.id < entries_.size(); }
  bool alive(ClauseRef r) const { return r.id < entries_.size() && entries_[r.id].alive; }
  bool transient(ClauseRef r) const { return entries_.at(r.id).transient; }

  Var num_variables() const { return num_variables_; }
  void ensure_variables(Var n) {
    if (n > num_variables_) num_variables_ = n;
  }

  std::size_t total_live_literals() const { return total_live_literals_; }
  std::size_t live_clauses() const { return live_clauses_; }
  std::size_t live_permanent_clauses() const { return live_permanent_; }
  /// Number of identifiers handed out so far.
  std::size_t capacity() const { return entries_.size(); }

  std::vector<ClauseRef> alive_refs() const {
    std::vector<ClauseRef> out;
    out.reserve(live_clauses_);
    for (std::uint32_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].alive) out.push_back(ClauseRef{i});
    return out;
  }

  std::vector<Clause> alive_clauses() const {
    std::vector<Clause> out;
    out.reserve(live_clauses_);
    for (const Entry& e : entries_)
      if (e.alive) out.push_back(e.clause);
    return out;
  }

  template <typename F>
  void for_each_alive(F&& f) const {
    for (std::uint32_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].alive) f(ClauseRef{i}, entries_[i].clause);
  }

  Formula compacted() const {
    Formula out(num_variables_);
    for (const Entry& e : entries_)
      if (e.alive) out.add(e.clause, e.transient);
    return out;
  }

 private:
  struct Entry {
    Clause clause;
    bool alive;
    bool transient;
  };

  const Entry& checked(ClauseRef r) const {
    if (r.id >= entries_.size()) throw std::out_of_range("unknown clause reference");
    if (!entries_[r.id].alive) throw std::logic_error("dereferencing a deleted clause");
    return entries_[r.id];
  }
  Entry& checked(ClauseRef r) { return const_cast<Entry&>(std::as_const(*this).checked(r)); }

  std::vector<Entry> entries_;
  Var num_variables_ = 0;
  std::size_t total_live_literals_ = 0;
  std::size_t live_clauses_ = 0;
  std::size_t live_permanent_ = 0;
};

struct SubsumptionResult {
  ClauseRef added;
  std::vector<ClauseRef> deleted;
};

/// Adds `learned` and deletes every other live clause it subsumes (equal
/// literal sets included). The caller guarantees `learned` is implied.
inline SubsumptionResult apply_subsumption(Formula& f, const Clause& learned) {
  SubsumptionResult result;
  f.for_each_alive([&](ClauseRef r, const Clause& c) {
    if (subsumes(learned, c)) result.deleted.push_back(r);
  });
  for (ClauseRef r : result.deleted) f.remove(r);
  result.added = f.add(learned);
  return result;
}

}  // namespace sdcl
