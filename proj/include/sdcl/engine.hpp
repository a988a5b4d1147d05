#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sdcl/clause.hpp"
#include "sdcl/formula.hpp"

namespace sdcl {

enum class Value : std::int8_t { unassigned = 0, true_ = 1, false_ = -1 };

/// Why a trail literal holds: an assumption, or unit propagation on an
/// antecedent clause.
struct Reason {
  std::optional<ClauseRef> antecedent;

  static Reason assumption() { return Reason{}; }
  static Reason propagated(ClauseRef r) { return Reason{r}; }
  bool is_assumption() const { return !antecedent.has_value(); }
  bool operator==(const Reason&) const = default;
};

struct TrailEntry {
  Literal literal;
  Reason reason;
  std::uint32_t depth;
  bool operator==(const TrailEntry&) const = default;
};

/// An assumption-and-unit-propagation sequence together with the induced
/// partial assignment. `depth` counts the assumptions currently on the trail.
class Trail {
 public:
  Trail() = default;
  explicit Trail(Var num_variables) { reserve(num_variables); }

  void reserve(Var num_variables) {
    if (values_.size() < num_variables + 1) values_.resize(num_variables + 1, Value::unassigned);
  }

  Value value(Literal l) const {
    if (l.variable() >= values_.size()) return Value::unassigned;
    const Value v = values_[l.variable()];
    if (v == Value::unassigned || l.is_positive()) return v;
    return v == Value::true_ ? Value::false_ : Value::true_;
  }
  bool is_true(Literal l) const { return value(l) == Value::true_; }
  bool is_false(Literal l) const { return value(l) == Value::false_; }
  bool assigned(Var v) const { return v < values_.size() && values_[v] != Value::unassigned; }

  void assume(Literal l) {
    if (l.variable() == 0) throw std::invalid_argument("variable index must be positive");
    if (assigned(l.variable())) throw std::logic_error("assume: variable already assigned");
    ++depth_;
    push(l, Reason::assumption());
  }

  void propagate_literal(Literal l, ClauseRef antecedent) {
    if (assigned(l.variable())) throw std::logic_error("propagate: variable already assigned");
    push(l, Reason::propagated(antecedent));
  }

  /// Drops every entry whose depth exceeds `depth`.
  void backtrack_to(std::uint32_t depth) {
    if (depth > depth_) throw std::out_of_range("backtrack_to: depth beyond current depth");
    while (!entries_.empty() && entries_.back().depth > depth) {
      values_[entries_.back().literal.variable()] = Value::unassigned;
      entries_.pop_back();
    }
    depth_ = depth;
  }

  /// Removes everything, including depth-0 entries.
  void clear() {
    for (const TrailEntry& e : entries_) values_[e.literal.variable()] = Value::unassigned;
    entries_.clear();
    depth_ = 0;
  }

  std::uint32_t depth() const { return depth_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const TrailEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<TrailEntry>& entries() const { return entries_; }

  /// The clause made of the negations of every assumption on the trail.
  Clause assumption_prefix_negation() const {
    std::vector<Literal> lits;
    for (const TrailEntry& e : entries_)
      if (e.reason.is_assumption()) lits.push_back(~e.literal);
    return Clause(std::move(lits));
  }

 private:
  void push(Literal l, Reason r) {
    reserve(l.variable());
    values_[l.variable()] = l.is_positive() ? Value::true_ : Value::false_;
    entries_.push_back(TrailEntry{l, r, depth_});
  }

  std::vector<TrailEntry> entries_;
  std::vector<Value> values_{Value::unassigned};
  std::uint32_t depth_ = 0;
};

inline Clause assumption_prefix_negation(const Trail& t) { return t.assumption_prefix_negation(); }

struct PropagationResult {
  std::optional<ClauseRef> conflict;

  static PropagationResult fixpoint() { return {}; }
  static PropagationResult conflict_on(ClauseRef r) { return PropagationResult{r}; }
  bool is_conflict() const { return conflict.has_value(); }
  bool is_fixpoint() const { return !conflict.has_value(); }
};

/// Two-watched-literal unit propagation over a Formula the engine does not own.
///
/// Unit clauses are never watched. They enter the trail only through
/// `assert_units()`, which lets callers decide whether depth-0 facts from unit
/// clauses are present during a sequence. Deleted clauses are dropped from
/// watch lists lazily.
class Engine {
 public:
  explicit Engine(const Formula& f) : formula_(&f) { rebuild(); }

  /// Clears the trail and re-attaches every live clause.
  void rebuild() {
    trail_.clear();
    trail_.reserve(formula_->num_variables());
    qhead_ = 0;
    watches_.assign(2 * (formula_->num_variables() + 1), {});
    lits_.clear();
    units_.clear();
    empty_.reset();
    formula_->for_each_alive([&](ClauseRef r, const Clause&) { attach(r); });
  }

  const Trail& trail() const { return trail_; }
  Value value(Literal l) const { return trail_.value(l); }
  std::uint32_t depth() const { return trail_.depth(); }
  std::uint64_t propagations() const { return propagations_; }

  void assume(Literal l) {
    ensure_variable(l.variable());
    trail_.assume(l);
  }

  void backtrack_to(std::uint32_t depth) {
    trail_.backtrack_to(depth);
    if (qhead_ > trail_.size()) qhead_ = trail_.size();
  }

  void clear() {
    trail_.clear();
    qhead_ = 0;
  }

  Clause assumption_prefix_negation() const { return trail_.assumption_prefix_negation(); }

  /// Enqueues the literal of every live unit clause at the current depth,
  /// then propagates. An empty clause in the formula is an immediate conflict.
  PropagationResult assert_units() {
    if (empty_ && formula_->alive(*empty_)) return PropagationResult::conflict_on(*empty_);
    for (ClauseRef r : units_) {
      if (!formula_->alive(r)) continue;
      const Literal l = formula_->raw(r)[0];
      const Value v = trail_.value(l);
      if (v == Value::false_) return PropagationResult::conflict_on(r);
      if (v == Value::unassigned) enqueue(l, r);
    }
    return propagate();
  }

  /// Registers a clause added to the formula after construction. A clause
  /// with two or more literals that is unit under the trail is enqueued; a
  /// falsified one is reported as a conflict.
  std::optional<ClauseRef> attach(ClauseRef r) {
    const Clause& c = formula_->raw(r);
    ensure_variable(c.max_variable());
    if (lits_.size() <= r.id) lits_.resize(r.id + 1);
    if (c.empty()) {
      empty_ = r;
      return r;
    }
    if (c.size() == 1) {
      units_.push_back(r);
      return std::nullopt;
    }
    std::vector<Literal>& w = lits_[r.id];
    w.assign(c.begin(), c.end());
    // Move the two best literals to the front: non-false first, then false
    // literals assigned latest on the trail.
    auto rank = [&](Literal l) -> std::size_t {
      if (trail_.value(l) != Value::false_) return trail_.size() + 1;
      return position_of(l.variable());
    };
    for (std::size_t slot = 0; slot < 2; ++slot) {
      std::size_t best = slot;
      for (std::size_t i = slot + 1; i < w.size(); ++i)
        if (rank(w[i]) > rank(w[best])) best = i;
      std::swap(w[slot], w[best]);
    }
    watches_[w[0].code()].push_back(r);
    watches_[w[1].code()].push_back(r);
    const Value v0 = trail_.value(w[0]);
    const Value v1 = trail_.value(w[1]);
    if (v0 == Value::false_) return r;
    if (v0 == Value::unassigned && v1 == Value::false_) enqueue(w[0], r);
    return std::nullopt;
  }

  /// FIFO unit propagation from the first unprocessed trail entry.
  PropagationResult propagate() {
    while (qhead_ < trail_.size()) {
      const Literal p = trail_[qhead_++].literal;
      const Literal false_lit = ~p;
      std::vector<ClauseRef>& ws = watches_[false_lit.code()];
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < ws.size()) {
        const ClauseRef r = ws[i++];
        if (!formula_->alive(r)) continue;
        std::vector<Literal>& c = lits_[r.id];
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        if (trail_.value(c[0]) == Value::true_) {
          ws[j++] = r;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (trail_.value(c[k]) != Value::false_) {
            std::swap(c[1], c[k]);
            watches_[c[1].code()].push_back(r);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = r;
        if (trail_.value(c[0]) == Value::false_) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return PropagationResult::conflict_on(r);
        }
        enqueue(c[0], r);
      }
      ws.resize(j);
    }
    return PropagationResult::fixpoint();
  }

  /// Debug check: no live clause is falsified or unit under the trail.
  bool at_full_fixpoint(bool include_units) const {
    bool ok = true;
    formula_->for_each_alive([&](ClauseRef, const Clause& c) {
      if (!ok || (c.size() <= 1 && !include_units)) return;
      std::size_t unassigned = 0;
      bool sat = false;
      for (Literal l : c) {
        const Value v = trail_.value(l);
        if (v == Value::true_) sat = true;
        if (v == Value::unassigned) ++unassigned;
      }
      if (!sat && unassigned <= 1) ok = false;
    });
    return ok;
  }

 private:
  void ensure_variable(Var v) {
    if (2 * (v + 1) > watches_.size()) watches_.resize(2 * (v + 1));
    trail_.reserve(v);
  }

  void enqueue(Literal l, ClauseRef r) {
    trail_.propagate_literal(l, r);
    ++propagations_;
  }

  std::size_t position_of(Var v) const {
    for (std::size_t i = trail_.size(); i-- > 0;)
      if (trail_[i].literal.variable() == v) return i;
    return 0;
  }

  const Formula* formula_;
  Trail trail_;
  std::size_t qhead_ = 0;
  std::vector<std::vector<ClauseRef>> watches_;
  std::vector<std::vector<Literal>> lits_;
  std::vector<ClauseRef> units_;
  std::optional<ClauseRef> empty_;
  std::uint64_t propagations_ = 0;
};

}  // namespace sdcl
