#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdcl/clause.hpp"
#include "sdcl/engine.hpp"
#include "sdcl/formula.hpp"
#include "sdcl/oracle.hpp"
#include "sdcl/proof.hpp"

namespace sdcl {

enum class Strategy { sdcl, dpll };

/// Order in which a sweep visits its targets.
enum class SuperficialOrder { shortest_first, input_order };
/// Which clause an advanced attempt tries to subsume.
enum class TargetPolicy { shortest_first, input_order };
/// Order in which literals of a target are tried as the dropped literal.
enum class DropPolicy { canonical, reverse_canonical };
/// Order of the remaining target literals whose negations are assumed.
enum class AssumptionOrder { canonical, occurrence };
/// Whether unit clauses are asserted at depth 0 during superficial sweeps
/// (eager) or only by the depth-0 check between sweeps (deferred).
enum class RootUnits { deferred, eager };

struct SolverConfig {
  Strategy strategy = Strategy::sdcl;
  SuperficialOrder superficial_order = SuperficialOrder::shortest_first;
  TargetPolicy target_policy = TargetPolicy::shortest_first;
  DropPolicy drop_policy = DropPolicy::canonical;
  AssumptionOrder assumption_order = AssumptionOrder::canonical;
  RootUnits root_units = RootUnits::deferred;
  std::uint64_t initial_conflict_budget = 64;
  double budget_growth = 2.0;
  std::uint64_t restart_luby_unit = 64;
  std::uint64_t seed = 0;
  std::optional<double> max_seconds;

  void validate() const {
    if (initial_conflict_budget == 0) throw std::invalid_argument("initial conflict budget must be positive");
    if (!(budget_growth > 1.0)) throw std::invalid_argument("budget growth must exceed 1");
    if (restart_luby_unit == 0) throw std::invalid_argument("restart unit must be positive");
    if (max_seconds && !(*max_seconds > 0.0)) throw std::invalid_argument("max seconds must be positive");
  }
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t superficial_attempts = 0;
  std::uint64_t superficial_successes = 0;
  std::uint64_t advanced_attempts = 0;
  std::uint64_t advanced_successes = 0;
  std::uint64_t learned_permanent = 0;
  std::uint64_t learned_transient = 0;
  std::uint64_t deleted_subsumed = 0;
  std::uint64_t peak_permanent_clauses = 0;
  std::uint64_t restarts = 0;
  double wall_seconds = 0.0;

  bool operator==(const SolverStats& o) const {
    return decisions == o.decisions && propagations == o.propagations && conflicts == o.conflicts &&
           superficial_attempts == o.superficial_attempts && superficial_successes == o.superficial_successes &&
           advanced_attempts == o.advanced_attempts && advanced_successes == o.advanced_successes &&
           learned_permanent == o.learned_permanent && learned_transient == o.learned_transient &&
           deleted_subsumed == o.deleted_subsumed && peak_permanent_clauses == o.peak_permanent_clauses &&
           restarts == o.restarts;
  }
};

enum class Status { sat, unsat, unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::sat: return "SAT";
    case Status::unsat: return "UNSAT";
    case Status::unknown: return "UNKNOWN";
  }
  return "?";
}

struct Outcome {
  Status status = Status::unknown;
  std::vector<bool> model;  // index = variable, only for Sat
  ProofTrace proof;         // complete refutation for Unsat
  SolverStats stats;
  std::string reason;  // for Unknown
};

struct SuperficialOutcome {
  enum class Kind { learned, no_conflict, global_unsat };
  Kind kind = Kind::no_conflict;
  Clause clause;
};

struct AdvancedOutcome {
  enum class Kind { subsumed, model_found, budget_exhausted };
  Kind kind = Kind::budget_exhausted;
  Clause clause;
  std::vector<bool> model;
};

enum class SweepResult { progress, no_progress, global_unsat, timeout };

/// Luby sequence, 1-indexed: 1 1 2 1 1 2 4 1 1 2 ...
inline std::uint64_t luby(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("luby index is 1-based");
  for (;;) {
    std::uint64_t k = 1;
    while (((1ULL << k) - 1) < i) ++k;
    if (i == (1ULL << k) - 1) return 1ULL << (k - 1);
    i -= (1ULL << (k - 1)) - 1;
  }
}

/// Subsumption-driven clause learning on top of a DPLL engine with restarts.
///
/// Every permanently learned clause is the negation of a set of assumptions
/// taken from some live clause, so it subsumes that clause, which is then
/// deleted. The database only shrinks in total literal count until it
/// contains the empty clause or has a model.
///
/// The solver keeps its own copy of the formula and refers to it from the
/// engine, so it is neither copyable nor movable.
class Solver {
 public:
  explicit Solver(const Formula& f, SolverConfig config = {})
      : original_(f), db_(f.compacted()), engine_(db_), config_(config), rng_(config.seed) {
    config_.validate();
    stats_.peak_permanent_clauses = db_.live_permanent_clauses();
    start_ = Clock::now();
  }
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  const Formula& formula() const { return db_; }
  const Formula& original() const { return original_; }
  const ProofTrace& proof() const { return proof_; }
  const Engine& engine() const { return engine_; }
  const SolverConfig& config() const { return config_; }
  const std::vector<Clause>& learned_clauses() const { return learned_; }

  SolverStats stats() const {
    SolverStats s = stats_;
    s.propagations = engine_.propagations();
    s.wall_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return s;
  }

  Outcome solve() {
    start_ = Clock::now();
    Outcome out = config_.strategy == Strategy::dpll ? run_dpll() : run_sdcl();
    out.stats = stats();
    if (out.status == Status::sat && !satisfies(out.model, original_))
      throw std::logic_error("internal error: reported model violates the input formula");
    if (out.status == Status::unsat) out.proof = proof_;
    return out;
  }

  /// Resets to depth 0 with the unit clauses asserted and propagated.
  PropagationResult root_propagate() {
    engine_.clear();
    return engine_.assert_units();
  }

  /// One contradictory-sequence attempt on `target`: assume the negations of
  /// `order` one at a time, propagating after each.
  SuperficialOutcome attempt_superficial(ClauseRef target, Literal dropped, std::span<const Literal> order) {
    const Clause& t = db_.at(target);
    if (!t.contains(dropped)) throw std::invalid_argument("dropped literal is not in the target clause");
    std::vector<Literal> expected(t.begin(), t.end());
    expected.erase(std::find(expected.begin(), expected.end(), dropped));
    std::vector<Literal> given(order.begin(), order.end());
    std::sort(given.begin(), given.end());
    if (given != expected) throw std::invalid_argument("assumption order is not a permutation of the target minus the dropped literal");

    ++stats_.superficial_attempts;
    engine_.backtrack_to(0);
    if (engine_.propagate().is_conflict()) {
      ++stats_.conflicts;
      return {SuperficialOutcome::Kind::global_unsat, Clause{}};
    }
    for (Literal lit : order) {
      const Literal assumption = ~lit;
      const Value v = engine_.value(assumption);
      if (v == Value::true_) continue;
      if (v == Value::false_) return {SuperficialOutcome::Kind::no_conflict, {}};
      engine_.assume(assumption);
      ++stats_.decisions;
      if (engine_.propagate().is_conflict()) {
        ++stats_.conflicts;
        ++stats_.superficial_successes;
        Clause learned = engine_.assumption_prefix_negation();
        engine_.backtrack_to(0);
        return {SuperficialOutcome::Kind::learned, std::move(learned)};
      }
    }
    return {SuperficialOutcome::Kind::no_conflict, {}};
  }

  /// Budgeted DPLL search under the assumptions "target minus dropped",
  /// with Luby restarts. Expects the engine at depth 0 with root facts (see
  /// root_propagate). On Subsumed the branch nogoods stay in the database
  /// until commit_learning(); otherwise they are removed before returning.
  AdvancedOutcome attempt_advanced(ClauseRef target, Literal dropped, std::uint64_t budget) {
    if (budget == 0) throw std::invalid_argument("conflict budget must be positive");
    const Clause& t = db_.at(target);
    if (!t.contains(dropped)) throw std::invalid_argument("dropped literal is not in the target clause");
    ++stats_.advanced_attempts;
    engine_.backtrack_to(0);

    for (Literal lit : assumption_order(t, dropped)) {
      const Literal assumption = ~lit;
      const Value v = engine_.value(assumption);
      if (v == Value::true_) continue;
      if (v == Value::false_) {
        // The assumptions so far imply lit, a literal of the target.
        const Clause prefix = engine_.assumption_prefix_negation();
        std::vector<Literal> lits(prefix.begin(), prefix.end());
        lits.push_back(lit);
        engine_.backtrack_to(0);
        ++stats_.advanced_successes;
        return {AdvancedOutcome::Kind::subsumed, Clause(std::move(lits)), {}};
      }
      engine_.assume(assumption);
      ++stats_.decisions;
      if (engine_.propagate().is_conflict()) {
        ++stats_.conflicts;
        Clause learned = engine_.assumption_prefix_negation();
        engine_.backtrack_to(0);
        ++stats_.advanced_successes;
        return {AdvancedOutcome::Kind::subsumed, std::move(learned), {}};
      }
    }

    const std::uint32_t base = engine_.depth();
    std::uint64_t conflicts = 0;
    std::uint64_t since_restart = 0;
    std::uint64_t restart_index = 1;
    std::uint64_t steps = 0;
    for (;;) {
      if ((++steps & 0xff) == 0 && deadline_passed()) {
        timed_out_ = true;
        drop_transients();
        return {AdvancedOutcome::Kind::budget_exhausted, {}, {}};
      }
      if (engine_.propagate().is_conflict()) {
        ++stats_.conflicts;
        ++conflicts;
        ++since_restart;
        if (engine_.depth() == base) {
          Clause learned = engine_.assumption_prefix_negation();
          engine_.backtrack_to(0);
          ++stats_.advanced_successes;
          return {AdvancedOutcome::Kind::subsumed, std::move(learned), {}};
        }
        Clause nogood = engine_.assumption_prefix_negation();
        engine_.backtrack_to(engine_.depth() - 1);
        proof_.add(nogood, true);
        const ClauseRef ref = db_.add(std::move(nogood), true);
        transients_.push_back(ref);
        ++stats_.learned_transient;
        engine_.attach(ref);
        if (conflicts >= budget) {
          drop_transients();
          return {AdvancedOutcome::Kind::budget_exhausted, {}, {}};
        }
        if (since_restart >= config_.restart_luby_unit * luby(restart_index)) {
          engine_.backtrack_to(base);
          ++stats_.restarts;
          ++restart_index;
          since_restart = 0;
        }
        continue;
      }
      const std::optional<Literal> decision = pick_decision();
      if (!decision) {
        std::vector<bool> model = current_model();
        drop_transients();
        return {AdvancedOutcome::Kind::model_found, {}, std::move(model)};
      }
      engine_.assume(*decision);
      ++stats_.decisions;
    }
  }

  /// Logs `learned`, removes pending branch nogoods, then replaces every
  /// clause subsumed by `learned`. The empty clause is recorded without
  /// deleting anything.
  void commit_learning(const Clause& learned) {
    proof_.add(learned);
    drop_transients();
    ++stats_.learned_permanent;
    learned_.push_back(learned);
    if (learned.empty()) {
      const ClauseRef r = db_.add(learned);
      engine_.attach(r);
      return;
    }
    const SubsumptionResult res = apply_subsumption(db_, learned);
    for (ClauseRef d : res.deleted) {
      proof_.remove(db_.raw(d));
      ++stats_.deleted_subsumed;
    }
    engine_.attach(res.added);
    note_permanent_size();
  }

  /// Superficial simplification to fixpoint. Each pass visits a snapshot of
  /// the live clauses in policy order and tries every dropped literal until
  /// one attempt learns; clauses learned during a pass join the next pass.
  SweepResult superficial_sweep() {
    if (root_propagate().is_conflict()) {
      ++stats_.conflicts;
      commit_learning(Clause{});
      return SweepResult::global_unsat;
    }
    if (config_.root_units == RootUnits::deferred) engine_.clear();

    bool progress = false;
    for (;;) {
      bool pass_progress = false;
      for (ClauseRef target : sweep_snapshot()) {
        if (!db_.alive(target)) continue;
        if (deadline_passed()) return SweepResult::timeout;
        const Clause t = db_.at(target);
        if (satisfied_at_root(t)) continue;
        for (Literal dropped : drop_order(t)) {
          const std::vector<Literal> order = assumption_order(t, dropped);
          const SuperficialOutcome out = attempt_superficial(target, dropped, order);
          if (out.kind == SuperficialOutcome::Kind::global_unsat) {
            commit_learning(Clause{});
            return SweepResult::global_unsat;
          }
          engine_.backtrack_to(0);
          if (out.kind == SuperficialOutcome::Kind::learned) {
            commit_learning(out.clause);
            pass_progress = true;
            const PropagationResult root = config_.root_units == RootUnits::eager ? engine_.assert_units()
                                                                                 : engine_.propagate();
            if (root.is_conflict()) {
              ++stats_.conflicts;
              commit_learning(Clause{});
              return SweepResult::global_unsat;
            }
            break;
          }
        }
      }
      if (!pass_progress) break;
      progress = true;
    }
    return progress ? SweepResult::progress : SweepResult::no_progress;
  }

  /// Shortest live clause, not satisfied at depth 0, outside the failure
  /// cooldown; ties by identifier. When every candidate is cooling down the
  /// cooldown is cleared.
  ClauseRef select_target_clause() {
    std::vector<ClauseRef> candidates;
    db_.for_each_alive([&](ClauseRef r, const Clause& c) {
      if (!db_.transient(r) && !satisfied_at_root(c)) candidates.push_back(r);
    });
    if (candidates.empty()) throw std::logic_error("select_target_clause: no live unsatisfied clause");
    auto pick = [&]() -> std::optional<ClauseRef> {
      std::optional<ClauseRef> best;
      for (ClauseRef r : candidates) {
        if (cooldown_.count(r)) continue;
        if (!best) {
          best = r;
          continue;
        }
        if (config_.target_policy == TargetPolicy::shortest_first && db_.at(r).size() < db_.at(*best).size())
          best = r;
      }
      return best;
    };
    if (auto r = pick()) return *r;
    cooldown_.clear();
    return *pick();
  }

  void mark_failed(ClauseRef r) {
    cooldown_.insert(r);
    auto& b = budget_for(r);
    b = static_cast<std::uint64_t>(std::ceil(static_cast<double>(b) * config_.budget_growth));
  }

  std::uint64_t& budget_for(ClauseRef r) {
    auto it = budgets_.find(r);
    if (it == budgets_.end()) it = budgets_.emplace(r, config_.initial_conflict_budget).first;
    return it->second;
  }

  /// Remaining literals of `target` (minus `dropped`) in assumption order.
  std::vector<Literal> assumption_order(const Clause& target, Literal dropped) const {
    std::vector<Literal> rest;
    for (Literal l : target)
      if (l != dropped) rest.push_back(l);
    if (config_.assumption_order == AssumptionOrder::occurrence) {
      std::map<Literal, std::size_t> count;
      db_.for_each_alive([&](ClauseRef r, const Clause& c) {
        if (db_.transient(r)) return;
        for (Literal l : c) ++count[l];
      });
      std::stable_sort(rest.begin(), rest.end(), [&](Literal a, Literal b) { return count[a] > count[b]; });
    }
    return rest;
  }

  std::vector<Literal> drop_order(const Clause& target) const {
    std::vector<Literal> out(target.begin(), target.end());
    if (config_.drop_policy == DropPolicy::reverse_canonical) std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  using Clock = std::chrono::steady_clock;

  Outcome run_sdcl() {
    if (deadline_passed()) return unknown("timeout");
    for (;;) {
      if (deadline_passed()) return unknown("timeout");
      if (auto done = check_root()) return *done;

      switch (superficial_sweep()) {
        case SweepResult::global_unsat: return unsat();
        case SweepResult::timeout: return unknown("timeout");
        case SweepResult::progress: continue;
        case SweepResult::no_progress: break;
      }

      if (auto done = check_root()) return *done;
      for (;;) {
        if (deadline_passed() || timed_out_) return unknown("timeout");
        const ClauseRef target = select_target_clause();
        const Clause t = db_.at(target);
        Literal dropped = t[0];
        for (Literal l : drop_order(t)) {
          if (engine_.value(l) == Value::unassigned) {
            dropped = l;
            break;
          }
        }
        const AdvancedOutcome out = attempt_advanced(target, dropped, budget_for(target));
        if (out.kind == AdvancedOutcome::Kind::model_found) return sat(out.model);
        if (out.kind == AdvancedOutcome::Kind::subsumed) {
          commit_learning(out.clause);
          cooldown_.erase(target);
          if (out.clause.empty()) return unsat();
          break;
        }
        if (timed_out_) return unknown("timeout");
        mark_failed(target);
      }
    }
  }

  /// Depth-0 check with unit clauses: conflict ends the run, and a root
  /// assignment satisfying every live clause is a model.
  std::optional<Outcome> check_root() {
    if (root_propagate().is_conflict()) {
      ++stats_.conflicts;
      commit_learning(Clause{});
      return unsat();
    }
    bool all = true;
    db_.for_each_alive([&](ClauseRef, const Clause& c) { all = all && satisfied_at_root(c); });
    if (all) return sat(current_model());
    return std::nullopt;
  }

  /// Chronological DPLL without clause learning. Each refuted node is logged
  /// as the negation of its decision path, so the trace stays RUP-checkable.
  Outcome run_dpll() {
    if (root_propagate().is_conflict()) {
      ++stats_.conflicts;
      proof_.add(Clause{});
      return unsat();
    }
    std::vector<bool> flipped;
    std::uint64_t steps = 0;
    for (;;) {
      if ((++steps & 0xff) == 0 && deadline_passed()) return unknown("timeout");
      if (engine_.propagate().is_conflict()) {
        ++stats_.conflicts;
        proof_.add(engine_.assumption_prefix_negation());
        for (;;) {
          if (flipped.empty()) return unsat();
          const bool was_flipped = flipped.back();
          const Literal last = decision_literal(engine_.depth());
          flipped.pop_back();
          engine_.backtrack_to(engine_.depth() - 1);
          if (was_flipped) {
            proof_.add(engine_.assumption_prefix_negation());
            continue;
          }
          engine_.assume(~last);
          ++stats_.decisions;
          flipped.push_back(true);
          break;
        }
        continue;
      }
      const std::optional<Literal> decision = pick_decision();
      if (!decision) return sat(current_model());
      engine_.assume(*decision);
      ++stats_.decisions;
      flipped.push_back(false);
    }
  }

  Literal decision_literal(std::uint32_t depth) const {
    for (const TrailEntry& e : engine_.trail().entries())
      if (e.reason.is_assumption() && e.depth == depth) return e.literal;
    throw std::logic_error("no assumption at requested depth");
  }

  /// Unassigned literal with the most occurrences in live clauses not yet
  /// satisfied. Ties go to the smallest literal, or are drawn from the seeded
  /// generator when the seed is nonzero.
  std::optional<Literal> pick_decision() {
    const Var n = db_.num_variables();
    score_.assign(2 * (n + 1), 0);
    db_.for_each_alive([&](ClauseRef, const Clause& c) {
      for (Literal l : c)
        if (engine_.value(l) == Value::true_) return;
      for (Literal l : c)
        if (engine_.value(l) == Value::unassigned) {
          ++score_[l.code()];
        }
    });
    std::vector<Literal> best;
    std::uint32_t best_score = 0;
    for (Var v = 1; v <= n; ++v) {
      if (engine_.trail().assigned(v)) continue;
      for (Literal l : {Literal::positive(v), Literal::negative(v)}) {
        const std::uint32_t s = score_[l.code()];
        if (best.empty() || s > best_score) {
          best.assign(1, l);
          best_score = s;
        } else if (s == best_score) {
          best.push_back(l);
        }
      }
    }
    if (best.empty()) return std::nullopt;
    if (config_.seed == 0 || best.size() == 1) return best.front();
    std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
    return best[pick(rng_)];
  }

  std::vector<ClauseRef> sweep_snapshot() const {
    std::vector<ClauseRef> out;
    db_.for_each_alive([&](ClauseRef r, const Clause& c) {
      if (!db_.transient(r) && c.size() >= 2) out.push_back(r);
    });
    if (config_.superficial_order == SuperficialOrder::shortest_first)
      std::stable_sort(out.begin(), out.end(),
                       [&](ClauseRef a, ClauseRef b) { return db_.at(a).size() < db_.at(b).size(); });
    return out;
  }

  bool satisfied_at_root(const Clause& c) const {
    for (Literal l : c) {
      if (engine_.value(l) != Value::true_) continue;
      for (const TrailEntry& e : engine_.trail().entries()) {
        if (e.depth > 0) break;
        if (e.literal == l) return true;
      }
    }
    return false;
  }

  std::vector<bool> current_model() const {
    std::vector<bool> model(db_.num_variables() + 1, false);
    for (Var v = 1; v <= db_.num_variables(); ++v) model[v] = engine_.value(Literal::positive(v)) == Value::true_;
    return model;
  }

  void drop_transients() {
    engine_.backtrack_to(0);
    for (ClauseRef r : transients_) {
      if (!db_.alive(r)) continue;
      proof_.remove(db_.raw(r));
      db_.remove(r);
    }
    transients_.clear();
  }

  void note_permanent_size() {
    stats_.peak_permanent_clauses =
        std::max<std::uint64_t>(stats_.peak_permanent_clauses, db_.live_permanent_clauses());
  }

  bool deadline_passed() const {
    if (!config_.max_seconds) return false;
    return std::chrono::duration<double>(Clock::now() - start_).count() > *config_.max_seconds;
  }

  Outcome sat(std::vector<bool> model) {
    Outcome o;
    o.status = Status::sat;
    o.model = std::move(model);
    return o;
  }
  Outcome unsat() {
    Outcome o;
    o.status = Status::unsat;
    return o;
  }
  Outcome unknown(std::string reason) {
    Outcome o;
    o.status = Status::unknown;
    o.reason = std::move(reason);
    return o;
  }

  Formula original_;
  Formula db_;
  Engine engine_;
  SolverConfig config_;
  SolverStats stats_;
  ProofTrace proof_;
  std::vector<Clause> learned_;
  std::vector<ClauseRef> transients_;
  std::set<ClauseRef> cooldown_;
  std::map<ClauseRef, std::uint64_t> budgets_;
  std::vector<std::uint32_t> score_;
  std::mt19937_64 rng_;
  bool timed_out_ = false;
  Clock::time_point start_;
};

inline Outcome solve(const Formula& f, const SolverConfig& config = {}) {
  Solver s(f, config);
  return s.solve();
}

}  // namespace sdcl
