#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sdcl/clause.hpp"
#include "sdcl/formula.hpp"

namespace sdcl {

inline constexpr Var kOracleVariableCap = 26;

/// Exhaustive satisfiability check. Assignments are enumerated
/// lexicographically over (x1, x2, ...) with false before true, so the model
/// returned is the lexicographically first one. model[v] is the value of v;
/// index 0 is unused.
inline std::optional<std::vector<bool>> brute_force_solve(const Formula& f) {
  const Var n = f.num_variables();
  if (n > kOracleVariableCap) throw std::invalid_argument("brute_force_solve: too many variables");

  // Variable v maps to bit (n - v) so that counting upwards is lexicographic.
  struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
  };
  std::vector<Masks> clauses;
  bool has_empty = false;
  f.for_each_alive([&](ClauseRef, const Clause& c) {
    if (c.empty()) has_empty = true;
    Masks m;
    for (Literal l : c) {
      const std::uint32_t bit = 1U << (n - l.variable());
      (l.is_positive() ? m.pos : m.neg) |= bit;
    }
    clauses.push_back(m);
  });
  if (has_empty) return std::nullopt;

  const std::uint64_t limit = 1ULL << n;
  for (std::uint64_t a = 0; a < limit; ++a) {
    const auto assignment = static_cast<std::uint32_t>(a);
    bool ok = true;
    for (const Masks& m : clauses) {
      if (((assignment & m.pos) | (~assignment & m.neg)) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<bool> model(n + 1, false);
      for (Var v = 1; v <= n; ++v) model[v] = ((assignment >> (n - v)) & 1U) != 0;
      return model;
    }
  }
  return std::nullopt;
}

/// True iff f entails c (f together with the negated literals of c is
/// unsatisfiable).
inline bool is_implicate(const Formula& f, const Clause& c) {
  Formula g(f.num_variables());
  f.for_each_alive([&](ClauseRef, const Clause& cl) { g.add(cl); });
  for (Literal l : c) g.add(Clause{~l});
  return !brute_force_solve(g).has_value();
}

inline bool satisfies(const std::vector<bool>& model, const Clause& c) {
  for (Literal l : c)
    if (l.variable() < model.size() && model[l.variable()] == l.is_positive()) return true;
  return false;
}

inline bool satisfies(const std::vector<bool>& model, const Formula& f) {
  bool ok = true;
  f.for_each_alive([&](ClauseRef, const Clause& c) { ok = ok && satisfies(model, c); });
  return ok;
}

}  // namespace sdcl
