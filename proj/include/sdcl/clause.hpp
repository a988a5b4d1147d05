#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdcl {

using Var = std::uint32_t;

/// A signed variable. Encoded as 2 * variable + (negative ? 1 : 0), so the
/// natural order on codes is the canonical (variable, sign) order with the
/// positive literal first.
class Literal {
 public:
  constexpr Literal() = default;

  static constexpr Literal positive(Var v) { return Literal(v << 1); }
  static constexpr Literal negative(Var v) { return Literal((v << 1) | 1U); }

  /// Builds a literal from a nonzero DIMACS integer.
  static Literal from_dimacs(int value) {
    if (value == 0) throw std::invalid_argument("literal 0 is not a literal");
    const Var v = static_cast<Var>(std::abs(value));
    return value > 0 ? positive(v) : negative(v);
  }

  constexpr Var variable() const { return code_ >> 1; }
  constexpr bool is_negative() const { return (code_ & 1U) != 0; }
  constexpr bool is_positive() const { return !is_negative(); }
  constexpr std::uint32_t code() const { return code_; }

  constexpr Literal operator~() const { return Literal(code_ ^ 1U); }

  int to_dimacs() const {
    const int v = static_cast<int>(variable());
    return is_negative() ? -v : v;
  }

  constexpr auto operator<=>(const Literal&) const = default;

 private:
  constexpr explicit Literal(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

inline constexpr Literal negate(Literal l) { return ~l; }

inline std::ostream& operator<<(std::ostream& os, Literal l) { return os << l.to_dimacs(); }

class TautologyError : public std::invalid_argument {
 public:
  TautologyError() : std::invalid_argument("clause contains a literal and its negation") {}
};

/// Duplicate-free set of literals kept in canonical ascending order.
/// Tautologies cannot be constructed; the empty clause can.
class Clause {
 public:
  Clause() = default;

  Clause(std::initializer_list<Literal> lits) : Clause(std::vector<Literal>(lits)) {}

  explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
    if (!normalize()) throw TautologyError();
  }

  /// Returns nullopt for a tautology instead of throwing.
  static std::optional<Clause> try_make(std::vector<Literal> lits) {
    Clause c;
    c.lits_ = std::move(lits);
    if (!c.normalize()) return std::nullopt;
    return c;
  }

  static Clause from_dimacs(std::initializer_list<int> values) {
    std::vector<Literal> lits;
    for (int v : values) lits.push_back(Literal::from_dimacs(v));
    return Clause(std::move(lits));
  }

  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  Literal operator[](std::size_t i) const { return lits_[i]; }
  std::span<const Literal> literals() const { return lits_; }

  bool contains(Literal l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

  /// Copy without `l`; a no-op if `l` is absent.
  Clause without(Literal l) const {
    Clause c;
    c.lits_.reserve(lits_.size());
    for (Literal x : lits_)
      if (x != l) c.lits_.push_back(x);
    return c;
  }

  Var max_variable() const { return lits_.empty() ? 0 : lits_.back().variable(); }

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause& o) const { return lits_ <=> o.lits_; }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < lits_.size(); ++i) {
      if (i) os << ' ';
      os << lits_[i];
    }
    os << ')';
    return os.str();
  }

 private:
  bool normalize() {
    std::sort(lits_.begin(), lits_.end());
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    for (std::size_t i = 1; i < lits_.size(); ++i)
      if (lits_[i - 1].variable() == lits_[i].variable()) return false;
    return true;
  }

  std::vector<Literal> lits_;
};

inline std::ostream& operator<<(std::ostream& os, const Clause& c) { return os << c.to_string(); }

/// True iff every literal of `a` is a literal of `b`.
inline bool subsumes(const Clause& a, const Clause& b) {
  if (a.size() > b.size()) return false;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace sdcl

template <>
struct std::hash<sdcl::Clause> {
  std::size_t operator()(const sdcl::Clause& c) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (sdcl::Literal l : c) h = (h ^ l.code()) * 0x100000001b3ULL;
    return h;
  }
};
