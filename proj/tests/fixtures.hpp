#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "sdcl/dimacs.hpp"
#include "sdcl/pebbling.hpp"

namespace sdcl::testing {

#ifndef SDCL_TEST_DATA
#define SDCL_TEST_DATA "tests/data"
#endif

inline std::string data_path(const std::string& name) { return std::string(SDCL_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Formula load(const std::string& name) { return parse_dimacs(read_file(data_path(name))); }

/// Eq-style fixture over x y z r s t = 1..6.
inline Formula sixvar() { return load("sixvar.cnf"); }

/// Pyramid letters: a b | c d | e f on the sources, g h and i j above them,
/// k l at the apex. Variables 1..12 in that order.
inline Literal pos(char letter) { return Literal::positive(static_cast<Var>(letter - 'a' + 1)); }
inline Literal neg(char letter) { return Literal::negative(static_cast<Var>(letter - 'a' + 1)); }

inline pebbling::Instance pyramid_instance(std::size_t rows = 3, std::size_t arity = 2) {
  return pebbling::generate(pebbling::pyramid(rows, arity));
}

/// Uniform random 3-CNF, m = round(ratio * n) clauses over n variables,
/// three distinct variables per clause.
inline Formula random_3cnf(std::mt19937_64& rng, Var n, double ratio) {
  Formula f(n);
  const auto m = static_cast<std::size_t>(ratio * n + 0.5);
  std::uniform_int_distribution<Var> pick(1, n);
  std::bernoulli_distribution sign(0.5);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Literal> lits;
    while (lits.size() < 3) {
      const Var v = pick(rng);
      bool fresh = true;
      for (Literal l : lits) fresh = fresh && l.variable() != v;
      if (fresh) lits.push_back(sign(rng) ? Literal::positive(v) : Literal::negative(v));
    }
    f.add(Clause(std::move(lits)));
  }
  return f;
}

}  // namespace sdcl::testing
