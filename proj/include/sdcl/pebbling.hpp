#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdcl/clause.hpp"
#include "sdcl/formula.hpp"

namespace sdcl::pebbling {

enum class VertexKind { source, internal, sink };

inline const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::source: return "source";
    case VertexKind::internal: return "internal";
    case VertexKind::sink: return "sink";
  }
  return "?";
}

class UnsupportedFeature : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::source;
  std::vector<std::size_t> preds;  // indices into Dag::vertices, in-arc order
  std::vector<Var> out_vars;       // k variables; empty for the sink
};

/// Or-type pebbling graph with arity k. Vertices are stored in topological
/// order once `assign_variables` has run.
struct Dag {
  std::size_t arity = 1;
  std::vector<Vertex> vertices;

  std::size_t sink() const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].kind == VertexKind::sink) return i;
    throw std::invalid_argument("pebbling graph has no sink");
  }

  /// Checks the structural rules. With `require_vars` the per-vertex
  /// variable lists are checked as well.
  void validate(bool require_vars = true) const {
    if (arity < 1) throw std::invalid_argument("arity must be at least 1");
    std::size_t sinks = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const Vertex& v = vertices[i];
      std::set<std::size_t> seen;
      for (std::size_t p : v.preds) {
        if (p >= vertices.size()) throw std::invalid_argument("vertex " + v.id + ": unknown predecessor");
        if (vertices[p].kind == VertexKind::sink) throw std::invalid_argument("vertex " + v.id + ": sink has out-arcs");
        if (!seen.insert(p).second) throw std::invalid_argument("vertex " + v.id + ": repeated in-arc");
      }
      switch (v.kind) {
        case VertexKind::source:
          if (!v.preds.empty()) throw std::invalid_argument("source " + v.id + " has in-arcs");
          break;
        case VertexKind::internal:
          if (v.preds.empty()) throw std::invalid_argument("internal vertex " + v.id + " has no in-arcs");
          break;
        case VertexKind::sink:
          ++sinks;
          if (v.preds.size() != 1) throw std::invalid_argument("sink must have exactly one in-arc");
          break;
      }
    }
    if (sinks != 1) throw std::invalid_argument("pebbling graph must have exactly one sink");
    topological_order();
    if (!require_vars) return;
    std::set<Var> used;
    for (const Vertex& v : vertices) {
      if (v.kind == VertexKind::sink) {
        if (!v.out_vars.empty()) throw std::invalid_argument("sink carries no out-variables");
        continue;
      }
      if (v.out_vars.size() != arity) throw std::invalid_argument("vertex " + v.id + ": needs k out-variables");
      for (Var x : v.out_vars)
        if (x == 0 || !used.insert(x).second)
          throw std::invalid_argument("vertex " + v.id + ": out-variables must be positive and disjoint");
    }
  }

  /// Kahn's algorithm, ties broken by storage index. Throws on a cycle.
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> indegree(vertices.size(), 0);
    std::vector<std::vector<std::size_t>> succ(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t p : vertices[i].preds) {
        ++indegree[i];
        succ[p].push_back(i);
      }
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (indegree[i] == 0) ready.insert(i);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
      const std::size_t v = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(v);
      for (std::size_t s : succ[v])
        if (--indegree[s] == 0) ready.insert(s);
    }
    if (order.size() != vertices.size()) throw std::invalid_argument("pebbling graph has a cycle");
    return order;
  }

  /// Reorders vertices topologically and numbers variables vertex-major,
  /// position-minor, starting at 1.
  void assign_variables() {
    validate(false);
    const std::vector<std::size_t> order = topological_order();
    std::vector<std::size_t> new_index(vertices.size());
    for (std::size_t i = 0; i < order.size(); ++i) new_index[order[i]] = i;
    std::vector<Vertex> sorted;
    sorted.reserve(vertices.size());
    for (std::size_t old : order) {
      Vertex v = vertices[old];
      for (std::size_t& p : v.preds) p = new_index[p];
      sorted.push_back(std::move(v));
    }
    vertices = std::move(sorted);
    Var next = 1;
    for (Vertex& v : vertices) {
      v.out_vars.clear();
      if (v.kind == VertexKind::sink) continue;
      for (std::size_t j = 0; j < arity; ++j) v.out_vars.push_back(next++);
    }
  }

  Var num_variables() const {
    Var n = 0;
    for (const Vertex& v : vertices)
      for (Var x : v.out_vars) n = std::max(n, x);
    return n;
  }
};

/// The clauses of an internal vertex with in-variable lists x_1..x_n and
/// out-variables y: the base case is (y^1 v ... v y^k), and each step adds
/// one negated in-variable to every clause, once per in-variable of the list:
///   S_0 = { y^1 v ... v y^k },  S_p = { -x_p^j v q : j = 1..k, q in S_{p-1} }.
/// The result has k^n clauses of length n + k, ordered j-major as generated.
inline std::vector<Clause> sigma_formula(std::span<const std::vector<Var>> in_vars, std::span<const Var> out_vars) {
  std::set<Var> seen;
  auto claim = [&](Var v) {
    if (v == 0 || !seen.insert(v).second) throw std::invalid_argument("sigma_formula: variable lists must be disjoint");
  };
  for (Var y : out_vars) claim(y);
  for (const auto& xs : in_vars)
    for (Var x : xs) claim(x);

  std::vector<std::vector<Literal>> current(1);
  for (Var y : out_vars) current[0].push_back(Literal::positive(y));
  for (const auto& xs : in_vars) {
    std::vector<std::vector<Literal>> next;
    next.reserve(current.size() * xs.size());
    for (Var x : xs)
      for (const auto& q : current) {
        std::vector<Literal> c = q;
        c.push_back(Literal::negative(x));
        next.push_back(std::move(c));
      }
    current = std::move(next);
  }
  std::vector<Clause> out;
  out.reserve(current.size());
  for (auto& c : current) out.emplace_back(std::move(c));
  return out;
}

/// Pyramid with `rows` sources on the bottom row; every higher vertex has
/// in-arcs from the two adjacent vertices below (left first). The apex
/// feeds the sink.
inline Dag pyramid(std::size_t rows, std::size_t arity) {
  if (rows < 2) throw std::invalid_argument("pyramid needs at least 2 rows");
  if (arity < 1) throw std::invalid_argument("arity must be at least 1");
  Dag dag;
  dag.arity = arity;
  std::vector<std::size_t> below;
  for (std::size_t row = 0; row < rows; ++row) {
    std::vector<std::size_t> here;
    const std::size_t width = rows - row;
    for (std::size_t col = 0; col < width; ++col) {
      Vertex v;
      v.id = "r" + std::to_string(row) + "c" + std::to_string(col);
      if (row == 0) {
        v.kind = VertexKind::source;
      } else {
        v.kind = VertexKind::internal;
        v.preds = {below[col], below[col + 1]};
      }
      here.push_back(dag.vertices.size());
      dag.vertices.push_back(std::move(v));
    }
    below = std::move(here);
  }
  Vertex sink;
  sink.id = "sink";
  sink.kind = VertexKind::sink;
  sink.preds = {below.front()};
  dag.vertices.push_back(std::move(sink));
  dag.assign_variables();
  return dag;
}

struct VariableOrigin {
  std::size_t vertex;
  std::size_t position;
};

struct Instance {
  Dag dag;
  Formula formula;
  std::vector<std::vector<ClauseRef>> vertex_clauses;
  std::map<Var, VariableOrigin> variable_origin;
};

/// In-variable lists x_1..x_n of an internal vertex. The first in-arc is the
/// outermost (last) list, so it is the first eliminated by the stage plan.
inline std::vector<std::vector<Var>> in_variable_lists(const Dag& dag, std::size_t vertex) {
  std::vector<std::vector<Var>> in;
  const auto& preds = dag.vertices[vertex].preds;
  for (auto it = preds.rbegin(); it != preds.rend(); ++it) in.push_back(dag.vertices[*it].out_vars);
  return in;
}

inline Instance generate(const Dag& dag) {
  dag.validate(true);
  Instance inst;
  inst.dag = dag;
  inst.formula = Formula(dag.num_variables());
  inst.vertex_clauses.resize(dag.vertices.size());
  for (std::size_t vi : dag.topological_order()) {
    const Vertex& v = dag.vertices[vi];
    for (std::size_t j = 0; j < v.out_vars.size(); ++j) inst.variable_origin[v.out_vars[j]] = {vi, j};
    std::vector<Clause> clauses;
    switch (v.kind) {
      case VertexKind::source:
        clauses = sigma_formula({}, v.out_vars);
        break;
      case VertexKind::internal: {
        const auto in = in_variable_lists(dag, vi);
        clauses = sigma_formula(in, v.out_vars);
        break;
      }
      case VertexKind::sink:
        for (Var y : dag.vertices[v.preds.front()].out_vars) clauses.push_back(Clause{Literal::negative(y)});
        break;
    }
    for (Clause& c : clauses) inst.vertex_clauses[vi].push_back(inst.formula.add(std::move(c)));
  }
  return inst;
}

struct PlanStep {
  std::size_t vertex;
  std::size_t substage;  // p, counting down from n to 1
  Clause target;         // -x_p^1 v q, live when the step runs
  Literal dropped;       // -x_p^1
  std::vector<Literal> assumptions;  // negations of q, canonical order
  Clause produces;       // q
};

/// Vertex-by-vertex refutation schedule: for each internal vertex in
/// topological order and each p = n..1, one step per clause q of S_{p-1}
/// assuming the negation of q. Each step's clause q subsumes the k clauses
/// -x_p^j v q, so the vertex is reduced to its out-clause.
inline std::vector<PlanStep> stage_plan(const Instance& inst) {
  std::vector<PlanStep> plan;
  const Dag& dag = inst.dag;
  for (std::size_t vi : dag.topological_order()) {
    const Vertex& v = dag.vertices[vi];
    if (v.kind != VertexKind::internal) continue;
    const auto in = in_variable_lists(dag, vi);
    for (std::size_t p = in.size(); p >= 1; --p) {
      const std::span<const std::vector<Var>> lower(in.data(), p - 1);
      const Literal dropped = Literal::negative(in[p - 1].front());
      for (const Clause& q : sigma_formula(lower, v.out_vars)) {
        PlanStep step{vi, p, {}, dropped, {}, q};
        std::vector<Literal> t(q.begin(), q.end());
        t.push_back(dropped);
        step.target = Clause(std::move(t));
        for (Literal l : q) step.assumptions.push_back(~l);
        plan.push_back(std::move(step));
      }
    }
  }
  return plan;
}

/// Number of plan steps: sum over internal vertices of 1 + k + ... + k^(n-1).
inline std::size_t stage_plan_length(const Dag& dag) {
  std::size_t total = 0;
  for (const Vertex& v : dag.vertices) {
    if (v.kind != VertexKind::internal) continue;
    std::size_t term = 1;
    for (std::size_t p = 0; p < v.preds.size(); ++p) {
      total += term;
      term *= dag.arity;
    }
  }
  return total;
}

}  // namespace sdcl::pebbling
