#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "sdcl/oracle.hpp"
#include "sdcl/pebbling.hpp"
#include "sdcl/pebbling_json.hpp"
#include "sdcl/solver.hpp"

using namespace sdcl;
using namespace sdcl::pebbling;
using sdcl::testing::neg;
using sdcl::testing::pos;

namespace {

std::vector<Clause> sorted(std::vector<Clause> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Var var(char c) { return pos(c).variable(); }

// n sources feeding one internal vertex that feeds the sink.
Dag fan_in(std::size_t n, std::size_t k) {
  Dag dag;
  dag.arity = k;
  for (std::size_t i = 0; i < n; ++i) dag.vertices.push_back({"s" + std::to_string(i), VertexKind::source, {}, {}});
  Vertex mid{"mid", VertexKind::internal, {}, {}};
  for (std::size_t i = 0; i < n; ++i) mid.preds.push_back(i);
  dag.vertices.push_back(mid);
  dag.vertices.push_back({"sink", VertexKind::sink, {n}, {}});
  dag.assign_variables();
  return dag;
}

}  // namespace

TEST(Sigma, BaseCase) {
  const std::vector<Var> out{var('g'), var('h')};
  EXPECT_EQ(sigma_formula({}, out), std::vector<Clause>{(Clause{pos('g'), pos('h')})});
}

TEST(Sigma, OneStep) {
  const std::vector<Var> out{var('g'), var('h')};
  const std::vector<std::vector<Var>> in{{var('a'), var('b')}};
  EXPECT_EQ(sorted(sigma_formula(in, out)),
            sorted({Clause{neg('a'), pos('g'), pos('h')}, Clause{neg('b'), pos('g'), pos('h')}}));
}

TEST(Sigma, TwoSteps) {
  const std::vector<Var> out{var('g'), var('h')};
  const std::vector<std::vector<Var>> in{{var('a'), var('b')}, {var('c'), var('d')}};
  EXPECT_EQ(sorted(sigma_formula(in, out)), sorted({
                                                Clause{neg('c'), neg('a'), pos('g'), pos('h')},
                                                Clause{neg('c'), neg('b'), pos('g'), pos('h')},
                                                Clause{neg('d'), neg('a'), pos('g'), pos('h')},
                                                Clause{neg('d'), neg('b'), pos('g'), pos('h')},
                                            }));
}

TEST(Sigma, SizeAndWidth) {
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t k = 1; k <= 3; ++k) {
      Var next = 1;
      std::vector<std::vector<Var>> in(n);
      for (auto& xs : in)
        for (std::size_t j = 0; j < k; ++j) xs.push_back(next++);
      std::vector<Var> out;
      for (std::size_t j = 0; j < k; ++j) out.push_back(next++);
      const auto clauses = sigma_formula(in, out);
      std::size_t expect = 1;
      for (std::size_t i = 0; i < n; ++i) expect *= k;
      EXPECT_EQ(clauses.size(), expect);
      for (const Clause& c : clauses) EXPECT_EQ(c.size(), n + k);
    }
  }
}

TEST(Sigma, EntailsOutClauseGivenInClauses) {
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t k = 1; k <= 2; ++k) {
      SCOPED_TRACE("n=" + std::to_string(n) + " k=" + std::to_string(k));
      Var next = 1;
      std::vector<std::vector<Var>> in(n);
      Formula f;
      for (auto& xs : in) {
        std::vector<Literal> any;
        for (std::size_t j = 0; j < k; ++j) {
          xs.push_back(next);
          any.push_back(Literal::positive(next++));
        }
        f.add(Clause(any));
      }
      std::vector<Var> out;
      std::vector<Literal> goal;
      for (std::size_t j = 0; j < k; ++j) {
        out.push_back(next);
        goal.push_back(Literal::positive(next++));
      }
      for (const Clause& c : sigma_formula(in, out)) f.add(c);
      EXPECT_TRUE(is_implicate(f, Clause(goal)));
      // Without the in-clauses the out-clause does not follow.
      if (n > 0) {
        Formula g;
        for (const Clause& c : sigma_formula(in, out)) g.add(c);
        EXPECT_FALSE(is_implicate(g, Clause(goal)));
      }
    }
  }
}

TEST(Generate, PyramidCounts) {
  const Instance inst = sdcl::testing::pyramid_instance();
  EXPECT_EQ(inst.dag.vertices.size(), 7U);
  EXPECT_EQ(inst.formula.num_variables(), 12U);
  EXPECT_EQ(inst.formula.live_clauses(), 17U);
  const Instance small = sdcl::testing::pyramid_instance(2, 1);
  EXPECT_EQ(small.formula.live_clauses(), 4U);
  EXPECT_EQ(sorted(small.formula.alive_clauses()),
            sorted({Clause{pos('a')}, Clause{pos('b')}, Clause{neg('a'), neg('b'), pos('c')}, Clause{neg('c')}}));
  EXPECT_THROW(pyramid(1, 2), std::invalid_argument);
  EXPECT_THROW(pyramid(3, 0), std::invalid_argument);
}

TEST(Generate, PyramidLetters) {
  // Stage clauses name a..l in the order sources, middle row, apex.
  const Instance inst = sdcl::testing::pyramid_instance();
  const auto clauses = inst.formula.alive_clauses();
  auto has = [&](const Clause& c) { return std::find(clauses.begin(), clauses.end(), c) != clauses.end(); };
  EXPECT_TRUE(has(Clause{pos('a'), pos('b')}));
  EXPECT_TRUE(has(Clause{pos('e'), pos('f')}));
  EXPECT_TRUE(has(Clause{neg('a'), neg('c'), pos('g'), pos('h')}));
  EXPECT_TRUE(has(Clause{neg('g'), neg('i'), pos('k'), pos('l')}));
  EXPECT_TRUE(has(Clause{neg('k')}));
  EXPECT_TRUE(has(Clause{neg('l')}));
}

TEST(Generate, SmallestInstance) {
  const Instance inst = generate(fan_in(1, 1));
  EXPECT_EQ(sorted(inst.formula.alive_clauses()),
            sorted({Clause{pos('a')}, Clause{neg('a'), pos('b')}, Clause{neg('b')}}));
}

TEST(Generate, InstancesAreUnsatisfiable) {
  for (std::size_t rows = 2; rows <= 4; ++rows) {
    for (std::size_t k = 1; k <= 2; ++k) {
      const Instance inst = sdcl::testing::pyramid_instance(rows, k);
      ASSERT_LE(inst.formula.num_variables(), 20U);
      EXPECT_FALSE(brute_force_solve(inst.formula).has_value()) << rows << "," << k;
    }
  }
}

TEST(Generate, RejectsMalformedGraphs) {
  Dag two_sinks = fan_in(2, 2);
  two_sinks.vertices.push_back({"sink2", VertexKind::sink, {2}, {}});
  EXPECT_THROW(generate(two_sinks), std::invalid_argument);

  Dag cyclic;
  cyclic.arity = 1;
  cyclic.vertices = {{"s", VertexKind::source, {}, {}},
                     {"p", VertexKind::internal, {0, 2}, {}},
                     {"q", VertexKind::internal, {1}, {}},
                     {"t", VertexKind::sink, {2}, {}}};
  EXPECT_THROW(cyclic.assign_variables(), std::invalid_argument);
}

TEST(StagePlan, PyramidNineSteps) {
  const Instance inst = sdcl::testing::pyramid_instance();
  const auto plan = stage_plan(inst);
  ASSERT_EQ(plan.size(), 9U);
  const std::vector<Clause> want{
      {pos('g'), pos('h'), neg('c')}, {pos('g'), pos('h'), neg('d')}, {pos('g'), pos('h')},
      {pos('i'), pos('j'), neg('e')}, {pos('i'), pos('j'), neg('f')}, {pos('i'), pos('j')},
      {pos('k'), pos('l'), neg('i')}, {pos('k'), pos('l'), neg('j')}, {pos('k'), pos('l')},
  };
  for (std::size_t i = 0; i < plan.size(); ++i) EXPECT_EQ(plan[i].produces, want[i]) << i;
  EXPECT_EQ(plan[0].assumptions, (std::vector<Literal>{pos('c'), neg('g'), neg('h')}));
  EXPECT_EQ(stage_plan_length(inst.dag), 9U);
}

TEST(StagePlan, ExecutesWithoutStalling) {
  for (std::size_t rows = 2; rows <= 7; ++rows) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const Instance inst = sdcl::testing::pyramid_instance(rows, k);
      const auto plan = stage_plan(inst);
      EXPECT_LE(plan.size(), inst.formula.total_live_literals());
      Solver s(inst.formula);
      if (k == 1) {
        // Sources are unit clauses, so root propagation alone refutes.
        EXPECT_TRUE(s.root_propagate().is_conflict());
        continue;
      }
      for (const PlanStep& step : plan) {
        ClauseRef target{};
        bool found = false;
        for (ClauseRef r : s.formula().alive_refs())
          if (s.formula().at(r) == step.target) target = r, found = true;
        ASSERT_TRUE(found) << step.target;
        std::vector<Literal> order;
        for (Literal l : step.assumptions) order.push_back(~l);
        const SuperficialOutcome out = s.attempt_superficial(target, step.dropped, order);
        ASSERT_EQ(out.kind, SuperficialOutcome::Kind::learned) << rows << "," << k << " " << step.target;
        EXPECT_EQ(out.clause, step.produces);
        s.commit_learning(out.clause);
      }
    }
  }
}

TEST(StagePlan, SingleInArc) {
  const Instance inst = generate(fan_in(1, 2));
  const auto plan = stage_plan(inst);
  ASSERT_EQ(plan.size(), 1U);
  const Var y1 = inst.dag.vertices[1].out_vars[0], y2 = inst.dag.vertices[1].out_vars[1];
  EXPECT_EQ(plan[0].assumptions, (std::vector<Literal>{Literal::negative(y1), Literal::negative(y2)}));
}

TEST(StagePlan, GeometricLength) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const Instance inst = generate(fan_in(n, k));
      std::size_t expect = n;
      if (k >= 2) {
        std::size_t kn = 1;
        for (std::size_t i = 0; i < n; ++i) kn *= k;
        expect = (kn - 1) / (k - 1);
      }
      EXPECT_EQ(stage_plan(inst).size(), expect);
      EXPECT_EQ(stage_plan_length(inst.dag), expect);
    }
  }
}

TEST(Json, SidecarDescribesInstance) {
  const Instance inst = sdcl::testing::pyramid_instance();
  const nlohmann::json j = sidecar_json(inst);
  EXPECT_EQ(j["type"], "or");
  EXPECT_EQ(j["num_variables"], 12);
  EXPECT_EQ(j["num_clauses"], 17);
  EXPECT_EQ(j["expected_stage_plan_length"], 9);
  EXPECT_EQ(j["variables"].size(), 12U);
}

TEST(Json, GraphRoundTrip) {
  const Instance inst = sdcl::testing::pyramid_instance(4, 2);
  const Instance again = generate(dag_from_json(sidecar_json(inst)));
  EXPECT_EQ(again.formula.alive_clauses(), inst.formula.alive_clauses());
}

TEST(Json, RejectsXor) {
  nlohmann::json j = sidecar_json(sdcl::testing::pyramid_instance());
  j["type"] = "xor";
  EXPECT_THROW(dag_from_json(j), UnsupportedFeature);
}

TEST(Json, RejectsUnknownPredecessor) {
  const nlohmann::json j = nlohmann::json::parse(R"({"arity": 1, "vertices": [
      {"id": "s", "kind": "source"}, {"id": "t", "kind": "sink", "preds": ["nope"]}]})");
  EXPECT_THROW(dag_from_json(j), std::invalid_argument);
}
