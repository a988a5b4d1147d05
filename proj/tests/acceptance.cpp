// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sdcl/oracle.hpp"
#include "sdcl/pebbling.hpp"
#include "sdcl/solver.hpp"
#include "sdcl/verifier.hpp"

using namespace sdcl;

namespace {

using Clock = std::chrono::steady_clock;

Literal letter(char c, bool positive = true) {
  const Var v = static_cast<Var>(c - 'a' + 1);
  return positive ? Literal::positive(v) : Literal::negative(v);
}

struct Report {
  int failures = 0;

  void line(int id, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " | " << detail << std::endl;
    if (!ok) ++failures;
  }
};

struct Unsat {
  Formula formula;
  ProofTrace proof;
  std::string name;
};

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

Formula random_3cnf(std::mt19937_64& rng, Var n, double ratio) {
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

Formula sixvar() {
  const char x = 'a', y = 'b', z = 'c', r = 'd', s = 'e', t = 'f';
  Formula f(6);
  for (auto [p, q] : std::array{std::pair{x, y}, std::pair{x, z}, std::pair{y, z}})
    for (bool sp : {false, true})
      for (bool sq : {false, true}) f.add(Clause{letter(p, sp), letter(q, sq), letter(r)});
  f.add(Clause{letter(r, false), letter(s, false), letter(t, false)});
  return f;
}

void criterion1(Report& rep, std::vector<Unsat>& traces) {
  const auto inst = pebbling::generate(pebbling::pyramid(3, 2));
  const auto t0 = Clock::now();
  Solver solver(inst.formula);
  const Outcome out = solver.solve();
  const double ms = ms_since(t0);

  const auto p = [](char c) { return letter(c); };
  const auto n = [](char c) { return letter(c, false); };
  const std::set<Clause> want{
      {p('g'), p('h'), n('c')}, {p('g'), p('h'), n('d')}, {p('g'), p('h')},
      {p('i'), p('j'), n('e')}, {p('i'), p('j'), n('f')}, {p('i'), p('j')},
      {p('k'), p('l'), n('i')}, {p('k'), p('l'), n('j')}, {p('k'), p('l')},
  };
  std::set<Clause> got;
  std::size_t non_empty = 0, empty = 0;
  for (const Clause& c : solver.learned_clauses()) {
    if (c.empty()) {
      ++empty;
    } else {
      ++non_empty;
      got.insert(c);
    }
  }
  const bool ok = out.status == Status::unsat && non_empty == 9 && empty == 1 && got == want && ms < 1000.0;
  std::ostringstream d;
  d << to_string(out.status) << ", " << non_empty << " learned + " << empty << " empty, match=" << (got == want)
    << ", " << std::fixed << std::setprecision(2) << ms << " ms";
  rep.line(1, "pyramid(3,2) learns exactly the nine stage clauses", ok, d.str());
  if (out.status == Status::unsat) traces.push_back({inst.formula, out.proof, "pyramid-r3-k2"});
}

void criteria2and3(Report& rep, std::vector<Unsat>& traces) {
  std::vector<double> xs, ys;
  bool steps_ok = true, time_ok = true, all_unsat = true;
  double worst_ms = 0.0;
  std::ostringstream rows;
  for (std::size_t r = 3; r <= 10; ++r) {
    const auto inst = pebbling::generate(pebbling::pyramid(r, 2));
    const auto t0 = Clock::now();
    const Outcome out = solve(inst.formula);
    const double ms = ms_since(t0);
    worst_ms = std::max(worst_ms, ms);
    time_ok = time_ok && ms < 5000.0;
    all_unsat = all_unsat && out.status == Status::unsat;
    steps_ok = steps_ok && out.stats.superficial_successes <= inst.formula.total_live_literals();
    xs.push_back(static_cast<double>(inst.formula.live_clauses()));
    ys.push_back(static_cast<double>(out.stats.conflicts));
    rows << (r == 3 ? "" : " ") << inst.formula.live_clauses() << ":" << out.stats.conflicts;
    if (out.status == Status::unsat) traces.push_back({inst.formula, out.proof, "pyramid-r" + std::to_string(r)});
  }

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = slope * xs[i] + icept;
    worst_rel = std::max(worst_rel, std::abs(ys[i] - fit) / std::abs(fit));
  }
  std::ostringstream d;
  d << std::fixed << std::setprecision(3) << "clauses:conflicts " << rows.str() << "; fit " << slope << "x"
    << std::showpos << icept << std::noshowpos << ", worst residual " << 100.0 * worst_rel << "%, slowest "
    << worst_ms << " ms";
  rep.line(2, "pyramids rows 3..10 refuted in linearly many steps",
           all_unsat && steps_ok && time_ok && worst_rel <= 0.10, d.str());

  // Space: every pebbling run, across shapes and configurations.
  bool space_ok = true;
  std::size_t runs = 0;
  std::ostringstream worst;
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t r = 2; r <= 10; ++r) {
      const auto inst = pebbling::generate(pebbling::pyramid(r, k));
      for (Strategy s : {Strategy::sdcl, Strategy::dpll}) {
        if (s == Strategy::dpll && inst.formula.num_variables() > 40) continue;
        SolverConfig cfg;
        cfg.strategy = s;
        const Outcome out = solve(inst.formula, cfg);
        ++runs;
        const double ratio =
            static_cast<double>(out.stats.peak_permanent_clauses) / static_cast<double>(inst.formula.live_clauses());
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst.str("");
          worst << "pyramid(" << r << "," << k << ") " << out.stats.peak_permanent_clauses << "/"
                << inst.formula.live_clauses();
        }
        space_ok = space_ok && out.stats.peak_permanent_clauses <= inst.formula.live_clauses();
      }
    }
  }
  std::ostringstream d3;
  d3 << runs << " runs, largest peak/initial " << worst.str();
  rep.line(3, "peak permanent clauses never exceed the input size", space_ok, d3.str());
}

void criterion4(Report& rep) {
  bool ok = true;
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t k = 1; k <= 2; ++k) {
      Var next = 1;
      Formula f;
      std::vector<std::vector<Var>> in(n);
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
      for (const Clause& c : pebbling::sigma_formula(in, out)) f.add(c);
      ok = ok && is_implicate(f, Clause(goal));
      ++checked;
    }
  }
  rep.line(4, "vertex formula plus in-clauses entails the out-clause", ok,
           std::to_string(checked) + " (n,k) pairs checked by enumeration");
}

void criterion5(Report& rep, std::vector<Unsat>& traces) {
  std::mt19937_64 rng(20240601);
  const std::array ratios{3.0, 4.26, 5.0};
  const std::array<std::uint64_t, 3> seeds{0, 1, 2};
  std::size_t instances = 0, solves = 0, mismatches = 0, sat = 0;
  for (int i = 0; i < 1050; ++i) {
    const Var n = 10 + static_cast<Var>(i % 7);
    const Formula f = random_3cnf(rng, n, ratios[(i / 7) % 3]);
    const bool expect_sat = brute_force_solve(f).has_value();
    sat += expect_sat;
    ++instances;
    for (std::uint64_t seed : seeds) {
      SolverConfig cfg;
      cfg.seed = seed;
      const Outcome out = solve(f, cfg);
      ++solves;
      const bool agree = expect_sat ? out.status == Status::sat && satisfies(out.model, f)
                                    : out.status == Status::unsat;
      if (!agree) ++mismatches;
      if (out.status == Status::unsat)
        traces.push_back({f, out.proof, "random-" + std::to_string(i) + "-seed" + std::to_string(seed)});
    }
  }
  std::ostringstream d;
  d << instances << " instances (" << sat << " sat), " << solves << " solves over " << seeds.size() << " seeds, "
    << mismatches << " mismatches";
  rep.line(5, "answers agree with exhaustive enumeration", instances >= 1000 && mismatches == 0, d.str());
}

void criterion6(Report& rep, const std::vector<Unsat>& traces) {
  std::size_t rejected_traces = 0;
  std::string first_bad;
  for (const Unsat& u : traces) {
    const Verdict v = verify(u.formula, u.proof);
    if (!v.verified) {
      if (first_bad.empty()) first_bad = u.name + " step " + std::to_string(v.step) + ": " + v.reason;
      ++rejected_traces;
    }
  }

  // Mutate one literal of one added, non-empty clause in a random accepted trace.
  std::mt19937_64 rng(6);
  std::size_t mutants = 0, survivors = 0;
  std::string example;
  std::uniform_int_distribution<std::size_t> pick_trace(0, traces.size() - 1);
  while (mutants < 100 && !traces.empty()) {
    const Unsat& u = traces[pick_trace(rng)];
    std::vector<std::size_t> adds;
    for (std::size_t i = 0; i < u.proof.size(); ++i)
      if (u.proof.events()[i].is_add() && !u.proof.events()[i].clause.empty()) adds.push_back(i);
    if (adds.empty()) continue;
    const std::size_t ev = adds[std::uniform_int_distribution<std::size_t>(0, adds.size() - 1)(rng)];
    const Clause& original = u.proof.events()[ev].clause;
    std::vector<Literal> lits(original.begin(), original.end());
    const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, lits.size() - 1)(rng);
    lits[pos] = ~lits[pos];
    ProofTrace mutated = u.proof;
    mutated.events()[ev].clause = Clause(lits);
    ++mutants;
    if (verify(u.formula, mutated).verified) {
      ++survivors;
      if (example.empty())
        example = u.name + " event " + std::to_string(ev) + " " + original.to_string() + "->" +
                  mutated.events()[ev].clause.to_string();
    }
  }
  std::ostringstream d;
  d << traces.size() - rejected_traces << "/" << traces.size() << " traces verified";
  if (!first_bad.empty()) d << " (first rejection " << first_bad << ")";
  d << "; " << mutants - survivors << "/" << mutants << " mutants rejected";
  if (!example.empty()) d << " (survivor e.g. " << example << ")";
  rep.line(6, "traces verify and single-literal mutants are rejected", rejected_traces == 0 && survivors == 0,
           d.str());
}

void criterion7(Report& rep) {
  const Formula f = sixvar();
  const auto model = brute_force_solve(f);
  const Outcome out = solve(f);
  const bool ok = model.has_value() && out.status == Status::sat && satisfies(out.model, f);
  rep.line(7, "the six-variable fixture is satisfiable", ok,
           std::string("oracle ") + (model ? "SAT" : "UNSAT") + ", solver " + to_string(out.status));
}

}  // namespace

int main() {
  Report rep;
  std::vector<Unsat> traces;
  criterion1(rep, traces);
  criteria2and3(rep, traces);
  criterion4(rep);
  criterion5(rep, traces);
  criterion6(rep, traces);
  criterion7(rep);
  std::cout << (rep.failures == 0 ? "all criteria passed" : std::to_string(rep.failures) + " criterion(s) failed")
            << std::endl;
  return rep.failures == 0 ? 0 : 1;
}
