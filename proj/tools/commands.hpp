#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdcl/dimacs.hpp"
#include "sdcl/pebbling.hpp"
#include "sdcl/pebbling_json.hpp"
#include "sdcl/proof.hpp"
#include "sdcl/run_record.hpp"
#include "sdcl/solver.hpp"
#include "sdcl/verifier.hpp"

namespace sdcl::cli {

enum ExitCode : int {
  kUnknown = 0,
  kError = 1,
  kUsage = 2,
  kBenchVerifyFailed = 3,
  kSat = 10,
  kUnsat = 20,
};

struct SolveArgs {
  std::string path;
  std::string proof_path;
  std::string stats_path;
  std::string strategy = "sdcl";
  std::string root_units = "deferred";
  std::string assumption_order = "canonical";
  std::uint64_t seed = 0;
  std::uint64_t budget_conflicts = 64;
  std::optional<double> max_seconds;
};

struct GenArgs {
  std::string family = "pebbling";
  std::string type = "or";
  std::string shape = "pyramid";
  int rows = 3;
  int arity = 2;
  std::string output;
  std::string from;
};

struct BenchArgs {
  std::string shape = "pyramid";
  int rows_from = 3;
  int rows_to = 6;
  int arity = 2;
  std::string csv;
  std::string strategy = "sdcl";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

inline SolverConfig make_config(const std::string& strategy, std::uint64_t seed) {
  SolverConfig cfg;
  if (strategy == "sdcl")
    cfg.strategy = Strategy::sdcl;
  else if (strategy == "dpll")
    cfg.strategy = Strategy::dpll;
  else
    throw std::invalid_argument("unknown strategy '" + strategy + "'");
  cfg.seed = seed;
  return cfg;
}

inline void append_record(const std::string& path, const RunRecord& r) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (fresh) out << RunRecord::header << '\n';
  r.write(out);
}

inline void write_model(std::ostream& out, const std::vector<bool>& model) {
  std::size_t on_line = 0;
  for (std::size_t v = 1; v < model.size(); ++v) {
    if (on_line == 0) out << 'v';
    out << ' ' << (model[v] ? static_cast<long long>(v) : -static_cast<long long>(v));
    if (++on_line == 10) {
      out << '\n';
      on_line = 0;
    }
  }
  if (on_line == 0) out << 'v';
  out << " 0\n";
}

inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  Formula f;
  SolverConfig cfg;
  try {
    std::ifstream in(args.path);
    if (!in) {
      err << "c error: cannot read " << args.path << '\n';
      return kError;
    }
    DimacsWarnings warn;
    f = parse_dimacs(in, &warn);
    if (warn.dropped_tautologies) err << "c warning: dropped " << warn.dropped_tautologies << " tautologies\n";
    if (warn.variables_exceed_header) err << "c warning: variables exceed the problem line\n";
    cfg = make_config(args.strategy, args.seed);
    if (args.root_units == "eager")
      cfg.root_units = RootUnits::eager;
    else if (args.root_units != "deferred")
      throw std::invalid_argument("unknown root-units mode '" + args.root_units + "'");
    if (args.assumption_order == "occurrence")
      cfg.assumption_order = AssumptionOrder::occurrence;
    else if (args.assumption_order != "canonical")
      throw std::invalid_argument("unknown assumption order '" + args.assumption_order + "'");
    cfg.initial_conflict_budget = args.budget_conflicts;
    cfg.max_seconds = args.max_seconds;
    cfg.validate();
  } catch (const std::exception& e) {
    err << "c error: " << e.what() << '\n';
    return kError;
  }

  const Outcome res = solve(f, cfg);
  int code = kUnknown;
  switch (res.status) {
    case Status::sat:
      out << "s SATISFIABLE\n";
      write_model(out, res.model);
      code = kSat;
      break;
    case Status::unsat:
      out << "s UNSATISFIABLE\n";
      code = kUnsat;
      if (!args.proof_path.empty()) {
        std::ofstream p(args.proof_path);
        if (!p) {
          err << "c error: cannot write " << args.proof_path << '\n';
          return kError;
        }
        write_proof(p, res.proof);
      }
      break;
    case Status::unknown:
      out << "s UNKNOWN\n";
      break;
  }
  if (!args.stats_path.empty()) {
    try {
      append_record(args.stats_path, RunRecord::from(std::filesystem::path(args.path).stem().string(), f, res));
    } catch (const std::exception& e) {
      err << "c error: " << e.what() << '\n';
      return kError;
    }
  }
  return code;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& cnf) {
  std::filesystem::path p = cnf;
  p.replace_extension(".peb.json");
  return p;
}

inline int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  pebbling::Instance inst;
  try {
    if (args.family != "pebbling") throw pebbling::UnsupportedFeature("unsupported family '" + args.family + "'");
    if (args.type == "xor")
      throw pebbling::UnsupportedFeature("xor-type pebbling formulas are not supported (or-type only)");
    if (args.type != "or") throw pebbling::UnsupportedFeature("unsupported pebbling type '" + args.type + "'");
    pebbling::Dag dag;
    if (!args.from.empty()) {
      std::ifstream in(args.from);
      if (!in) throw std::runtime_error("cannot read " + args.from);
      dag = pebbling::dag_from_json(nlohmann::json::parse(in));
    } else {
      if (args.shape != "pyramid") throw pebbling::UnsupportedFeature("unsupported shape '" + args.shape + "'");
      if (args.rows < 2) throw pebbling::UnsupportedFeature("pyramid needs at least 2 rows");
      if (args.arity < 1) throw pebbling::UnsupportedFeature("arity must be at least 1");
      dag = pebbling::pyramid(static_cast<std::size_t>(args.rows), static_cast<std::size_t>(args.arity));
    }
    inst = pebbling::generate(dag);
  } catch (const std::exception& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUsage;
  }

  if (args.output.empty()) {
    write_dimacs(out, inst.formula);
    return 0;
  }
  std::ofstream cnf(args.output);
  std::ofstream meta(sidecar_path(args.output));
  if (!cnf || !meta) {
    err << "error: cannot write " << args.output << '\n';
    return kError;
  }
  write_dimacs(cnf, inst.formula);
  meta << pebbling::sidecar_json(inst).dump(2) << '\n';
  out << "p cnf " << inst.formula.num_variables() << ' ' << inst.formula.live_clauses() << '\n';
  return 0;
}

inline int cmd_verify(const std::string& cnf_path, const std::string& proof_path, std::ostream& out,
                      std::ostream& err) {
  Formula f;
  ProofTrace trace;
  try {
    std::ifstream cnf(cnf_path);
    if (!cnf) throw std::runtime_error("cannot read " + cnf_path);
    f = parse_dimacs(cnf);
    std::ifstream proof(proof_path);
    if (!proof) throw std::runtime_error("cannot read " + proof_path);
    trace = parse_proof(proof);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const Verdict v = verify(f, trace);
  if (v.verified) {
    out << "VERIFIED\n";
    return 0;
  }
  out << "REJECTED step " << v.step + 1 << ": " << v.reason << '\n';
  return kError;
}

struct BenchRow {
  RunRecord record;
  bool verified = true;
  std::string reason;
};

inline BenchRow bench_one(int rows, int arity, const SolverConfig& cfg) {
  const pebbling::Instance inst =
      pebbling::generate(pebbling::pyramid(static_cast<std::size_t>(rows), static_cast<std::size_t>(arity)));
  const Outcome res = solve(inst.formula, cfg);
  BenchRow row;
  row.record = RunRecord::from("pyramid-r" + std::to_string(rows) + "-k" + std::to_string(arity), inst.formula, res);
  if (res.status == Status::unsat) {
    const Verdict v = verify(inst.formula, res.proof);
    row.verified = v.verified;
    row.reason = v.reason;
  }
  return row;
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  SolverConfig cfg;
  try {
    if (args.shape != "pyramid") throw std::invalid_argument("unsupported shape '" + args.shape + "'");
    if (args.rows_from < 2 || args.rows_to < args.rows_from) throw std::invalid_argument("bad row range");
    if (args.arity < 1) throw std::invalid_argument("arity must be at least 1");
    if (args.csv.empty()) throw std::invalid_argument("--csv is required");
    cfg = make_config(args.strategy, args.seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::vector<int> rows;
  for (int r = args.rows_from; r <= args.rows_to; ++r) rows.push_back(r);
  std::vector<BenchRow> results(rows.size());
  const unsigned jobs = std::max(1U, args.jobs);
  for (std::size_t start = 0; start < rows.size(); start += jobs) {
    std::vector<std::future<BenchRow>> batch;
    for (std::size_t i = start; i < std::min(rows.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, bench_one, rows[i],
                                 args.arity, cfg));
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }

  for (const BenchRow& row : results) {
    if (!row.verified) {
      err << "error: proof for " << row.record.instance << " rejected: " << row.reason << '\n';
      return kBenchVerifyFailed;
    }
    try {
      append_record(args.csv, row.record);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kError;
    }
    out << row.record.instance << ' ' << to_string(row.record.result) << " conflicts=" << row.record.stats.conflicts
        << '\n';
  }
  return 0;
}

/// Full command-line front end; returns the process exit code.
inline int run(std::vector<std::string> argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Subsumption-driven clause learning SAT solver", "sdcl"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a DIMACS CNF file");
  solve_cmd->add_option("path", solve_args.path, "DIMACS file")->required();
  solve_cmd->add_option("--proof", solve_args.proof_path, "Write the refutation here (UNSAT only)");
  solve_cmd->add_option("--stats", solve_args.stats_path, "Append a CSV stats row here");
  solve_cmd->add_option("--strategy", solve_args.strategy, "sdcl or dpll");
  solve_cmd->add_option("--seed", solve_args.seed, "Tie-breaking seed");
  solve_cmd->add_option("--budget-conflicts", solve_args.budget_conflicts, "Initial advanced conflict budget");
  solve_cmd->add_option("--max-seconds", solve_args.max_seconds, "Wall-clock limit");
  solve_cmd->add_option("--root-units", solve_args.root_units, "deferred or eager");
  solve_cmd->add_option("--assumption-order", solve_args.assumption_order, "canonical or occurrence");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a pebbling formula");
  gen_cmd->add_option("family", gen_args.family, "Formula family (pebbling)")->required();
  gen_cmd->add_option("--type", gen_args.type, "or (xor is not supported)");
  gen_cmd->add_option("--shape", gen_args.shape, "pyramid");
  gen_cmd->add_option("--rows", gen_args.rows, "Pyramid rows");
  gen_cmd->add_option("--arity", gen_args.arity, "Variables per arc");
  gen_cmd->add_option("-o,--output", gen_args.output, "Output DIMACS path; a .peb.json sidecar is written next to it");
  gen_cmd->add_option("--from", gen_args.from, "JSON graph description");

  std::string cnf_path;
  std::string proof_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a proof against a formula");
  verify_cmd->add_option("cnf", cnf_path, "DIMACS file")->required();
  verify_cmd->add_option("proof", proof_path, "Proof file")->required();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Solve and verify a range of pebbling instances");
  bench_cmd->add_option("--shape", bench_args.shape, "pyramid");
  bench_cmd->add_option("--rows-from", bench_args.rows_from, "First row count")->required();
  bench_cmd->add_option("--rows-to", bench_args.rows_to, "Last row count")->required();
  bench_cmd->add_option("--arity", bench_args.arity, "Variables per arc");
  bench_cmd->add_option("--csv", bench_args.csv, "Append rows here")->required();
  bench_cmd->add_option("--strategy", bench_args.strategy, "sdcl or dpll");
  bench_cmd->add_option("--seed", bench_args.seed, "Tie-breaking seed");
  bench_cmd->add_option("--jobs", bench_args.jobs, "Instances solved concurrently");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  if (*solve_cmd) return cmd_solve(solve_args, out, err);
  if (*gen_cmd) return cmd_gen(gen_args, out, err);
  if (*verify_cmd) return cmd_verify(cnf_path, proof_path, out, err);
  return cmd_bench(bench_args, out, err);
}

}  // namespace sdcl::cli
