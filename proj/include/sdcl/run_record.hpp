#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "sdcl/solver.hpp"

namespace sdcl {

/// One CSV row per solver run. The column list is fixed.
struct RunRecord {
  std::string instance;
  std::uint64_t vars = 0;
  std::uint64_t clauses = 0;
  SolverStats stats;
  Status result = Status::unknown;
  double wall_ms = 0.0;

  static constexpr const char* header =
      "instance,vars,clauses,decisions,propagations,conflicts,superficial_attempts,superficial_successes,"
      "advanced_attempts,advanced_successes,learned_permanent,learned_transient,deleted_subsumed,"
      "peak_permanent_clauses,restarts,result,wall_ms";

  static RunRecord from(std::string instance, const Formula& f, const Outcome& out) {
    RunRecord r;
    r.instance = std::move(instance);
    r.vars = f.num_variables();
    r.clauses = f.live_clauses();
    r.stats = out.stats;
    r.result = out.status;
    r.wall_ms = out.stats.wall_seconds * 1000.0;
    return r;
  }

  void write(std::ostream& os) const {
    const SolverStats& s = stats;
    os << instance << ',' << vars << ',' << clauses << ',' << s.decisions << ',' << s.propagations << ','
       << s.conflicts << ',' << s.superficial_attempts << ',' << s.superficial_successes << ','
       << s.advanced_attempts << ',' << s.advanced_successes << ',' << s.learned_permanent << ','
       << s.learned_transient << ',' << s.deleted_subsumed << ',' << s.peak_permanent_clauses << ',' << s.restarts
       << ',' << to_string(result) << ',';
    const auto old_flags = os.flags();
    const auto old_precision = os.precision();
    os.setf(std::ios::fixed);
    os.precision(3);
    os << wall_ms << '\n';
    os.flags(old_flags);
    os.precision(old_precision);
  }
};

}  // namespace sdcl
