#pragma once

#include "bmmn/completion.hpp"

#include <optional>

namespace bmmn {

struct DirectionReport {
  int k = 0;
  Rat length_nk;
  Rat lambda_h, lambda_v;
  std::optional<Rat> oracle_opt;
};

struct SolveReport {
  Rat total_length;
  Rat lower_bound;
  bool feasible = false;
  double elapsed_seconds = 0.0;
  std::vector<DirectionReport> per_direction;
};

struct SolveOptions {
  bool fast_dp = false;
  bool parallel = true;
  bool check_invariants = true;
};

/// Thrown when the solver's own output fails feasibility verification; a
/// bug trap, never a user error.
class InfeasibleOutput : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Union of the per-direction networks; a B-Manhattan network on the
/// deduplicated terminals, verified before returning.
std::pair<Network, SolveReport> solve_bmmn(const UnitBall& ball, std::vector<Point> terminals,
                                           const SolveOptions& options = {});

/// Certified lower bound on OPT: half the sum of all side-network lengths.
Rat lower_bound(const std::vector<DirectionReport>& per_direction);

struct OracleBudget {
  long long max_nodes = 10'000'000;
  double max_seconds = 60.0;
};

struct OracleResult {
  enum class Status { Ok, BudgetExceeded };
  Status status = Status::Ok;
  Rat opt;                                  // valid iff status == Ok
  std::vector<LegalSegment> witness_edges;  // an optimal network's grid edges
  long long nodes = 0;
};

/// Exact minimum one-directional network length by branch and bound over
/// the per-pair shortest grid paths, restricted to the union of the pair
/// intervals. Intended for small instances; callers must treat a
/// BudgetExceeded status as "no oracle value".
OracleResult exact_1dmmn_oracle(const UnitBall& ball, const std::vector<Point>& terminals, int k,
                                const OracleBudget& budget = {});

class MissingOracle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RatioReport {
  std::vector<std::pair<int, Rat>> per_direction;  // length(N_k) / OPT_k
  Rat sum_opt;                                     // sum of OPT_k
  Rat global;                                      // total / (sum_opt / 2)
};

/// Requires an oracle value for every direction (MissingOracle otherwise).
/// Asserts the proven bounds: every per-direction ratio is at most 5/4 and
/// the total length is at most 5/4 of the OPT_k sum.
RatioReport ratio_report(const SolveReport& report, const std::vector<Rat>& oracle_values);

}  // namespace bmmn
