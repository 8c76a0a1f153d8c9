#include "bmmn/solver.hpp"

#include <algorithm>
#include <chrono>
#include <future>

namespace bmmn {

namespace {

#define BMMN_CHECK(cond, msg) \
  do {                        \
    if (!(cond)) throw std::logic_error(std::string("invariant violated: ") + (msg)); \
  } while (0)

std::vector<Point> dedup_terminals(std::vector<Point> terminals) {
  std::vector<Point> out;
  for (const Point& t : terminals) {
    bool seen = false;
    for (const Point& u : out) seen = seen || u == t;
    if (!seen) out.push_back(t);
  }
  return out;
}

}  // namespace

Rat lower_bound(const std::vector<DirectionReport>& per_direction) {
  Rat sum(0);
  for (const DirectionReport& d : per_direction) sum += d.lambda_h + d.lambda_v;
  return sum / Rat(2);
}

std::pair<Network, SolveReport> solve_bmmn(const UnitBall& ball, std::vector<Point> terminals,
                                           const SolveOptions& options) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Point> T = dedup_terminals(std::move(terminals));

  Network net(ball);
  SolveReport report;
  report.total_length = Rat(0);
  report.lower_bound = Rat(0);

  if (T.size() <= 1) {
    report.feasible = true;
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(net), std::move(report)};
  }

  CompletionOptions copt;
  copt.fast_dp = options.fast_dp;
  copt.check_invariants = options.check_invariants;

  const int m = ball.m();
  std::vector<std::pair<Network, DirStats>> per_k;
  per_k.reserve(m);
  if (options.parallel && m > 1) {
    std::vector<std::future<std::pair<Network, DirStats>>> futs;
    for (int k = 0; k < m; ++k) {
      futs.push_back(std::async(std::launch::async,
                                [&, k] { return solve_1dmmn(ball, T, k, copt); }));
    }
    for (auto& f : futs) per_k.push_back(f.get());
  } else {
    for (int k = 0; k < m; ++k) per_k.push_back(solve_1dmmn(ball, T, k, copt));
  }

  for (int k = 0; k < m; ++k) {
    auto& [nk, stats] = per_k[k];
    DirectionReport dr;
    dr.k = k;
    dr.length_nk = nk.length();
    dr.lambda_h = stats.lambda_h;
    dr.lambda_v = stats.lambda_v;
    report.per_direction.push_back(std::move(dr));
    net.merge(nk);
  }
  for (const Point& t : T) net.register_terminal(t);

  report.total_length = net.length();
  report.lower_bound = lower_bound(report.per_direction);
  report.feasible = net.verify_manhattan(T).ok;
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!report.feasible) throw InfeasibleOutput("solver produced an infeasible network");
  return {std::move(net), std::move(report)};
}

namespace {

// Branch-and-bound state for the exact one-directional oracle. The grid is
// the sub-lattice of terminal levels; edges are kept only inside the union
// of the atomic pair intervals.
struct OracleGrid {
  std::vector<Rat> as, bs;  // alpha and beta levels
  int na = 0, nb = 0;
  // Edge ids: horizontal edges first (i in [0,na-1), j in [0,nb)), then
  // vertical (i in [0,na), j in [0,nb-1)).
  std::vector<Rat> edge_len;
  std::vector<bool> edge_alive;
  int h_count = 0;

  int hid(int i, int j) const { return j * (na - 1) + i; }
  int vid(int i, int j) const { return h_count + j * na + i; }
};

struct PairReq {
  int ai_lo, ai_hi, bi_lo, bi_hi;  // level index bounds of the rectangle
};

using EdgeSet = std::vector<std::uint64_t>;

bool test_bit(const EdgeSet& s, int e) { return (s[e >> 6] >> (e & 63)) & 1; }
void set_bit(EdgeSet& s, int e) { s[e >> 6] |= std::uint64_t(1) << (e & 63); }

struct OracleSearch {
  const OracleGrid& g;
  const std::vector<PairReq>& reqs;
  OracleBudget budget;
  std::chrono::steady_clock::time_point start;

  Rat best_len;
  bool has_best = false;
  EdgeSet best_set;
  long long nodes = 0;
  bool exceeded = false;

  OracleSearch(const OracleGrid& grid, const std::vector<PairReq>& pairs, OracleBudget b)
      : g(grid), reqs(pairs), budget(b), start(std::chrono::steady_clock::now()) {}

  bool over_budget() {
    if (exceeded) return true;
    if (nodes > budget.max_nodes) exceeded = true;
    if ((nodes & 511) == 0) {
      double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (el > budget.max_seconds) exceeded = true;
    }
    return exceeded;
  }

  // True iff the include-set realizes the pair: a monotone lattice path of
  // included edges exists across its rectangle.
  bool satisfied(const EdgeSet& inc, const PairReq& r) const {
    const int w = r.ai_hi - r.ai_lo, h = r.bi_hi - r.bi_lo;
    std::vector<char> reach(static_cast<std::size_t>(w + 1) * (h + 1), 0);
    reach[0] = 1;
    for (int dj = 0; dj <= h; ++dj) {
      for (int di = 0; di <= w; ++di) {
        if (!reach[dj * (w + 1) + di]) continue;
        if (di < w && test_bit(inc, g.hid(r.ai_lo + di, r.bi_lo + dj)))
          reach[dj * (w + 1) + di + 1] = 1;
        if (dj < h && test_bit(inc, g.vid(r.ai_lo + di, r.bi_lo + dj)))
          reach[(dj + 1) * (w + 1) + di] = 1;
      }
    }
    return reach[h * (w + 1) + w] != 0;
  }

  // Least additional length to realize the pair given the include-set.
  Rat completion_cost(const EdgeSet& inc, const PairReq& r) const {
    const int w = r.ai_hi - r.ai_lo, h = r.bi_hi - r.bi_lo;
    std::vector<std::optional<Rat>> cost(static_cast<std::size_t>(w + 1) * (h + 1));
    cost[0] = Rat(0);
    for (int dj = 0; dj <= h; ++dj) {
      for (int di = 0; di <= w; ++di) {
        auto& cur = cost[dj * (w + 1) + di];
        if (!cur) continue;
        if (di < w) {
          int e = g.hid(r.ai_lo + di, r.bi_lo + dj);
          if (g.edge_alive[e]) {
            Rat c = *cur + (test_bit(inc, e) ? Rat(0) : g.edge_len[e]);
            auto& nxt = cost[dj * (w + 1) + di + 1];
            if (!nxt || c < *nxt) nxt = std::move(c);
          }
        }
        if (dj < h) {
          int e = g.vid(r.ai_lo + di, r.bi_lo + dj);
          if (g.edge_alive[e]) {
            Rat c = *cur + (test_bit(inc, e) ? Rat(0) : g.edge_len[e]);
            auto& nxt = cost[(dj + 1) * (w + 1) + di];
            if (!nxt || c < *nxt) nxt = std::move(c);
          }
        }
      }
    }
    return *cost[h * (w + 1) + w];
  }

  // All monotone paths across the rectangle as edge lists.
  void enum_paths(const PairReq& r, int di, int dj, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) const {
    const int w = r.ai_hi - r.ai_lo, h = r.bi_hi - r.bi_lo;
    if (di == w && dj == h) {
      out.push_back(cur);
      return;
    }
    if (di < w) {
      int e = g.hid(r.ai_lo + di, r.bi_lo + dj);
      if (g.edge_alive[e]) {
        cur.push_back(e);
        enum_paths(r, di + 1, dj, cur, out);
        cur.pop_back();
      }
    }
    if (dj < h) {
      int e = g.vid(r.ai_lo + di, r.bi_lo + dj);
      if (g.edge_alive[e]) {
        cur.push_back(e);
        enum_paths(r, di, dj + 1, cur, out);
        cur.pop_back();
      }
    }
  }

  void search(EdgeSet inc, Rat len) {
    ++nodes;
    if (over_budget()) return;
    // Unsatisfied pair with the largest completion cost; the max is also
    // an admissible lower bound on the remaining length.
    int pick = -1;
    Rat res(0);
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      if (satisfied(inc, reqs[i])) continue;
      Rat c = completion_cost(inc, reqs[i]);
      if (pick < 0 || c > res) {
        pick = static_cast<int>(i);
        res = c;
      }
    }
    if (pick < 0) {
      if (!has_best || len < best_len) {
        best_len = len;
        best_set = inc;
        has_best = true;
      }
      return;
    }
    if (has_best && len + res >= best_len) return;

    std::vector<std::vector<int>> paths;
    std::vector<int> cur;
    enum_paths(reqs[pick], 0, 0, cur, paths);
    // Cheapest-first ordering finds good incumbents early.
    std::vector<std::pair<Rat, std::size_t>> order;
    for (std::size_t p = 0; p < paths.size(); ++p) {
      Rat add(0);
      for (int e : paths[p])
        if (!test_bit(inc, e)) add += g.edge_len[e];
      order.push_back({std::move(add), p});
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [add, p] : order) {
      if (has_best && len + add >= best_len) break;
      EdgeSet nxt = inc;
      for (int e : paths[p]) set_bit(nxt, e);
      search(std::move(nxt), len + add);
      if (exceeded) return;
    }
  }
};

}  // namespace

OracleResult exact_1dmmn_oracle(const UnitBall& ball, const std::vector<Point>& terminals, int k,
                                const OracleBudget& budget) {
  std::vector<Point> T = dedup_terminals(terminals);
  OracleResult result;
  if (T.size() <= 1) {
    result.opt = Rat(0);
    return result;
  }
  DirGrid grid = build_grid(ball, T, k);
  auto atoms = atomic_pairs_in_direction(ball, grid, k);
  if (atoms.empty()) {
    result.opt = Rat(0);
    return result;
  }

  OracleGrid g;
  g.as = grid.lines_k1;
  g.bs = grid.lines_k;
  g.na = static_cast<int>(g.as.size());
  g.nb = static_cast<int>(g.bs.size());
  g.h_count = (g.na - 1) * g.nb;
  const int e_count = g.h_count + g.na * (g.nb - 1);
  g.edge_len.resize(e_count, Rat(0));
  g.edge_alive.assign(e_count, false);

  auto level_index = [](const std::vector<Rat>& v, const Rat& x) {
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  std::vector<PairReq> reqs;
  for (auto [lo, hi] : atoms) {
    PairReq r;
    r.ai_lo = level_index(g.as, grid.fpts[lo].x);
    r.ai_hi = level_index(g.as, grid.fpts[hi].x);
    r.bi_lo = level_index(g.bs, grid.fpts[lo].y);
    r.bi_hi = level_index(g.bs, grid.fpts[hi].y);
    reqs.push_back(r);
  }
  // Keep only edges inside some atomic pair's rectangle (an optimal
  // network restricted to the union of those intervals stays optimal).
  for (int j = 0; j < g.nb; ++j) {
    for (int i = 0; i + 1 < g.na; ++i) {
      for (const PairReq& r : reqs) {
        if (r.bi_lo <= j && j <= r.bi_hi && r.ai_lo <= i && i + 1 <= r.ai_hi) {
          g.edge_alive[g.hid(i, j)] = true;
          g.edge_len[g.hid(i, j)] = g.as[i + 1] - g.as[i];
          break;
        }
      }
    }
  }
  for (int j = 0; j + 1 < g.nb; ++j) {
    for (int i = 0; i < g.na; ++i) {
      for (const PairReq& r : reqs) {
        if (r.ai_lo <= i && i <= r.ai_hi && r.bi_lo <= j && j + 1 <= r.bi_hi) {
          g.edge_alive[g.vid(i, j)] = true;
          g.edge_len[g.vid(i, j)] = g.bs[j + 1] - g.bs[j];
          break;
        }
      }
    }
  }

  OracleSearch search(g, reqs, budget);
  EdgeSet empty((e_count + 63) / 64, 0);
  search.search(std::move(empty), Rat(0));
  result.nodes = search.nodes;
  if (search.exceeded || !search.has_best) {
    result.status = OracleResult::Status::BudgetExceeded;
    return result;
  }
  result.opt = search.best_len;
  const Frame& fr = grid.frame;
  const int m = ball.m();
  for (int j = 0; j < g.nb; ++j) {
    for (int i = 0; i + 1 < g.na; ++i) {
      if (test_bit(search.best_set, g.hid(i, j)))
        result.witness_edges.push_back(
            {fr.to_world({g.as[i], g.bs[j]}), fr.to_world({g.as[i + 1], g.bs[j]}), k});
    }
  }
  for (int j = 0; j + 1 < g.nb; ++j) {
    for (int i = 0; i < g.na; ++i) {
      if (test_bit(search.best_set, g.vid(i, j)))
        result.witness_edges.push_back(
            {fr.to_world({g.as[i], g.bs[j]}), fr.to_world({g.as[i], g.bs[j + 1]}), (k + 1) % m});
    }
  }
  return result;
}

RatioReport ratio_report(const SolveReport& report, const std::vector<Rat>& oracle_values) {
  if (oracle_values.size() != report.per_direction.size())
    throw MissingOracle("need one oracle value per direction");
  RatioReport out;
  out.sum_opt = Rat(0);
  const Rat factor(5, 4);
  for (std::size_t k = 0; k < oracle_values.size(); ++k) {
    const Rat& opt = oracle_values[k];
    out.sum_opt += opt;
    const Rat& got = report.per_direction[k].length_nk;
    if (opt.sign() == 0) {
      BMMN_CHECK(got.sign() == 0, "nonzero network for an empty direction");
      out.per_direction.push_back({static_cast<int>(k), Rat(1)});
      continue;
    }
    Rat ratio = got / opt;
    BMMN_CHECK(ratio <= factor, "per-direction approximation factor exceeded");
    out.per_direction.push_back({static_cast<int>(k), std::move(ratio)});
  }
  BMMN_CHECK(report.total_length <= factor * out.sum_opt, "global bound exceeded");
  out.global = out.sum_opt.sign() == 0 ? Rat(1)
                                       : report.total_length / (out.sum_opt / Rat(2));
  return out;
}

}  // namespace bmmn
