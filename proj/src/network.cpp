#include "bmmn/network.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace bmmn {

namespace {

// Canonical key of the carrier line of a legal segment: direction index
// plus the exact line offset cross(d_j, p), constant along the line.
struct LineKey {
  int dir;
  Rat offset;
  friend bool operator<(const LineKey& a, const LineKey& b) {
    if (a.dir != b.dir) return a.dir < b.dir;
    return a.offset < b.offset;
  }
};

}  // namespace

struct Network::Graph {
  std::map<Point, int> vid;
  std::vector<Point> pts;
  std::vector<std::vector<std::pair<int, Rat>>> adj;
  std::vector<LegalSegment> merged;
  Rat total_length{0};

  int intern(const Point& p) {
    auto [it, inserted] = vid.try_emplace(p, static_cast<int>(pts.size()));
    if (inserted) {
      pts.push_back(p);
      adj.emplace_back();
    }
    return it->second;
  }

  void add_edge(int a, int b, Rat w) {
    adj[a].push_back({b, w});
    adj[b].push_back({a, std::move(w)});
  }

  std::pair<std::vector<std::optional<Rat>>, std::vector<int>> dijkstra(int src) const {
    std::vector<std::optional<Rat>> dist(pts.size());
    std::vector<int> parent(pts.size(), -1);
    using Item = std::pair<Rat, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = Rat(0);
    pq.push({Rat(0), src});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (!dist[u] || *dist[u] < d) continue;
      for (const auto& [v, w] : adj[u]) {
        Rat nd = d + w;
        if (!dist[v] || nd < *dist[v]) {
          dist[v] = nd;
          parent[v] = u;
          pq.push({std::move(nd), v});
        }
      }
    }
    return {std::move(dist), std::move(parent)};
  }
};

void Network::add(const LegalSegment& s) {
  if (s.a == s.b) return;
  segments_.push_back(s);
  cache_.reset();
}

void Network::add_segment(const Point& a, const Point& b) {
  if (a == b) return;
  add(make_segment(ball_, a, b));
}

void Network::merge(const Network& other) {
  for (const auto& s : other.segments_) add(s);
  for (const auto& t : other.terminals_) register_terminal(t);
}

void Network::register_terminal(const Point& t) {
  terminals_.push_back(t);
  cache_.reset();
}

namespace {

// Monotone parameter along the line with direction d (nonzero).
Rat param_along(const Vec& d, const Point& p) {
  if (d.x.sign() != 0) return p.x / d.x;
  return p.y / d.y;
}

}  // namespace

const Network::Graph& Network::graph() const {
  if (cache_) return *cache_;
  auto g = std::make_shared<Graph>();

  // 1. Merge collinear overlapping segments per carrier line.
  struct Entry {
    Rat lo, hi;
    Point plo, phi;
  };
  std::map<LineKey, std::vector<Entry>> lines;
  for (const auto& s : segments_) {
    const Vec& d = ball_.line_dir(s.dir);
    LineKey key{s.dir, cross(d, s.a)};
    Rat ta = param_along(d, s.a), tb = param_along(d, s.b);
    Entry e = ta <= tb ? Entry{ta, tb, s.a, s.b} : Entry{tb, ta, s.b, s.a};
    lines[key].push_back(std::move(e));
  }
  for (auto& [key, entries] : lines) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.lo < b.lo; });
    std::size_t i = 0;
    while (i < entries.size()) {
      Entry cur = entries[i];
      std::size_t j = i + 1;
      while (j < entries.size() && entries[j].lo <= cur.hi) {
        if (cur.hi < entries[j].hi) {
          cur.hi = entries[j].hi;
          cur.phi = entries[j].phi;
        }
        ++j;
      }
      g->merged.push_back({cur.plo, cur.phi, key.dir});
      i = j;
    }
  }

  // 2. Total length of the merged geometry.
  for (const auto& s : g->merged) g->total_length += norm_of(ball_, s.b - s.a);

  // 3. Split points: endpoints, pairwise intersections, terminals.
  const std::size_t n = g->merged.size();
  std::vector<std::vector<std::pair<Rat, Point>>> splits(n);
  std::vector<Rat> lo_x(n), hi_x(n), lo_y(n), hi_y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = g->merged[i];
    splits[i].push_back({param_along(ball_.line_dir(s.dir), s.a), s.a});
    splits[i].push_back({param_along(ball_.line_dir(s.dir), s.b), s.b});
    lo_x[i] = min(s.a.x, s.b.x);
    hi_x[i] = max(s.a.x, s.b.x);
    lo_y[i] = min(s.a.y, s.b.y);
    hi_y[i] = max(s.a.y, s.b.y);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& si = g->merged[i];
    const Vec& u = ball_.line_dir(si.dir);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& sj = g->merged[j];
      if (si.dir == sj.dir) continue;  // parallel carriers never meet off-line
      if (hi_x[i] < lo_x[j] || hi_x[j] < lo_x[i] || hi_y[i] < lo_y[j] || hi_y[j] < lo_y[i])
        continue;
      const Vec& v = ball_.line_dir(sj.dir);
      Vec e = si.b - si.a, w = sj.b - sj.a;
      Rat denom = cross(e, w);
      Rat s = cross(sj.a - si.a, w) / denom;
      if (s.sign() < 0 || s > Rat(1)) continue;
      Rat t = cross(sj.a - si.a, e) / denom;
      if (t.sign() < 0 || t > Rat(1)) continue;
      Point x = si.a + s * e;
      splits[i].push_back({param_along(u, x), x});
      splits[j].push_back({param_along(v, x), x});
    }
  }
  for (const auto& t : terminals_) {
    g->intern(t);
    for (std::size_t i = 0; i < n; ++i) {
      if (t.x < lo_x[i] || t.x > hi_x[i] || t.y < lo_y[i] || t.y > hi_y[i]) continue;
      const auto& s = g->merged[i];
      const Vec& d = ball_.line_dir(s.dir);
      if (cross(d, t - s.a).sign() != 0) continue;
      splits[i].push_back({param_along(d, t), t});
    }
  }

  // 4. Edges between consecutive split points.
  for (std::size_t i = 0; i < n; ++i) {
    auto& pts = splits[i];
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
      if (pts[p].first == pts[p + 1].first) continue;
      int a = g->intern(pts[p].second);
      int b = g->intern(pts[p + 1].second);
      g->add_edge(a, b, norm_of(ball_, pts[p + 1].second - pts[p].second));
    }
  }

  cache_ = g;
  return *cache_;
}

Rat Network::length() const { return graph().total_length; }

std::vector<LegalSegment> Network::merged_segments() const { return graph().merged; }

std::optional<PathResult> Network::shortest_path(const Point& p, const Point& q) const {
  const Graph& g = graph();
  auto ip = g.vid.find(p);
  auto iq = g.vid.find(q);
  if (ip == g.vid.end() || iq == g.vid.end())
    throw std::invalid_argument("shortest_path: endpoint is not a graph vertex");
  auto [dist, parent] = g.dijkstra(ip->second);
  if (!dist[iq->second]) return std::nullopt;
  PathResult res;
  res.length = *dist[iq->second];
  for (int v = iq->second; v != -1; v = parent[v]) res.polyline.push_back(g.pts[v]);
  std::reverse(res.polyline.begin(), res.polyline.end());
  return res;
}

VerifyReport Network::verify_manhattan(const std::vector<Point>& terminals) const {
  // Work on a copy with the queried terminals registered, leaving this
  // network's cached graph untouched.
  Network view = *this;
  for (const auto& t : terminals) view.register_terminal(t);
  const Graph& g = view.graph();

  VerifyReport rep;
  const int n = static_cast<int>(terminals.size());
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = g.vid.at(terminals[i]);
  for (int i = 0; i < n; ++i) {
    auto [dist, parent] = g.dijkstra(ids[i]);
    for (int j = i + 1; j < n; ++j) {
      if (terminals[i] == terminals[j]) continue;
      Rat req = distance(ball_, terminals[i], terminals[j]);
      const auto& d = dist[ids[j]];
      if (!d || *d != req) {
        rep.ok = false;
        rep.failures.push_back({i, j, d, req});
      }
    }
  }
  return rep;
}

}  // namespace bmmn
