#pragma once

// Independent reference computations used by unit and acceptance tests.
// Deliberately naive: dense matrices, exhaustive enumeration, quadrature.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "newsgauge/diffusion.hpp"

namespace oracle {

using newsgauge::diffusion::DiffusionGraph;
using newsgauge::diffusion::NodeKind;

// Dense power iteration of the walk that follows citations backwards and
// restarts uniformly at papers and domains. Runs a fixed number of sweeps.
inline std::map<std::string, double> pagerank(const DiffusionGraph& g, double damping, int sweeps = 3000) {
  std::vector<std::string> ids;
  for (const auto& [id, node] : g.nodes()) ids.push_back(id);
  const std::size_t n = ids.size();
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < n; ++i) at[ids[i]] = i;

  std::vector<double> restart(n, 0.0);
  double roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = g.nodes().at(ids[i]).kind;
    if (k == NodeKind::Paper || k == NodeKind::ScienceDomain) roots += 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = g.nodes().at(ids[i]).kind;
    if (k == NodeKind::Paper || k == NodeKind::ScienceDomain) restart[i] = 1.0 / roots;
  }
  // M[j][i]: probability of stepping i -> j in the reversed graph.
  std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> back;
    for (const auto& [src, dst] : g.edges()) {
      if (dst == ids[i]) back.push_back(at[src]);
    }
    if (back.empty()) {
      for (std::size_t j = 0; j < n; ++j) M[j][i] = restart[j];
    } else {
      for (auto j : back) M[j][i] += 1.0 / static_cast<double>(back.size());
    }
  }
  std::vector<double> x(restart), next(n);
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += M[j][i] * x[i];
      next[j] = damping * acc + (1 - damping) * restart[j];
    }
    x.swap(next);
  }
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < n; ++i) out[ids[i]] = x[i];
  return out;
}

// Betweenness by listing every shortest path explicitly.
inline std::map<std::string, double> betweenness(const DiffusionGraph& g) {
  std::vector<std::string> ids;
  for (const auto& [id, node] : g.nodes()) ids.push_back(id);
  const std::size_t n = ids.size();
  std::map<std::string, double> score;
  for (const auto& id : ids) score[id] = 0.0;

  for (const auto& s : ids) {
    std::map<std::string, int> dist{{s, 0}};
    std::deque<std::string> queue{s};
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (const auto& w : g.successors(v)) {
        if (!dist.contains(w)) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (const auto& t : ids) {
      if (t == s || !dist.contains(t)) continue;
      std::vector<std::vector<std::string>> paths;
      std::vector<std::string> path{s};
      std::function<void(const std::string&)> walk = [&](const std::string& v) {
        if (v == t) {
          paths.push_back(path);
          return;
        }
        for (const auto& w : g.successors(v)) {
          if (dist.contains(w) && dist[w] == dist[v] + 1 && dist[w] <= dist[t]) {
            path.push_back(w);
            walk(w);
            path.pop_back();
          }
        }
      };
      walk(s);
      for (const auto& p : paths) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) score[p[i]] += 1.0 / static_cast<double>(paths.size());
      }
    }
  }
  if (n > 2) {
    for (auto& [id, v] : score) v /= static_cast<double>((n - 1) * (n - 2));
  }
  return score;
}

// Random typed graph with at most max_nodes nodes and at least one paper.
inline DiffusionGraph random_graph(std::uint64_t seed, std::size_t max_nodes = 12) {
  std::mt19937_64 rng(seed);
  const auto pick = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  const std::size_t papers = pick(1, 3);
  const std::size_t domains = pick(0, 1);
  const std::size_t articles = pick(1, 4);
  const std::size_t postings = std::min<std::size_t>(pick(0, 5), max_nodes - papers - domains - articles);
  DiffusionGraph g;
  std::vector<std::string> ps, ds, as;
  for (std::size_t i = 0; i < papers; ++i) g.add_node(ps.emplace_back("p" + std::to_string(i)), NodeKind::Paper);
  for (std::size_t i = 0; i < domains; ++i) {
    g.add_node(ds.emplace_back("d" + std::to_string(i)), NodeKind::ScienceDomain);
  }
  for (std::size_t i = 0; i < articles; ++i) g.add_node(as.emplace_back("a" + std::to_string(i)), NodeKind::Article);
  for (const auto& a : as) {
    for (const auto& p : ps) {
      if (rng() % 2) g.add_edge(a, p);
    }
    for (const auto& d : ds) {
      if (rng() % 3 == 0) g.add_edge(a, d);
    }
  }
  for (std::size_t i = 0; i < postings; ++i) {
    const auto id = "t" + std::to_string(i);
    g.add_node(id, NodeKind::Posting);
    for (const auto& a : as) {
      if (rng() % 2) g.add_edge(id, a);
    }
  }
  return g;
}

// Survival function of F(d1, d2) by composite Simpson integration of the
// density over [0, f], with the substitution x = u^2 to tame the x = 0 end.
inline double f_survival(double f, double d1, double d2, int intervals = 200000) {
  const double logc = std::lgamma((d1 + d2) / 2) - std::lgamma(d1 / 2) - std::lgamma(d2 / 2) + (d1 / 2) * std::log(d1 / d2);
  const auto density_u = [&](double u) {
    if (u == 0) return d1 == 1 ? 2.0 * std::exp(logc) : 0.0;
    const double x = u * u;
    return 2 * u * std::exp(logc + (d1 / 2 - 1) * std::log(x) - ((d1 + d2) / 2) * std::log1p(d1 * x / d2));
  };
  const double b = std::sqrt(f);
  const double h = b / intervals;
  double acc = density_u(0) + density_u(b);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4 : 2) * density_u(i * h);
  return std::clamp(1.0 - acc * h / 3, 0.0, 1.0);
}

}  // namespace oracle
