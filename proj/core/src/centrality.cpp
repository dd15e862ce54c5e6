#include <cmath>
#include <deque>

#include "newsgauge/diffusion.hpp"
#include "newsgauge/error.hpp"

namespace newsgauge::diffusion {
namespace {

// Dense index view of a graph, in node-id order.
struct Indexed {
  std::vector<std::string> ids;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
  std::vector<NodeKind> kinds;
};

Indexed index_graph(const DiffusionGraph& g) {
  Indexed ix;
  std::map<std::string, std::size_t> pos;
  for (const auto& [id, node] : g.nodes()) {
    pos.emplace(id, ix.ids.size());
    ix.ids.push_back(id);
    ix.kinds.push_back(node.kind);
  }
  ix.out.resize(ix.ids.size());
  ix.in.resize(ix.ids.size());
  for (const auto& [s, d] : g.edges()) {
    ix.out[pos.at(s)].push_back(pos.at(d));
    ix.in[pos.at(d)].push_back(pos.at(s));
  }
  return ix;
}

}  // namespace

std::map<std::string, double> personalized_pagerank(const DiffusionGraph& graph, const PageRankOptions& options) {
  if (graph.node_count() == 0) throw PreconditionError("personalized_pagerank: empty graph");
  if (!(options.damping >= 0.0 && options.damping < 1.0)) {
    throw PreconditionError("personalized_pagerank: damping must be in [0, 1)");
  }
  const Indexed ix = index_graph(graph);
  const std::size_t n = ix.ids.size();
  std::vector<double> restart(n, 0.0);
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ix.kinds[i] == NodeKind::Paper || ix.kinds[i] == NodeKind::ScienceDomain) {
      restart[i] = 1.0;
      ++roots;
    }
  }
  if (roots == 0) throw PreconditionError("personalized_pagerank: graph has no paper or science-domain nodes");
  for (auto& r : restart) r /= static_cast<double>(roots);

  // In the reversed graph a node's out-neighbours are its predecessors.
  const double d = options.damping;
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    double dangling = 0.0;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      const auto& targets = ix.in[u];
      if (targets.empty()) {
        dangling += x[u];
        continue;
      }
      const double share = x[u] / static_cast<double>(targets.size());
      for (auto v : targets) next[v] += d * share;
    }
    const double to_restart = d * dangling + (1.0 - d);
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] += to_restart * restart[v];
      change += std::abs(next[v] - x[v]);
    }
    x.swap(next);
    if (change < options.tolerance) break;
  }
  double total = 0.0;
  for (double v : x) total += v;
  std::map<std::string, double> scores;
  for (std::size_t i = 0; i < n; ++i) scores.emplace(ix.ids[i], x[i] / total);
  return scores;
}

std::map<std::string, double> betweenness(const DiffusionGraph& graph) {
  const Indexed ix = index_graph(graph);
  const std::size_t n = ix.ids.size();
  std::vector<double> cb(n, 0.0);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n);
  std::vector<long> dist(n);
  std::vector<double> delta(n);
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t v = 0; v < n; ++v) {
      preds[v].clear();
      sigma[v] = 0.0;
      dist[v] = -1;
      delta[v] = 0.0;
    }
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (auto w : ix.out[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (auto v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  const double scale = n > 2 ? 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2)) : 1.0;
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(ix.ids[i], cb[i] * scale);
  return out;
}

CentralityScores centralities(const DiffusionGraph& graph, const PageRankOptions& options) {
  CentralityScores c;
  c.betweenness = betweenness(graph);
  for (const auto& [id, node] : graph.nodes()) {
    c.in_degree.emplace(id, graph.predecessors(id).size());
    c.out_degree.emplace(id, graph.successors(id).size());
  }
  if (graph.count(NodeKind::Paper) + graph.count(NodeKind::ScienceDomain) > 0) {
    c.pagerank = personalized_pagerank(graph, options);
  } else {
    for (const auto& [id, node] : graph.nodes()) c.pagerank.emplace(id, 0.0);
  }
  return c;
}

}  // namespace newsgauge::diffusion
