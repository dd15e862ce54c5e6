#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "newsgauge/diffusion.hpp"
#include "newsgauge/error.hpp"
#include "strings.hpp"

namespace newsgauge::diffusion {
namespace {

bool allowed(NodeKind src, NodeKind dst) {
  switch (src) {
    case NodeKind::Posting:
      return dst == NodeKind::Article;
    case NodeKind::Article:
      return dst == NodeKind::Paper || dst == NodeKind::ScienceDomain;
    default:
      return false;
  }
}

const std::set<std::string> kNoNeighbors;

// Union-find over article indices; the smaller index becomes the root.
class Clusters {
 public:
  explicit Clusters(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Posting:
      return "posting";
    case NodeKind::Article:
      return "article";
    case NodeKind::Paper:
      return "paper";
    case NodeKind::ScienceDomain:
      return "science_domain";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view name) {
  for (auto k : {NodeKind::Posting, NodeKind::Article, NodeKind::Paper, NodeKind::ScienceDomain}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void DiffusionGraph::add_node(const std::string& id, NodeKind kind, bool parse_ok) {
  auto [it, inserted] = nodes_.try_emplace(id, Node{kind, parse_ok});
  if (inserted) return;
  if (it->second.kind != kind) {
    throw DataError("node id '" + id + "' is used by a " + std::string(to_string(it->second.kind)) + " and a " +
                    std::string(to_string(kind)));
  }
  it->second.parse_ok = parse_ok;
}

void DiffusionGraph::add_edge(const std::string& src, const std::string& dst) {
  const auto s = nodes_.find(src);
  const auto d = nodes_.find(dst);
  if (s == nodes_.end() || d == nodes_.end()) throw PreconditionError("add_edge: unknown endpoint " + src + " -> " + dst);
  if (!allowed(s->second.kind, d->second.kind)) {
    throw PreconditionError("add_edge: " + std::string(to_string(s->second.kind)) + " -> " +
                            std::string(to_string(d->second.kind)) + " is not a valid edge");
  }
  if (edges_.emplace(src, dst).second) {
    out_[src].insert(dst);
    in_[dst].insert(src);
  }
}

void DiffusionGraph::remove_nodes(const std::set<std::string>& ids) {
  for (const auto& id : ids) {
    if (nodes_.erase(id) == 0) continue;
    if (auto it = out_.find(id); it != out_.end()) {
      for (const auto& dst : it->second) {
        edges_.erase({id, dst});
        in_[dst].erase(id);
      }
      out_.erase(it);
    }
    if (auto it = in_.find(id); it != in_.end()) {
      for (const auto& src : it->second) {
        edges_.erase({src, id});
        out_[src].erase(id);
      }
      in_.erase(it);
    }
  }
}

std::optional<NodeKind> DiffusionGraph::kind(const std::string& id) const {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) return std::nullopt;
  return it->second.kind;
}

std::size_t DiffusionGraph::count(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [&](const auto& kv) { return kv.second.kind == kind; }));
}

std::vector<std::string> DiffusionGraph::ids(NodeKind kind) const {
  std::vector<std::string> out;
  for (const auto& [id, node] : nodes_) {
    if (node.kind == kind) out.push_back(id);
  }
  return out;
}

const std::set<std::string>& DiffusionGraph::successors(const std::string& id) const {
  const auto it = out_.find(id);
  return it == out_.end() ? kNoNeighbors : it->second;
}

const std::set<std::string>& DiffusionGraph::predecessors(const std::string& id) const {
  const auto it = in_.find(id);
  return it == in_.end() ? kNoNeighbors : it->second;
}

DiffusionGraph build(const corpus::LinkTable& links, std::span<const corpus::Posting> postings,
                     std::span<const corpus::Article> articles, std::span<const corpus::Paper> papers) {
  DiffusionGraph g;
  for (const auto& p : postings) g.add_node(p.id, NodeKind::Posting);
  for (const auto& a : articles) g.add_node(a.id, NodeKind::Article, a.parse_ok);
  for (const auto& p : papers) g.add_node(p.id, NodeKind::Paper, p.parse_ok);
  for (const auto& [article, domain] : links.article_domain) g.add_node(domain, NodeKind::ScienceDomain);
  for (const auto& [s, d] : links.posting_article) {
    if (g.has_node(s) && g.has_node(d)) g.add_edge(s, d);
  }
  for (const auto& [s, d] : links.article_paper) {
    if (g.has_node(s) && g.has_node(d)) g.add_edge(s, d);
  }
  for (const auto& [s, d] : links.article_domain) {
    if (g.has_node(s)) g.add_edge(s, d);
  }
  return g;
}

DiffusionGraph prune(const DiffusionGraph& graph) {
  DiffusionGraph g = graph;
  std::set<std::string> unparsed;
  for (const auto& [id, node] : g.nodes()) {
    if (!node.parse_ok) unparsed.insert(id);
  }
  g.remove_nodes(unparsed);
  while (true) {
    std::set<std::string> doomed;
    for (const auto& [id, node] : g.nodes()) {
      const bool dead_end = g.successors(id).empty();
      const bool orphan = g.predecessors(id).empty();
      if ((node.kind == NodeKind::Article || node.kind == NodeKind::Posting) && dead_end) doomed.insert(id);
      if ((node.kind == NodeKind::ScienceDomain || node.kind == NodeKind::Paper) && orphan) doomed.insert(id);
    }
    if (doomed.empty()) return g;
    g.remove_nodes(doomed);
  }
}

std::map<std::string, double> bag_of_words(const corpus::Article& article) {
  std::map<std::string, double> bag;
  const auto add_text = [&](std::string_view text) {
    std::string word;
    for (char c : text) {
      if (detail::is_ascii_alpha(c)) {
        word += static_cast<char>(c | 0x20);
      } else if (!word.empty()) {
        bag[word] += 1.0;
        word.clear();
      }
    }
    if (!word.empty()) bag[word] += 1.0;
  };
  add_text(article.title);
  for (const auto& p : article.paragraphs) add_text(p);
  return bag;
}

double bag_cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [w, v] : a) na += v * v;
  for (const auto& [w, v] : b) nb += v * v;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

MergeResult merge_duplicates(const DiffusionGraph& graph, std::span<const corpus::Article> articles,
                             double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw PreconditionError("merge_duplicates: threshold must be in (0, 1]");
  std::vector<const corpus::Article*> present;
  for (const auto& a : articles) {
    if (graph.kind(a.id) == NodeKind::Article) present.push_back(&a);
  }
  std::sort(present.begin(), present.end(), [](auto* x, auto* y) { return x->id < y->id; });
  std::vector<std::map<std::string, double>> bags;
  bags.reserve(present.size());
  for (const auto* a : present) bags.push_back(bag_of_words(*a));

  Clusters clusters(present.size());
  for (std::size_t i = 0; i < present.size(); ++i) {
    for (std::size_t j = i + 1; j < present.size(); ++j) {
      if (bag_cosine(bags[i], bags[j]) > threshold) clusters.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < present.size(); ++i) members[clusters.find(i)].push_back(i);

  MergeResult result;
  result.graph = graph;
  for (const auto& e : graph.edges()) {
    if (graph.kind(e.first) == NodeKind::Posting) ++result.posting_edges_before;
  }
  std::set<std::string> removed;
  for (const auto& [root, group] : members) {
    if (group.size() < 2) continue;
    // Ids are sorted, so the first maximum is the smallest id among ties.
    std::size_t best = group.front();
    for (auto i : group) {
      if (present[i]->out_links.size() > present[best]->out_links.size()) best = i;
    }
    const auto& survivor = present[best]->id;
    for (auto i : group) {
      if (i == best) continue;
      const auto& loser = present[i]->id;
      result.merge_map.emplace(loser, survivor);
      for (const auto& posting : graph.predecessors(loser)) {
        result.graph.add_edge(posting, survivor);
        ++result.posting_edges_rewired;
      }
      removed.insert(loser);
    }
  }
  result.graph.remove_nodes(removed);
  for (const auto& e : result.graph.edges()) {
    if (result.graph.kind(e.first) == NodeKind::Posting) ++result.posting_edges_after;
  }
  return result;
}

void write_graph(const DiffusionGraph& graph, const std::filesystem::path& edges_tsv,
                 const std::filesystem::path& nodes_jsonl) {
  std::string edges = "src_id\tdst_id\tsrc_kind\tdst_kind\n";
  for (const auto& [s, d] : graph.edges()) {
    edges += s + '\t' + d + '\t' + std::string(to_string(*graph.kind(s))) + '\t' +
             std::string(to_string(*graph.kind(d))) + '\n';
  }
  detail::write_file(edges_tsv, edges);
  std::string nodes;
  for (const auto& [id, node] : graph.nodes()) {
    nodes += nlohmann::json{{"id", id}, {"kind", to_string(node.kind)}, {"parse_ok", node.parse_ok}}.dump() + '\n';
  }
  detail::write_file(nodes_jsonl, nodes);
}

DiffusionGraph read_graph(const std::filesystem::path& edges_tsv, const std::filesystem::path& nodes_jsonl) {
  DiffusionGraph g;
  for (const auto& line : detail::content_lines(detail::read_file(nodes_jsonl))) {
    try {
      const auto obj = nlohmann::json::parse(line);
      const auto kind = parse_node_kind(obj.at("kind").get<std::string>());
      if (!kind) throw DataError(nodes_jsonl.string() + ": unknown node kind");
      g.add_node(obj.at("id").get<std::string>(), *kind, obj.value("parse_ok", true));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(nodes_jsonl.string() + ": " + e.what());
    }
  }
  bool header = true;
  for (const auto& line : detail::content_lines(detail::read_file(edges_tsv))) {
    if (std::exchange(header, false)) continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 4) throw DataError(edges_tsv.string() + ": malformed edge row");
    g.add_edge(std::string(f[0]), std::string(f[1]));
  }
  return g;
}

}  // namespace newsgauge::diffusion
