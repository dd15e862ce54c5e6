#pragma once

// Typed diffusion graph (postings -> articles -> papers / science domains),
// pruning, near-duplicate merging and graph centralities.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "newsgauge/corpus.hpp"

namespace newsgauge::diffusion {

enum class NodeKind : std::uint8_t { Posting, Article, Paper, ScienceDomain };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view name);

struct Node {
  NodeKind kind = NodeKind::Posting;
  bool parse_ok = true;

  friend bool operator==(const Node&, const Node&) = default;
};

using Edge = std::pair<std::string, std::string>;

/// Directed graph with the kind constraints Posting->Article,
/// Article->Paper and Article->ScienceDomain. Nodes and edges are kept in
/// sorted containers, so iteration order is deterministic.
class DiffusionGraph {
 public:
  /// Adds a node, or updates parse_ok if it exists with the same kind.
  /// Throws DataError when the id already names a node of another kind.
  void add_node(const std::string& id, NodeKind kind, bool parse_ok = true);
  /// Throws PreconditionError for unknown endpoints or a kind violation.
  /// Adding an existing edge is a no-op.
  void add_edge(const std::string& src, const std::string& dst);
  /// Removes nodes and every incident edge.
  void remove_nodes(const std::set<std::string>& ids);

  [[nodiscard]] bool has_node(const std::string& id) const { return nodes_.contains(id); }
  [[nodiscard]] std::optional<NodeKind> kind(const std::string& id) const;
  [[nodiscard]] const std::map<std::string, Node>& nodes() const { return nodes_; }
  [[nodiscard]] const std::set<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::size_t count(NodeKind kind) const;
  [[nodiscard]] std::vector<std::string> ids(NodeKind kind) const;
  [[nodiscard]] const std::set<std::string>& successors(const std::string& id) const;
  [[nodiscard]] const std::set<std::string>& predecessors(const std::string& id) const;

  friend bool operator==(const DiffusionGraph& a, const DiffusionGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::map<std::string, Node> nodes_;
  std::set<Edge> edges_;
  std::map<std::string, std::set<std::string>> out_;
  std::map<std::string, std::set<std::string>> in_;
};

/// One node per record plus one per referenced science domain; one edge per
/// link table entry.
DiffusionGraph build(const corpus::LinkTable& links, std::span<const corpus::Posting> postings,
                     std::span<const corpus::Article> articles, std::span<const corpus::Paper> papers);

/// Drops unparsed nodes, then repeatedly drops articles without a reference
/// to a paper or science domain and postings without a surviving target.
/// Papers and science domains left without citing articles are dropped too.
DiffusionGraph prune(const DiffusionGraph& graph);

struct MergeResult {
  DiffusionGraph graph;
  std::map<std::string, std::string> merge_map;  // removed article -> survivor
  std::size_t posting_edges_before = 0;
  std::size_t posting_edges_rewired = 0;
  std::size_t posting_edges_after = 0;  // after collapsing duplicates
};

/// Single-link clusters of articles whose bag-of-words cosine exceeds the
/// threshold. Each cluster keeps the article with the most out-links (ties:
/// smallest id); postings of the others are re-targeted to it.
MergeResult merge_duplicates(const DiffusionGraph& graph, std::span<const corpus::Article> articles,
                             double threshold = 0.9);

/// Raw term frequencies of lowercase alphabetic words in title and paragraphs.
std::map<std::string, double> bag_of_words(const corpus::Article& article);
double bag_cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  std::size_t max_iterations = 100000;
};

/// Power iteration on the reversed graph, restarting uniformly at papers and
/// science domains; dangling mass returns to the restart set. Throws
/// PreconditionError for an empty graph or one without restart nodes.
std::map<std::string, double> personalized_pagerank(const DiffusionGraph& graph, const PageRankOptions& options = {});

struct CentralityScores {
  std::map<std::string, double> pagerank;
  std::map<std::string, double> betweenness;
  std::map<std::string, std::size_t> in_degree;
  std::map<std::string, std::size_t> out_degree;
};

/// Directed Brandes betweenness normalized by (n-1)(n-2).
std::map<std::string, double> betweenness(const DiffusionGraph& graph);

/// Betweenness, degrees and PageRank (all zero when there are no restart nodes).
CentralityScores centralities(const DiffusionGraph& graph, const PageRankOptions& options = {});

/// Edge list TSV (src_id, dst_id, src_kind, dst_kind) and node JSONL.
void write_graph(const DiffusionGraph& graph, const std::filesystem::path& edges_tsv,
                 const std::filesystem::path& nodes_jsonl);
DiffusionGraph read_graph(const std::filesystem::path& edges_tsv, const std::filesystem::path& nodes_jsonl);

}  // namespace newsgauge::diffusion
