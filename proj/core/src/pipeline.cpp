#include <algorithm>
#include <cstdio>
#include <map>
#include <thread>

#include "json_io.hpp"
#include "newsgauge/adherence.hpp"
#include "newsgauge/clickbait.hpp"
#include "newsgauge/corpus.hpp"
#include "newsgauge/diffusion.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/indicators.hpp"
#include "newsgauge/pipeline.hpp"
#include "newsgauge/quotes.hpp"
#include "newsgauge/random.hpp"
#include "newsgauge/social.hpp"
#include "newsgauge/topics.hpp"
#include "strings.hpp"

namespace newsgauge::pipeline {
namespace {

namespace fs = std::filesystem;
using detail::json;

// Seed streams for the individually seeded learners.
enum Stream : std::uint64_t { kPairs = 1, kLda, kSts, kStance, kHeadline, kQuality };

std::string hex_hash(std::string_view bytes) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(stable_hash(bytes)));
  return buf;
}

std::string file_hash(const fs::path& p) { return hex_hash(detail::read_file(p)); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(Stage stage, const fs::path& p) {
  if (!fs::exists(p)) throw MissingArtifact(to_string(stage), p);
}

learn::ForestOptions forest_options(const PipelineConfig& c, Stream stream) {
  return learn::ForestOptions{c.n_trees, mix_seed(c.seed, stream), std::nullopt};
}

corpus::Corpus load_corpus(const PipelineConfig& c) {
  return corpus::Corpus(corpus::ingest<corpus::Posting>(c.postings).records,
                        corpus::ingest<corpus::Reply>(c.replies).records,
                        corpus::ingest<corpus::Article>(c.articles).records,
                        corpus::ingest<corpus::Paper>(c.papers).records);
}

// Records the stage's outputs and the run's inputs; no timestamps so that
// reruns stay byte-identical.
void update_manifest(const PipelineConfig& c, const Layout& layout, Stage stage,
                     const std::vector<fs::path>& outputs) {
  json manifest = json::object();
  if (fs::exists(layout.manifest)) {
    try {
      manifest = json::parse(detail::read_file(layout.manifest));
    } catch (const json::exception&) {
      manifest = json::object();
    }
  }
  json inputs = json::object();
  const std::vector<std::pair<std::string, fs::path>> named = {
      {"postings", c.postings},       {"replies", c.replies},
      {"articles", c.articles},       {"papers", c.papers},
      {"science_domains", c.science_domains}, {"keywords", c.keywords},
      {"embeddings", c.embeddings},   {"outlets", c.outlets},
      {"stance_postings", c.stance_postings}, {"stance_replies", c.stance_replies},
      {"stance_labels", c.stance_labels},     {"expert_labels", c.expert_labels}};
  for (const auto& [name, p] : named) inputs[name] = file_hash(p);
  if (c.headlines) inputs["headlines"] = file_hash(*c.headlines);
  if (fs::exists(c.ratings)) inputs["ratings"] = file_hash(c.ratings);
  manifest["inputs"] = inputs;
  manifest["params"] = json{{"seed", c.seed},
                            {"merge_threshold", c.merge_threshold},
                            {"damping", c.damping},
                            {"lda_topics", c.lda_topics},
                            {"lda_iterations", c.lda_iterations},
                            {"lexicon_k", c.lexicon_k},
                            {"n_trees", c.n_trees}};
  json produced = json::object();
  for (const auto& p : outputs) produced[fs::relative(p, layout.root).generic_string()] = file_hash(p);
  manifest["stages"][std::string(to_string(stage))] = produced;
  detail::write_file(layout.manifest, manifest.dump(2) + "\n");
}

// --- stages -------------------------------------------------------------------

void run_ingest(const PipelineConfig& c, const Layout& l) {
  const auto postings = corpus::ingest<corpus::Posting>(c.postings);
  const auto replies = corpus::ingest<corpus::Reply>(c.replies);
  const auto articles = corpus::ingest<corpus::Article>(c.articles);
  const auto papers = corpus::ingest<corpus::Paper>(c.papers);
  const auto allowlist = corpus::load_allowlist(c.science_domains, c.keywords);
  const auto filtered = corpus::filter_postings(postings.records, allowlist);
  const auto links = corpus::resolve_links(filtered, articles.records, papers.records, allowlist);
  fs::create_directories(l.links.parent_path());
  corpus::write_links(l.links, links);
  const corpus::Corpus all(postings.records, replies.records, articles.records, papers.records);
  const json summary{{"postings", postings.records.size()},
                     {"postings_skipped", postings.skipped},
                     {"postings_kept", filtered.size()},
                     {"replies", replies.records.size()},
                     {"replies_skipped", replies.skipped},
                     {"orphan_replies", all.orphan_replies()},
                     {"articles", articles.records.size()},
                     {"articles_skipped", articles.skipped},
                     {"papers", papers.records.size()},
                     {"papers_skipped", papers.skipped},
                     {"papers_outside_allowlist", links.papers_outside_allowlist},
                     {"posting_article_edges", links.posting_article.size()},
                     {"article_paper_edges", links.article_paper.size()},
                     {"article_domain_edges", links.article_domain.size()},
                     {"unresolved_posting_urls", links.unresolved_posting_urls},
                     {"unresolved_out_links", links.unresolved_out_links}};
  detail::write_file(l.ingest_summary, summary.dump(2) + "\n");
  update_manifest(c, l, Stage::Ingest, {l.links, l.ingest_summary});
}

void run_graph(const PipelineConfig& c, const Layout& l) {
  require(Stage::Graph, l.links);
  const auto links = corpus::read_links(l.links);
  const auto corpus = load_corpus(c);
  const auto allowlist = corpus::load_allowlist(c.science_domains, c.keywords);
  const auto filtered = corpus::filter_postings(corpus.postings(), allowlist);
  const auto built = diffusion::build(links, filtered, corpus.articles(), corpus.papers());
  const auto pruned = diffusion::prune(built);
  const auto merged = diffusion::merge_duplicates(pruned, corpus.articles(), c.merge_threshold);
  const auto& g = merged.graph;

  fs::create_directories(l.edges.parent_path());
  diffusion::write_graph(g, l.edges, l.nodes);

  std::string mm = "removed\tsurvivor\n";
  for (const auto& [from, to] : merged.merge_map) mm += from + '\t' + to + '\n';
  detail::write_file(l.merge_map, mm);

  const auto scores = diffusion::centralities(g, diffusion::PageRankOptions{c.damping, 1e-12, 100000});
  std::string ct = "node_id\tkind\tpagerank\tbetweenness\tin_degree\tout_degree\n";
  for (const auto kind : {diffusion::NodeKind::Posting, diffusion::NodeKind::Article, diffusion::NodeKind::Paper,
                          diffusion::NodeKind::ScienceDomain}) {
    for (const auto& id : g.ids(kind)) {
      const auto pr = scores.pagerank.find(id);
      ct += id + '\t' + std::string(diffusion::to_string(kind)) + '\t' +
            fmt(pr == scores.pagerank.end() ? 0.0 : pr->second) + '\t' + fmt(scores.betweenness.at(id)) + '\t' +
            std::to_string(scores.in_degree.at(id)) + '\t' + std::to_string(scores.out_degree.at(id)) + '\n';
    }
  }
  detail::write_file(l.centrality, ct);

  const json summary{{"nodes_built", built.node_count()},
                     {"nodes_pruned", pruned.node_count()},
                     {"nodes_merged", g.node_count()},
                     {"articles", g.count(diffusion::NodeKind::Article)},
                     {"postings", g.count(diffusion::NodeKind::Posting)},
                     {"papers", g.count(diffusion::NodeKind::Paper)},
                     {"science_domains", g.count(diffusion::NodeKind::ScienceDomain)},
                     {"merged_articles", merged.merge_map.size()},
                     {"posting_edges_before_merge", merged.posting_edges_before},
                     {"posting_edges_rewired", merged.posting_edges_rewired},
                     {"posting_edges_after_merge", merged.posting_edges_after}};
  detail::write_file(l.graph_summary, summary.dump(2) + "\n");
  update_manifest(c, l, Stage::Graph, {l.edges, l.nodes, l.merge_map, l.centrality, l.graph_summary});
}

social::StanceModel train_stance(const PipelineConfig& c) {
  const auto parents = corpus::ingest<corpus::Posting>(c.stance_postings).records;
  const auto replies = corpus::ingest<corpus::Reply>(c.stance_replies).records;
  const auto labels = social::load_stance_labels(c.stance_labels);
  std::map<std::string, const corpus::Posting*> parent_of;
  for (const auto& p : parents) parent_of[p.id] = &p;
  std::map<std::string, const corpus::Reply*> reply_of;
  for (const auto& r : replies) reply_of[r.id] = &r;
  const auto embeddings = textkit::load_embeddings(c.embeddings);
  std::vector<social::StanceExample> examples;
  for (const auto& [id, stance] : labels.labeled) {
    const auto r = reply_of.find(id);
    if (r == reply_of.end()) throw DataError(c.stance_labels.string() + ": no reply with id " + id);
    const auto p = parent_of.find(r->second->parent_id);
    if (p == parent_of.end()) throw DataError(c.stance_replies.string() + ": reply " + id + " has no parent posting");
    examples.push_back({social::stance_features(r->second->text, p->second->text, embeddings), stance});
  }
  return social::StanceModel::train(examples, forest_options(c, kStance));
}

void run_indicators(const PipelineConfig& c, const Layout& l) {
  require(Stage::Indicators, l.edges);
  require(Stage::Indicators, l.nodes);
  const auto graph = diffusion::read_graph(l.edges, l.nodes);
  const auto corpus = load_corpus(c);
  const auto allowlist = corpus::load_allowlist(c.science_domains, c.keywords);
  const auto embeddings = textkit::load_embeddings(c.embeddings);
  const auto outlets = indicators::load_outlets(c.outlets);
  const auto centrality = diffusion::centralities(graph, diffusion::PageRankOptions{c.damping, 1e-12, 100000});
  fs::create_directories(l.lda_model.parent_path());

  // Topic model over every article and paper that survived the graph stage.
  std::vector<textkit::TokenizedText> docs;
  for (const auto& id : graph.ids(diffusion::NodeKind::Article)) {
    docs.push_back(textkit::analyze_paragraphs(corpus.article(id)->paragraphs));
  }
  for (const auto& id : graph.ids(diffusion::NodeKind::Paper)) docs.push_back(textkit::analyze(corpus.paper(id)->body));
  auto lda = topics::LdaOptions::with_topics(c.lda_topics);
  lda.iterations = c.lda_iterations;
  lda.seed = mix_seed(c.seed, kLda);
  const auto topic_model = topics::train_lda(docs, lda);
  topics::save_model(topic_model, l.lda_model);

  // Source adherence model from linked / unlinked article-paper pairs.
  std::map<std::string, adherence::DocProfile> profiles;
  const auto profile_of = [&](const std::string& id, bool paper) -> const adherence::DocProfile& {
    if (auto it = profiles.find(id); it != profiles.end()) return it->second;
    auto p = paper ? adherence::profile(*corpus.paper(id), topic_model, embeddings)
                   : adherence::profile(*corpus.article(id), topic_model, embeddings);
    return profiles.emplace(id, std::move(p)).first->second;
  };
  std::vector<adherence::TrainingPair> pairs;
  for (const auto& spec : adherence::build_pairs(graph, mix_seed(c.seed, kPairs))) {
    pairs.push_back({spec, adherence::sts_features(profile_of(spec.article_id, false), profile_of(spec.paper_id, true))});
  }
  adherence::write_pairs_csv(l.sts_pairs, pairs);
  const auto sts = adherence::StsModel::train(pairs, forest_options(c, kSts));
  adherence::save_model(sts, l.sts_model);

  const auto stance = train_stance(c);
  social::save_model(stance, l.stance_model);

  const auto headlines = textkit::HeadlineModel::train(
      c.headlines ? textkit::load_headlines(*c.headlines) : textkit::bundled_headlines(), forest_options(c, kHeadline));
  textkit::save_model(headlines, l.headline_model);

  std::vector<quotes::ExpansionEntry> review;
  const auto lexicon = quotes::expand(quotes::WordClassLexicon::seeds(), embeddings, c.lexicon_k, &review);
  quotes::write_review(l.lexicon_review, review);
  const quotes::QuoteExtractor extractor(lexicon);

  const auto article_ids = graph.ids(diffusion::NodeKind::Article);
  std::vector<quotes::ArticleText> prepared;
  for (const auto& id : article_ids) prepared.push_back(quotes::prepare(*corpus.article(id)));
  const auto names = quotes::NameIndex::build(prepared);

  const indicators::Context ctx{corpus,    graph,      centrality, headlines, extractor, names,
                                allowlist, topic_model, embeddings, sts,       stance,    outlets};
  std::vector<indicators::IndicatorVector> vectors(article_ids.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, article_ids.size()));
  {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const indicators::IndicatorBuilder builder(ctx);
          for (std::size_t i = w; i < article_ids.size(); i += workers) vectors[i] = builder.compute(article_ids[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  fs::create_directories(l.indicators_jsonl.parent_path());
  indicators::write_jsonl(l.indicators_jsonl, vectors);
  indicators::write_csv(l.indicators_csv, vectors);
  update_manifest(c, l, Stage::Indicators,
                  {l.lda_model, l.sts_pairs, l.sts_model, l.stance_model, l.headline_model, l.lexicon_review,
                   l.indicators_jsonl, l.indicators_csv});
}

void run_train(const PipelineConfig& c, const Layout& l) {
  require(Stage::Train, l.indicators_jsonl);
  const auto vectors = indicators::read_jsonl(l.indicators_jsonl);
  const auto weak = indicators::weak_labels(vectors, indicators::load_outlets(c.outlets));
  const auto model = indicators::QualityModel::train(vectors, weak.labels, forest_options(c, kQuality));
  indicators::save_model(model, l.quality_model);

  std::string csv = "indicator,f_statistic,p_value,stars\n";
  for (const auto& d : indicators::discriminate(vectors, weak.labels)) {
    csv += d.indicator + ',' + fmt(d.f_statistic) + ',' + fmt(d.p_value) + ',' + d.stars + '\n';
  }
  detail::write_file(l.discrimination, csv);
  update_manifest(c, l, Stage::Train, {l.quality_model, l.discrimination});
}

void run_score(const PipelineConfig& c, const Layout& l) {
  require(Stage::Score, l.indicators_jsonl);
  require(Stage::Score, l.quality_model);
  const auto model = indicators::load_quality_model(l.quality_model);
  std::string csv = "article_id,score\n";
  for (const auto& v : indicators::read_jsonl(l.indicators_jsonl)) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", model.score(v));
    csv += v.article_id + ',' + buf + '\n';
  }
  detail::write_file(l.scores, csv);
  update_manifest(c, l, Stage::Score, {l.scores});
}

void run_report(const PipelineConfig& c, const Layout& l) {
  require(Stage::Report, c.ratings);
  const auto ratings = indicators::load_ratings(c.ratings);
  const auto experts = indicators::load_expert_labels(c.expert_labels);
  std::map<std::string, double> automated;
  if (fs::exists(l.scores)) {
    for (const auto& [id, s] : read_scores(l.scores)) automated[id] = s;
  }
  const auto report = indicators::rmse_report(ratings, experts, automated);
  fs::create_directories(l.report_csv.parent_path());
  indicators::write_report_csv(l.report_csv, report);
  detail::write_file(l.report_json, indicators::report_json(report) + "\n");
  update_manifest(c, l, Stage::Report, {l.report_csv, l.report_json});
}

}  // namespace

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Ingest: return "ingest";
    case Stage::Graph: return "graph";
    case Stage::Indicators: return "indicators";
    case Stage::Train: return "train";
    case Stage::Score: return "score";
    case Stage::Report: return "report";
    case Stage::All: return "all";
  }
  return "all";
}

std::optional<Stage> parse_stage(std::string_view s) {
  for (auto st : {Stage::Ingest, Stage::Graph, Stage::Indicators, Stage::Train, Stage::Score, Stage::Report,
                  Stage::All}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

Layout::Layout(const fs::path& r)
    : root(r),
      links(r / "ingest" / "links.tsv"),
      ingest_summary(r / "ingest" / "summary.json"),
      edges(r / "graph" / "edges.tsv"),
      nodes(r / "graph" / "nodes.jsonl"),
      merge_map(r / "graph" / "merge_map.tsv"),
      centrality(r / "graph" / "centrality.tsv"),
      graph_summary(r / "graph" / "summary.json"),
      lda_model(r / "models" / "lda.json"),
      sts_model(r / "models" / "sts.json"),
      stance_model(r / "models" / "stance.json"),
      headline_model(r / "models" / "headline.json"),
      lexicon_review(r / "models" / "lexicon_review.tsv"),
      sts_pairs(r / "models" / "sts_pairs.csv"),
      indicators_jsonl(r / "indicators" / "indicators.jsonl"),
      indicators_csv(r / "indicators" / "indicators.csv"),
      quality_model(r / "models" / "quality.json"),
      discrimination(r / "indicators" / "discrimination.csv"),
      scores(r / "indicators" / "scores.csv"),
      report_csv(r / "report" / "report.csv"),
      report_json(r / "report" / "report.json"),
      manifest(r / "manifest.json") {}

MissingArtifact::MissingArtifact(std::string_view stage, const fs::path& artifact)
    : Error("stage '" + std::string(stage) + "': missing artifact " + artifact.string()) {}

void run(Stage stage, const PipelineConfig& config) {
  const Layout layout(config.output_dir);
  fs::create_directories(layout.root);
  switch (stage) {
    case Stage::Ingest: return run_ingest(config, layout);
    case Stage::Graph: return run_graph(config, layout);
    case Stage::Indicators: return run_indicators(config, layout);
    case Stage::Train: return run_train(config, layout);
    case Stage::Score: return run_score(config, layout);
    case Stage::Report: return run_report(config, layout);
    case Stage::All:
      for (auto s : {Stage::Ingest, Stage::Graph, Stage::Indicators, Stage::Train, Stage::Score}) run(s, config);
      // The report needs human ratings, which only exist once raters used the service.
      if (fs::exists(config.ratings)) run(Stage::Report, config);
      return;
  }
}

std::vector<std::pair<std::string, double>> read_scores(const fs::path& path) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& line : detail::content_lines(detail::read_file(path))) {
    const auto f = detail::split(line, ',');
    if (f.size() != 2) throw DataError(path.string() + ": expected 'article_id,score'");
    if (f[0] == "article_id") continue;
    try {
      out.emplace_back(std::string(f[0]), std::stod(std::string(f[1])));
    } catch (const std::exception&) {
      throw DataError(path.string() + ": bad score for " + std::string(f[0]));
    }
  }
  return out;
}

}  // namespace newsgauge::pipeline
