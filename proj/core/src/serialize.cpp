#include "json_io.hpp"
#include "newsgauge/adherence.hpp"
#include "newsgauge/clickbait.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/social.hpp"
#include "newsgauge/topics.hpp"
#include "strings.hpp"

namespace newsgauge {
namespace detail {

namespace {
constexpr int kModelVersion = 1;
}

json forest_to_json(const learn::Forest& forest) {
  json trees = json::array();
  for (const auto& tree : forest.trees()) {
    json nodes = json::array();
    for (const auto& n : tree) nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.klass}));
    trees.push_back(std::move(nodes));
  }
  return json{{"classes", forest.classes()},
              {"n_features", forest.n_features()},
              {"seed", forest.seed()},
              {"trees", std::move(trees)}};
}

learn::Forest forest_from_json(const json& j) {
  auto classes = j.at("classes").get<std::vector<int>>();
  const auto n_features = j.at("n_features").get<std::size_t>();
  std::vector<learn::Forest::Tree> trees;
  for (const auto& t : j.at("trees")) {
    learn::Forest::Tree tree;
    for (const auto& n : t) {
      learn::Forest::Node node;
      node.feature = n.at(0).get<std::int32_t>();
      node.threshold = n.at(1).get<double>();
      node.left = n.at(2).get<std::int32_t>();
      node.right = n.at(3).get<std::int32_t>();
      node.klass = n.at(4).get<std::int32_t>();
      tree.push_back(node);
    }
    const auto size = static_cast<std::int32_t>(tree.size());
    for (const auto& node : tree) {
      const bool leaf = node.feature < 0;
      if (!leaf && (node.feature >= static_cast<std::int32_t>(n_features) || node.left <= 0 || node.left >= size ||
                    node.right <= 0 || node.right >= size)) {
        throw DataError("forest model: invalid split node");
      }
      if (node.klass < 0 || node.klass >= static_cast<std::int32_t>(classes.size())) {
        throw DataError("forest model: class index out of range");
      }
    }
    if (tree.empty()) throw DataError("forest model: empty tree");
    trees.push_back(std::move(tree));
  }
  return learn::Forest(std::move(classes), n_features, j.at("seed").get<std::uint64_t>(), std::move(trees));
}

json imputer_to_json(const learn::MedianImputer& imputer) {
  return json{{"medians", imputer.medians()}, {"flagged", imputer.flagged_columns()}};
}

learn::MedianImputer imputer_from_json(const json& j) {
  return learn::MedianImputer(j.at("medians").get<std::vector<double>>(),
                              j.at("flagged").get<std::vector<std::size_t>>());
}

void write_model(const std::filesystem::path& path, std::string_view kind, json body) {
  body["format"] = kind;
  body["version"] = kModelVersion;
  write_file(path, body.dump() + "\n");
}

json read_model(const std::filesystem::path& path, std::string_view kind) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", std::string()) != kind) {
    throw DataError(path.string() + ": not a " + std::string(kind) + " file");
  }
  if (j.value("version", 0) != kModelVersion) throw DataError(path.string() + ": unsupported model version");
  return j;
}

}  // namespace detail

namespace {

template <typename F>
auto guarded(const std::filesystem::path& path, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace

namespace topics {

void save_model(const TopicModel& model, const std::filesystem::path& path) {
  detail::write_model(path, "newsgauge.lda",
                      detail::json{{"topics", model.topic_count()},
                                   {"vocabulary", model.vocabulary()},
                                   {"phi", model.phi()},
                                   {"alpha", model.alpha()},
                                   {"beta", model.beta()},
                                   {"seed", model.seed()}});
}

TopicModel load_model(const std::filesystem::path& path) {
  const auto j = detail::read_model(path, "newsgauge.lda");
  return guarded(path, [&] {
    auto phi = j.at("phi").get<std::vector<std::vector<double>>>();
    if (phi.size() != j.at("topics").get<std::size_t>()) throw DataError(path.string() + ": topic count mismatch");
    return TopicModel(j.at("vocabulary").get<std::vector<std::string>>(), std::move(phi), j.at("alpha").get<double>(),
                      j.at("beta").get<double>(), j.at("seed").get<std::uint64_t>());
  });
}

}  // namespace topics

namespace adherence {

void save_model(const StsModel& model, const std::filesystem::path& path) {
  detail::write_model(path, "newsgauge.sts",
                      detail::json{{"features", feature_names()}, {"forest", detail::forest_to_json(model.forest())}});
}

StsModel load_sts_model(const std::filesystem::path& path) {
  const auto j = detail::read_model(path, "newsgauge.sts");
  return guarded(path, [&] { return StsModel(detail::forest_from_json(j.at("forest"))); });
}

}  // namespace adherence

namespace social {

void save_model(const StanceModel& model, const std::filesystem::path& path) {
  detail::write_model(path, "newsgauge.stance", detail::json{{"forest", detail::forest_to_json(model.forest())}});
}

StanceModel load_stance_model(const std::filesystem::path& path) {
  const auto j = detail::read_model(path, "newsgauge.stance");
  return guarded(path, [&] { return StanceModel(detail::forest_from_json(j.at("forest"))); });
}

}  // namespace social

namespace textkit {

void save_model(const HeadlineModel& model, const std::filesystem::path& path) {
  detail::write_model(path, "newsgauge.headline",
                      detail::json{{"vocabulary", model.vocabulary()},
                                   {"prior", model.prior()},
                                   {"forest", detail::forest_to_json(model.forest())}});
}

HeadlineModel load_headline_model(const std::filesystem::path& path) {
  const auto j = detail::read_model(path, "newsgauge.headline");
  return guarded(path, [&] {
    return HeadlineModel(j.at("vocabulary").get<std::vector<std::string>>(), detail::forest_from_json(j.at("forest")),
                         j.at("prior").get<double>());
  });
}

}  // namespace textkit

namespace learn {

void save_forest(const Forest& forest, const std::filesystem::path& path) {
  detail::write_model(path, "newsgauge.forest", detail::json{{"forest", detail::forest_to_json(forest)}});
}

Forest load_forest(const std::filesystem::path& path) {
  const auto j = detail::read_model(path, "newsgauge.forest");
  return guarded(path, [&] { return detail::forest_from_json(j.at("forest")); });
}

}  // namespace learn

}  // namespace newsgauge
