#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "newsgauge/error.hpp"
#include "newsgauge/textkit.hpp"
#include "strings.hpp"

namespace newsgauge::textkit {

void EmbeddingTable::insert(std::string word, Vector vector) {
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_ || dimension_ == 0) {
    throw DataError("embedding for '" + word + "' has dimension " + std::to_string(vector.size()) + ", expected " +
                    std::to_string(dimension_));
  }
  word = detail::to_lower(word);
  auto [it, inserted] = vectors_.insert_or_assign(word, std::move(vector));
  if (inserted) words_.push_back(it->first);
}

const Vector* EmbeddingTable::find(std::string_view word) const {
  const auto it = vectors_.find(detail::to_lower(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read embeddings: " + path.string());
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    Vector v;
    double x;
    while (fields >> x) v.push_back(x);
    if (!fields.eof()) throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-numeric component");
    try {
      table.insert(std::move(word), std::move(v));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

Vector doc_vector(std::span<const Token> tokens, const EmbeddingTable& table) {
  Vector sum(table.dimension(), 0.0);
  std::size_t hits = 0;
  for (const auto& tok : tokens) {
    const Vector* v = table.find(tok.lower);
    if (v == nullptr) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    ++hits;
  }
  if (hits > 0) {
    for (double& x : sum) x /= static_cast<double>(hits);
  }
  return sum;
}

Vector doc_vector(const TokenizedText& text, const EmbeddingTable& table) { return doc_vector(text.tokens, table); }

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("cosine: dimension mismatch");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  // sqrt(x * x) == x exactly, so a vector's cosine with itself is exactly 1.
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

}  // namespace newsgauge::textkit
