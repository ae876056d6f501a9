#include "talentrank/ingest/section_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "talentrank/common/binary.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/random.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::ingest {

std::optional<std::size_t> SectionClassifierModel::token_index(std::string_view token) const {
  auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), token);
  if (it == vocabulary.end() || *it != token) return std::nullopt;
  return static_cast<std::size_t>(it - vocabulary.begin());
}

SegmentFeatures segment_features(const Segment& segment, const LayoutDocument& doc) {
  SegmentFeatures f;
  std::set<std::string> seen;
  auto add = [&](std::string tok) {
    if (seen.insert(tok).second) f.tokens.push_back(std::move(tok));
  };
  if (segment.headline_block) {
    for (auto& t : text::feature_tokens(doc.blocks[*segment.headline_block].text)) add("h=" + t);
  } else {
    add("h=<none>");
  }
  std::size_t body_tokens = 0;
  double font_sum = 0.0;
  for (auto idx : segment.block_indices) {
    font_sum += doc.blocks[idx].font_size;
    if (segment.headline_block && idx == *segment.headline_block) continue;
    for (auto& t : text::feature_tokens(doc.blocks[idx].text)) {
      if (body_tokens++ >= kBodyTokenCap) break;
      add("b=" + t);
    }
  }
  auto stats = layout_stats(doc);
  double n = static_cast<double>(doc.blocks.size());
  double count = static_cast<double>(segment.block_indices.size());
  f.structural[0] = segment.block_indices.empty()
                        ? 0.0
                        : static_cast<double>(segment.block_indices.front()) / n;
  f.structural[1] = count > 0 && stats.body_font_median > 0
                        ? (font_sum / count) / stats.body_font_median
                        : 1.0;
  f.structural[2] = std::log1p(count);
  return f;
}

namespace {

struct EncodedExample {
  std::vector<std::size_t> active;  // vocabulary indices
  std::array<double, kStructuralFeatureCount> structural{};
  std::size_t label = 0;
};

void softmax_scores(const SectionClassifierModel& model, const std::vector<std::size_t>& active,
                    const std::array<double, kStructuralFeatureCount>& structural,
                    std::array<double, kSectionLabelCount>& probs) {
  const std::size_t width = model.feature_count();
  const std::size_t v = model.vocabulary.size();
  std::array<double, kSectionLabelCount> z{};
  for (std::size_t c = 0; c < kSectionLabelCount; ++c) {
    const double* row = model.weights.data() + c * width;
    double s = std::log(model.priors[c]);
    for (auto j : active) s += row[j];
    for (std::size_t k = 0; k < kStructuralFeatureCount; ++k) s += row[v + k] * structural[k];
    z[c] = s;
  }
  double mx = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (std::size_t c = 0; c < kSectionLabelCount; ++c) {
    probs[c] = std::exp(z[c] - mx);
    total += probs[c];
  }
  for (auto& p : probs) p /= total;
}

std::vector<std::size_t> active_indices(const SectionClassifierModel& model,
                                        const std::vector<std::string>& tokens) {
  std::vector<std::size_t> out;
  for (const auto& t : tokens) {
    if (auto i = model.token_index(t)) out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SectionClassifierModel train_section_classifier(std::span<const LabeledSegment> examples,
                                                std::uint64_t seed,
                                                const TrainingOptions& options) {
  std::array<std::size_t, kSectionLabelCount> class_counts{};
  for (const auto& ex : examples) ++class_counts[static_cast<std::size_t>(ex.label)];
  std::vector<std::string> missing;
  for (auto label : kAllSectionLabels) {
    if (class_counts[static_cast<std::size_t>(label)] == 0) missing.emplace_back(to_string(label));
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::kTraining,
                "training data has no examples for classes: " + text::join(missing, ", "));
  }

  std::vector<SegmentFeatures> features;
  features.reserve(examples.size());
  std::set<std::string> vocab;
  for (const auto& ex : examples) {
    if (ex.document == nullptr) throw Error(ErrorCode::kTraining, "training example without document");
    features.push_back(segment_features(ex.segment, *ex.document));
    vocab.insert(features.back().tokens.begin(), features.back().tokens.end());
  }

  SectionClassifierModel model;
  model.vocabulary.assign(vocab.begin(), vocab.end());
  model.weights.assign(kSectionLabelCount * model.feature_count(), 0.0);
  model.priors.resize(kSectionLabelCount);
  for (std::size_t c = 0; c < kSectionLabelCount; ++c) {
    model.priors[c] = static_cast<double>(class_counts[c]) / static_cast<double>(examples.size());
  }

  std::vector<EncodedExample> encoded(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    encoded[i].active = active_indices(model, features[i].tokens);
    encoded[i].structural = features[i].structural;
    encoded[i].label = static_cast<std::size_t>(examples[i].label);
  }

  Rng rng(seed);
  std::vector<std::size_t> order(encoded.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t width = model.feature_count();
  const std::size_t v = model.vocabulary.size();
  std::array<double, kSectionLabelCount> probs{};
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(order);
    double lr = options.learning_rate / (1.0 + 0.05 * static_cast<double>(epoch));
    for (auto i : order) {
      const auto& ex = encoded[i];
      softmax_scores(model, ex.active, ex.structural, probs);
      for (std::size_t c = 0; c < kSectionLabelCount; ++c) {
        double g = probs[c] - (c == ex.label ? 1.0 : 0.0);
        double* row = model.weights.data() + c * width;
        for (auto j : ex.active) row[j] -= lr * g;
        for (std::size_t k = 0; k < kStructuralFeatureCount; ++k) {
          row[v + k] -= lr * g * ex.structural[k];
        }
      }
    }
  }
  return model;
}

Classification classify_section(const SectionClassifierModel& model, const Segment& segment,
                                 const LayoutDocument& doc, const Gazetteers& gazetteers) {
  if (model.feature_version != kSectionFeatureVersion) {
    throw Error(ErrorCode::kIncompatibleModel,
                "section model feature version '" + model.feature_version +
                    "' is incompatible with '" + std::string(kSectionFeatureVersion) + "'");
  }
  Classification out;
  if (segment.headline_block) {
    if (auto label = gazetteers.section_keyword(doc.blocks[*segment.headline_block].text)) {
      out.label = *label;
      out.confidence = 1.0;
      out.probabilities[static_cast<std::size_t>(*label)] = 1.0;
      return out;
    }
  }
  auto features = segment_features(segment, doc);
  auto active = active_indices(model, features.tokens);
  bool any_hit = std::any_of(active.begin(), active.end(), [&](std::size_t j) {
    return model.vocabulary[j] != "h=<none>";
  });
  if (!any_hit) {
    for (std::size_t c = 0; c < kSectionLabelCount; ++c) out.probabilities[c] = model.priors[c];
  } else {
    softmax_scores(model, active, features.structural, out.probabilities);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < kSectionLabelCount; ++c) {
    if (out.probabilities[c] > out.probabilities[best]) best = c;
  }
  out.label = kAllSectionLabels[best];
  out.confidence = out.probabilities[best];
  return out;
}

void classify_segments(const SectionClassifierModel& model, std::vector<Segment>& segments,
                       const LayoutDocument& doc, const Gazetteers& gazetteers) {
  for (auto& s : segments) {
    auto c = classify_section(model, s, doc, gazetteers);
    s.label = c.label;
    s.confidence = c.confidence;
  }
}

std::string serialize(const SectionClassifierModel& model) {
  ByteWriter w;
  w.str(model.feature_version);
  w.u64(model.vocabulary.size());
  for (const auto& t : model.vocabulary) w.str(t);
  w.u64(model.priors.size());
  for (double p : model.priors) w.f64(p);
  w.u64(model.weights.size());
  for (double x : model.weights) w.f64(x);
  return seal(ArtifactKind::kSectionModel, w.bytes());
}

SectionClassifierModel deserialize_section_model(std::string_view file_bytes) {
  auto payload = unseal(ArtifactKind::kSectionModel, file_bytes);
  ByteReader r(payload, kPayloadOffset);
  SectionClassifierModel m;
  m.feature_version = r.str();
  auto n = r.count(8);
  m.vocabulary.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) m.vocabulary.push_back(r.str());
  auto at = r.offset();
  auto np = r.count(8);
  if (np != kSectionLabelCount) throw IntegrityError("unexpected prior count", at);
  for (std::uint64_t i = 0; i < np; ++i) m.priors.push_back(r.f64());
  at = r.offset();
  auto nw = r.count(8);
  if (nw != kSectionLabelCount * m.feature_count()) {
    throw IntegrityError("weight matrix size does not match vocabulary", at);
  }
  m.weights.reserve(nw);
  for (std::uint64_t i = 0; i < nw; ++i) m.weights.push_back(r.f64());
  r.expect_end();
  if (!std::is_sorted(m.vocabulary.begin(), m.vocabulary.end())) {
    throw IntegrityError("vocabulary not sorted", kPayloadOffset);
  }
  return m;
}

}  // namespace talentrank::ingest
