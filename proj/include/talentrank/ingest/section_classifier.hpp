#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "talentrank/common/gazetteer.hpp"
#include "talentrank/common/labels.hpp"
#include "talentrank/ingest/layout.hpp"
#include "talentrank/ingest/segment.hpp"

namespace talentrank::ingest {

inline constexpr std::string_view kSectionFeatureVersion = "talentrank-sections/1";
// Relative position, mean font-size ratio, log block count.
inline constexpr std::size_t kStructuralFeatureCount = 3;
inline constexpr std::size_t kBodyTokenCap = 100;

// Multinomial log-linear model over bag-of-token and structural features.
// Scores are log(prior) + weights . features; never mutated after training.
struct SectionClassifierModel {
  std::string feature_version{kSectionFeatureVersion};
  std::vector<std::string> vocabulary;  // sorted, index = position
  std::vector<double> weights;          // row-major, classes x feature_count()
  std::vector<double> priors;           // one per SectionLabel

  std::size_t feature_count() const { return vocabulary.size() + kStructuralFeatureCount; }
  std::optional<std::size_t> token_index(std::string_view token) const;

  bool operator==(const SectionClassifierModel&) const = default;
};

// Sparse feature view of one segment.
struct SegmentFeatures {
  std::vector<std::string> tokens;  // prefixed "h=" (headline) and "b=" (body)
  std::array<double, kStructuralFeatureCount> structural{};
};

SegmentFeatures segment_features(const Segment& segment, const LayoutDocument& doc);

struct LabeledSegment {
  Segment segment;
  const LayoutDocument* document = nullptr;  // non-owning
  SectionLabel label = SectionLabel::kOther;
};

struct TrainingOptions {
  std::size_t epochs = 40;
  double learning_rate = 0.2;
};

// Deterministic for fixed inputs and seed. Throws an Error coded kTraining
// naming every class without examples.
SectionClassifierModel train_section_classifier(std::span<const LabeledSegment> examples,
                                                std::uint64_t seed,
                                                const TrainingOptions& options = {});

struct Classification {
  SectionLabel label = SectionLabel::kOther;
  double confidence = 0.0;
  std::array<double, kSectionLabelCount> probabilities{};
};

// Canonical keyword headlines win with confidence 1; segments with no
// vocabulary hits fall back to the class prior.
Classification classify_section(const SectionClassifierModel& model, const Segment& segment,
                                 const LayoutDocument& doc,
                                 const Gazetteers& gazetteers = Gazetteers::builtin());

// Labels every segment in place.
void classify_segments(const SectionClassifierModel& model, std::vector<Segment>& segments,
                       const LayoutDocument& doc,
                       const Gazetteers& gazetteers = Gazetteers::builtin());

std::string serialize(const SectionClassifierModel& model);
SectionClassifierModel deserialize_section_model(std::string_view file_bytes);

}  // namespace talentrank::ingest
