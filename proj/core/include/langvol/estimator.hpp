#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "langvol/profile.hpp"
#include "langvol/term_counts.hpp"

namespace langvol {

inline constexpr std::size_t kDefaultTrim = 2;

// observed_count / relative_frequency: how many words the source would hold
// if this predictor occurred at its training rate. Throws DataError when
// relative_frequency <= 0.
double predict_single(std::uint64_t observed_count, double relative_frequency);

struct PredictorObservation {
  std::string word;
  double relative_frequency = 0.0;
  std::uint64_t observed_count = 0;
  double prediction = 0.0;
  bool retained = false;

  friend bool operator==(const PredictorObservation&, const PredictorObservation&) = default;
};

struct EstimateReport {
  std::string language;
  // One per profile predictor, in profile order.
  std::vector<PredictorObservation> observations;
  std::size_t requested_trim = kDefaultTrim;
  std::size_t trimmed_low = 0;
  std::size_t trimmed_high = 0;
  // Retained predictions in ascending order.
  std::vector<double> retained;
  double estimate = 0.0;
  std::uint64_t estimate_rounded = 0;
  // (max - min) / median of the retained predictions; NaN when the median is
  // zero but the spread is not.
  double dispersion = 0.0;

  bool trim_reduced() const noexcept { return trimmed_low < requested_trim; }

  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

// Trimmed-mean word count estimate. Every profile word must be a key of
// `counts` (providers fill absent terms with explicit zeros); a missing key
// is a DataError. The trim shrinks to floor((n - 1) / 2) for short profiles.
EstimateReport estimate(const LanguageProfile& profile, const TermCounts& counts,
                        std::size_t trim = kDefaultTrim);

// Per-language result of estimate_all; exactly one of report / error is set.
struct LanguageEstimate {
  std::optional<EstimateReport> report;
  std::string error;

  bool ok() const noexcept { return report.has_value(); }
};

// Independent estimate per profile, computed concurrently. A failing
// language carries its error message and does not affect the others.
std::map<std::string, LanguageEstimate> estimate_all(const ProfileSet& profiles, const TermCounts& counts,
                                                     std::size_t trim = kDefaultTrim);

// One predictor per line (word, relative frequency, observed count,
// prediction, retained flag) followed by the estimate footer.
std::string format_estimate_text(const EstimateReport& report);

// Sorted ascending summary in the style of a per-language word count table.
std::string format_estimate_summary(const std::map<std::string, LanguageEstimate>& estimates);

struct EstimateDocumentInfo {
  std::string source_id;
  std::string as_of;
  std::string label;
};

// Structured (JSON) document holding every report; census_report reads it
// back through parse_estimate_document.
std::string format_estimate_document(const std::map<std::string, LanguageEstimate>& estimates,
                                     const EstimateDocumentInfo& info);

}  // namespace langvol
