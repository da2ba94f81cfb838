#include "langvol/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "langvol/error.hpp"

namespace langvol {

double predict_single(std::uint64_t observed_count, double relative_frequency) {
  if (!(relative_frequency > 0.0)) throw DataError("relative frequency must be positive");
  return static_cast<double>(observed_count) / relative_frequency;
}

EstimateReport estimate(const LanguageProfile& profile, const TermCounts& counts, std::size_t trim) {
  const auto& predictors = profile.predictors();
  if (predictors.empty()) throw DataError(profile.language() + ": empty predictor list");

  EstimateReport report;
  report.language = profile.language();
  report.requested_trim = trim;
  report.observations.reserve(predictors.size());
  for (const auto& p : predictors) {
    auto it = counts.find(p.word);
    if (it == counts.end()) {
      throw DataError(profile.language() + ": no observed count for predictor '" + p.word + "'");
    }
    report.observations.push_back({p.word, p.relative_frequency, it->second,
                                   predict_single(it->second, p.relative_frequency), false});
  }

  const std::size_t n = report.observations.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = report.observations[a];
    const auto& y = report.observations[b];
    if (x.prediction != y.prediction) return x.prediction < y.prediction;
    return x.word < y.word;
  });

  const std::size_t effective = std::min(trim, (n - 1) / 2);
  report.trimmed_low = effective;
  report.trimmed_high = effective;
  double sum = 0.0;
  for (std::size_t rank = effective; rank < n - effective; ++rank) {
    auto& obs = report.observations[order[rank]];
    obs.retained = true;
    report.retained.push_back(obs.prediction);
    sum += obs.prediction;
  }

  const auto& kept = report.retained;
  report.estimate = sum / static_cast<double>(kept.size());
  // Keep the mean inside [min, max] despite rounding in the sum.
  report.estimate = std::clamp(report.estimate, kept.front(), kept.back());
  report.estimate_rounded = static_cast<std::uint64_t>(std::llround(report.estimate));

  const std::size_t m = kept.size();
  const double median = m % 2 == 1 ? kept[m / 2] : (kept[m / 2 - 1] + kept[m / 2]) / 2.0;
  const double spread = kept.back() - kept.front();
  if (spread == 0.0) {
    report.dispersion = 0.0;
  } else if (median == 0.0) {
    report.dispersion = std::numeric_limits<double>::quiet_NaN();
  } else {
    report.dispersion = spread / median;
  }
  return report;
}

std::map<std::string, LanguageEstimate> estimate_all(const ProfileSet& profiles, const TermCounts& counts,
                                                     std::size_t trim) {
  std::map<std::string, std::future<EstimateReport>> pending;
  for (const auto& [language, profile] : profiles.profiles()) {
    pending.emplace(language, std::async(std::launch::async, [&profile, &counts, trim] {
                      return estimate(profile, counts, trim);
                    }));
  }
  std::map<std::string, LanguageEstimate> out;
  for (auto& [language, future] : pending) {
    LanguageEstimate result;
    try {
      result.report = future.get();
    } catch (const std::exception& e) {
      result.error = e.what();
    }
    out.emplace(language, std::move(result));
  }
  return out;
}

}  // namespace langvol
