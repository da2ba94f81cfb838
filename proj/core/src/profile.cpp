#include "langvol/profile.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <sstream>
#include <unordered_map>

#include "langvol/error.hpp"

namespace langvol {
namespace {

bool valid_language_tag(std::string_view tag) {
  if (tag.empty()) return false;
  return std::all_of(tag.begin(), tag.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

std::string describe(const Predictor& p) {
  std::ostringstream os;
  os << "(" << p.word << ", " << p.relative_frequency << ")";
  return os.str();
}

}  // namespace

bool predictor_order(const Predictor& a, const Predictor& b) {
  if (a.relative_frequency != b.relative_frequency) return a.relative_frequency > b.relative_frequency;
  return a.word < b.word;
}

CandidateList train_candidates(const FrequencyTable& table, std::size_t pool_size) {
  if (pool_size == 0) throw UsageError("candidate pool size must be at least 1");
  if (table.total_tokens() == 0) throw DataError("empty training corpus");

  std::vector<std::pair<std::string_view, std::uint64_t>> entries;
  entries.reserve(table.distinct());
  for (const auto& [term, count] : table.counts()) entries.emplace_back(term, count);

  // Rank on exact integer counts so equal counts always tie.
  auto by_rank = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  const std::size_t keep = std::min(pool_size, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(keep),
                    entries.end(), by_rank);

  CandidateList out;
  out.training_total_tokens = table.total_tokens();
  out.shortfall = entries.size() < pool_size;
  out.predictors.reserve(keep);
  const double total = static_cast<double>(table.total_tokens());
  for (std::size_t i = 0; i < keep; ++i) {
    out.predictors.push_back({std::string(entries[i].first),
                              static_cast<double>(entries[i].second) / total});
  }
  return out;
}

CandidateMap deduplicate(const CandidateMap& lists) {
  std::unordered_map<std::string_view, int> occurrences;
  for (const auto& [language, list] : lists) {
    for (const auto& p : list) ++occurrences[p.word];
  }
  CandidateMap out;
  for (const auto& [language, list] : lists) {
    auto& survivors = out[language];
    for (const auto& p : list) {
      if (occurrences[p.word] == 1) survivors.push_back(p);
    }
  }
  return out;
}

LanguageProfile::LanguageProfile(std::string language, std::vector<Predictor> predictors,
                                 std::uint64_t training_total_tokens,
                                 std::size_t candidate_pool_size, std::size_t retained_size,
                                 bool casefold, int format_version)
    : language_(std::move(language)),
      predictors_(std::move(predictors)),
      training_total_tokens_(training_total_tokens),
      candidate_pool_size_(candidate_pool_size),
      retained_size_(retained_size),
      casefold_(casefold),
      format_version_(format_version) {
  if (!valid_language_tag(language_)) throw InvariantError("invalid language tag '" + language_ + "'");
  if (format_version_ != kFormatVersion) {
    throw FormatVersionError("unsupported profile format version " + std::to_string(format_version_));
  }
  if (predictors_.empty()) throw InvariantError(language_ + ": profile has no predictors");
  if (training_total_tokens_ == 0) throw InvariantError(language_ + ": training_total_tokens must be positive");
  if (candidate_pool_size_ == 0 || retained_size_ == 0) {
    throw InvariantError(language_ + ": pool and retained sizes must be positive");
  }

  std::set<std::string_view> seen;
  double sum = 0.0;
  const double total = static_cast<double>(training_total_tokens_);
  for (std::size_t i = 0; i < predictors_.size(); ++i) {
    const auto& p = predictors_[i];
    if (!is_token(p.word)) throw InvariantError(language_ + ": '" + p.word + "' is not a valid token");
    if (!(p.relative_frequency > 0.0 && p.relative_frequency <= 1.0)) {
      throw InvariantError(language_ + ": relative frequency of '" + p.word + "' outside (0, 1]");
    }
    if (!seen.insert(p.word).second) throw InvariantError(language_ + ": duplicate predictor '" + p.word + "'");
    if (i > 0 && !predictor_order(predictors_[i - 1], p)) {
      throw InvariantError(language_ + ": predictors out of order at " + describe(predictors_[i - 1]) +
                           " before " + describe(p));
    }
    // relative_frequency must be some integer count over the training total.
    const double implied = p.relative_frequency * total;
    if (std::abs(implied - std::round(implied)) > 1e-6 * std::max(1.0, implied)) {
      throw InvariantError(language_ + ": relative frequency of '" + p.word +
                           "' is not a count over training_total_tokens");
    }
    sum += p.relative_frequency;
  }
  if (!(sum < 1.0)) throw InvariantError(language_ + ": relative frequencies sum to 1 or more");

  if (predictors_.size() < kMinUsefulPredictors) {
    warnings_.push_back(language_ + ": too few predictors (" + std::to_string(predictors_.size()) +
                        "); estimation needs at least " + std::to_string(kMinUsefulPredictors) +
                        " to trim 2 from each end");
  } else if (predictors_.size() < retained_size_) {
    warnings_.push_back(language_ + ": only " + std::to_string(predictors_.size()) + " predictors, fewer than " +
                        std::to_string(retained_size_) + " requested");
  }
}

LanguageProfile finalize_profile(std::string language, const std::vector<Predictor>& deduped,
                                 std::size_t retained_size, const TrainingMetadata& metadata) {
  if (deduped.empty()) throw DataError(language + ": no predictors survived deduplication");
  if (retained_size == 0) throw UsageError("retained size must be at least 1");
  std::vector<Predictor> kept(deduped.begin(),
                              deduped.begin() + static_cast<std::ptrdiff_t>(std::min(retained_size, deduped.size())));
  return LanguageProfile(std::move(language), std::move(kept), metadata.total_tokens,
                         metadata.candidate_pool_size, retained_size, metadata.casefold);
}

ProfileSet::ProfileSet(std::map<std::string, LanguageProfile> profiles, bool dedup_applied)
    : profiles_(std::move(profiles)), dedup_applied_(dedup_applied) {
  for (const auto& [language, profile] : profiles_) {
    if (language != profile.language()) {
      throw InvariantError("profile keyed as '" + language + "' is for '" + profile.language() + "'");
    }
  }
  if (!dedup_applied_) return;
  std::unordered_map<std::string_view, std::string_view> owner;
  for (const auto& [language, profile] : profiles_) {
    for (const auto& p : profile.predictors()) {
      auto [it, inserted] = owner.emplace(p.word, language);
      if (!inserted) {
        throw InvariantError("predictor '" + p.word + "' appears in both " + std::string(it->second) +
                             " and " + language);
      }
    }
  }
}

const LanguageProfile& ProfileSet::at(const std::string& language) const {
  auto it = profiles_.find(language);
  if (it == profiles_.end()) throw DataError("no profile for language '" + language + "'");
  return it->second;
}

std::vector<std::string> ProfileSet::all_words() const {
  std::set<std::string> words;
  for (const auto& [language, profile] : profiles_) {
    for (const auto& p : profile.predictors()) words.insert(p.word);
  }
  return {words.begin(), words.end()};
}

TrainedSet train_profile_set(const std::map<std::string, FrequencyTable>& tables,
                             const TrainingOptions& options) {
  std::map<std::string, std::future<CandidateList>> pending;
  for (const auto& [language, table] : tables) {
    pending.emplace(language, std::async(std::launch::async, [&table, &options] {
                      return train_candidates(table, options.pool_size);
                    }));
  }

  TrainedSet out;
  CandidateMap pools;
  std::map<std::string, std::uint64_t> totals;
  for (auto& [language, future] : pending) {
    CandidateList candidates = future.get();
    if (candidates.shortfall) {
      out.warnings.push_back(language + ": only " + std::to_string(candidates.predictors.size()) +
                             " distinct tokens, fewer than the pool size " +
                             std::to_string(options.pool_size));
    }
    totals[language] = candidates.training_total_tokens;
    pools[language] = std::move(candidates.predictors);
  }

  const CandidateMap survivors = deduplicate(pools);
  std::map<std::string, LanguageProfile> profiles;
  for (const auto& [language, list] : survivors) {
    TrainingMetadata meta{totals[language], options.pool_size, true};
    LanguageProfile profile = finalize_profile(language, list, options.retained_size, meta);
    for (const auto& w : profile.warnings()) out.warnings.push_back(w);
    profiles.emplace(language, std::move(profile));
  }
  out.set = ProfileSet(std::move(profiles), true);
  return out;
}

}  // namespace langvol
