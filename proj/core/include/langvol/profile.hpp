#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "langvol/tokenizer.hpp"

namespace langvol {

struct Predictor {
  std::string word;
  double relative_frequency = 0.0;

  friend bool operator==(const Predictor&, const Predictor&) = default;
};

// Ordering used by every predictor list: non-increasing relative frequency,
// ties broken by ascending word.
bool predictor_order(const Predictor& a, const Predictor& b);

inline constexpr std::size_t kDefaultPoolSize = 100;
inline constexpr std::size_t kDefaultRetainedSize = 20;
// Below this many predictors a trim of 2 cannot leave a retained core.
inline constexpr std::size_t kMinUsefulPredictors = 5;

struct CandidateList {
  std::vector<Predictor> predictors;
  std::uint64_t training_total_tokens = 0;
  // Fewer distinct tokens than the requested pool size.
  bool shortfall = false;
};

// The `pool_size` most frequent tokens of `table` with count / total_tokens
// as relative frequency. Throws DataError("empty training corpus") when the
// table has no tokens and UsageError when pool_size is 0.
CandidateList train_candidates(const FrequencyTable& table, std::size_t pool_size = kDefaultPoolSize);

using CandidateMap = std::map<std::string, std::vector<Predictor>>;

// Removes every word that occurs in two or more of the lists from all of
// them. Survivors keep their order and frequencies.
CandidateMap deduplicate(const CandidateMap& lists);

struct TrainingMetadata {
  std::uint64_t total_tokens = 0;
  std::size_t candidate_pool_size = kDefaultPoolSize;
  bool casefold = true;
};

class LanguageProfile {
 public:
  static constexpr int kFormatVersion = 1;

  // Validates every invariant and throws InvariantError naming the first
  // violation.
  LanguageProfile(std::string language, std::vector<Predictor> predictors,
                  std::uint64_t training_total_tokens,
                  std::size_t candidate_pool_size = kDefaultPoolSize,
                  std::size_t retained_size = kDefaultRetainedSize, bool casefold = true,
                  int format_version = kFormatVersion);

  const std::string& language() const noexcept { return language_; }
  const std::vector<Predictor>& predictors() const noexcept { return predictors_; }
  std::uint64_t training_total_tokens() const noexcept { return training_total_tokens_; }
  std::size_t candidate_pool_size() const noexcept { return candidate_pool_size_; }
  std::size_t retained_size() const noexcept { return retained_size_; }
  bool casefold() const noexcept { return casefold_; }
  int format_version() const noexcept { return format_version_; }

  // Derived diagnostics, e.g. the too-few-predictors warning.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  friend bool operator==(const LanguageProfile& a, const LanguageProfile& b) {
    return a.language_ == b.language_ && a.predictors_ == b.predictors_ &&
           a.training_total_tokens_ == b.training_total_tokens_ &&
           a.candidate_pool_size_ == b.candidate_pool_size_ &&
           a.retained_size_ == b.retained_size_ && a.casefold_ == b.casefold_ &&
           a.format_version_ == b.format_version_;
  }

 private:
  std::string language_;
  std::vector<Predictor> predictors_;
  std::uint64_t training_total_tokens_;
  std::size_t candidate_pool_size_;
  std::size_t retained_size_;
  bool casefold_;
  int format_version_;
  std::vector<std::string> warnings_;
};

// Truncates a deduplicated, sorted list to `retained_size` and attaches the
// training metadata. Throws DataError when no predictor survived.
LanguageProfile finalize_profile(std::string language, const std::vector<Predictor>& deduped,
                                 std::size_t retained_size, const TrainingMetadata& metadata);

class ProfileSet {
 public:
  ProfileSet() = default;
  // Throws InvariantError if dedup_applied and two profiles share a word.
  ProfileSet(std::map<std::string, LanguageProfile> profiles, bool dedup_applied);

  const std::map<std::string, LanguageProfile>& profiles() const noexcept { return profiles_; }
  bool dedup_applied() const noexcept { return dedup_applied_; }
  bool empty() const noexcept { return profiles_.empty(); }
  const LanguageProfile& at(const std::string& language) const;

  // Sorted union of all predictor words.
  std::vector<std::string> all_words() const;

  friend bool operator==(const ProfileSet&, const ProfileSet&) = default;

 private:
  std::map<std::string, LanguageProfile> profiles_;
  bool dedup_applied_ = false;
};

struct TrainingOptions {
  std::size_t pool_size = kDefaultPoolSize;
  std::size_t retained_size = kDefaultRetainedSize;
};

struct TrainedSet {
  ProfileSet set;
  // Human readable notes: pool shortfalls and short profiles.
  std::vector<std::string> warnings;
};

// Full training pipeline over one table per language: candidate pools
// (computed concurrently), joint deduplication, then per-language
// finalization.
TrainedSet train_profile_set(const std::map<std::string, FrequencyTable>& tables,
                             const TrainingOptions& options = {});

// Line oriented profile format:
//   version 1 / language <tag> / total_tokens <n> / casefold <true|false> /
//   pool <n> / retain <n>, then one "word<TAB>relative_frequency" per line.
std::string format_profile(const LanguageProfile& profile);
// Throws ParseError (with 1-based line), FormatVersionError or InvariantError.
LanguageProfile parse_profile(std::string_view text);

void save_profile(const std::filesystem::path& path, const LanguageProfile& profile);
LanguageProfile load_profile(const std::filesystem::path& path);

inline constexpr std::string_view kProfileSetManifest = "profileset.manifest";

// A profile directory holds <language>.profile files plus a manifest that
// records the language list and dedup_applied.
void save_profile_set(const std::filesystem::path& dir, const ProfileSet& set);
ProfileSet load_profile_set(const std::filesystem::path& dir);

}  // namespace langvol
