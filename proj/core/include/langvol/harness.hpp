#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "langvol/estimator.hpp"
#include "langvol/profile.hpp"
#include "langvol/testbed.hpp"
#include "langvol/tokenizer.hpp"

namespace langvol {

// (estimate - truth) / truth * 100. NaN when truth is 0 and the estimate is
// not.
double signed_error_percent(double estimate, std::uint64_t truth);

struct ExperimentRow {
  std::string language;
  std::uint64_t true_word_count = 0;
  double estimate = 0.0;
  double signed_error_percent = 0.0;
  // Set for rows that could not be evaluated; the numbers are meaningless.
  std::string error;
  // Non-fatal remark (e.g. a sweep size larger than the material).
  std::string note;
  // Noise experiment only: estimate change against the mixed run, percent.
  std::optional<double> delta_percent;

  bool ok() const noexcept { return error.empty(); }

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct ExperimentReport {
  std::string id;
  std::string title;
  std::vector<ExperimentRow> rows;
  // Mean of |signed error| over the rows that evaluated.
  double mean_abs_error_percent = 0.0;

  const ExperimentRow* row(const std::string& language) const;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

// Recomputes the aggregate from the rows.
void finalize_report(ExperimentReport& report);

struct DomainReport {
  std::string language;
  std::string label_a;
  std::string label_b;
  // errors[p][t]: predictors trained on corpus p (0 = a, 1 = b) estimating
  // test corpus t.
  double errors[2][2] = {{0, 0}, {0, 0}};
  double estimates[2][2] = {{0, 0}, {0, 0}};
  std::uint64_t truth[2] = {0, 0};
  std::string error;

  // Mean |error| across both test genres for predictors p.
  double mean_abs_error(int p) const;
};

// Runs the evaluation protocol over one testbed. Profiles and per-file
// counts are computed once and shared between experiments; independent
// per-language work runs concurrently and reports are merged in language
// order, so identical inputs give identical reports.
class Evaluation {
 public:
  explicit Evaluation(TestbedSpec spec);

  const TestbedSpec& spec() const noexcept { return spec_; }

  // Profiles trained jointly (with deduplication) from every language's
  // training files. Languages whose training failed are absent and listed
  // in training_errors().
  const ProfileSet& profiles();
  const std::map<std::string, std::string>& training_errors();
  const std::vector<std::string>& training_warnings();

  ExperimentReport monolingual();
  ExperimentReport mixed();
  // Mixed plus the noise files; rows carry delta_percent against mixed().
  ExperimentReport noise();
  // One report per sweep size, each with a single row for the sweep
  // language.
  std::vector<ExperimentReport> size_sweep();
  DomainReport domain();

  // Tokens of one corpus file, counted once. Throws DataError.
  const FrequencyTable& table_for(const CorpusFile& file);

 private:
  ExperimentReport mixture_experiment(const std::string& id, const std::string& title, bool with_noise);
  TermCounts counts_for(const ProfileSet& set, const FrequencyTable& table) const;
  void train();

  TestbedSpec spec_;
  std::mutex cache_mutex_;
  std::map<std::filesystem::path, std::shared_ptr<const FrequencyTable>> cache_;
  std::optional<ProfileSet> profiles_;
  std::map<std::string, std::string> training_errors_;
  std::vector<std::string> training_warnings_;
};

ExperimentReport experiment_monolingual(const TestbedSpec& spec);
ExperimentReport experiment_mixed(const TestbedSpec& spec);
ExperimentReport experiment_noise(const TestbedSpec& spec);
std::vector<ExperimentReport> experiment_size_sweep(const TestbedSpec& spec);
DomainReport experiment_domain(const TestbedSpec& spec);

// Aligned plain-text tables.
std::string format_experiment_text(const ExperimentReport& report);
// Several experiments side by side, one column each (like a multi-run
// error table).
std::string format_experiment_grid(const std::vector<ExperimentReport>& reports);
std::string format_sweep_text(const std::vector<ExperimentReport>& sweep);
std::string format_domain_text(const DomainReport& report);

// Structured forms for regression diffing.
std::string format_experiment_json(const ExperimentReport& report);
std::string format_sweep_json(const std::vector<ExperimentReport>& sweep);
std::string format_domain_json(const DomainReport& report);

}  // namespace langvol
