#include "langvol/harness.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "langvol/error.hpp"

namespace langvol {
namespace {

namespace fs = std::filesystem;

constexpr std::uintmax_t kMinTrainingBytes = 500 * 1024;
constexpr std::uintmax_t kMinTestBytes = 200 * 1024;

std::uintmax_t total_bytes(const std::vector<CorpusFile>& files) {
  std::uintmax_t sum = 0;
  for (const auto& f : files) {
    std::error_code ec;
    const auto size = fs::file_size(f.path, ec);
    if (!ec) sum += size;
  }
  return sum;
}

ExperimentRow evaluated_row(const std::string& language, std::uint64_t truth, const EstimateReport& report) {
  ExperimentRow row;
  row.language = language;
  row.true_word_count = truth;
  row.estimate = report.estimate;
  row.signed_error_percent = signed_error_percent(report.estimate, truth);
  return row;
}

ExperimentRow error_row(const std::string& language, std::string error) {
  ExperimentRow row;
  row.language = language;
  row.error = std::move(error);
  return row;
}

}  // namespace

double signed_error_percent(double estimate, std::uint64_t truth) {
  if (truth == 0) return estimate == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  const double t = static_cast<double>(truth);
  return (estimate - t) / t * 100.0;
}

const ExperimentRow* ExperimentReport::row(const std::string& language) const {
  for (const auto& r : rows) {
    if (r.language == language) return &r;
  }
  return nullptr;
}

void finalize_report(ExperimentReport& report) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : report.rows) {
    if (!r.ok() || std::isnan(r.signed_error_percent)) continue;
    sum += std::abs(r.signed_error_percent);
    ++n;
  }
  report.mean_abs_error_percent = n == 0 ? 0.0 : sum / static_cast<double>(n);
}

double DomainReport::mean_abs_error(int p) const {
  return (std::abs(errors[p][0]) + std::abs(errors[p][1])) / 2.0;
}

Evaluation::Evaluation(TestbedSpec spec) : spec_(std::move(spec)) { validate_testbed(spec_); }

const FrequencyTable& Evaluation::table_for(const CorpusFile& file) {
  const fs::path key = file.path.lexically_normal();
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  std::error_code ec;
  if (!fs::is_regular_file(file.path, ec)) throw DataError("missing corpus file '" + file.path.string() + "'");
  auto table = std::make_shared<const FrequencyTable>(count_text(read_text_file(file.path, file.encoding)));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return *cache_.emplace(key, std::move(table)).first->second;
}

void Evaluation::train() {
  if (profiles_) return;
  std::map<std::string, FrequencyTable> tables;
  for (const auto& lang : spec_.languages) {
    try {
      if (lang.train.empty()) throw DataError("no training files");
      std::vector<FrequencyTable> parts;
      for (const auto& f : lang.train) parts.push_back(table_for(f));
      FrequencyTable merged = merge(parts);
      if (merged.empty()) throw DataError("empty training corpus");
      tables.emplace(lang.language, std::move(merged));
      if (total_bytes(lang.train) < kMinTrainingBytes) {
        training_warnings_.push_back(lang.language + ": training text below 500 KB");
      }
      if (total_bytes(lang.test) < kMinTestBytes) {
        training_warnings_.push_back(lang.language + ": held-out test text below 200 KB");
      }
    } catch (const DataError& e) {
      training_errors_[lang.language] = e.what();
    }
  }
  if (tables.empty()) {
    profiles_ = ProfileSet();
    return;
  }
  TrainedSet trained = train_profile_set(tables, spec_.training);
  for (auto& w : trained.warnings) training_warnings_.push_back(std::move(w));
  profiles_ = std::move(trained.set);
}

const ProfileSet& Evaluation::profiles() {
  train();
  return *profiles_;
}

const std::map<std::string, std::string>& Evaluation::training_errors() {
  train();
  return training_errors_;
}

const std::vector<std::string>& Evaluation::training_warnings() {
  train();
  return training_warnings_;
}

TermCounts Evaluation::counts_for(const ProfileSet& set, const FrequencyTable& table) const {
  TermCounts counts;
  for (const auto& word : set.all_words()) counts.emplace(word, table.count(word));
  return counts;
}

ExperimentReport Evaluation::monolingual() {
  const ProfileSet& set = profiles();
  ExperimentReport report{"mono", "Only one language", {}, 0.0};

  std::vector<std::future<ExperimentRow>> rows;
  for (const auto& lang : spec_.languages) {
    rows.push_back(std::async(std::launch::async, [this, &set, &lang]() -> ExperimentRow {
      auto failed = training_errors_.find(lang.language);
      if (failed != training_errors_.end()) return error_row(lang.language, "training failed: " + failed->second);
      try {
        if (lang.test.empty()) throw DataError("no test files");
        std::vector<FrequencyTable> parts;
        for (const auto& f : lang.test) parts.push_back(table_for(f));
        const FrequencyTable test = merge(parts);
        const auto& profile = set.at(lang.language);
        TermCounts counts;
        for (const auto& p : profile.predictors()) counts.emplace(p.word, test.count(p.word));
        return evaluated_row(lang.language, test.total_tokens(), estimate(profile, counts, spec_.trim));
      } catch (const DataError& e) {
        return error_row(lang.language, e.what());
      }
    }));
  }
  for (auto& f : rows) report.rows.push_back(f.get());
  finalize_report(report);
  return report;
}

ExperimentReport Evaluation::mixture_experiment(const std::string& id, const std::string& title, bool with_noise) {
  const ProfileSet& set = profiles();
  ExperimentReport report{id, title, {}, 0.0};

  FrequencyCounter mixture;
  std::map<std::string, std::uint64_t> truth;
  std::map<std::string, std::string> errors;
  for (const auto& lang : spec_.languages) {
    try {
      if (lang.test.empty()) throw DataError("no test files");
      std::uint64_t tokens = 0;
      std::vector<const FrequencyTable*> parts;
      for (const auto& f : lang.test) parts.push_back(&table_for(f));
      for (const auto* t : parts) {
        mixture.add_table(*t);
        tokens += t->total_tokens();
      }
      truth[lang.language] = tokens;
    } catch (const DataError& e) {
      errors[lang.language] = e.what();
    }
  }
  if (with_noise) {
    for (const auto& f : spec_.noise) mixture.add_table(table_for(f));
  }
  const FrequencyTable mixed = std::move(mixture).take();
  const TermCounts counts = counts_for(set, mixed);

  for (const auto& lang : spec_.languages) {
    if (auto t = training_errors_.find(lang.language); t != training_errors_.end()) {
      report.rows.push_back(error_row(lang.language, "training failed: " + t->second));
    } else if (auto e = errors.find(lang.language); e != errors.end()) {
      report.rows.push_back(error_row(lang.language, e->second));
    } else {
      const auto r = estimate(set.at(lang.language), counts, spec_.trim);
      report.rows.push_back(evaluated_row(lang.language, truth[lang.language], r));
    }
  }
  finalize_report(report);
  return report;
}

ExperimentReport Evaluation::mixed() {
  return mixture_experiment("mixed", "All test files mixed", false);
}

ExperimentReport Evaluation::noise() {
  const ExperimentReport reference = mixed();
  ExperimentReport report = mixture_experiment("noise", "All test files mixed plus noise", true);
  for (auto& row : report.rows) {
    const ExperimentRow* base = reference.row(row.language);
    if (!row.ok() || base == nullptr || !base->ok()) continue;
    row.delta_percent = base->estimate == 0.0 ? (row.estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                              : (row.estimate - base->estimate) / base->estimate * 100.0;
  }
  return report;
}

std::vector<ExperimentReport> Evaluation::size_sweep() {
  if (!spec_.sweep) throw DataError("testbed has no sweep section");
  const SweepSpec& sweep = *spec_.sweep;
  const ProfileSet& set = profiles();
  if (auto t = training_errors_.find(sweep.language); t != training_errors_.end()) {
    throw DataError(sweep.language + ": training failed: " + t->second);
  }
  const LanguageProfile& profile = set.at(sweep.language);

  std::vector<CorpusFile> material = sweep.material;
  std::vector<CorpusFile> background = sweep.background;
  if (material.empty() || background.empty()) {
    for (const auto& lang : spec_.languages) {
      if (lang.language == sweep.language) {
        if (material.empty()) material = lang.test;
      } else if (sweep.background.empty()) {
        background.insert(background.end(), lang.test.begin(), lang.test.end());
      }
    }
    if (sweep.background.empty()) background.insert(background.end(), spec_.noise.begin(), spec_.noise.end());
  }

  std::string text;
  for (const auto& f : material) {
    if (!text.empty()) text.push_back('\n');
    text += read_text_file(f.path, f.encoding);
  }
  FrequencyCounter bg;
  for (const auto& f : background) bg.add_table(table_for(f));
  const FrequencyTable background_table = std::move(bg).take();

  std::vector<ExperimentReport> out;
  for (const std::size_t kb : sweep.sizes_kb) {
    ExperimentReport report{"sweep-" + std::to_string(kb) + "KB", "Size sweep at " + std::to_string(kb) + " KB",
                            {}, 0.0};
    const std::size_t wanted = kb * 1024;
    std::string note;
    if (wanted > text.size()) {
      note = "size exceeds available material (" + std::to_string(text.size() / 1024) + " KB)";
    }
    const std::size_t cut = token_boundary_before(text, std::min(wanted, text.size()));
    const FrequencyTable slice = count_text(std::string_view(text).substr(0, cut));
    TermCounts counts;
    for (const auto& p : profile.predictors()) counts.emplace(p.word, slice.count(p.word) + background_table.count(p.word));
    ExperimentRow row = evaluated_row(sweep.language, slice.total_tokens(), estimate(profile, counts, spec_.trim));
    row.note = std::move(note);
    report.rows.push_back(std::move(row));
    finalize_report(report);
    out.push_back(std::move(report));
  }
  return out;
}

DomainReport Evaluation::domain() {
  DomainReport report;
  if (!spec_.domain) {
    report.error = "testbed has no domain section";
    return report;
  }
  const DomainSpec& domain = *spec_.domain;
  report.language = domain.language;
  report.label_a = domain.a.label;
  report.label_b = domain.b.label;
  try {
    auto merged = [this](const std::vector<CorpusFile>& files) {
      if (files.empty()) throw DataError("domain corpus lists no files");
      std::vector<FrequencyTable> parts;
      for (const auto& f : files) parts.push_back(table_for(f));
      return merge(parts);
    };
    // Each domain profile is deduplicated against the other testbed
    // languages, exactly like the regular profiles.
    std::map<std::string, FrequencyTable> others;
    for (const auto& lang : spec_.languages) {
      if (lang.language == domain.language || lang.train.empty()) continue;
      try {
        others.emplace(lang.language, merged(lang.train));
      } catch (const DataError&) {
      }
    }
    const DomainCorpus* corpora[2] = {&domain.a, &domain.b};
    FrequencyTable tests[2] = {merged(domain.a.test), merged(domain.b.test)};
    for (int t = 0; t < 2; ++t) report.truth[t] = tests[t].total_tokens();
    for (int p = 0; p < 2; ++p) {
      auto tables = others;
      tables.insert_or_assign(domain.language, merged(corpora[p]->train));
      const TrainedSet trained = train_profile_set(tables, spec_.training);
      const LanguageProfile& profile = trained.set.at(domain.language);
      for (int t = 0; t < 2; ++t) {
        TermCounts counts;
        for (const auto& pr : profile.predictors()) counts.emplace(pr.word, tests[t].count(pr.word));
        const auto r = estimate(profile, counts, spec_.trim);
        report.estimates[p][t] = r.estimate;
        report.errors[p][t] = signed_error_percent(r.estimate, report.truth[t]);
      }
    }
  } catch (const DataError& e) {
    report.error = e.what();
  }
  return report;
}

ExperimentReport experiment_monolingual(const TestbedSpec& spec) { return Evaluation(spec).monolingual(); }
ExperimentReport experiment_mixed(const TestbedSpec& spec) { return Evaluation(spec).mixed(); }
ExperimentReport experiment_noise(const TestbedSpec& spec) { return Evaluation(spec).noise(); }
std::vector<ExperimentReport> experiment_size_sweep(const TestbedSpec& spec) { return Evaluation(spec).size_sweep(); }
DomainReport experiment_domain(const TestbedSpec& spec) { return Evaluation(spec).domain(); }

}  // namespace langvol
