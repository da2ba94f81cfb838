#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <random>

#include "langvol/error.hpp"
#include "langvol/estimator.hpp"
#include "langvol/providers.hpp"
#include "support.hpp"

using namespace langvol;
using boost::multiprecision::cpp_rational;

namespace {

std::string word_for(std::size_t i) {
  std::string w;
  do {
    w.push_back(static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i > 0);
  return w;
}

struct Instance {
  LanguageProfile profile;
  TermCounts counts;
};

// Random profile whose frequencies are integer counts over `total`.
Instance random_instance(std::mt19937_64& rng) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
  const std::uint64_t total = std::uniform_int_distribution<std::uint64_t>(1000, 100000000)(rng);
  std::vector<Predictor> predictors;
  std::uint64_t budget = total - 1;
  for (std::size_t i = 0; i < n && budget > 0; ++i) {
    const std::uint64_t c = std::uniform_int_distribution<std::uint64_t>(1, std::max<std::uint64_t>(1, budget / n))(rng);
    budget -= std::min(budget, c);
    predictors.push_back({word_for(i), static_cast<double>(c) / static_cast<double>(total)});
  }
  std::sort(predictors.begin(), predictors.end(), predictor_order);
  TermCounts counts;
  std::uniform_int_distribution<std::uint64_t> observed(0, 5000000000ull);
  for (const auto& p : predictors) counts[p.word] = rng() % 10 == 0 ? 0 : observed(rng);
  return {LanguageProfile("xx", predictors, total, 100, 100), counts};
}

cpp_rational exact(double v) { return cpp_rational(v); }

// Enumerate predictions exactly, sort, slice, average.
cpp_rational oracle_estimate(const LanguageProfile& profile, const TermCounts& counts, std::size_t trim) {
  std::vector<cpp_rational> predictions;
  for (const auto& p : profile.predictors()) {
    predictions.push_back(cpp_rational(counts.at(p.word)) / exact(p.relative_frequency));
  }
  std::sort(predictions.begin(), predictions.end());
  const std::size_t n = predictions.size();
  const std::size_t k = std::min(trim, (n - 1) / 2);
  cpp_rational sum = 0;
  for (std::size_t i = k; i < n - k; ++i) sum += predictions[i];
  return sum / cpp_rational(n - 2 * k);
}

LanguageProfile golden_profile() { return load_profile(test::data_path("german_golden/de.profile")); }

TermCounts golden_counts() { return parse_legacy_wordcount(test::slurp(test::data_path("german_golden/response.txt"))); }

}  // namespace

TEST(PredictSingle, AnecdotalExample) {
  EXPECT_EQ(cpp_rational(84) * cpp_rational(100) / cpp_rational(7), cpp_rational(1200));
  const double p = predict_single(84, 0.07);
  EXPECT_NEAR(p, 1200.0, 1200.0 * 1e-12);
  EXPECT_EQ(std::llround(p), 1200);
}

TEST(PredictSingle, GermanOder) {
  EXPECT_NEAR(predict_single(13566463, 0.0056118), 2417488684.0, 1.0);
}

TEST(PredictSingle, ZeroCountPredictsZero) { EXPECT_EQ(predict_single(0, 0.01), 0.0); }

TEST(PredictSingle, NonPositiveFrequencyIsDataError) {
  EXPECT_THROW(predict_single(1, 0.0), DataError);
  EXPECT_THROW(predict_single(1, -0.5), DataError);
}

TEST(Estimate, GermanGolden) {
  const auto report = estimate(golden_profile(), golden_counts(), 2);
  EXPECT_NEAR(report.estimate, 3068760356.0, 3068760356.0 * 1e-4);
  EXPECT_EQ(report.retained.size(), 16u);
  for (const auto& obs : report.observations) {
    if (obs.word == "oder") EXPECT_NEAR(obs.prediction, 2417488684.0, 1.0);
    if (obs.word == "und") EXPECT_NEAR(obs.prediction, 3500617348.0, 1.0);
  }
}

TEST(Estimate, IdenticalPredictionsAreTrimInvariant) {
  std::vector<Predictor> predictors;
  TermCounts counts;
  for (int i = 0; i < 5; ++i) {
    predictors.push_back({word_for(i), 0.01});
    counts[word_for(i)] = 100;
  }
  const auto report = estimate(LanguageProfile("xx", predictors, 100), counts, 2);
  EXPECT_EQ(report.estimate, 10000.0);
  EXPECT_EQ(report.retained.size(), 1u);
}

TEST(Estimate, TrimShrinksForShortProfiles) {
  const LanguageProfile profile("xx", {{"a", 0.3}, {"b", 0.2}, {"c", 0.1}}, 10);
  const auto report = estimate(profile, {{"a", 3}, {"b", 2}, {"c", 5}}, 2);
  EXPECT_EQ(report.trimmed_low, 1u);
  EXPECT_EQ(report.trimmed_high, 1u);
  EXPECT_TRUE(report.trim_reduced());
  EXPECT_DOUBLE_EQ(report.estimate, 10.0);
}

TEST(Estimate, MissingCountIsDataError) {
  const LanguageProfile profile("xx", {{"a", 0.3}}, 10);
  EXPECT_THROW(estimate(profile, {}, 2), DataError);
}

TEST(Estimate, ReportInvariants) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 2000; ++round) {
    const auto inst = random_instance(rng);
    const auto r = estimate(inst.profile, inst.counts, 2);
    const std::size_t n = r.observations.size();
    ASSERT_GE(r.retained.size(), 1u);
    EXPECT_EQ(r.retained.size(), n - r.trimmed_low - r.trimmed_high);
    EXPECT_TRUE(std::is_sorted(r.retained.begin(), r.retained.end()));
    EXPECT_LE(r.retained.front(), r.estimate);
    EXPECT_LE(r.estimate, r.retained.back());
    std::size_t flagged = 0;
    for (const auto& obs : r.observations) {
      flagged += obs.retained;
      EXPECT_NEAR(obs.prediction * obs.relative_frequency, static_cast<double>(obs.observed_count),
                  1e-9 * std::max(1.0, static_cast<double>(obs.observed_count)));
    }
    EXPECT_EQ(flagged, r.retained.size());
  }
}

TEST(Estimate, AgreesWithExactRationalOracle) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 10000; ++round) {
    const auto inst = random_instance(rng);
    const std::size_t trim = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    const double got = estimate(inst.profile, inst.counts, trim).estimate;
    const double want = static_cast<double>(oracle_estimate(inst.profile, inst.counts, trim));
    ASSERT_NEAR(got, want, 1e-9 * std::abs(want)) << "round " << round;
  }
}

TEST(Estimate, ScaleEquivariance) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 1000; ++round) {
    auto inst = random_instance(rng);
    const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(2, 1000)(rng);
    TermCounts scaled;
    for (const auto& [w, c] : inst.counts) scaled[w] = c * k;
    const double base = estimate(inst.profile, inst.counts).estimate;
    EXPECT_NEAR(estimate(inst.profile, scaled).estimate, base * static_cast<double>(k),
                1e-9 * base * static_cast<double>(k));
  }
}

TEST(Estimate, PermutationInvariance) {
  // Relabelling which word carries which (frequency, count) pair does not
  // change the estimate.
  std::mt19937_64 rng(6);
  for (int round = 0; round < 1000; ++round) {
    const auto inst = random_instance(rng);
    std::vector<std::pair<double, std::uint64_t>> pairs;
    for (const auto& p : inst.profile.predictors()) pairs.push_back({p.relative_frequency, inst.counts.at(p.word)});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::vector<Predictor> predictors;
    TermCounts counts;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string w = "z" + word_for(i);
      predictors.push_back({w, pairs[i].first});
      counts[w] = pairs[i].second;
    }
    std::sort(predictors.begin(), predictors.end(), predictor_order);
    const LanguageProfile relabelled("xx", predictors, inst.profile.training_total_tokens(), 100, 100);
    EXPECT_NEAR(estimate(relabelled, counts).estimate, estimate(inst.profile, inst.counts).estimate,
                1e-12 * std::max(1.0, estimate(inst.profile, inst.counts).estimate));
  }
}

TEST(Estimate, ExactRecoveryOnProfileMatchedCorpus) {
  // A corpus of k * T tokens in which every predictor occurs exactly
  // k times its training count is estimated at k * T.
  std::mt19937_64 rng(8);
  for (int round = 0; round < 1000; ++round) {
    const auto inst = random_instance(rng);
    const std::uint64_t total = inst.profile.training_total_tokens();
    const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(1, 50)(rng);
    TermCounts counts;
    for (const auto& p : inst.profile.predictors()) {
      counts[p.word] = static_cast<std::uint64_t>(std::llround(p.relative_frequency * static_cast<double>(total))) * k;
    }
    const double want = static_cast<double>(total * k);
    EXPECT_NEAR(estimate(inst.profile, counts).estimate, want, want * 1e-9);
  }
}

TEST(Estimate, MonotoneInObservedCounts) {
  std::mt19937_64 rng(10);
  for (int round = 0; round < 1000; ++round) {
    auto inst = random_instance(rng);
    const double before = estimate(inst.profile, inst.counts).estimate;
    auto it = inst.counts.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, inst.counts.size() - 1)(rng));
    it->second += std::uniform_int_distribution<std::uint64_t>(1, 1000000)(rng);
    EXPECT_GE(estimate(inst.profile, inst.counts).estimate, before);
  }
}

TEST(EstimateAll, IndependentLanguages) {
  std::map<std::string, LanguageProfile> profiles;
  profiles.emplace("a", LanguageProfile("a", {{"x", 0.1}, {"y", 0.05}}, 100));
  profiles.emplace("b", LanguageProfile("b", {{"p", 0.1}, {"q", 0.05}}, 100));
  const ProfileSet set(profiles, true);
  const TermCounts counts = {{"x", 10}, {"y", 5}, {"p", 0}, {"q", 0}};
  const auto all = estimate_all(set, counts);
  ASSERT_TRUE(all.at("a").ok());
  ASSERT_TRUE(all.at("b").ok());
  EXPECT_EQ(all.at("b").report->estimate, 0.0);
  EXPECT_EQ(*all.at("a").report, estimate(set.at("a"), counts));
}

TEST(EstimateAll, FailingLanguageDoesNotAffectOthers) {
  std::map<std::string, LanguageProfile> profiles;
  profiles.emplace("a", LanguageProfile("a", {{"x", 0.1}}, 100));
  profiles.emplace("b", LanguageProfile("b", {{"p", 0.1}}, 100));
  const auto all = estimate_all(ProfileSet(profiles, true), {{"x", 10}});
  EXPECT_TRUE(all.at("a").ok());
  EXPECT_FALSE(all.at("b").ok());
  EXPECT_FALSE(all.at("b").error.empty());
}

TEST(EstimateFormat, TextAndStructuredCarryEqualNumbers) {
  const ProfileSet set({{"de", golden_profile()}}, true);
  const auto all = estimate_all(set, golden_counts());
  const std::string summary = format_estimate_summary(all);
  EXPECT_NE(summary.find("3,068,760,"), std::string::npos) << summary;
  const std::string doc = format_estimate_document(all, {"table:x", "2000-02", "Feb 2000"});
  EXPECT_NE(doc.find(std::to_string(all.at("de").report->estimate_rounded)), std::string::npos);
  const std::string text = format_estimate_text(*all.at("de").report);
  EXPECT_NE(text.find("oder"), std::string::npos);
}
