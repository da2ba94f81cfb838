#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "langvol/error.hpp"
#include "langvol/harness.hpp"
#include "support.hpp"

using namespace langvol;
namespace fs = std::filesystem;

namespace {

std::string letters(std::size_t i) {
  std::string w;
  do {
    w.push_back(static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i > 0);
  return w;
}

// i.i.d. tokens from a Zipf distribution over `vocab` words that all start
// with `prefix`, so different prefixes never share a token.
std::string zipf_text(const std::string& prefix, std::size_t tokens, std::uint64_t seed, std::size_t vocab = 400) {
  std::vector<double> weights;
  for (std::size_t i = 0; i < vocab; ++i) weights.push_back(1.0 / static_cast<double>(i + 1));
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
  std::mt19937_64 rng(seed);
  std::string out;
  for (std::size_t i = 0; i < tokens; ++i) {
    out += prefix + letters(draw(rng));
    out += (i % 12 == 11) ? ".\n" : " ";
  }
  return out;
}

struct Toy {
  test::TempDir dir;
  TestbedSpec spec;

  Toy() {
    for (const char* lang : {"qa", "qb", "qc"}) {
      const std::string prefix = std::string(lang) + "x";
      test::spit(dir / (std::string(lang) + "/train.txt"), zipf_text(prefix, 20000, 1));
      test::spit(dir / (std::string(lang) + "/test.txt"), zipf_text(prefix, 8000, 2));
      spec.languages.push_back({lang, {{dir / (std::string(lang) + "/train.txt")}}, {{dir / (std::string(lang) + "/test.txt")}}});
    }
  }
};

void expect_consistent(const ExperimentReport& report) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& row : report.rows) {
    if (!row.ok()) continue;
    EXPECT_NEAR(row.signed_error_percent, signed_error_percent(row.estimate, row.true_word_count), 1e-12);
    if (row.true_word_count > 0) {
      EXPECT_NEAR(row.signed_error_percent,
                  (row.estimate - static_cast<double>(row.true_word_count)) / static_cast<double>(row.true_word_count) * 100.0,
                  1e-9);
    }
    sum += std::abs(row.signed_error_percent);
    ++n;
  }
  EXPECT_NEAR(report.mean_abs_error_percent, n ? sum / static_cast<double>(n) : 0.0, 1e-12);
}

}  // namespace

TEST(Harness, SelfEstimationIsExact) {
  Toy toy;
  for (auto& lang : toy.spec.languages) {
    fs::copy_file(lang.train[0].path, toy.dir / (lang.language + "/copy.txt"));
    lang.test = {{toy.dir / (lang.language + "/copy.txt")}};
  }
  const auto report = experiment_monolingual(toy.spec);
  expect_consistent(report);
  for (const auto& row : report.rows) {
    ASSERT_TRUE(row.ok()) << row.error;
    EXPECT_NEAR(row.signed_error_percent, 0.0, 1e-9);
  }
}

TEST(Harness, MissingTestFileIsPerLanguageError) {
  Toy toy;
  toy.spec.languages[1].test = {{toy.dir / "nope.txt"}};
  const auto report = experiment_monolingual(toy.spec);
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_TRUE(report.rows[0].ok());
  EXPECT_FALSE(report.rows[1].ok());
  EXPECT_TRUE(report.rows[2].ok());
  expect_consistent(report);
}

TEST(Harness, MixedWithEmptyFile) {
  Toy toy;
  test::spit(toy.dir / "qb/empty.txt", "");
  toy.spec.languages[1].test = {{toy.dir / "qb/empty.txt"}};
  Evaluation eval(toy.spec);
  const auto mono = eval.monolingual();
  const auto mixed = eval.mixed();
  EXPECT_EQ(mixed.row("qb")->estimate, 0.0);
  EXPECT_EQ(mixed.row("qb")->true_word_count, 0u);
  EXPECT_EQ(mixed.row("qa")->estimate, mono.row("qa")->estimate);
}

TEST(Harness, MixedEqualsEstimateOverConcatenation) {
  Toy toy;
  Evaluation eval(toy.spec);
  const auto mixed = eval.mixed();
  std::string all;
  for (const auto& l : toy.spec.languages) all += test::slurp(l.test[0].path) + "\n";
  const auto table = count_text(all);
  for (const auto& [lang, profile] : eval.profiles().profiles()) {
    TermCounts counts;
    for (const auto& p : profile.predictors()) counts[p.word] = table.count(p.word);
    EXPECT_DOUBLE_EQ(mixed.row(lang)->estimate, estimate(profile, counts).estimate);
  }
}

TEST(Harness, SingleLanguageMixedIsMonolingual) {
  Toy toy;
  toy.spec.languages.resize(1);
  Evaluation eval(toy.spec);
  EXPECT_EQ(eval.mixed().rows, eval.monolingual().rows);
}

TEST(Harness, DisjointNoiseChangesNothing) {
  Toy toy;
  test::spit(toy.dir / "noise.txt", "Москва и Петербург это города. Ελληνικά κείμενα εδώ.\n");
  toy.spec.noise = {{toy.dir / "noise.txt"}};
  const auto noise = experiment_noise(toy.spec);
  expect_consistent(noise);
  for (const auto& row : noise.rows) {
    ASSERT_TRUE(row.delta_percent.has_value());
    EXPECT_NEAR(*row.delta_percent, 0.0, 0.1);
  }
}

TEST(Harness, EmbeddedTargetPhrasesRaiseEstimate) {
  Toy toy;
  test::spit(toy.dir / "noise.txt", "Москва " + zipf_text("qax", 3000, 9));
  toy.spec.noise = {{toy.dir / "noise.txt"}};
  const auto noise = experiment_noise(toy.spec);
  EXPECT_GT(*noise.row("qa")->delta_percent, 0.0);
  EXPECT_NEAR(*noise.row("qb")->delta_percent, 0.0, 1e-12);
}

TEST(Harness, SizeSweepRowsAndFlags) {
  Toy toy;
  test::spit(toy.dir / "material.txt", zipf_text("qax", 30000, 5));
  toy.spec.sweep = SweepSpec{"qa", {0, 16, 32, 64, 100000}, {{toy.dir / "material.txt"}}, {}};
  const auto sweep = experiment_size_sweep(toy.spec);
  ASSERT_EQ(sweep.size(), 5u);
  EXPECT_EQ(sweep[0].rows[0].true_word_count, 0u);
  EXPECT_TRUE(sweep[0].rows[0].note.empty());
  EXPECT_FALSE(sweep[4].rows[0].note.empty());
  for (const auto& r : sweep) expect_consistent(r);
  for (std::size_t i = 1; i + 2 < sweep.size(); ++i) {
    // Doubling the material roughly doubles the estimate.
    const double ratio = sweep[i + 1].rows[0].estimate / sweep[i].rows[0].estimate;
    EXPECT_GT(ratio, 2.0 * 0.75);
    EXPECT_LT(ratio, 2.0 * 1.25);
  }
  EXPECT_FALSE(format_sweep_text(sweep).empty());
}

TEST(Harness, SweepWithoutSectionIsDataError) {
  Toy toy;
  EXPECT_THROW(experiment_size_sweep(toy.spec), DataError);
}

TEST(Harness, DomainIdenticalCorporaGiveIdenticalRows) {
  Toy toy;
  const CorpusFile train{toy.dir / "qa/train.txt"};
  const CorpusFile test_file{toy.dir / "qa/test.txt"};
  toy.spec.domain = DomainSpec{"qa", {"x", {train}, {test_file}}, {"y", {train}, {test_file}}};
  const auto d = experiment_domain(toy.spec);
  ASSERT_TRUE(d.error.empty()) << d.error;
  EXPECT_EQ(d.errors[0][0], d.errors[1][0]);
  EXPECT_EQ(d.errors[0][1], d.errors[1][1]);
  EXPECT_EQ(d.errors[0][0], d.errors[0][1]);
  EXPECT_NEAR(d.errors[0][0], signed_error_percent(d.estimates[0][0], d.truth[0]), 1e-12);
  EXPECT_FALSE(format_domain_text(d).empty());
}

TEST(Harness, DomainMissingSectionReported) {
  Toy toy;
  EXPECT_FALSE(experiment_domain(toy.spec).error.empty());
}

TEST(Harness, Deterministic) {
  Toy toy;
  toy.spec.noise = {{toy.dir / "qc/test.txt"}};
  Evaluation a(toy.spec);
  Evaluation b(toy.spec);
  EXPECT_EQ(format_experiment_json(a.monolingual()), format_experiment_json(b.monolingual()));
  EXPECT_EQ(format_experiment_text(a.noise()), format_experiment_text(b.noise()));
}

TEST(Harness, ErrorVanishesOnProfileMatchedSamples) {
  // Training text holds every word exactly in proportion to its weight;
  // test text is sampled i.i.d. from the same distribution.
  test::TempDir dir;
  std::string train;
  for (std::size_t i = 0; i < 200; ++i) {
    for (std::size_t k = 0; k < 2000 / (i + 1); ++k) train += "zz" + letters(i) + " ";
  }
  test::spit(dir / "train.txt", train);
  const auto table = count_text(train);
  std::vector<double> weights;
  std::vector<std::string> words;
  for (const auto& [w, c] : table.sorted_entries()) {
    words.push_back(w);
    weights.push_back(static_cast<double>(c));
  }
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
  auto mean_abs_error = [&](std::size_t tokens) {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      std::mt19937_64 rng(seed);
      std::string text;
      for (std::size_t i = 0; i < tokens; ++i) text += words[draw(rng)] + " ";
      const auto name = "test" + std::to_string(tokens) + "_" + std::to_string(seed) + ".txt";
      test::spit(dir / name, text);
      TestbedSpec spec;
      spec.languages.push_back({"zz", {{dir / "train.txt"}}, {{dir / name}}});
      sum += std::abs(experiment_monolingual(spec).rows[0].signed_error_percent);
    }
    return sum / 5.0;
  };
  const double small = mean_abs_error(2000);
  const double large = mean_abs_error(400000);
  EXPECT_LT(large, small);
  EXPECT_LT(large, 1.0);
}

TEST(Harness, FormatsCarryRows) {
  Toy toy;
  const auto report = experiment_monolingual(toy.spec);
  const std::string text = format_experiment_text(report);
  const std::string json = format_experiment_json(report);
  for (const auto& row : report.rows) {
    EXPECT_NE(text.find(row.language), std::string::npos);
    EXPECT_NE(json.find(std::to_string(row.true_word_count)), std::string::npos);
  }
  EXPECT_NE(format_experiment_grid({report}).find("average"), std::string::npos);
}
