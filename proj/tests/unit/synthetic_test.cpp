#include <gtest/gtest.h>

#include "langvol/error.hpp"
#include "langvol/synthetic.hpp"
#include "langvol/testbed.hpp"
#include "langvol/tokenizer.hpp"
#include "support.hpp"

using namespace langvol;

TEST(WordList, LoadsBundledLists) {
  const auto list = load_word_list(test::wordfreq_dir() / "de.tsv");
  EXPECT_EQ(list.language, "de");
  EXPECT_GE(list.words.size(), 1000u);
  EXPECT_LT(list.listed_mass(), 1.0);
  for (const auto& w : list.words) EXPECT_TRUE(is_token(w)) << w;
}

TEST(WordList, RejectsMalformedLines) {
  EXPECT_THROW(parse_word_list("a\tx\n", "xx"), ParseError);
  EXPECT_THROW(parse_word_list("# only comments\n", "xx"), DataError);
  EXPECT_THROW(parse_word_list("a\t0.7\nb\t0.7\n", "xx"), DataError);
}

TEST(Generator, TokenCountMatchesTokenizer) {
  const auto list = load_word_list(test::wordfreq_dir() / "fr.tsv");
  const auto en = load_word_list(test::wordfreq_dir() / "en.tsv");
  GeneratorOptions opts;
  opts.genre_seeds = {1, 2};
  opts.contamination = &en;
  opts.contamination_rate = 0.1;
  const CorpusGenerator gen(list, opts);
  const auto out = gen.generate(64 * 1024, 5);
  EXPECT_GE(out.text.size(), 64u * 1024);
  EXPECT_EQ(count_text(out.text).total_tokens(), out.tokens);
}

TEST(Generator, Deterministic) {
  const auto list = load_word_list(test::wordfreq_dir() / "fi.tsv");
  const CorpusGenerator gen(list, {});
  EXPECT_EQ(gen.generate(20000, 9).text, gen.generate(20000, 9).text);
  EXPECT_NE(gen.generate(20000, 9).text, gen.generate(20000, 10).text);
}

TEST(DeskTestbed, SmallLayoutLoads) {
  test::TempDir dir;
  DeskTestbedOptions opts;
  opts.languages = {"de", "fr"};
  opts.noise = {"ru"};
  opts.train_kb = 16;
  opts.test_kb = 8;
  opts.sweep_material_kb = 16;
  opts.background_kb = 8;
  opts.sweep_sizes_kb = {4, 8};
  opts.domain_language = "fr";
  const auto manifest = write_desk_testbed(test::wordfreq_dir(), dir.path(), opts);
  const auto spec = load_testbed(manifest);
  EXPECT_EQ(spec.languages.size(), 2u);
  EXPECT_EQ(spec.noise.size(), 1u);
  ASSERT_TRUE(spec.sweep.has_value());
  EXPECT_EQ(spec.sweep->background.size(), 2u);
  ASSERT_TRUE(spec.domain.has_value());
  for (const auto& l : spec.languages) {
    for (const auto& f : l.train) EXPECT_TRUE(std::filesystem::exists(f.path));
  }
}
