#include <gtest/gtest.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <map>
#include <random>

#include "langvol/error.hpp"
#include "langvol/tokenizer.hpp"
#include "support.hpp"

using namespace langvol;

namespace {

std::vector<std::string> strs(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.str());
  return out;
}

// Independent oracle: walk UTF-16 code points through ICU's UnicodeString.
std::map<std::string, std::uint64_t> oracle_counts(const std::string& text, std::uint64_t* total) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(text);
  std::map<std::string, std::uint64_t> counts;
  icu::UnicodeString run;
  *total = 0;
  auto flush = [&] {
    if (run.isEmpty()) return;
    std::string w;
    run.toUTF8String(w);
    ++counts[w];
    ++*total;
    run.remove();
  };
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    i = u.moveIndex32(i, 1);
    if (u_isalpha(c)) {
      run.append(u_foldCase(c, U_FOLD_CASE_DEFAULT));
    } else {
      flush();
    }
  }
  flush();
  return counts;
}

}  // namespace

TEST(Tokenize, SplitsOnPunctuation) {
  EXPECT_EQ(strs(tokenize("Hello, world!")), (std::vector<std::string>{"hello", "world"}));
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, DigitsAndHyphensSeparate) {
  EXPECT_EQ(strs(tokenize("daß 123 für-daß")), (std::vector<std::string>{"daß", "für", "daß"}));
}

TEST(Tokenize, FoldsCaseWithoutExpandingSharpS) {
  EXPECT_EQ(strs(tokenize("DAS Daß ÜBER Straße")), (std::vector<std::string>{"das", "daß", "über", "straße"}));
}

TEST(Tokenize, DecomposedAccentsStayInsideWord) {
  // "für" with U+0308 combining diaeresis after the u.
  EXPECT_EQ(strs(tokenize("fu\xCC\x88r")), (std::vector<std::string>{"für"}));
}

TEST(Tokenize, NonLatinScripts) {
  EXPECT_EQ(strs(tokenize("Москва и ΑΘΗΝΑ")), (std::vector<std::string>{"москва", "и", "αθηνα"}));
}

TEST(Tokenize, ApostropheSplits) {
  EXPECT_EQ(strs(tokenize("l'homme don't")), (std::vector<std::string>{"l", "homme", "don", "t"}));
}

TEST(Tokenize, InvalidUtf8ActsAsSeparator) {
  EXPECT_EQ(strs(tokenize("ab\xFF" "cd")), (std::vector<std::string>{"ab", "cd"}));
}

TEST(Tokenize, EveryTokenSatisfiesInvariants) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    for (const auto& t : tokenize(test::random_text(rng, 60))) {
      EXPECT_FALSE(t.str().empty());
      EXPECT_TRUE(is_token(t.str()));
      EXPECT_EQ(fold_case(t.str()), t.str());
    }
  }
}

TEST(TokenParse, AcceptsOnlyFoldedLetterRuns) {
  EXPECT_TRUE(Token::parse("daß").has_value());
  EXPECT_FALSE(Token::parse("").has_value());
  EXPECT_FALSE(Token::parse("Daß").has_value());
  EXPECT_FALSE(Token::parse("a b").has_value());
  EXPECT_FALSE(Token::parse("a1").has_value());
}

TEST(CountFrequencies, DirectCount) {
  const auto t = count_frequencies(tokenize("a b a"));
  EXPECT_EQ(t.count("a"), 2u);
  EXPECT_EQ(t.count("b"), 1u);
  EXPECT_EQ(t.count("c"), 0u);
  EXPECT_EQ(t.total_tokens(), 3u);
  EXPECT_EQ(t.distinct(), 2u);
}

TEST(CountFrequencies, Empty) {
  const auto t = count_frequencies({});
  EXPECT_EQ(t.total_tokens(), 0u);
  EXPECT_EQ(t.distinct(), 0u);
}

TEST(CountFrequencies, AgreesWithIndependentOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const std::string text = test::random_text(rng, 80);
    std::uint64_t total = 0;
    const auto expected = oracle_counts(text, &total);
    const auto table = count_text(text);
    EXPECT_EQ(table.total_tokens(), total) << text;
    std::map<std::string, std::uint64_t> got(table.counts().begin(), table.counts().end());
    EXPECT_EQ(got, expected) << text;
  }
}

TEST(CountFrequencies, SumOfCountsIsTotal) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto table = count_text(test::random_text(rng, 100));
    std::uint64_t sum = 0;
    for (const auto& [w, c] : table.counts()) sum += c;
    EXPECT_EQ(sum, table.total_tokens());
  }
}

TEST(CountFrequencies, DeclarationFixture) {
  const auto table = count_text(test::slurp(test::data_path("declaration.txt")));
  // This transcription (text plus signers) holds 78 occurrences of "the".
  EXPECT_EQ(table.count("the"), 78u);
  EXPECT_EQ(table.total_tokens(), 1475u);
}

TEST(Merge, Additivity) {
  const FrequencyTable parts[] = {FrequencyTable::from_counts({{"a", 1}}),
                                  FrequencyTable::from_counts({{"a", 2}, {"b", 1}})};
  const auto merged = merge(parts);
  EXPECT_EQ(merged, FrequencyTable::from_counts({{"a", 3}, {"b", 1}}));
  EXPECT_EQ(merged.total_tokens(), 4u);
}

TEST(Merge, EmptyIsIdentity) {
  const auto t = count_text("x y z x");
  const FrequencyTable parts[] = {t, FrequencyTable()};
  EXPECT_EQ(merge(parts), t);
}

TEST(Merge, EqualsCountOfConcatenation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const std::string a = test::random_text(rng, 50);
    const std::string b = test::random_text(rng, 50);
    const FrequencyTable parts[] = {count_text(a), count_text(b)};
    EXPECT_EQ(merge(parts), count_text(a + " " + b));
  }
}

TEST(FromCounts, RejectsInvalidKeys) {
  EXPECT_THROW(FrequencyTable::from_counts({{"Ab", 1}}), InvariantError);
  EXPECT_THROW(FrequencyTable::from_counts({{"a b", 1}}), InvariantError);
  EXPECT_EQ(FrequencyTable::from_counts({{"a", 0}}).distinct(), 0u);
}

TEST(TokenBoundary, NeverSplitsTokens) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::string text = test::random_text(rng, 80);
    for (std::size_t pos = 0; pos <= text.size(); pos += 3) {
      const std::size_t cut = token_boundary_before(text, pos);
      ASSERT_LE(cut, pos);
      const FrequencyTable parts[] = {count_text(text.substr(0, cut)), count_text(text.substr(cut))};
      EXPECT_EQ(merge(parts), count_text(text)) << "cut at " << cut;
    }
  }
}

TEST(FoldCase, KeepsNonLetters) { EXPECT_EQ(fold_case("ÄB-1"), "äb-1"); }
