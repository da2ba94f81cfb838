#include <gtest/gtest.h>

#include "langvol/error.hpp"
#include "langvol/text_decode.hpp"
#include "langvol/tokenizer.hpp"
#include "support.hpp"

using namespace langvol;

TEST(Decode, Utf8PassesThrough) {
  DecodeStats stats;
  EXPECT_EQ(decode_to_utf8("daß", "utf-8", &stats), "daß");
  EXPECT_EQ(stats.skipped_runs, 0u);
}

TEST(Decode, InvalidUtf8RunsAreSkippedAndCounted) {
  DecodeStats stats;
  const std::string out = decode_to_utf8("ab\xFF\xFE" "cd\xC3", "utf-8", &stats);
  EXPECT_EQ(stats.skipped_runs, 2u);
  EXPECT_EQ(count_text(out).total_tokens(), 2u);
}

TEST(Decode, Latin1) {
  EXPECT_EQ(decode_to_utf8("da\xDF", "ISO-8859-1"), "daß");
}

TEST(Decode, Koi8rRussian) {
  // "мир" in KOI8-R.
  EXPECT_EQ(decode_to_utf8("\xCD\xC9\xD2", "KOI8-R"), "мир");
}

TEST(Decode, UnknownEncodingIsDataError) {
  EXPECT_THROW(decode_to_utf8("x", "no-such-charset"), DataError);
}

TEST(Decode, MissingFileIsDataError) {
  EXPECT_THROW(read_text_file("/nonexistent/langvol/file.txt"), DataError);
}

TEST(Decode, ReadsFileInDeclaredEncoding) {
  test::TempDir dir;
  test::spit(dir / "l1.txt", "Stra\xDF" "e");
  EXPECT_EQ(read_text_file(dir / "l1.txt", "latin1"), "Straße");
}
