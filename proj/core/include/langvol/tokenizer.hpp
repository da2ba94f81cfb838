#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace langvol {

// A maximal run of Unicode letters, case folded. Tokens are produced by the
// tokenizer or validated through Token::parse; there is no other way to
// build one.
class Token {
 public:
  // Returns a token iff `utf8` is non-empty, consists only of letters, and
  // is already case folded.
  static std::optional<Token> parse(std::string_view utf8);

  const std::string& str() const noexcept { return text_; }
  operator std::string_view() const noexcept { return text_; }

  friend bool operator==(const Token&, const Token&) = default;
  friend auto operator<=>(const Token&, const Token&) = default;

 private:
  explicit Token(std::string text) : text_(std::move(text)) {}
  friend std::vector<Token> tokenize(std::string_view);

  std::string text_;
};

// Applies the tokenizer's case folding to a single word. Non-letters are
// kept as-is; callers use this to normalize user supplied query words.
std::string fold_case(std::string_view utf8);

// True iff `utf8` is a valid token surface (see Token::parse).
bool is_token(std::string_view utf8);

// Splits text on every non-letter code point and case folds each run.
// Input that is not NFC is normalized first so that decomposed accents stay
// inside their word. Invalid UTF-8 bytes act as separators.
std::vector<Token> tokenize(std::string_view utf8);

// Streaming form of tokenize(); the view passed to `sink` is only valid for
// the duration of the call.
void for_each_token(std::string_view utf8,
                    const std::function<void(std::string_view)>& sink);

// Largest offset <= pos that does not split a code point or a letter run.
// Cutting text there leaves every token on one side intact.
std::size_t token_boundary_before(std::string_view utf8, std::size_t pos);

// Term -> occurrence count plus the total number of tokens seen.
// sum(counts) == total_tokens always holds; the only ways to obtain a table
// are the counting functions below.
class FrequencyTable {
 public:
  using CountMap = std::unordered_map<std::string, std::uint64_t>;

  FrequencyTable() = default;

  const CountMap& counts() const noexcept { return counts_; }
  std::uint64_t total_tokens() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return total_ == 0; }

  std::uint64_t count(std::string_view term) const;

  // Entries ordered by term (byte order).
  std::vector<std::pair<std::string, std::uint64_t>> sorted_entries() const;

  // Builds a table from explicit counts. Keys must be valid tokens and
  // zero counts are dropped; throws InvariantError otherwise.
  static FrequencyTable from_counts(const std::vector<std::pair<std::string, std::uint64_t>>& entries);

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;

 private:
  friend class FrequencyCounter;

  CountMap counts_;
  std::uint64_t total_ = 0;
};

// Mutable accumulator used to build a FrequencyTable incrementally.
class FrequencyCounter {
 public:
  void add(std::string_view token, std::uint64_t times = 1);
  void add_text(std::string_view utf8);
  void add_table(const FrequencyTable& table);

  std::uint64_t total_tokens() const noexcept { return table_.total_; }

  FrequencyTable take() &&;

 private:
  FrequencyTable table_;
};

FrequencyTable count_frequencies(std::span<const Token> tokens);
FrequencyTable count_text(std::string_view utf8);
FrequencyTable merge(std::span<const FrequencyTable> tables);

}  // namespace langvol
