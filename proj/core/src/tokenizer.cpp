#include "langvol/tokenizer.hpp"

#include <algorithm>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "langvol/error.hpp"

namespace langvol {
namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || instance == nullptr) {
    throw DataError("ICU NFC normalizer unavailable");
  }
  return *instance;
}

bool is_ascii_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_letter(UChar32 c) { return u_isalpha(c) != 0; }

UChar32 fold(UChar32 c) { return u_foldCase(c, U_FOLD_CASE_DEFAULT); }

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

bool needs_normalization(std::string_view utf8) {
  // Pure ASCII is always NFC.
  if (std::all_of(utf8.begin(), utf8.end(),
                  [](char c) { return static_cast<unsigned char>(c) < 0x80; })) {
    return false;
  }
  UErrorCode status = U_ZERO_ERROR;
  const bool normalized =
      nfc().isNormalizedUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())), status);
  return U_SUCCESS(status) && !normalized;
}

std::string normalize(std::string_view utf8) {
  std::string out;
  icu::StringByteSink<std::string> sink(&out, static_cast<int32_t>(utf8.size()));
  UErrorCode status = U_ZERO_ERROR;
  nfc().normalizeUTF8(0, icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())), sink,
                      nullptr, status);
  if (U_FAILURE(status)) return std::string(utf8);
  return out;
}

template <typename Sink>
void scan_tokens(std::string_view text, Sink&& sink) {
  std::string current;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const uint8_t b = bytes[i];
    if (b < 0x80) {
      ++i;
      if (is_ascii_letter(b)) {
        current.push_back(static_cast<char>(b | 0x20));
        continue;
      }
    } else {
      UChar32 c = 0;
      U8_NEXT(bytes, i, length, c);
      if (c >= 0 && is_letter(c)) {
        append_utf8(current, fold(c));
        continue;
      }
    }
    if (!current.empty()) {
      sink(std::string_view(current));
      current.clear();
    }
  }
  if (!current.empty()) sink(std::string_view(current));
}

template <typename Sink>
void scan_normalized(std::string_view text, Sink&& sink) {
  if (needs_normalization(text)) {
    const std::string normalized = normalize(text);
    scan_tokens(normalized, sink);
  } else {
    scan_tokens(text, sink);
  }
}

}  // namespace

std::string fold_case(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      out.append(utf8.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
    } else {
      append_utf8(out, fold(c));
    }
  }
  return out;
}

bool is_token(std::string_view utf8) {
  if (utf8.empty()) return false;
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (c < 0 || !is_letter(c) || fold(c) != c) return false;
  }
  return true;
}

std::size_t token_boundary_before(std::string_view utf8, std::size_t pos) {
  if (pos >= utf8.size()) return utf8.size();
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  auto p = static_cast<int32_t>(pos);
  U8_SET_CP_START(bytes, 0, p);
  auto letter_at = [&](int32_t i) {
    UChar32 c = 0;
    U8_NEXT(bytes, i, static_cast<int32_t>(utf8.size()), c);
    return c >= 0 && is_letter(c);
  };
  while (p > 0 && letter_at(p)) {
    int32_t prev = p;
    UChar32 c = 0;
    U8_PREV(bytes, 0, prev, c);
    if (c < 0 || !is_letter(c)) break;
    p = prev;
  }
  return static_cast<std::size_t>(p);
}

std::optional<Token> Token::parse(std::string_view utf8) {
  if (!is_token(utf8)) return std::nullopt;
  return Token(std::string(utf8));
}

std::vector<Token> tokenize(std::string_view utf8) {
  std::vector<Token> out;
  scan_normalized(utf8, [&](std::string_view t) { out.push_back(Token(std::string(t))); });
  return out;
}

void for_each_token(std::string_view utf8, const std::function<void(std::string_view)>& sink) {
  scan_normalized(utf8, sink);
}

std::uint64_t FrequencyTable::count(std::string_view term) const {
  // Heterogeneous lookup on unordered_map needs C++20 transparent hashing,
  // which libstdc++ 11 does not provide yet.
  auto it = counts_.find(std::string(term));
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> FrequencyTable::sorted_entries() const {
  std::vector<std::pair<std::string, std::uint64_t>> entries(counts_.begin(), counts_.end());
  std::sort(entries.begin(), entries.end());
  return entries;
}

FrequencyTable FrequencyTable::from_counts(
    const std::vector<std::pair<std::string, std::uint64_t>>& entries) {
  FrequencyCounter counter;
  for (const auto& [term, count] : entries) {
    if (!is_token(term)) throw InvariantError("not a valid token: '" + term + "'");
    if (count > 0) counter.add(term, count);
  }
  return std::move(counter).take();
}

void FrequencyCounter::add(std::string_view token, std::uint64_t times) {
  if (times == 0) return;
  auto it = table_.counts_.find(std::string(token));
  if (it == table_.counts_.end()) {
    table_.counts_.emplace(std::string(token), times);
  } else {
    it->second += times;
  }
  table_.total_ += times;
}

void FrequencyCounter::add_text(std::string_view utf8) {
  scan_normalized(utf8, [this](std::string_view t) { add(t); });
}

void FrequencyCounter::add_table(const FrequencyTable& table) {
  for (const auto& [term, count] : table.counts()) add(term, count);
}

FrequencyTable FrequencyCounter::take() && { return std::move(table_); }

FrequencyTable count_frequencies(std::span<const Token> tokens) {
  FrequencyCounter counter;
  for (const auto& t : tokens) counter.add(t.str());
  return std::move(counter).take();
}

FrequencyTable count_text(std::string_view utf8) {
  FrequencyCounter counter;
  counter.add_text(utf8);
  return std::move(counter).take();
}

FrequencyTable merge(std::span<const FrequencyTable> tables) {
  FrequencyCounter counter;
  for (const auto& t : tables) counter.add_table(t);
  return std::move(counter).take();
}

}  // namespace langvol
