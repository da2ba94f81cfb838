#include <algorithm>
#include <vector>

#include "langvol/error.hpp"
#include "langvol/providers.hpp"
#include "number_format.hpp"

namespace langvol {
namespace {

constexpr std::string_view kPrefix = "word count:";

// Code point index of byte offset `pos`.
std::size_t char_offset(std::string_view text, std::size_t pos) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::size_t skip_space(std::string_view text, std::size_t pos, std::size_t end) {
  while (pos < end && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  return pos;
}

std::size_t trim_end(std::string_view text, std::size_t begin, std::size_t end) {
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' || text[end - 1] == '\r' ||
                         text[end - 1] == '\n')) {
    --end;
  }
  return end;
}

}  // namespace

TermCounts parse_legacy_wordcount(std::string_view line) {
  if (line.substr(0, kPrefix.size()) != kPrefix) {
    throw ParseError("missing 'word count:' prefix at offset 0", 0);
  }
  TermCounts out;
  std::size_t pos = skip_space(line, kPrefix.size(), line.size());
  const std::size_t end = trim_end(line, pos, line.size());
  if (pos == end) return out;

  while (true) {
    std::size_t seg_end = line.find(';', pos);
    if (seg_end == std::string_view::npos || seg_end > end) seg_end = end;
    const std::size_t seg_begin = skip_space(line, pos, seg_end);
    const std::size_t colon = line.rfind(':', seg_end == 0 ? 0 : seg_end - 1);
    if (colon == std::string_view::npos || colon < seg_begin) {
      throw ParseError("expected 'term: count' at offset " + std::to_string(char_offset(line, seg_begin)),
                       char_offset(line, seg_begin));
    }
    const std::size_t term_end = trim_end(line, seg_begin, colon);
    if (term_end == seg_begin) {
      throw ParseError("empty term at offset " + std::to_string(char_offset(line, seg_begin)),
                       char_offset(line, seg_begin));
    }
    const std::string term(line.substr(seg_begin, term_end - seg_begin));
    if (!is_token(term)) {
      throw ParseError("invalid term '" + term + "' at offset " + std::to_string(char_offset(line, seg_begin)),
                       char_offset(line, seg_begin));
    }
    const std::size_t count_begin = skip_space(line, colon + 1, seg_end);
    const std::size_t count_end = trim_end(line, count_begin, seg_end);
    auto count = detail::parse_count(line.substr(count_begin, count_end - count_begin));
    if (!count) {
      throw ParseError("non-numeric count at offset " + std::to_string(char_offset(line, count_begin)),
                       char_offset(line, count_begin));
    }
    if (!out.emplace(term, *count).second) {
      throw ParseError("duplicate term '" + term + "' at offset " + std::to_string(char_offset(line, seg_begin)),
                       char_offset(line, seg_begin));
    }
    if (seg_end >= end) break;
    pos = seg_end + 1;
  }
  return out;
}

std::string format_legacy_wordcount(const TermCounts& counts) {
  std::vector<std::pair<std::string_view, std::uint64_t>> pairs(counts.begin(), counts.end());
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  std::string out(kPrefix);
  out.push_back(' ');
  bool first = true;
  for (const auto& [term, count] : pairs) {
    if (!first) out += "; ";
    first = false;
    out += term;
    out += ": ";
    out += std::to_string(count);
  }
  return out;
}

}  // namespace langvol
