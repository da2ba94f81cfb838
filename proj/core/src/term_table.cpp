#include <fstream>
#include <sstream>

#include "langvol/error.hpp"
#include "langvol/providers.hpp"
#include "number_format.hpp"

namespace langvol {

TermTable parse_term_table(std::string_view text) {
  TermTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (detail::trim(line).empty()) continue;

    if (line.front() == '#') {
      std::string_view body = detail::trim(line.substr(1));
      const auto tab = body.find('\t');
      if (tab == std::string_view::npos) continue;  // plain comment
      const std::string_view key = body.substr(0, tab);
      const std::string_view value = detail::trim(body.substr(tab + 1));
      if (key == "source_id") {
        table.source_id = std::string(value);
      } else if (key == "as_of") {
        table.as_of = std::string(value);
      } else if (key == "total_tokens") {
        auto total = detail::parse_count(value);
        if (!total) throw ParseError("line " + std::to_string(line_no) + ": bad total_tokens", line_no);
        table.total_tokens = *total;
      }
      continue;
    }

    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'term<TAB>count'", line_no);
    }
    const std::string term(line.substr(0, tab));
    if (!is_token(term)) {
      throw ParseError("line " + std::to_string(line_no) + ": '" + term + "' is not a valid token", line_no);
    }
    auto count = detail::parse_count(detail::trim(line.substr(tab + 1)));
    if (!count) throw ParseError("line " + std::to_string(line_no) + ": count is not a non-negative integer", line_no);
    if (!table.counts.emplace(term, *count).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate term '" + term + "'", line_no);
    }
  }
  return table;
}

std::string format_term_table(const TermTable& table) {
  std::ostringstream os;
  os << "# source_id\t" << table.source_id << '\n' << "# as_of\t" << table.as_of << '\n';
  if (table.total_tokens) os << "# total_tokens\t" << *table.total_tokens << '\n';
  for (const auto& [term, count] : table.counts) os << term << '\t' << count << '\n';
  return os.str();
}

TermTable read_term_table(const std::filesystem::path& path) {
  const std::string text = read_file_bytes(path);
  try {
    return parse_term_table(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.position());
  }
}

void write_term_table(const std::filesystem::path& path, const TermTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << format_term_table(table);
}

}  // namespace langvol
