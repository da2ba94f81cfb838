#include <sys/stat.h>

#include <algorithm>
#include <ctime>
#include <set>

#include "langvol/error.hpp"
#include "langvol/providers.hpp"

namespace langvol {
namespace {

namespace fs = std::filesystem;

std::string iso_utc(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::time_t modification_time(const fs::path& path) {
  struct stat st {};
  if (::stat(path.c_str(), &st) != 0) return 0;
  return st.st_mtime;
}

CountResult answer(const CountQuery& query, const std::function<std::optional<std::uint64_t>(const std::string&)>& lookup) {
  CountResult result;
  for (const auto& term : query.terms()) {
    auto count = lookup(term);
    if (!count) result.unlisted.insert(term);
    result.counts.emplace(term, count.value_or(0));
  }
  return result;
}

}  // namespace

CountQuery::CountQuery(std::vector<std::string> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw DataError("count query needs at least one term");
  std::set<std::string_view> seen;
  for (const auto& t : terms_) {
    if (!is_token(t)) throw DataError("query term '" + t + "' is not a valid token");
    if (!seen.insert(t).second) throw DataError("duplicate query term '" + t + "'");
  }
}

bool equivalent(const CountResult& a, const CountResult& b) {
  return a.counts == b.counts && a.total_tokens == b.total_tokens && a.source_id == b.source_id;
}

std::vector<fs::path> collect_corpus_files(const std::vector<fs::path>& paths) {
  std::vector<fs::path> files;
  std::vector<std::string> missing;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (auto it = fs::recursive_directory_iterator(p, ec); !ec && it != fs::recursive_directory_iterator();
           it.increment(ec)) {
        if (it->is_regular_file(ec)) found.push_back(it->path());
      }
      if (ec) {
        missing.push_back(p.string());
        continue;
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      missing.push_back(p.string());
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw DataError("unreadable corpus path(s): " + list);
  }
  return files;
}

LocalSource::LocalSource(const std::vector<fs::path>& paths, std::string encoding) {
  const auto files = collect_corpus_files(paths);
  FrequencyCounter counter;
  std::time_t latest = 0;
  for (const auto& file : files) {
    counter.add_text(read_text_file(file, encoding, &decode_stats_));
    latest = std::max(latest, modification_time(file));
  }
  table_ = std::move(counter).take();
  for (const auto& p : paths) source_id_ += (source_id_.empty() ? "local:" : ",") + p.string();
  as_of_ = iso_utc(latest);
}

LocalSource::LocalSource(FrequencyTable table, std::string source_id, std::string as_of)
    : table_(std::move(table)), source_id_(std::move(source_id)), as_of_(std::move(as_of)) {}

CountResult LocalSource::get_counts(const CountQuery& query) const {
  CountResult result = answer(query, [this](const std::string& term) -> std::optional<std::uint64_t> {
    const auto n = table_.count(term);
    if (n == 0) return std::nullopt;
    return n;
  });
  result.total_tokens = table_.total_tokens();
  result.source_id = source_id_;
  result.as_of = as_of_;
  return result;
}

TermTable dump_table(const LocalSource& source) {
  TermTable out;
  for (const auto& [term, count] : source.table().counts()) out.counts.emplace(term, count);
  out.total_tokens = source.table().total_tokens();
  out.source_id = source.source_id();
  out.as_of = source.as_of();
  return out;
}

TableSource::TableSource(TermTable table) : table_(std::move(table)) {}

TableSource::TableSource(const fs::path& path) : table_(read_term_table(path)) {
  if (table_.source_id.empty()) table_.source_id = "table:" + path.string();
}

CountResult TableSource::get_counts(const CountQuery& query) const {
  CountResult result = answer(query, [this](const std::string& term) -> std::optional<std::uint64_t> {
    auto it = table_.counts.find(term);
    if (it == table_.counts.end()) return std::nullopt;
    return it->second;
  });
  result.total_tokens = table_.total_tokens;
  result.source_id = table_.source_id;
  result.as_of = table_.as_of;
  return result;
}

std::unique_ptr<CountSource> make_source(std::string_view descriptor, const std::string& encoding,
                                         RemoteOptions remote_options) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("source must be local:<path>, table:<path> or remote:<url>");
  }
  const std::string_view scheme = descriptor.substr(0, colon);
  const std::string rest(descriptor.substr(colon + 1));
  if (rest.empty()) throw UsageError("empty source location in '" + std::string(descriptor) + "'");
  if (scheme == "local") return std::make_unique<LocalSource>(std::vector<fs::path>{rest}, encoding);
  if (scheme == "table") return std::make_unique<TableSource>(fs::path(rest));
  if (scheme == "remote") return std::make_unique<RemoteSource>(rest, std::move(remote_options));
  throw UsageError("unknown source scheme '" + std::string(scheme) + "'");
}

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace langvol
