#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "langvol/term_counts.hpp"
#include "langvol/text_decode.hpp"
#include "langvol/tokenizer.hpp"

namespace langvol {

// A non-empty list of pairwise distinct tokens.
class CountQuery {
 public:
  // Throws DataError on an empty list, an invalid token or a duplicate.
  explicit CountQuery(std::vector<std::string> terms);

  const std::vector<std::string>& terms() const noexcept { return terms_; }

 private:
  std::vector<std::string> terms_;
};

struct CountResult {
  // Exactly the queried terms, zeros explicit.
  TermCounts counts;
  std::optional<std::uint64_t> total_tokens;
  std::string source_id;
  std::string as_of;
  // Diagnostic: queried terms the source has no entry for. Their count is 0.
  std::set<std::string> unlisted;

  friend bool operator==(const CountResult&, const CountResult&) = default;
};

// Same counts, total and source id. Diagnostics and timestamps are ignored.
bool equivalent(const CountResult& a, const CountResult& b);

// "How many times does each of these terms occur?" Implementations are
// immutable after construction and safe to share between threads.
class CountSource {
 public:
  virtual ~CountSource() = default;

  virtual CountResult get_counts(const CountQuery& query) const = 0;
  virtual const std::string& source_id() const = 0;
};

// Expands files and directories (recursively, sorted) into a file list.
// Throws DataError naming every path that does not exist.
std::vector<std::filesystem::path> collect_corpus_files(const std::vector<std::filesystem::path>& paths);

// Counts a local corpus once at construction and answers from the cache.
class LocalSource final : public CountSource {
 public:
  explicit LocalSource(const std::vector<std::filesystem::path>& paths,
                       std::string encoding = std::string(kDefaultEncoding));
  // Wraps an already counted table.
  LocalSource(FrequencyTable table, std::string source_id, std::string as_of);

  CountResult get_counts(const CountQuery& query) const override;
  const std::string& source_id() const override { return source_id_; }

  const FrequencyTable& table() const noexcept { return table_; }
  const std::string& as_of() const noexcept { return as_of_; }
  const DecodeStats& decode_stats() const noexcept { return decode_stats_; }

 private:
  FrequencyTable table_;
  std::string source_id_;
  std::string as_of_;
  DecodeStats decode_stats_;
};

// Contents of a term-count table file:
//   # source_id<TAB>...   # as_of<TAB>...   # total_tokens<TAB>N   (optional)
//   term<TAB>count        (one per line, sorted by term)
struct TermTable {
  TermCounts counts;
  std::optional<std::uint64_t> total_tokens;
  std::string source_id;
  std::string as_of;

  friend bool operator==(const TermTable&, const TermTable&) = default;
};

// Throws ParseError carrying the 1-based line number.
TermTable parse_term_table(std::string_view text);
std::string format_term_table(const TermTable& table);
TermTable read_term_table(const std::filesystem::path& path);
void write_term_table(const std::filesystem::path& path, const TermTable& table);

// Snapshot of a local source as a table (zero counts omitted).
TermTable dump_table(const LocalSource& source);

class TableSource final : public CountSource {
 public:
  explicit TableSource(TermTable table);
  explicit TableSource(const std::filesystem::path& path);

  CountResult get_counts(const CountQuery& query) const override;
  const std::string& source_id() const override { return table_.source_id; }

 private:
  TermTable table_;
};

// "word count: daß: 7990333; durch: 8250898" -> {daß: 7990333, durch: 8250898}.
// Throws ParseError whose position is the character offset of the problem.
TermCounts parse_legacy_wordcount(std::string_view line);

// Inverse of parse_legacy_wordcount: pairs in ascending count order (ties by
// term), joined by "; " after the "word count: " prefix.
std::string format_legacy_wordcount(const TermCounts& counts);

struct RemoteOptions {
  std::chrono::milliseconds timeout{10'000};
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  // Ask the server for the legacy "word count:" line instead of JSON.
  bool legacy_format = false;
  // Receives one line per failed attempt.
  std::function<void(const std::string&)> log;
};

// Client of the /v1/counts wire protocol. Transport failures are retried
// with exponential backoff; HTTP errors and malformed bodies are not.
class RemoteSource final : public CountSource {
 public:
  // `endpoint` is "http://host:port" (an optional path prefix is allowed).
  explicit RemoteSource(std::string endpoint, RemoteOptions options = {});

  CountResult get_counts(const CountQuery& query) const override;
  const std::string& source_id() const override { return endpoint_; }

  // Request target for a query, e.g. "/v1/counts?terms=a,b".
  std::string request_target(const CountQuery& query) const;

 private:
  std::string endpoint_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  RemoteOptions options_;
};

// Builds a source from "local:<path>", "table:<path>" or "remote:<url>".
// An unknown scheme is a UsageError.
std::unique_ptr<CountSource> make_source(std::string_view descriptor,
                                         const std::string& encoding = std::string(kDefaultEncoding),
                                         RemoteOptions remote_options = {});

// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string percent_encode(std::string_view text);

}  // namespace langvol
