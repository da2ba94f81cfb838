#include <fstream>
#include <sstream>
#include <vector>

#include "langvol/error.hpp"
#include "langvol/profile.hpp"
#include "langvol/text_decode.hpp"
#include "number_format.hpp"

namespace langvol {
namespace {

namespace fs = std::filesystem;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// "key value" header line; returns the value.
std::string_view header_value(const std::vector<std::string_view>& lines, std::size_t index,
                              std::string_view key) {
  if (index >= lines.size()) {
    throw ParseError("profile truncated: missing '" + std::string(key) + "' header", index + 1);
  }
  std::string_view line = lines[index];
  if (line.substr(0, key.size()) != key || line.size() <= key.size() + 1 || line[key.size()] != ' ') {
    throw ParseError("expected '" + std::string(key) + " <value>' header", index + 1);
  }
  return detail::trim(line.substr(key.size() + 1));
}

std::uint64_t header_count(const std::vector<std::string_view>& lines, std::size_t index,
                           std::string_view key) {
  auto value = detail::parse_count(header_value(lines, index, key));
  if (!value) throw ParseError("'" + std::string(key) + "' must be a non-negative integer", index + 1);
  return *value;
}

bool header_flag(const std::vector<std::string_view>& lines, std::size_t index, std::string_view key) {
  auto value = header_value(lines, index, key);
  if (value == "true") return true;
  if (value == "false") return false;
  throw ParseError("'" + std::string(key) + "' must be true or false", index + 1);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_profile(const LanguageProfile& profile) {
  std::ostringstream os;
  os << "version " << profile.format_version() << '\n'
     << "language " << profile.language() << '\n'
     << "total_tokens " << profile.training_total_tokens() << '\n'
     << "casefold " << (profile.casefold() ? "true" : "false") << '\n'
     << "pool " << profile.candidate_pool_size() << '\n'
     << "retain " << profile.retained_size() << '\n';
  for (const auto& p : profile.predictors()) {
    os << p.word << '\t' << detail::format_real(p.relative_frequency) << '\n';
  }
  return os.str();
}

LanguageProfile parse_profile(std::string_view text) {
  const auto lines = split_lines(text);
  const auto version = header_count(lines, 0, "version");
  if (version != static_cast<std::uint64_t>(LanguageProfile::kFormatVersion)) {
    throw FormatVersionError("unknown profile format version " + std::to_string(version));
  }
  const std::string language(header_value(lines, 1, "language"));
  const auto total = header_count(lines, 2, "total_tokens");
  const bool casefold = header_flag(lines, 3, "casefold");
  const auto pool = header_count(lines, 4, "pool");
  const auto retain = header_count(lines, 5, "retain");

  std::vector<Predictor> predictors;
  for (std::size_t i = 6; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (detail::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected 'word<TAB>relative_frequency'", i + 1);
    auto freq = detail::parse_real(detail::trim(line.substr(tab + 1)));
    if (!freq) throw ParseError("relative frequency is not a number", i + 1);
    predictors.push_back({std::string(line.substr(0, tab)), *freq});
  }
  return LanguageProfile(language, std::move(predictors), total, pool, retain, casefold,
                         static_cast<int>(version));
}

void save_profile(const fs::path& path, const LanguageProfile& profile) {
  write_file(path, format_profile(profile));
}

LanguageProfile load_profile(const fs::path& path) {
  const std::string text = read_file_bytes(path);
  try {
    return parse_profile(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + std::to_string(e.position()) + ": " + e.what(), e.position());
  }
}

void save_profile_set(const fs::path& dir, const ProfileSet& set) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir.string() + "': " + ec.message());
  std::ostringstream manifest;
  manifest << "version " << LanguageProfile::kFormatVersion << '\n'
           << "dedup_applied " << (set.dedup_applied() ? "true" : "false") << '\n';
  for (const auto& [language, profile] : set.profiles()) {
    const std::string file = language + ".profile";
    save_profile(dir / file, profile);
    manifest << "profile " << language << ' ' << file << '\n';
  }
  write_file(dir / kProfileSetManifest, manifest.str());
}

ProfileSet load_profile_set(const fs::path& dir) {
  const fs::path manifest_path = dir / kProfileSetManifest;
  const std::string text = read_file_bytes(manifest_path);
  const auto lines = split_lines(text);
  const auto version = header_count(lines, 0, "version");
  if (version != static_cast<std::uint64_t>(LanguageProfile::kFormatVersion)) {
    throw FormatVersionError("unknown profile set manifest version " + std::to_string(version));
  }
  const bool dedup = header_flag(lines, 1, "dedup_applied");
  std::map<std::string, LanguageProfile> profiles;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (detail::trim(lines[i]).empty()) continue;
    std::istringstream fields{std::string(lines[i])};
    std::string keyword, language, file;
    if (!(fields >> keyword >> language >> file) || keyword != "profile") {
      throw ParseError(manifest_path.string() + ": expected 'profile <language> <file>'", i + 1);
    }
    LanguageProfile profile = load_profile(dir / file);
    if (profile.language() != language) {
      throw InvariantError(file + " declares language '" + profile.language() + "', manifest says '" +
                           language + "'");
    }
    profiles.emplace(language, std::move(profile));
  }
  return ProfileSet(std::move(profiles), dedup);
}

}  // namespace langvol
