#include "langvol/testbed.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "langvol/error.hpp"

namespace langvol {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<CorpusFile> files_of(const json& node, const fs::path& base, const std::string& default_encoding,
                                 const std::string& where) {
  std::vector<CorpusFile> out;
  if (node.is_null()) return out;
  if (!node.is_array()) throw DataError(where + " must be a list of paths");
  for (const auto& item : node) {
    if (item.is_string()) {
      out.push_back({resolve(base, item.get<std::string>()), default_encoding});
    } else if (item.is_object() && item.contains("path") && item["path"].is_string()) {
      out.push_back({resolve(base, item["path"].get<std::string>()),
                     item.value("encoding", default_encoding)});
    } else {
      throw DataError(where + " entries must be paths or {\"path\", \"encoding\"} objects");
    }
  }
  return out;
}

std::string required_string(const json& node, const char* key, const std::string& where) {
  if (!node.contains(key) || !node[key].is_string() || node[key].get<std::string>().empty()) {
    throw DataError(where + " needs a non-empty \"" + key + "\"");
  }
  return node[key].get<std::string>();
}

}  // namespace

void validate_testbed(const TestbedSpec& spec) {
  if (spec.languages.empty()) throw DataError("testbed lists no languages");
  std::set<std::string> seen;
  for (const auto& lang : spec.languages) {
    if (!seen.insert(lang.language).second) throw DataError("language '" + lang.language + "' listed twice");
    std::set<fs::path> train;
    for (const auto& f : lang.train) train.insert(f.path.lexically_normal());
    for (const auto& f : lang.test) {
      if (train.count(f.path.lexically_normal())) {
        throw DataError(lang.language + ": '" + f.path.string() + "' is both a training and a test file");
      }
    }
  }
  if (spec.sweep) {
    if (spec.sweep->sizes_kb.empty()) throw DataError("sweep needs at least one size");
    if (!std::is_sorted(spec.sweep->sizes_kb.begin(), spec.sweep->sizes_kb.end())) {
      throw DataError("sweep sizes must be ascending");
    }
    if (!seen.count(spec.sweep->language)) {
      throw DataError("sweep language '" + spec.sweep->language + "' is not in the testbed");
    }
  }
  if (spec.training.pool_size == 0 || spec.training.retained_size == 0) {
    throw DataError("pool and retain must be positive");
  }
}

TestbedSpec parse_testbed(const std::string& json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("testbed manifest is not valid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw DataError("testbed manifest must be a JSON object");
  const int version = doc.value("format_version", 1);
  if (version != 1) throw FormatVersionError("unknown testbed format_version " + std::to_string(version));

  TestbedSpec spec;
  try {
    spec.training.pool_size = doc.value("pool", kDefaultPoolSize);
    spec.training.retained_size = doc.value("retain", kDefaultRetainedSize);
    spec.trim = doc.value("trim", kDefaultTrim);
    const std::string encoding = doc.value("encoding", std::string(kDefaultEncoding));

    if (!doc.contains("languages") || !doc["languages"].is_array()) {
      throw DataError("testbed manifest needs a \"languages\" list");
    }
    for (const auto& node : doc["languages"]) {
      LanguageMaterial lang;
      lang.language = required_string(node, "language", "language entry");
      const std::string enc = node.value("encoding", encoding);
      lang.train = files_of(node.value("train", json()), base_dir, enc, lang.language + ".train");
      lang.test = files_of(node.value("test", json()), base_dir, enc, lang.language + ".test");
      spec.languages.push_back(std::move(lang));
    }
    spec.noise = files_of(doc.value("noise", json()), base_dir, encoding, "noise");

    if (doc.contains("sweep") && !doc["sweep"].is_null()) {
      const auto& node = doc["sweep"];
      SweepSpec sweep;
      sweep.language = required_string(node, "language", "sweep");
      sweep.sizes_kb = node.value("sizes_kb", std::vector<std::size_t>{});
      sweep.material = files_of(node.value("material", json()), base_dir, encoding, "sweep.material");
      sweep.background = files_of(node.value("background", json()), base_dir, encoding, "sweep.background");
      spec.sweep = std::move(sweep);
    }
    if (doc.contains("domain") && !doc["domain"].is_null()) {
      const auto& node = doc["domain"];
      DomainSpec domain;
      domain.language = required_string(node, "language", "domain");
      for (auto [key, corpus] : {std::pair{"a", &domain.a}, std::pair{"b", &domain.b}}) {
        if (!node.contains(key)) throw DataError(std::string("domain needs corpus \"") + key + "\"");
        const auto& c = node[key];
        corpus->label = c.value("label", std::string(key));
        corpus->train = files_of(c.value("train", json()), base_dir, encoding, std::string("domain.") + key);
        corpus->test = files_of(c.value("test", json()), base_dir, encoding, std::string("domain.") + key);
      }
      spec.domain = std::move(domain);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed testbed manifest: ") + e.what());
  }
  validate_testbed(spec);
  return spec;
}

TestbedSpec load_testbed(const fs::path& manifest) {
  return parse_testbed(read_file_bytes(manifest), manifest.parent_path());
}

}  // namespace langvol
