#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "langvol/estimator.hpp"
#include "langvol/profile.hpp"
#include "langvol/text_decode.hpp"

namespace langvol {

struct CorpusFile {
  std::filesystem::path path;
  std::string encoding = std::string(kDefaultEncoding);

  friend bool operator==(const CorpusFile&, const CorpusFile&) = default;
};

struct LanguageMaterial {
  std::string language;
  std::vector<CorpusFile> train;
  std::vector<CorpusFile> test;
};

struct SweepSpec {
  std::string language;
  // Ascending sizes in kilobytes (1024 bytes).
  std::vector<std::size_t> sizes_kb;
  // Target-language text that gets truncated; defaults to the language's
  // test files.
  std::vector<CorpusFile> material;
  // Fixed mixture the truncated text is added to; defaults to every other
  // language's test files plus the noise files.
  std::vector<CorpusFile> background;
};

struct DomainCorpus {
  std::string label;
  std::vector<CorpusFile> train;
  std::vector<CorpusFile> test;
};

struct DomainSpec {
  std::string language;
  DomainCorpus a;
  DomainCorpus b;
};

// Everything an evaluation run needs, usually loaded from one manifest.
struct TestbedSpec {
  std::vector<LanguageMaterial> languages;
  std::vector<CorpusFile> noise;
  std::optional<SweepSpec> sweep;
  std::optional<DomainSpec> domain;
  TrainingOptions training;
  std::size_t trim = kDefaultTrim;
};

// Checks structural invariants (unique languages, disjoint train/test paths,
// ascending sweep sizes). Throws DataError.
void validate_testbed(const TestbedSpec& spec);

// JSON manifest; relative paths resolve against the manifest's directory.
// Throws DataError (ParseError for malformed JSON).
TestbedSpec load_testbed(const std::filesystem::path& manifest);
TestbedSpec parse_testbed(const std::string& json_text, const std::filesystem::path& base_dir);

}  // namespace langvol
