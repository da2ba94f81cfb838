#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace langvol::test {

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(LANGVOL_TEST_DATA) / rel; }

inline std::filesystem::path wordfreq_dir() { return std::filesystem::path(LANGVOL_DATA_DIR) / "wordfreq"; }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("langvol-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

// Random text from a small mixed alphabet including non-ASCII letters,
// digits and punctuation.
inline std::string random_text(std::mt19937_64& rng, std::size_t pieces) {
  static const char* const kPieces[] = {"a", "b", "c", "A", "B", "ß", "ü", "Ü", "é", "É", "ж", "Ж",
                                        " ", " ", "  ", "-", ",", ".", "1", "42", "\n", "'", "\t"};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kPieces) - 1);
  std::string out;
  for (std::size_t i = 0; i < pieces; ++i) out += kPieces[pick(rng)];
  return out;
}

}  // namespace langvol::test
