#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

namespace langvol {

struct DecodeStats {
  // Number of undecodable byte runs that were skipped.
  std::size_t skipped_runs = 0;
};

inline constexpr std::string_view kDefaultEncoding = "utf-8";

// Converts `bytes` in the declared encoding to UTF-8. Undecodable input is
// dropped and counted in `stats` rather than aborting the conversion.
// Throws DataError for an encoding name the converter does not know.
std::string decode_to_utf8(std::string_view bytes, std::string_view encoding,
                           DecodeStats* stats = nullptr);

// Reads a whole file as raw bytes; throws DataError if it cannot be opened.
std::string read_file_bytes(const std::filesystem::path& path);

// read_file_bytes + decode_to_utf8.
std::string read_text_file(const std::filesystem::path& path,
                           std::string_view encoding = kDefaultEncoding,
                           DecodeStats* stats = nullptr);

}  // namespace langvol
