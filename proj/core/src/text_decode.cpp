#include "langvol/text_decode.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include <unicode/ucnv.h>
#include <unicode/ucnv_cb.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "langvol/error.hpp"

namespace langvol {
namespace {

bool is_utf8_name(std::string_view name) {
  std::string lowered;
  for (char c : name) {
    if (c != '-' && c != '_') lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return lowered == "utf8";
}

std::string decode_utf8(std::string_view bytes, DecodeStats* stats) {
  std::string out;
  out.reserve(bytes.size());
  const auto* data = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  bool in_bad_run = false;
  while (i < length) {
    const int32_t start = i;
    if (data[i] < 0x80) {
      out.push_back(static_cast<char>(data[i]));
      ++i;
      in_bad_run = false;
      continue;
    }
    UChar32 c = 0;
    U8_NEXT(data, i, length, c);
    if (c < 0) {
      if (!in_bad_run) {
        if (stats != nullptr) ++stats->skipped_runs;
        out.push_back(' ');  // a dropped run still separates words
      }
      in_bad_run = true;
    } else {
      out.append(bytes.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
      in_bad_run = false;
    }
  }
  return out;
}

struct CallbackContext {
  DecodeStats* stats = nullptr;
};

void count_and_skip(const void* context, UConverterToUnicodeArgs* args, const char*, int32_t,
                    UConverterCallbackReason reason, UErrorCode* err) {
  if (reason > UCNV_IRREGULAR) return;  // reset/close/clone notifications
  auto* ctx = static_cast<const CallbackContext*>(context);
  if (ctx->stats != nullptr) ++ctx->stats->skipped_runs;
  *err = U_ZERO_ERROR;
  const UChar space = u' ';
  ucnv_cbToUWriteUChars(args, &space, 1, 0, err);
}

struct ConverterDeleter {
  void operator()(UConverter* c) const { ucnv_close(c); }
};

}  // namespace

std::string decode_to_utf8(std::string_view bytes, std::string_view encoding, DecodeStats* stats) {
  if (encoding.empty() || is_utf8_name(encoding)) return decode_utf8(bytes, stats);

  UErrorCode status = U_ZERO_ERROR;
  const std::string name(encoding);
  std::unique_ptr<UConverter, ConverterDeleter> conv(ucnv_open(name.c_str(), &status));
  if (U_FAILURE(status) || !conv) throw DataError("unknown text encoding '" + name + "'");

  CallbackContext ctx{stats};
  ucnv_setToUCallBack(conv.get(), count_and_skip, &ctx, nullptr, nullptr, &status);
  if (U_FAILURE(status)) throw DataError("cannot configure decoder for '" + name + "'");

  std::u16string utf16(bytes.size() * 2 + 16, u'\0');
  UChar* target = reinterpret_cast<UChar*>(utf16.data());
  UChar* target_begin = target;
  const char* source = bytes.data();
  ucnv_toUnicode(conv.get(), &target, target_begin + utf16.size(), &source,
                 bytes.data() + bytes.size(), nullptr, true, &status);
  if (U_FAILURE(status)) throw DataError("decoding failed for '" + name + "'");

  icu::UnicodeString unicode(target_begin, static_cast<int32_t>(target - target_begin));
  std::string out;
  unicode.toUTF8String(out);
  return out;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

std::string read_text_file(const std::filesystem::path& path, std::string_view encoding,
                           DecodeStats* stats) {
  return decode_to_utf8(read_file_bytes(path), encoding, stats);
}

}  // namespace langvol
