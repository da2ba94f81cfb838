#include "langvol/synthetic.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "langvol/error.hpp"
#include "langvol/text_decode.hpp"
#include "number_format.hpp"

namespace langvol {
namespace {

namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t seed_for(std::uint64_t base, std::string_view language, std::string_view role) {
  return fnv1a(role, fnv1a(language, base ^ 0x9e3779b97f4a7c15ull));
}

std::string capitalized(const std::string& word) {
  std::int32_t i = 0;
  UChar32 c = 0;
  U8_NEXT(word.data(), i, static_cast<std::int32_t>(word.size()), c);
  if (c < 0) return word;
  const UChar32 upper = u_toupper(c);
  if (upper == c || u_foldCase(upper, U_FOLD_CASE_DEFAULT) != c) return word;
  char buf[U8_MAX_LENGTH];
  std::int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, upper, error);
  if (error) return word;
  return std::string(buf, n) + word.substr(i);
}

class SentenceWriter {
 public:
  SentenceWriter(std::string& out, std::mt19937_64& rng, double number_rate)
      : out_(out), rng_(rng), number_rate_(number_rate) {}

  // Emits one sentence of `length` words produced by `next`.
  template <class Next>
  std::uint64_t sentence(std::size_t length, Next&& next) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t number_at = unit(rng_) < number_rate_ ? length / 2 : length + 1;
    for (std::size_t w = 0; w < length; ++w) {
      if (w == 0) {
        out_ += capitalized(next());
      } else {
        out_ += unit(rng_) < 0.08 ? ", " : " ";
        out_ += next();
      }
      if (w == number_at) out_ += " " + std::to_string(std::uniform_int_distribution<int>(2, 2999)(rng_));
    }
    out_ += unit(rng_) < 0.1 ? "? " : ". ";
    return length;
  }

 private:
  std::string& out_;
  std::mt19937_64& rng_;
  double number_rate_;
};

}  // namespace

double WordList::listed_mass() const { return std::accumulate(frequencies.begin(), frequencies.end(), 0.0); }

WordList parse_word_list(const std::string& text, const std::string& language) {
  WordList list;
  list.language = language;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const auto freq = tab == std::string::npos ? std::nullopt : detail::parse_real(line.substr(tab + 1));
    if (!freq || *freq <= 0.0 || tab == 0) {
      throw ParseError("word list line " + std::to_string(line_no) + ": expected word<TAB>frequency", line_no);
    }
    list.words.push_back(line.substr(0, tab));
    list.frequencies.push_back(*freq);
  }
  if (list.words.empty()) throw DataError("word list for '" + language + "' is empty");
  if (list.listed_mass() > 1.0 + 1e-9) throw DataError("word list for '" + language + "' sums above 1");
  return list;
}

WordList load_word_list(const fs::path& path) {
  return parse_word_list(read_file_bytes(path), path.stem().string());
}

CorpusGenerator::CorpusGenerator(const WordList& words, GeneratorOptions options)
    : words_(words), options_(std::move(options)) {
  if (options_.genre_seeds.empty()) throw UsageError("generator needs at least one genre");
  const double listed = words_.listed_mass();
  tail_mass_ = options_.emit_tail ? std::max(0.0, 1.0 - listed) : 0.0;
  for (const auto genre : options_.genre_seeds) {
    std::mt19937_64 rng(genre);
    std::normal_distribution<double> jitter(0.0, options_.genre_sigma);
    std::vector<double> weights(words_.frequencies.size());
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = words_.frequencies[i] * std::exp(jitter(rng));
    if (weights.size() > 20) {
      std::uniform_int_distribution<std::size_t> pick(20, weights.size() - 1);
      for (std::size_t t = 0; t < options_.genre_topic_words; ++t) weights[pick(rng)] *= options_.genre_topic_boost;
    }
    genre_weights_.push_back(std::move(weights));
  }
}

GeneratedText CorpusGenerator::generate(std::size_t target_bytes, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> doc_jitter(0.0, options_.doc_sigma);
  const std::size_t n = words_.words.size();
  const std::size_t tail_lo = std::min<std::size_t>(500, n / 2);

  std::discrete_distribution<std::size_t> foreign;
  if (options_.contamination != nullptr) {
    foreign = std::discrete_distribution<std::size_t>(options_.contamination->frequencies.begin(),
                                                      options_.contamination->frequencies.end());
  }

  GeneratedText out;
  out.text.reserve(target_bytes + 4096);
  SentenceWriter writer(out.text, rng, options_.number_rate);
  while (out.text.size() < target_bytes) {
    const auto& genre = genre_weights_[std::uniform_int_distribution<std::size_t>(0, genre_weights_.size() - 1)(rng)];
    std::vector<double> weights = genre;
    for (std::size_t i = 0; i < std::min(options_.head_size, n); ++i) weights[i] *= std::exp(doc_jitter(rng));
    if (n > options_.head_size) {
      std::uniform_int_distribution<std::size_t> pick(options_.head_size, n - 1);
      for (std::size_t t = 0; t < options_.topic_words; ++t) weights[pick(rng)] *= options_.topic_boost;
    }
    weights.push_back(tail_mass_);
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    std::uniform_int_distribution<std::size_t> tail_pick(tail_lo, n - 1);

    auto native = [&]() -> std::string {
      const std::size_t k = draw(rng);
      if (k < n) return words_.words[k];
      return words_.words[tail_pick(rng)] + words_.words[tail_pick(rng)];
    };
    auto alien = [&]() -> std::string { return options_.contamination->words[foreign(rng)]; };

    const std::size_t doc_tokens = std::uniform_int_distribution<std::size_t>(
        options_.mean_doc_tokens / 2, options_.mean_doc_tokens * 3 / 2)(rng);
    std::size_t emitted = 0;
    while (emitted < doc_tokens) {
      const std::size_t length = std::uniform_int_distribution<std::size_t>(5, 20)(rng);
      if (options_.contamination != nullptr && unit(rng) < options_.contamination_rate) {
        emitted += writer.sentence(length, alien);
      } else {
        emitted += writer.sentence(length, native);
      }
    }
    out.text.back() = '\n';
    out.text += '\n';
    out.tokens += emitted;
  }
  return out;
}

fs::path write_desk_testbed(const fs::path& wordfreq_dir, const fs::path& out_dir,
                            const DeskTestbedOptions& options) {
  std::map<std::string, WordList> lists;
  auto list_for = [&](const std::string& lang) -> const WordList& {
    auto it = lists.find(lang);
    if (it == lists.end()) it = lists.emplace(lang, load_word_list(wordfreq_dir / (lang + ".tsv"))).first;
    return it->second;
  };
  fs::create_directories(out_dir);
  auto write = [&](const std::string& rel, const std::string& text) {
    const fs::path path = out_dir / rel;
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw DataError("cannot write '" + path.string() + "'");
    return rel;
  };
  // Train and test use disjoint genre draws, so test text never matches the
  // training distribution exactly.
  auto genres = [&](const std::string& lang, const std::string& role, std::size_t count) {
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < count; ++i) seeds.push_back(seed_for(options.seed, lang, role + std::to_string(i)));
    return seeds;
  };
  auto generate = [&](const std::string& lang, const std::string& role, std::size_t kb, GeneratorOptions opts) {
    CorpusGenerator gen(list_for(lang), std::move(opts));
    return gen.generate(kb * 1024, seed_for(options.seed, lang, role + "/text")).text;
  };

  using Json = nlohmann::ordered_json;
  Json manifest;
  manifest["format_version"] = 1;
  manifest["pool"] = 100;
  manifest["retain"] = 20;
  manifest["trim"] = 2;
  manifest["encoding"] = "utf-8";
  manifest["languages"] = Json::array();
  std::vector<std::string> background;
  for (const auto& lang : options.languages) {
    GeneratorOptions train;
    train.genre_seeds = genres(lang, "train", 4);
    GeneratorOptions test;
    test.genre_seeds = genres(lang, "test", 4);
    Json entry;
    entry["language"] = lang;
    entry["train"] = {write("train/" + lang + ".txt", generate(lang, "train", options.train_kb, train))};
    entry["test"] = {write("test/" + lang + ".txt", generate(lang, "test", options.test_kb, test))};
    manifest["languages"].push_back(entry);
    if (lang != options.sweep_language && options.background_kb > 0) {
      GeneratorOptions bg;
      bg.genre_seeds = genres(lang, "background", 4);
      background.push_back(write("background/" + lang + ".txt", generate(lang, "background", options.background_kb, bg)));
    }
  }

  manifest["noise"] = Json::array();
  for (const auto& lang : options.noise) {
    GeneratorOptions noise;
    noise.genre_seeds = genres(lang, "noise", 4);
    if (!options.noise_contamination.empty()) {
      noise.contamination = &list_for(options.noise_contamination);
      noise.contamination_rate = options.noise_contamination_rate;
    }
    const auto rel = write("noise/" + lang + ".txt", generate(lang, "noise", options.test_kb, noise));
    manifest["noise"].push_back(rel);
    background.push_back(rel);
  }

  if (!options.sweep_language.empty()) {
    GeneratorOptions material;
    material.genre_seeds = genres(options.sweep_language, "sweep", 4);
    Json sweep;
    sweep["language"] = options.sweep_language;
    sweep["sizes_kb"] = options.sweep_sizes_kb;
    sweep["material"] = {write("sweep/" + options.sweep_language + ".txt",
                               generate(options.sweep_language, "sweep", options.sweep_material_kb, material))};
    sweep["background"] = background;
    manifest["sweep"] = sweep;
  }

  if (!options.domain_language.empty()) {
    const std::string& lang = options.domain_language;
    // "web" mixes many genres, "legal" is one narrow genre with a stronger
    // bias. Each test corpus shares its genres with its training corpus.
    GeneratorOptions web;
    web.genre_seeds = genres(lang, "web", 12);
    GeneratorOptions legal;
    legal.genre_seeds = genres(lang, "legal", 1);
    legal.genre_sigma = 0.4;
    legal.genre_topic_words = 40;
    legal.genre_topic_boost = 12.0;
    legal.topic_words = 10;
    Json domain;
    domain["language"] = lang;
    domain["a"] = {{"label", "web"},
                   {"train", {write("domain/web-train.txt", generate(lang, "web-train", options.train_kb, web))}},
                   {"test", {write("domain/web-test.txt", generate(lang, "web-test", options.test_kb, web))}}};
    domain["b"] = {{"label", "legal"},
                   {"train", {write("domain/legal-train.txt", generate(lang, "legal-train", options.train_kb, legal))}},
                   {"test", {write("domain/legal-test.txt", generate(lang, "legal-test", options.test_kb, legal))}}};
    manifest["domain"] = domain;
  }

  const fs::path path = out_dir / "manifest.json";
  std::ofstream f(path, std::ios::binary);
  f << manifest.dump(2) << '\n';
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  return path;
}

}  // namespace langvol
