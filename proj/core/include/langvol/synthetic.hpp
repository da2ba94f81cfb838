#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace langvol {

// A word frequency list ("word<TAB>frequency" lines, '#' comments), most
// frequent first. Frequencies need not sum to 1; the remainder is the mass
// of words the list does not name.
struct WordList {
  std::string language;
  std::vector<std::string> words;
  std::vector<double> frequencies;

  double listed_mass() const;
};

// Throws DataError.
WordList load_word_list(const std::filesystem::path& path);
WordList parse_word_list(const std::string& text, const std::string& language);

struct GeneratorOptions {
  // Each document draws one genre; a genre rescales every word frequency by
  // a fixed log-normal factor, so corpora with different genres disagree
  // on relative frequencies the way real corpora do.
  std::vector<std::uint64_t> genre_seeds = {1};
  double genre_sigma = 0.25;
  // Words every document of a genre favours (its jargon), picked per genre
  // below the head of the list.
  std::size_t genre_topic_words = 0;
  double genre_topic_boost = 1.0;
  // Per-document jitter of the most frequent words.
  double doc_sigma = 0.2;
  std::size_t head_size = 300;
  // Each document boosts a few random mid-frequency words (its topic).
  std::size_t topic_words = 40;
  double topic_boost = 15.0;
  std::size_t mean_doc_tokens = 400;
  // Share of the unlisted mass emitted as rare compound pseudo-words.
  bool emit_tail = true;
  // Sentences drawn from another language instead.
  const WordList* contamination = nullptr;
  double contamination_rate = 0.0;
  // Probability that a sentence carries a number (never a token).
  double number_rate = 0.05;
};

struct GeneratedText {
  std::string text;
  // Tokens the tokenizer will find in `text`.
  std::uint64_t tokens = 0;
};

// Document-structured prose sampled from a word list. Output depends only
// on the list, the options and the seed.
class CorpusGenerator {
 public:
  CorpusGenerator(const WordList& words, GeneratorOptions options);

  // Whole documents until at least `target_bytes` bytes were produced.
  GeneratedText generate(std::size_t target_bytes, std::uint64_t seed) const;

 private:
  const WordList& words_;
  GeneratorOptions options_;
  std::vector<std::vector<double>> genre_weights_;
  double tail_mass_ = 0.0;
};

// Layout of the generated evaluation testbed.
struct DeskTestbedOptions {
  std::vector<std::string> languages = {"en", "fi", "fr", "de", "it", "nb", "pl", "pt", "sk", "sl", "es"};
  std::vector<std::string> noise = {"ru", "el", "hu"};
  std::string noise_contamination = "en";
  double noise_contamination_rate = 0.05;
  std::size_t train_kb = 640;
  std::size_t test_kb = 256;
  std::string sweep_language = "de";
  std::size_t sweep_material_kb = 4096;
  std::size_t background_kb = 512;
  std::vector<std::size_t> sweep_sizes_kb = {50, 100, 200, 400, 800, 1600, 3200};
  std::string domain_language = "nb";
  std::uint64_t seed = 2000;
};

// Writes every corpus file plus manifest.json into `out_dir` and returns
// the manifest path. `wordfreq_dir` holds one <language>.tsv per language.
std::filesystem::path write_desk_testbed(const std::filesystem::path& wordfreq_dir,
                                         const std::filesystem::path& out_dir,
                                         const DeskTestbedOptions& options = {});

}  // namespace langvol
