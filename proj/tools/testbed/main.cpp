#include <iostream>

#include "CLI11.hpp"
#include "langvol/error.hpp"
#include "langvol/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic evaluation testbed and its manifest", "langvol-testbed"};
  std::string out;
  std::string wordfreq = std::string(LANGVOL_DATA_DIR) + "/wordfreq";
  langvol::DeskTestbedOptions options;
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--wordfreq", wordfreq, "Directory of <language>.tsv frequency lists")->capture_default_str();
  app.add_option("--train-kb", options.train_kb, "Training text per language")->capture_default_str();
  app.add_option("--test-kb", options.test_kb, "Held-out text per language")->capture_default_str();
  app.add_option("--seed", options.seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto manifest = langvol::write_desk_testbed(wordfreq, out, options);
    std::cout << manifest.string() << '\n';
  } catch (const langvol::Error& e) {
    std::cerr << "langvol-testbed: " << e.what() << '\n';
    return langvol::exit_code_for(e);
  }
  return 0;
}
