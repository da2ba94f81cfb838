#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "langvol/census.hpp"
#include "langvol/count_service.hpp"
#include "langvol/error.hpp"
#include "langvol/estimator.hpp"
#include "langvol/harness.hpp"
#include "langvol/profile.hpp"
#include "langvol/providers.hpp"
#include "langvol/testbed.hpp"

namespace langvol::cli {
namespace {

namespace fs = std::filesystem;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw DataError("cannot write '" + path.string() + "'");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

struct TrainArgs {
  std::string input;
  std::string out;
  std::size_t pool = kDefaultPoolSize;
  std::size_t retain = kDefaultRetainedSize;
  std::string encoding = std::string(kDefaultEncoding);
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(a.input)) throw DataError("input '" + a.input + "' is not a directory");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(a.input)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw DataError("input '" + a.input + "' has no language subdirectories");

  std::map<std::string, FrequencyTable> tables;
  for (const auto& dir : dirs) {
    const std::string lang = dir.filename().string();
    FrequencyCounter counter;
    for (const auto& file : collect_corpus_files({dir})) counter.add_text(read_text_file(file, a.encoding));
    if (counter.total_tokens() == 0) throw DataError("language directory '" + dir.string() + "' holds no text");
    tables.emplace(lang, std::move(counter).take());
  }
  const TrainedSet trained = train_profile_set(tables, {a.pool, a.retain});
  for (const auto& w : trained.warnings) err << "warning: " << w << '\n';
  save_profile_set(a.out, trained.set);

  for (const auto& [lang, profile] : trained.set.profiles()) {
    out << lang << '\t' << profile.predictors().size() << " predictors\t" << profile.training_total_tokens()
        << " training tokens\t";
    std::vector<std::string> head;
    for (std::size_t i = 0; i < std::min<std::size_t>(5, profile.predictors().size()); ++i) {
      head.push_back(profile.predictors()[i].word);
    }
    out << join(head, " ") << '\n';
  }
  return 0;
}

struct EstimateArgs {
  std::string profiles;
  std::string source;
  std::size_t trim = kDefaultTrim;
  std::string format = "text";
  std::string label;
  std::string encoding = std::string(kDefaultEncoding);
  int attempts = 3;
  int timeout_ms = 10'000;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  const ProfileSet set = load_profile_set(a.profiles);
  RemoteOptions remote;
  remote.attempts = a.attempts;
  remote.timeout = std::chrono::milliseconds(a.timeout_ms);
  remote.log = [&err](const std::string& line) { err << line << '\n'; };
  const auto source = make_source(a.source, a.encoding, remote);

  const CountResult result = source->get_counts(CountQuery(set.all_words()));
  const auto estimates = estimate_all(set, result.counts, a.trim);
  for (const auto& [lang, e] : estimates) {
    if (!e.ok()) err << "error: " << lang << ": " << e.error << '\n';
  }
  if (a.format == "structured") {
    out << format_estimate_document(estimates, {result.source_id, result.as_of, a.label});
  } else {
    for (const auto& [lang, e] : estimates) {
      if (e.ok()) out << format_estimate_text(*e.report) << '\n';
    }
    out << format_estimate_summary(estimates);
  }
  return 0;
}

struct EvaluateArgs {
  std::string spec;
  std::string experiments = "mono,mixed,noise,sweep,domain";
  std::string out;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  std::set<std::string> wanted;
  {
    std::stringstream ss(a.experiments);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (item != "mono" && item != "mixed" && item != "noise" && item != "sweep" && item != "domain") {
        throw UsageError("unknown experiment '" + item + "'");
      }
      wanted.insert(item);
    }
  }
  Evaluation eval(load_testbed(a.spec));
  for (const auto& w : eval.training_warnings()) err << "warning: " << w << '\n';
  for (const auto& [lang, e] : eval.training_errors()) err << "error: " << lang << ": " << e << '\n';

  auto emit = [&](const std::string& name, const std::string& text, const std::string& json) {
    out << text << '\n';
    if (a.out.empty()) return;
    write_file(fs::path(a.out) / (name + ".txt"), text);
    write_file(fs::path(a.out) / (name + ".json"), json);
  };

  std::vector<ExperimentReport> table;
  if (wanted.count("mono")) table.push_back(eval.monolingual());
  if (wanted.count("mixed")) table.push_back(eval.mixed());
  if (wanted.count("noise")) table.push_back(eval.noise());
  if (!table.empty()) {
    std::string text;
    for (const auto& r : table) text += format_experiment_text(r) + "\n";
    text += format_experiment_grid(table);
    std::string json = "[\n";
    for (std::size_t i = 0; i < table.size(); ++i) json += (i ? ",\n" : "") + format_experiment_json(table[i]);
    json += "]\n";
    emit("experiments", text, json);
  }
  if (wanted.count("sweep")) {
    const auto sweep = eval.size_sweep();
    emit("sweep", format_sweep_text(sweep), format_sweep_json(sweep));
  }
  if (wanted.count("domain")) {
    const auto domain = eval.domain();
    emit("domain", format_domain_text(domain), format_domain_json(domain));
  }
  if (!a.out.empty()) {
    std::string profiles;
    for (const auto& [lang, profile] : eval.profiles().profiles()) {
      profiles += format_profile(profile) + "\n";
    }
    write_file(fs::path(a.out) / "profiles.txt", profiles);
  }
  return 0;
}

struct ServeArgs {
  std::string corpus;
  std::string bind = "127.0.0.1:8080";
  std::string encoding = std::string(kDefaultEncoding);
};

int cmd_serve(const ServeArgs& a, std::ostream&, std::ostream& err) {
  std::shared_ptr<const CountSource> source;
  if (a.corpus.rfind("table:", 0) == 0 || a.corpus.rfind("local:", 0) == 0) {
    source = make_source(a.corpus, a.encoding);
  } else {
    source = std::make_shared<LocalSource>(std::vector<fs::path>{a.corpus}, a.encoding);
  }
  const auto [host, port] = parse_bind_address(a.bind);
  CountService service(source);
  service.bind(host, port);
  g_stop = false;
  auto old_int = std::signal(SIGINT, on_signal);
  auto old_term = std::signal(SIGTERM, on_signal);
  err << "serving " << source->source_id() << " at " << service.endpoint() << std::endl;
  service.start();
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  service.stop();
  std::signal(SIGINT, old_int);
  std::signal(SIGTERM, old_term);
  err << "stopped" << std::endl;
  return 0;
}

struct CensusArgs {
  std::vector<std::string> reports;
  std::string reference = "en";
};

int cmd_census(const CensusArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<CensusTable> tables;
  for (const auto& path : a.reports) {
    EstimateDocument doc = parse_estimate_document(read_file_bytes(path));
    for (const auto& [lang, e] : doc.errors) err << "warning: " << path << ": " << lang << ": " << e << '\n';
    const std::string label = doc.label.empty() ? fs::path(path).stem().string() : doc.label;
    tables.push_back(census_report(doc.estimates, a.reference, label));
  }
  out << format_census_text(tables);
  return 0;
}

struct LegacyArgs {
  std::string source_id = "legacy";
  std::string as_of;
};

int cmd_parse_legacy(const LegacyArgs& a, std::istream& in, std::ostream& out) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  TermTable table;
  table.counts = parse_legacy_wordcount(text);
  table.source_id = a.source_id;
  table.as_of = a.as_of;
  out << format_term_table(table);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate per-language word counts from predictor word frequencies", "langvol"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a deduplicated profile set");
  train_cmd->add_option("--input", train.input, "Directory with one subdirectory of text per language")->required();
  train_cmd->add_option("--out", train.out, "Profile set output directory")->required();
  train_cmd->add_option("--pool", train.pool, "Candidate pool size")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--retain", train.retain, "Predictors kept per language")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--encoding", train.encoding, "Text encoding of the input files")->capture_default_str();

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate word counts of a source");
  est_cmd->add_option("--profiles", est.profiles, "Profile set directory")->required();
  est_cmd->add_option("--source", est.source, "local:<path>, table:<path> or remote:<url>")->required();
  est_cmd->add_option("--trim", est.trim, "Predictions dropped at each end")->capture_default_str();
  est_cmd->add_option("--format", est.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "structured"}));
  est_cmd->add_option("--label", est.label, "Label stored in structured output (e.g. a date)");
  est_cmd->add_option("--encoding", est.encoding, "Text encoding of local sources")->capture_default_str();
  est_cmd->add_option("--attempts", est.attempts, "Remote attempts")->capture_default_str()->check(CLI::PositiveNumber);
  est_cmd->add_option("--timeout-ms", est.timeout_ms, "Remote timeout per attempt")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  EvaluateArgs ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Run evaluation experiments over a testbed");
  ev_cmd->add_option("--spec", ev.spec, "Testbed manifest (JSON)")->required();
  ev_cmd->add_option("--experiments", ev.experiments, "Comma separated: mono,mixed,noise,sweep,domain")
      ->capture_default_str();
  ev_cmd->add_option("--out", ev.out, "Directory for report files");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve term counts over HTTP");
  serve_cmd->add_option("--corpus", serve.corpus, "Corpus file or directory, or table:<path>")->required();
  serve_cmd->add_option("--bind", serve.bind, "host:port")->capture_default_str();
  serve_cmd->add_option("--encoding", serve.encoding, "Text encoding of the corpus")->capture_default_str();

  CensusArgs census;
  auto* census_cmd = app.add_subcommand("census", "Ratio and growth table from structured estimate reports");
  census_cmd->add_option("--reports", census.reports, "Structured estimate files, oldest first")->required();
  census_cmd->add_option("--reference", census.reference, "Reference language")->capture_default_str();

  LegacyArgs legacy;
  auto* legacy_cmd = app.add_subcommand("parse-legacy", "Convert a legacy 'word count:' line on stdin to a table");
  legacy_cmd->add_option("--source-id", legacy.source_id, "source_id written to the table")->capture_default_str();
  legacy_cmd->add_option("--as-of", legacy.as_of, "as_of written to the table");

  std::vector<char*> argv;
  std::vector<std::string> storage = args.empty() ? std::vector<std::string>{"langvol"} : args;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*train_cmd) return cmd_train(train, out, err);
    if (*est_cmd) return cmd_estimate(est, out, err);
    if (*ev_cmd) return cmd_evaluate(ev, out, err);
    if (*serve_cmd) return cmd_serve(serve, out, err);
    if (*census_cmd) return cmd_census(census, out, err);
    if (*legacy_cmd) return cmd_parse_legacy(legacy, in, out);
  } catch (const Error& e) {
    err << "langvol: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    err << "langvol: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace langvol::cli
