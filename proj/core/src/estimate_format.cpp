#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "langvol/estimator.hpp"
#include "number_format.hpp"

namespace langvol {

using json = nlohmann::ordered_json;

std::string format_estimate_text(const EstimateReport& report) {
  std::ostringstream os;
  os << "# language " << report.language << '\n'
     << "# word\trelative_frequency\tobserved_count\tprediction\tretained\n";
  for (const auto& obs : report.observations) {
    os << obs.word << '\t' << detail::format_real(obs.relative_frequency) << '\t' << obs.observed_count
       << '\t' << detail::format_real(obs.prediction) << '\t' << (obs.retained ? "yes" : "no") << '\n';
  }
  os << "trim " << report.requested_trim << " (low " << report.trimmed_low << ", high "
     << report.trimmed_high << ")\n"
     << "retained " << report.retained.size() << '\n'
     << "dispersion " << (std::isnan(report.dispersion) ? std::string("nan") : detail::format_real(report.dispersion))
     << '\n'
     << "estimate " << detail::format_real(report.estimate) << '\n'
     << "estimate_rounded " << report.estimate_rounded << '\n';
  return os.str();
}

std::string format_estimate_summary(const std::map<std::string, LanguageEstimate>& estimates) {
  std::vector<const EstimateReport*> ok;
  std::vector<std::pair<std::string, std::string>> failed;
  std::size_t width = 8;
  for (const auto& [language, result] : estimates) {
    width = std::max(width, language.size());
    if (result.ok()) {
      ok.push_back(&*result.report);
    } else {
      failed.emplace_back(language, result.error);
    }
  }
  std::stable_sort(ok.begin(), ok.end(), [](const EstimateReport* a, const EstimateReport* b) {
    if (a->estimate != b->estimate) return a->estimate < b->estimate;
    return a->language < b->language;
  });

  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width) + 2) << "Language" << "Word count estimate\n";
  for (const auto* r : ok) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << r->language << std::right
       << std::setw(22) << detail::with_thousands(r->estimate_rounded) << '\n';
  }
  for (const auto& [language, error] : failed) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << language << "error: " << error << '\n';
  }
  return os.str();
}

std::string format_estimate_document(const std::map<std::string, LanguageEstimate>& estimates,
                                     const EstimateDocumentInfo& info) {
  json doc;
  doc["format_version"] = 1;
  doc["label"] = info.label;
  doc["source_id"] = info.source_id;
  doc["as_of"] = info.as_of;
  json langs = json::object();
  for (const auto& [language, result] : estimates) {
    json entry;
    if (!result.ok()) {
      entry["error"] = result.error;
      langs[language] = std::move(entry);
      continue;
    }
    const auto& r = *result.report;
    entry["estimate"] = r.estimate;
    entry["estimate_rounded"] = r.estimate_rounded;
    entry["trim"] = {{"requested", r.requested_trim}, {"low", r.trimmed_low}, {"high", r.trimmed_high}};
    entry["dispersion"] = std::isnan(r.dispersion) ? json(nullptr) : json(r.dispersion);
    json observations = json::array();
    for (const auto& obs : r.observations) {
      observations.push_back({{"word", obs.word},
                              {"relative_frequency", obs.relative_frequency},
                              {"observed_count", obs.observed_count},
                              {"prediction", obs.prediction},
                              {"retained", obs.retained}});
    }
    entry["observations"] = std::move(observations);
    langs[language] = std::move(entry);
  }
  doc["estimates"] = std::move(langs);
  return doc.dump(2) + "\n";
}

}  // namespace langvol
