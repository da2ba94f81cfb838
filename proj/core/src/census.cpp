#include "langvol/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "langvol/error.hpp"
#include "number_format.hpp"

namespace langvol {
namespace {

std::string fixed(double value, int decimals) {
  if (std::isinf(value)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string count(double value) {
  return detail::with_thousands(static_cast<std::uint64_t>(std::llround(std::max(0.0, value))));
}

}  // namespace

const CensusRow* CensusTable::row(const std::string& language) const {
  for (const auto& r : rows) {
    if (r.language == language) return &r;
  }
  return nullptr;
}

CensusTable census_report(const std::map<std::string, double>& estimates, const std::string& reference,
                          const std::string& label) {
  auto ref = estimates.find(reference);
  if (ref == estimates.end()) throw DataError("reference language '" + reference + "' has no estimate");
  if (!(ref->second > 0.0)) throw DataError("reference language '" + reference + "' has a zero estimate");
  CensusTable table{label, reference, {}};
  for (const auto& [lang, value] : estimates) table.rows.push_back({lang, value, value / ref->second});
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const CensusRow& a, const CensusRow& b) { return a.estimate < b.estimate; });
  return table;
}

CensusTable census_report(const std::map<std::string, EstimateReport>& reports, const std::string& reference,
                          const std::string& label) {
  std::map<std::string, double> estimates;
  for (const auto& [lang, report] : reports) estimates.emplace(lang, report.estimate);
  return census_report(estimates, reference, label);
}

std::vector<GrowthRow> growth_factors(const CensusTable& from, const CensusTable& to) {
  std::map<std::string, GrowthRow> rows;
  for (const auto& r : from.rows) {
    const CensusRow* later = to.row(r.language);
    if (later == nullptr) continue;
    GrowthRow g{r.language, r.estimate, later->estimate, 0.0};
    if (r.estimate > 0.0) {
      g.factor = later->estimate / r.estimate;
    } else {
      g.factor = later->estimate > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    rows.emplace(r.language, g);
  }
  std::vector<GrowthRow> out;
  for (auto& [lang, g] : rows) out.push_back(std::move(g));
  return out;
}

EstimateDocument parse_estimate_document(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed estimate document: ") + e.what(), e.byte);
  }
  try {
    if (!doc.is_object()) throw DataError("estimate document is not an object");
    const int version = doc.at("format_version").get<int>();
    if (version != 1) throw FormatVersionError("unsupported estimate document version " + std::to_string(version));
    EstimateDocument out;
    out.label = doc.value("label", "");
    out.source_id = doc.value("source_id", "");
    out.as_of = doc.value("as_of", "");
    for (const auto& [lang, entry] : doc.at("estimates").items()) {
      if (entry.contains("error")) {
        out.errors[lang] = entry.at("error").get<std::string>();
      } else {
        out.estimates[lang] = entry.at("estimate").get<double>();
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid estimate document: ") + e.what());
  }
}

std::string format_census_text(const std::vector<CensusTable>& tables) {
  std::ostringstream out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    if (i != 0) out << '\n';
    out << (t.label.empty() ? "Census" : t.label) << '\n';
    out << pad_right("language", 10) << pad_left("words", 20) << pad_left("ratio to " + t.reference, 16) << '\n';
    for (const auto& r : t.rows) {
      out << pad_right(r.language, 10) << pad_left(count(r.estimate), 20) << pad_left(fixed(r.ratio, 3), 16)
          << '\n';
    }
  }
  if (tables.size() >= 2) {
    const auto& first = tables.front();
    const auto& last = tables.back();
    out << "\nGrowth " << (first.label.empty() ? "first" : first.label) << " -> "
        << (last.label.empty() ? "last" : last.label) << '\n';
    for (const auto& g : growth_factors(first, last)) {
      out << pad_right(g.language, 10) << pad_left(fixed(g.factor, 2) + "x", 12) << '\n';
    }
  }
  return out.str();
}

}  // namespace langvol
