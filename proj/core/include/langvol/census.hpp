#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "langvol/estimator.hpp"

namespace langvol {

struct CensusRow {
  std::string language;
  double estimate = 0.0;
  // estimate / reference estimate.
  double ratio = 0.0;

  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

struct CensusTable {
  std::string label;
  std::string reference;
  // Ascending by estimate, ties by language.
  std::vector<CensusRow> rows;

  const CensusRow* row(const std::string& language) const;
};

// Throws DataError when the reference language is absent or its estimate is
// not positive.
CensusTable census_report(const std::map<std::string, double>& estimates, const std::string& reference,
                          const std::string& label = {});
CensusTable census_report(const std::map<std::string, EstimateReport>& reports, const std::string& reference,
                          const std::string& label = {});

struct GrowthRow {
  std::string language;
  double from = 0.0;
  double to = 0.0;
  // to / from; infinite when from is zero and to is not.
  double factor = 0.0;
};

// Languages present in both tables, in language order.
std::vector<GrowthRow> growth_factors(const CensusTable& from, const CensusTable& to);

// The per-language estimates of a structured estimate document. Languages
// that failed in that run are listed in `errors` instead.
struct EstimateDocument {
  std::string label;
  std::string source_id;
  std::string as_of;
  std::map<std::string, double> estimates;
  std::map<std::string, std::string> errors;
};

// Throws ParseError for malformed JSON, FormatVersionError for an unknown
// version and DataError for a structurally wrong document.
EstimateDocument parse_estimate_document(std::string_view json_text);

// One block per table (oldest first), then a growth block comparing the
// first and last tables when there are at least two.
std::string format_census_text(const std::vector<CensusTable>& tables);

}  // namespace langvol
