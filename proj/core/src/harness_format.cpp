#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "langvol/harness.hpp"
#include "number_format.hpp"

namespace langvol {
namespace {

using Json = nlohmann::ordered_json;
constexpr int kFormatVersion = 1;

std::string fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string signed_percent(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.2f%%", value);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string rounded_count(double value) {
  if (!(value >= 0.0)) return "0";
  return detail::with_thousands(static_cast<std::uint64_t>(std::llround(value)));
}

Json real(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

Json row_json(const ExperimentRow& row) {
  Json j;
  j["language"] = row.language;
  if (!row.ok()) {
    j["error"] = row.error;
    return j;
  }
  j["true_word_count"] = row.true_word_count;
  j["estimate"] = real(row.estimate);
  j["signed_error_percent"] = real(row.signed_error_percent);
  if (row.delta_percent) j["delta_percent"] = real(*row.delta_percent);
  if (!row.note.empty()) j["note"] = row.note;
  return j;
}

Json report_json(const ExperimentReport& report) {
  Json j;
  j["id"] = report.id;
  j["title"] = report.title;
  j["rows"] = Json::array();
  for (const auto& row : report.rows) j["rows"].push_back(row_json(row));
  j["mean_abs_error_percent"] = real(report.mean_abs_error_percent);
  return j;
}

}  // namespace

std::string format_experiment_text(const ExperimentReport& report) {
  bool any_delta = false;
  for (const auto& row : report.rows) any_delta = any_delta || row.delta_percent.has_value();

  std::ostringstream out;
  out << report.title << '\n';
  out << pad_right("language", 10) << pad_left("true words", 16) << pad_left("estimate", 16)
      << pad_left("error", 10);
  if (any_delta) out << pad_left("vs mixed", 10);
  out << '\n';
  for (const auto& row : report.rows) {
    out << pad_right(row.language, 10);
    if (!row.ok()) {
      out << "  error: " << row.error << '\n';
      continue;
    }
    out << pad_left(detail::with_thousands(row.true_word_count), 16) << pad_left(rounded_count(row.estimate), 16)
        << pad_left(signed_percent(row.signed_error_percent), 10);
    if (any_delta) out << pad_left(row.delta_percent ? signed_percent(*row.delta_percent) : "", 10);
    if (!row.note.empty()) out << "  (" << row.note << ')';
    out << '\n';
  }
  out << "average error +/- " << fixed(report.mean_abs_error_percent, 1) << "%\n";
  return out.str();
}

std::string format_experiment_grid(const std::vector<ExperimentReport>& reports) {
  std::vector<std::string> languages;
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      if (std::find(languages.begin(), languages.end(), row.language) == languages.end()) {
        languages.push_back(row.language);
      }
    }
  }
  std::ostringstream out;
  out << pad_right("language", 10);
  for (const auto& report : reports) out << pad_left(report.id, 12);
  out << '\n';
  for (const auto& lang : languages) {
    out << pad_right(lang, 10);
    for (const auto& report : reports) {
      const ExperimentRow* row = report.row(lang);
      std::string cell = row == nullptr ? "-" : row->ok() ? signed_percent(row->signed_error_percent) : "error";
      out << pad_left(cell, 12);
    }
    out << '\n';
  }
  out << pad_right("average", 10);
  for (const auto& report : reports) out << pad_left("+/-" + fixed(report.mean_abs_error_percent, 1) + "%", 12);
  out << '\n';
  return out.str();
}

std::string format_sweep_text(const std::vector<ExperimentReport>& sweep) {
  std::ostringstream out;
  const std::string language = sweep.empty() || sweep.front().rows.empty() ? "" : sweep.front().rows.front().language;
  out << "Size sweep" << (language.empty() ? "" : " for " + language) << '\n';
  out << pad_right("size", 12) << pad_left("true words", 16) << pad_left("estimate", 16) << pad_left("error", 10)
      << '\n';
  for (const auto& report : sweep) {
    std::string size = report.id;
    if (size.rfind("sweep-", 0) == 0) size = size.substr(6);
    out << pad_right(size, 12);
    if (report.rows.empty()) {
      out << '\n';
      continue;
    }
    const auto& row = report.rows.front();
    if (!row.ok()) {
      out << "  error: " << row.error << '\n';
      continue;
    }
    out << pad_left(detail::with_thousands(row.true_word_count), 16) << pad_left(rounded_count(row.estimate), 16)
        << pad_left(signed_percent(row.signed_error_percent), 10);
    if (!row.note.empty()) out << "  (" << row.note << ')';
    out << '\n';
  }
  return out.str();
}

std::string format_domain_text(const DomainReport& report) {
  std::ostringstream out;
  out << "Domain comparison" << (report.language.empty() ? "" : " for " + report.language) << '\n';
  if (!report.error.empty()) {
    out << "error: " << report.error << '\n';
    return out.str();
  }
  const std::string labels[2] = {report.label_a, report.label_b};
  out << pad_right("predictors", 16);
  for (const auto& l : labels) out << pad_left("test " + l, 16);
  out << pad_left("mean |error|", 14) << '\n';
  for (int p = 0; p < 2; ++p) {
    out << pad_right(labels[p], 16);
    for (int t = 0; t < 2; ++t) out << pad_left(signed_percent(report.errors[p][t]), 16);
    out << pad_left(fixed(report.mean_abs_error(p), 2) + "%", 14) << '\n';
  }
  return out.str();
}

std::string format_experiment_json(const ExperimentReport& report) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["experiment"] = report_json(report);
  return j.dump(2) + "\n";
}

std::string format_sweep_json(const std::vector<ExperimentReport>& sweep) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["sweep"] = Json::array();
  for (const auto& report : sweep) j["sweep"].push_back(report_json(report));
  return j.dump(2) + "\n";
}

std::string format_domain_json(const DomainReport& report) {
  Json j;
  j["format_version"] = kFormatVersion;
  Json d;
  d["language"] = report.language;
  if (!report.error.empty()) {
    d["error"] = report.error;
  } else {
    const std::string labels[2] = {report.label_a, report.label_b};
    d["truth"] = {{labels[0], report.truth[0]}, {labels[1], report.truth[1]}};
    d["grid"] = Json::array();
    for (int p = 0; p < 2; ++p) {
      for (int t = 0; t < 2; ++t) {
        d["grid"].push_back({{"predictors", labels[p]},
                             {"test", labels[t]},
                             {"estimate", real(report.estimates[p][t])},
                             {"signed_error_percent", real(report.errors[p][t])}});
      }
    }
  }
  j["domain"] = d;
  return j.dump(2) + "\n";
}

}  // namespace langvol
