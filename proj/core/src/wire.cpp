// HTTP transport for count queries: the RemoteSource client and the
// CountService server share the /v1/counts wire format defined here.
#include <chrono>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "langvol/count_service.hpp"
#include "langvol/error.hpp"
#include "langvol/providers.hpp"

namespace langvol {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kCountsPath = "/v1/counts";
constexpr const char* kAsOfHeader = "X-As-Of";

std::string counts_document(const CountQuery& query, const CountResult& result) {
  json doc;
  json counts = json::object();
  for (const auto& term : query.terms()) counts[term] = result.counts.at(term);
  doc["counts"] = std::move(counts);
  doc["total_tokens"] = result.total_tokens ? json(*result.total_tokens) : json(nullptr);
  doc["source_id"] = result.source_id;
  return doc.dump();
}

std::string error_document(const std::string& message) {
  json doc;
  doc["error"] = message;
  return doc.dump();
}

std::vector<std::string> split_terms(const std::string& list) {
  std::vector<std::string> terms;
  std::size_t start = 0;
  while (true) {
    const auto comma = list.find(',', start);
    terms.push_back(list.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return terms;
}

CountResult parse_counts_document(const CountQuery& query, const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw NetworkError(NetworkError::Kind::malformed_response, std::string("response is not JSON: ") + e.what());
  }
  auto malformed = [](const std::string& why) {
    return NetworkError(NetworkError::Kind::malformed_response, "malformed count response: " + why);
  };
  if (!doc.is_object() || !doc.contains("counts") || !doc["counts"].is_object()) throw malformed("no counts object");
  CountResult result;
  for (const auto& [term, value] : doc["counts"].items()) {
    if (!value.is_number_unsigned()) throw malformed("count for '" + term + "' is not a non-negative integer");
    result.counts.emplace(term, value.get<std::uint64_t>());
  }
  if (result.counts.size() != query.terms().size()) throw malformed("term set differs from the query");
  for (const auto& term : query.terms()) {
    if (!result.counts.count(term)) throw malformed("missing count for '" + term + "'");
  }
  if (doc.contains("total_tokens") && !doc["total_tokens"].is_null()) {
    if (!doc["total_tokens"].is_number_unsigned()) throw malformed("total_tokens is not a non-negative integer");
    result.total_tokens = doc["total_tokens"].get<std::uint64_t>();
  }
  if (doc.contains("source_id")) {
    if (!doc["source_id"].is_string()) throw malformed("source_id is not a string");
    result.source_id = doc["source_id"].get<std::string>();
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Client

RemoteSource::RemoteSource(std::string endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(std::move(options)) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
  const std::string http = "http://";
  if (endpoint_.rfind(http, 0) != 0) {
    throw UsageError("remote endpoint must start with http:// (got '" + endpoint_ + "')");
  }
  const auto path_start = endpoint_.find('/', http.size());
  scheme_host_port_ = endpoint_.substr(0, path_start);
  if (path_start != std::string::npos) path_prefix_ = endpoint_.substr(path_start);
  if (scheme_host_port_.size() == http.size()) throw UsageError("remote endpoint has no host");
  if (options_.attempts < 1) options_.attempts = 1;
}

std::string RemoteSource::request_target(const CountQuery& query) const {
  std::string target = path_prefix_ + kCountsPath + std::string("?terms=");
  bool first = true;
  for (const auto& term : query.terms()) {
    if (!first) target.push_back(',');
    first = false;
    target += percent_encode(term);
  }
  if (options_.legacy_format) target += "&format=legacy";
  return target;
}

CountResult RemoteSource::get_counts(const CountQuery& query) const {
  httplib::Client client(scheme_host_port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  const std::string target = request_target(query);
  auto backoff = options_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    auto res = client.Get(target);
    if (!res) {
      last_error = httplib::to_string(res.error());
      if (options_.log) {
        options_.log("attempt " + std::to_string(attempt) + "/" + std::to_string(options_.attempts) + " to " +
                     endpoint_ + " failed: " + last_error);
      }
      if (attempt < options_.attempts) {
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
      continue;
    }
    if (res->status != 200) {
      std::string detail = res->body;
      try {
        auto doc = json::parse(res->body);
        if (doc.contains("error") && doc["error"].is_string()) detail = doc["error"].get<std::string>();
      } catch (const json::exception&) {
      }
      throw NetworkError(NetworkError::Kind::http_status,
                         "HTTP " + std::to_string(res->status) + " from " + endpoint_ + ": " + detail, attempt);
    }

    CountResult result;
    if (options_.legacy_format) {
      TermCounts counts;
      try {
        counts = parse_legacy_wordcount(res->body);
      } catch (const ParseError& e) {
        throw NetworkError(NetworkError::Kind::malformed_response,
                           std::string("malformed legacy response: ") + e.what(), attempt);
      }
      for (const auto& term : query.terms()) {
        auto it = counts.find(term);
        if (it == counts.end()) {
          throw NetworkError(NetworkError::Kind::malformed_response,
                             "legacy response lacks '" + term + "'", attempt);
        }
        result.counts.emplace(term, it->second);
      }
      if (result.counts.size() != counts.size()) {
        throw NetworkError(NetworkError::Kind::malformed_response, "legacy response has extra terms", attempt);
      }
      result.source_id = endpoint_;
    } else {
      result = parse_counts_document(query, res->body);
    }
    result.as_of = res->get_header_value(kAsOfHeader);
    return result;
  }
  throw NetworkError(NetworkError::Kind::unreachable,
                     "no response from " + endpoint_ + " after " + std::to_string(options_.attempts) +
                         " attempts: " + last_error,
                     options_.attempts);
}

// ---------------------------------------------------------------------------
// Server

ServiceResponse handle_counts_request(const CountSource& source, const std::string* terms,
                                      const std::string* format) {
  const std::string json_type = "application/json";
  if (terms == nullptr || terms->empty()) return {400, json_type, error_document("missing 'terms' parameter")};
  const bool legacy = format != nullptr && *format == "legacy";
  if (format != nullptr && !legacy && *format != "json") {
    return {400, json_type, error_document("unknown format '" + *format + "'")};
  }
  std::optional<CountQuery> query;
  try {
    query.emplace(split_terms(*terms));
  } catch (const DataError& e) {
    return {400, json_type, error_document(e.what())};
  }
  try {
    const CountResult result = source.get_counts(*query);
    if (legacy) return {200, "text/plain; charset=utf-8", format_legacy_wordcount(result.counts)};
    return {200, json_type, counts_document(*query, result)};
  } catch (const std::exception& e) {
    return {500, json_type, error_document(e.what())};
  }
}

struct CountService::Impl {
  httplib::Server server;
};

CountService::CountService(std::shared_ptr<const CountSource> source)
    : impl_(std::make_unique<Impl>()), source_(std::move(source)) {
  // httplib's default also sets SO_REUSEPORT, which would let a second
  // server silently share a port that is already taken.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  std::string as_of;
  if (auto* local = dynamic_cast<const LocalSource*>(source_.get())) as_of = local->as_of();

  impl_->server.Get(kCountsPath, [this, as_of](const httplib::Request& req, httplib::Response& res) {
    const std::string terms = req.get_param_value("terms");
    const std::string format = req.get_param_value("format");
    const ServiceResponse out = handle_counts_request(*source_, req.has_param("terms") ? &terms : nullptr,
                                                      req.has_param("format") ? &format : nullptr);
    res.status = out.status;
    if (!as_of.empty()) res.set_header(kAsOfHeader, as_of);
    res.set_content(out.body, out.content_type);
  });
  impl_->server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(error_document("HTTP " + std::to_string(res.status)), "application/json");
    }
  });
}

CountService::~CountService() { stop(); }

void CountService::bind(const std::string& host, int port) {
  host_ = host;
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
    if (port_ < 0) throw NetworkError(NetworkError::Kind::unreachable, "cannot bind " + host + ":0");
  } else {
    if (!impl_->server.bind_to_port(host, port)) {
      throw NetworkError(NetworkError::Kind::unreachable, "cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
  }
}

std::string CountService::endpoint() const { return "http://" + host_ + ":" + std::to_string(port_); }

void CountService::serve() { impl_->server.listen_after_bind(); }

void CountService::start() {
  worker_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void CountService::stop() {
  if (impl_) impl_->server.stop();
  if (worker_.joinable()) worker_.join();
}

std::pair<std::string, int> parse_bind_address(std::string_view address) {
  const auto colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 >= address.size()) {
    throw UsageError("bind address must be host:port");
  }
  const std::string host(address.substr(0, colon));
  int port = 0;
  const std::string digits(address.substr(colon + 1));
  try {
    std::size_t used = 0;
    port = std::stoi(digits, &used);
    if (used != digits.size()) throw std::invalid_argument(digits);
  } catch (const std::exception&) {
    throw UsageError("invalid port in '" + std::string(address) + "'");
  }
  if (port < 0 || port > 65535) throw UsageError("port out of range in '" + std::string(address) + "'");
  return {host, port};
}

}  // namespace langvol
