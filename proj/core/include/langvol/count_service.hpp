#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "langvol/providers.hpp"

namespace langvol {

struct ServiceResponse {
  int status = 200;
  std::string content_type;
  std::string body;
};

// Answers one GET /v1/counts request given its raw "terms" and "format"
// query parameters (already percent-decoded). Exposed for testing; the
// HTTP server delegates to it.
ServiceResponse handle_counts_request(const CountSource& source, const std::string* terms,
                                      const std::string* format);

// Read-only HTTP service exposing a CountSource:
//   GET /v1/counts?terms=t1,t2[&format=legacy]
// Success: {"counts": {...}, "total_tokens": N|null, "source_id": "..."}.
// Errors: {"error": "..."} with a 4xx/5xx status; the service keeps running.
class CountService {
 public:
  explicit CountService(std::shared_ptr<const CountSource> source);
  ~CountService();

  CountService(const CountService&) = delete;
  CountService& operator=(const CountService&) = delete;

  // Binds host:port (port 0 picks a free port). Throws NetworkError.
  void bind(const std::string& host, int port);
  int port() const noexcept { return port_; }
  std::string endpoint() const;

  // Blocks serving requests until stop() is called from another thread.
  void serve();
  // Serves on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::shared_ptr<const CountSource> source_;
  std::string host_;
  int port_ = 0;
  std::thread worker_;
};

// Splits "host:port" (port required). Throws UsageError when malformed.
std::pair<std::string, int> parse_bind_address(std::string_view address);

}  // namespace langvol
