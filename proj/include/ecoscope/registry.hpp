#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "ecoscope/snapshot.hpp"

namespace ecoscope {

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Minimal GET transport. Returns nullopt on a transport-level failure
/// (connection refused, timeout); HTTP errors come back as status codes.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual std::optional<HttpResponse> get(const std::string& url) = 0;
};

/// Default transport backed by cpp-httplib.
std::unique_ptr<HttpTransport> make_http_transport(double timeout_seconds);

struct RegistryConfig {
    Ecosystem ecosystem = Ecosystem::Npm;
    std::string base_url;        // package metadata endpoint
    std::string counts_url;      // download counts endpoint ("" = counts in metadata)
    double rate_limit_per_sec = 4.0;
    double timeout_seconds = 10.0;
    int max_retries = 5;
    double backoff_base_seconds = 0.5;
};

RegistryConfig load_registry_config(const std::string& path);

struct NotFoundError : Error {
    explicit NotFoundError(const std::string& name);
    std::string name;
};

struct RateLimitedError : Error {
    explicit RateLimitedError(const std::string& name);
};

struct TransportError : Error {
    explicit TransportError(const std::string& reason);
};

/// Registry API client. One rate limiter per client instance; share the
/// instance when driving requests concurrently against the same endpoint.
class RegistryClient {
public:
    using SleepFn = std::function<void(std::chrono::duration<double>)>;

    RegistryClient(RegistryConfig config, std::unique_ptr<HttpTransport> transport);

    /// Transient failures (5xx, 429, transport drops) are retried with
    /// exponential backoff up to config.max_retries.
    PackageRecord fetch_package_metadata(const std::string& name);

    /// Test hook; default sleeps for real.
    void set_sleep_fn(SleepFn fn) { sleep_ = std::move(fn); }

    int retries_performed() const { return retries_performed_; }

private:
    HttpResponse get_with_retry(const std::string& url, const std::string& name);
    void rate_limit_wait();

    RegistryConfig config_;
    std::unique_ptr<HttpTransport> transport_;
    SleepFn sleep_;
    std::mutex limiter_mutex_;
    std::chrono::steady_clock::time_point last_request_{};
    bool any_request_ = false;
    int retries_performed_ = 0;
};

/// Parses an ISO-8601 UTC timestamp ("2018-12-01T12:34:56.789Z") to epoch
/// seconds. Returns nullopt on malformed input.
std::optional<std::int64_t> parse_iso8601_utc(const std::string& text);

} // namespace ecoscope
