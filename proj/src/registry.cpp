#include <httplib.h>

#include "ecoscope/registry.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "ecoscope/manifest.hpp"

namespace ecoscope {

using json = nlohmann::json;

NotFoundError::NotFoundError(const std::string& name)
    : Error("package not found: " + name), name(name) {}

RateLimitedError::RateLimitedError(const std::string& name)
    : Error("rate limited while fetching " + name) {}

TransportError::TransportError(const std::string& reason)
    : Error("transport failure: " + reason) {}

std::optional<std::int64_t> parse_iso8601_utc(const std::string& text) {
    int year, month, day, hour, minute, second;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d", &year, &month, &day, &hour,
                    &minute, &second) != 6)
        return std::nullopt;
    std::tm tm{};
    tm.tm_year = year - 1900;
    tm.tm_mon = month - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    tm.tm_sec = second;
    std::time_t t = timegm(&tm);
    if (t == -1) return std::nullopt;
    return static_cast<std::int64_t>(t);
}

namespace {

struct ParsedUrl {
    std::string origin; // scheme://host[:port]
    std::string path;
};

ParsedUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = url.find('/', host_start);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public HttpTransport {
public:
    explicit HttplibTransport(double timeout_seconds) : timeout_(timeout_seconds) {}

    std::optional<HttpResponse> get(const std::string& url) override {
        ParsedUrl parsed = split_url(url);
        httplib::Client client(parsed.origin);
        client.set_connection_timeout(std::chrono::duration<double>(timeout_));
        client.set_read_timeout(std::chrono::duration<double>(timeout_));
        client.set_follow_location(true);
        auto res = client.Get(parsed.path);
        if (!res) return std::nullopt;
        return HttpResponse{res->status, res->body};
    }

private:
    double timeout_;
};

std::string expand_url(const std::string& url_template, const std::string& name) {
    auto pos = url_template.find("{name}");
    if (pos == std::string::npos) return url_template + "/" + name;
    std::string out = url_template;
    out.replace(pos, 6, name);
    return out;
}

PackageRecord parse_npm_metadata(const std::string& body, const std::string& name) {
    json j = json::parse(body);
    PackageRecord rec;
    rec.name = name;
    rec.ecosystem = Ecosystem::Npm;
    rec.latest_version = j.at("dist-tags").value("latest", std::string{});
    if (!rec.latest_version.empty() && j.contains("versions") &&
        j.at("versions").contains(rec.latest_version)) {
        const auto& ver = j.at("versions").at(rec.latest_version);
        if (ver.contains("dependencies"))
            for (const auto& [dep, constraint] : ver.at("dependencies").items())
                if (dep != name) rec.dependencies.push_back(dep);
    }
    if (j.contains("time") && j.at("time").contains(rec.latest_version))
        if (auto t = parse_iso8601_utc(j.at("time").at(rec.latest_version)))
            rec.last_release = *t;
    return rec;
}

PackageRecord parse_pypi_metadata(const std::string& body, const std::string& name) {
    json j = json::parse(body);
    PackageRecord rec;
    rec.name = name;
    rec.ecosystem = Ecosystem::PyPI;
    const auto& info = j.at("info");
    rec.latest_version = info.value("version", std::string{});
    if (info.contains("requires_dist") && info.at("requires_dist").is_array()) {
        for (const auto& entry : info.at("requires_dist")) {
            std::string req = entry.get<std::string>();
            if (req.find("extra ==") != std::string::npos) continue; // optional extras
            std::string dep = strip_requirement(req);
            if (!dep.empty() && dep != name) rec.dependencies.push_back(dep);
        }
    }
    if (j.contains("releases") && j.at("releases").contains(rec.latest_version)) {
        for (const auto& file : j.at("releases").at(rec.latest_version)) {
            if (file.contains("upload_time_iso_8601"))
                if (auto t = parse_iso8601_utc(file.at("upload_time_iso_8601")))
                    rec.last_release = std::max(rec.last_release, *t);
            if (file.contains("digests") && file.at("digests").contains("sha256"))
                rec.file_hashes.push_back(file.at("digests").at("sha256"));
        }
    }
    return rec;
}

std::uint64_t parse_downloads(const std::string& body) {
    json j = json::parse(body);
    if (j.contains("downloads")) {
        if (j.at("downloads").is_number()) return j.at("downloads").get<std::uint64_t>();
        // pypistats-style: {"downloads": {"last_month": N, ...}} not supported; total only
    }
    return 0;
}

bool is_transient(const std::optional<HttpResponse>& res) {
    if (!res) return true;
    return res->status == 429 || res->status >= 500;
}

} // namespace

std::unique_ptr<HttpTransport> make_http_transport(double timeout_seconds) {
    return std::make_unique<HttplibTransport>(timeout_seconds);
}

RegistryConfig load_registry_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open registry config: " + path);
    json j = json::parse(in);
    RegistryConfig cfg;
    auto eco = ecosystem_from_string(j.value("ecosystem", std::string{"npm"}));
    if (!eco) throw Error("registry config: unknown ecosystem");
    cfg.ecosystem = *eco;
    cfg.base_url = j.at("base_url").get<std::string>();
    cfg.counts_url = j.value("counts_url", std::string{});
    cfg.rate_limit_per_sec = j.value("rate_limit_per_sec", 4.0);
    cfg.timeout_seconds = j.value("timeout_seconds", 10.0);
    cfg.max_retries = j.value("max_retries", 5);
    cfg.backoff_base_seconds = j.value("backoff_base_seconds", 0.5);
    return cfg;
}

RegistryClient::RegistryClient(RegistryConfig config, std::unique_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
    sleep_ = [](std::chrono::duration<double> d) { std::this_thread::sleep_for(d); };
}

void RegistryClient::rate_limit_wait() {
    std::chrono::duration<double> wait{0};
    {
        std::lock_guard<std::mutex> lock(limiter_mutex_);
        auto now = std::chrono::steady_clock::now();
        if (any_request_ && config_.rate_limit_per_sec > 0) {
            auto min_interval = std::chrono::duration<double>(1.0 / config_.rate_limit_per_sec);
            auto elapsed = std::chrono::duration<double>(now - last_request_);
            if (elapsed < min_interval) wait = min_interval - elapsed;
        }
        last_request_ = now + std::chrono::duration_cast<std::chrono::steady_clock::duration>(wait);
        any_request_ = true;
    }
    if (wait.count() > 0) sleep_(wait);
}

HttpResponse RegistryClient::get_with_retry(const std::string& url, const std::string& name) {
    std::optional<HttpResponse> res;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            ++retries_performed_;
            sleep_(std::chrono::duration<double>(config_.backoff_base_seconds *
                                                 std::pow(2.0, attempt - 1)));
        }
        rate_limit_wait();
        res = transport_->get(url);
        if (!is_transient(res)) break;
    }
    if (is_transient(res)) {
        if (res && res->status == 429) throw RateLimitedError(name);
        throw TransportError(res ? "HTTP " + std::to_string(res->status)
                                 : "connection failed: " + url);
    }
    if (res->status == 404 || res->status == 410) throw NotFoundError(name);
    if (res->status >= 400) throw TransportError("HTTP " + std::to_string(res->status));
    return *res;
}

PackageRecord RegistryClient::fetch_package_metadata(const std::string& name) {
    HttpResponse meta = get_with_retry(expand_url(config_.base_url, name), name);
    PackageRecord rec;
    try {
        rec = config_.ecosystem == Ecosystem::Npm ? parse_npm_metadata(meta.body, name)
                                                  : parse_pypi_metadata(meta.body, name);
    } catch (const json::exception& e) {
        throw TransportError(std::string("bad metadata payload: ") + e.what());
    }
    if (!config_.counts_url.empty()) {
        HttpResponse counts = get_with_retry(expand_url(config_.counts_url, name), name);
        try {
            rec.downloads = parse_downloads(counts.body);
        } catch (const json::exception& e) {
            throw TransportError(std::string("bad counts payload: ") + e.what());
        }
    }
    return rec;
}

} // namespace ecoscope
