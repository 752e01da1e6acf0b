#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <thread>

#include "ecoscope/registry.hpp"

using namespace ecoscope;

namespace {

const char* kNpmPayload = R"({
  "dist-tags": {"latest": "5.2.0"},
  "versions": {"5.2.0": {"dependencies": {"cross-spawn": "^6.0.5"}}},
  "time": {"5.2.0": "2018-06-01T10:00:00.000Z"}
})";

// scripted transport: one entry per call, nullopt = connection drop
class FakeTransport : public HttpTransport {
public:
    std::vector<std::optional<HttpResponse>> script;
    std::vector<std::string> urls;

    std::optional<HttpResponse> get(const std::string& url) override {
        urls.push_back(url);
        REQUIRE(!script.empty());
        auto res = script.front();
        script.erase(script.begin());
        return res;
    }
};

std::unique_ptr<RegistryClient> make_client(std::unique_ptr<FakeTransport> transport,
                                            int max_retries = 5) {
    RegistryConfig cfg;
    cfg.ecosystem = Ecosystem::Npm;
    cfg.base_url = "http://reg.test/{name}";
    cfg.counts_url = "";
    cfg.rate_limit_per_sec = 0; // no throttling in unit tests
    cfg.max_retries = max_retries;
    cfg.backoff_base_seconds = 0.25;
    auto client = std::make_unique<RegistryClient>(cfg, std::move(transport));
    client->set_sleep_fn([](std::chrono::duration<double>) {});
    return client;
}

} // namespace

TEST_CASE("fetch populates record from npm metadata") {
    auto transport = std::make_unique<FakeTransport>();
    transport->script.push_back(HttpResponse{200, kNpmPayload});
    auto* raw = transport.get();
    auto client = make_client(std::move(transport));

    PackageRecord rec = client->fetch_package_metadata("cross-env");
    CHECK(rec.name == "cross-env");
    CHECK(rec.latest_version == "5.2.0");
    CHECK(rec.dependencies == std::vector<std::string>{"cross-spawn"});
    CHECK(rec.last_release == *parse_iso8601_utc("2018-06-01T10:00:00Z"));
    CHECK(raw->urls == std::vector<std::string>{"http://reg.test/cross-env"});
}

TEST_CASE("404 raises NotFound") {
    auto transport = std::make_unique<FakeTransport>();
    transport->script.push_back(HttpResponse{404, "{}"});
    auto client = make_client(std::move(transport));
    CHECK_THROWS_AS(client->fetch_package_metadata("no-such-package"), NotFoundError);
}

TEST_CASE("three transient failures then success, with backoff") {
    auto transport = std::make_unique<FakeTransport>();
    transport->script.push_back(std::nullopt);
    transport->script.push_back(HttpResponse{503, ""});
    transport->script.push_back(std::nullopt);
    transport->script.push_back(HttpResponse{200, kNpmPayload});
    auto client = make_client(std::move(transport));

    std::vector<double> sleeps;
    client->set_sleep_fn([&](std::chrono::duration<double> d) { sleeps.push_back(d.count()); });

    PackageRecord rec = client->fetch_package_metadata("cross-env");
    CHECK(rec.latest_version == "5.2.0");
    CHECK(client->retries_performed() == 3);
    // exponential: base, 2*base, 4*base
    REQUIRE(sleeps.size() == 3);
    CHECK(sleeps[0] == doctest::Approx(0.25));
    CHECK(sleeps[1] == doctest::Approx(0.5));
    CHECK(sleeps[2] == doctest::Approx(1.0));
}

TEST_CASE("retry exhaustion on 429 raises RateLimited") {
    auto transport = std::make_unique<FakeTransport>();
    for (int i = 0; i < 3; ++i) transport->script.push_back(HttpResponse{429, ""});
    auto client = make_client(std::move(transport), /*max_retries=*/2);
    CHECK_THROWS_AS(client->fetch_package_metadata("busy"), RateLimitedError);
}

TEST_CASE("retry exhaustion on connection drops raises Transport") {
    auto transport = std::make_unique<FakeTransport>();
    for (int i = 0; i < 3; ++i) transport->script.push_back(std::nullopt);
    auto client = make_client(std::move(transport), /*max_retries=*/2);
    CHECK_THROWS_AS(client->fetch_package_metadata("gone"), TransportError);
}

TEST_CASE("download counts come from the separate counts endpoint") {
    auto transport = std::make_unique<FakeTransport>();
    transport->script.push_back(HttpResponse{200, kNpmPayload});
    transport->script.push_back(HttpResponse{200, R"({"downloads": 123456})"});
    auto* raw = transport.get();

    RegistryConfig cfg;
    cfg.ecosystem = Ecosystem::Npm;
    cfg.base_url = "http://reg.test/{name}";
    cfg.counts_url = "http://counts.test/downloads/{name}";
    cfg.rate_limit_per_sec = 0;
    RegistryClient client(cfg, std::move(transport));
    client.set_sleep_fn([](std::chrono::duration<double>) {});

    PackageRecord rec = client.fetch_package_metadata("cross-env");
    CHECK(rec.downloads == 123456);
    CHECK(raw->urls.size() == 2);
    CHECK(raw->urls[1] == "http://counts.test/downloads/cross-env");
}

TEST_CASE("pypi metadata parse") {
    const char* payload = R"json({
      "info": {
        "version": "4.7.1",
        "requires_dist": ["soupsieve (>1.2)", "lxml ; extra == 'lxml'"]
      },
      "releases": {"4.7.1": [{
        "upload_time_iso_8601": "2019-01-07T12:00:00.000000Z",
        "digests": {"sha256": "abc123"}
      }]}
    })json";
    auto transport = std::make_unique<FakeTransport>();
    transport->script.push_back(HttpResponse{200, payload});
    RegistryConfig cfg;
    cfg.ecosystem = Ecosystem::PyPI;
    cfg.base_url = "http://pypi.test/pypi/{name}/json";
    cfg.rate_limit_per_sec = 0;
    RegistryClient client(cfg, std::move(transport));
    client.set_sleep_fn([](std::chrono::duration<double>) {});

    PackageRecord rec = client.fetch_package_metadata("beautifulsoup4");
    CHECK(rec.latest_version == "4.7.1");
    CHECK(rec.dependencies == std::vector<std::string>{"soupsieve"}); // extras skipped
    CHECK(rec.file_hashes == std::vector<std::string>{"abc123"});
}

TEST_CASE("iso8601 parsing") {
    CHECK(*parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
    CHECK(*parse_iso8601_utc("2019-01-01T00:00:00.000Z") == 1546300800);
    CHECK(!parse_iso8601_utc("yesterday"));
}

TEST_CASE("real transport against an in-process server") {
    httplib::Server server;
    server.Get("/cross-env", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(kNpmPayload, "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    RegistryConfig cfg;
    cfg.ecosystem = Ecosystem::Npm;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(port) + "/{name}";
    cfg.rate_limit_per_sec = 0;
    cfg.max_retries = 0;
    RegistryClient client(cfg, make_http_transport(2.0));
    PackageRecord rec = client.fetch_package_metadata("cross-env");
    CHECK(rec.latest_version == "5.2.0");

    server.stop();
    server_thread.join();
}
