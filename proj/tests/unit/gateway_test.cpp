#include <doctest.h>

#include <thread>

#include "expertquest/live_sources.hpp"
#include "support/fake_clock.hpp"
#include "support/scripted_transport.hpp"

TEST_SUITE_BEGIN("sources");

namespace src = expertquest::sources;
using expertquest::testing::FakeClock;
using expertquest::testing::ScriptedTransport;
using Reply = ScriptedTransport::Reply;
using namespace std::chrono_literals;

namespace {

struct Rig {
  std::shared_ptr<FakeClock> clock = std::make_shared<FakeClock>();
  std::shared_ptr<ScriptedTransport> transport = std::make_shared<ScriptedTransport>(clock);
  src::HttpGateway gateway{"http://stub.invalid", transport, clock};

  std::chrono::seconds since_start(src::Clock::time_point t) const {
    return std::chrono::duration_cast<std::chrono::seconds>(t - start);
  }
  src::Clock::time_point start = clock->now();
};

src::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const src::SourceError& e) {
    return e.kind();
  }
  FAIL("no SourceError thrown");
  return src::ErrorKind::MalformedDocument;
}

}  // namespace

TEST_CASE("gateway passes through a success") {
  Rig rig;
  rig.transport->push({200, "ok", {}});
  const auto r = rig.gateway.get("/x");
  CHECK(r.status == 200);
  CHECK(r.body == "ok");
  CHECK(rig.clock->sleeps().empty());
}

TEST_CASE("gateway returns 404 to the caller without retrying") {
  Rig rig;
  rig.transport->push({404, "", {}});
  CHECK(rig.gateway.get("/x").status == 404);
  CHECK(rig.transport->seen().size() == 1);
}

TEST_CASE("gateway retries transport failures with 1s 2s 4s backoff") {
  Rig rig;
  for (int i = 0; i < 3; ++i) rig.transport->push({0, "", {}, true});
  rig.transport->push({200, "late", {}});
  CHECK(rig.gateway.get("/x").body == "late");
  const auto seen = rig.transport->seen();
  REQUIRE(seen.size() == 4);
  CHECK(rig.since_start(seen[0].at) == 0s);
  CHECK(rig.since_start(seen[1].at) == 1s);
  CHECK(rig.since_start(seen[2].at) == 3s);
  CHECK(rig.since_start(seen[3].at) == 7s);
}

TEST_CASE("gateway gives up after three retries") {
  Rig rig;
  rig.transport->set_default([](const std::string&) { return Reply{503, "", {}}; });
  CHECK(kind_of([&] { rig.gateway.get("/x"); }) == src::ErrorKind::BackendUnreachable);
  CHECK(rig.transport->seen().size() == 4);

  Rig rig2;
  rig2.transport->set_default([](const std::string&) { return Reply{0, "", {}, true}; });
  CHECK(kind_of([&] { rig2.gateway.get("/x"); }) == src::ErrorKind::BackendUnreachable);
  CHECK(rig2.transport->seen().size() == 4);
}

TEST_CASE("gateway does not retry auth failures") {
  Rig rig;
  rig.transport->push({401, "", {}});
  CHECK(kind_of([&] { rig.gateway.get("/x"); }) == src::ErrorKind::AuthFailure);
  CHECK(rig.transport->seen().size() == 1);

  Rig rig2;
  rig2.transport->push({403, "", {{"X-RateLimit-Remaining", "12"}}});
  CHECK(kind_of([&] { rig2.gateway.get("/x"); }) == src::ErrorKind::AuthFailure);
  CHECK(rig2.transport->seen().size() == 1);
}

TEST_CASE("rate limit with Retry-After holds every request until the retry time") {
  Rig rig;
  rig.transport->push({429, "", {{"Retry-After", "120"}}});
  rig.transport->push({200, "ok", {}});
  CHECK(rig.gateway.get("/a").body == "ok");
  const auto seen = rig.transport->seen();
  REQUIRE(seen.size() == 2);
  CHECK(rig.since_start(seen[1].at) == 120s);
  for (const auto& s : seen) {
    CHECK((s.at == rig.start || s.at >= rig.start + 120s));
  }
}

TEST_CASE("rate limit with a reset epoch") {
  Rig rig;
  const auto reset = rig.clock->epoch_seconds() + 900;
  rig.transport->push({429, "", {{"x-rate-limit-reset", std::to_string(reset)}}});
  rig.transport->push({200, "ok", {}});
  rig.gateway.get("/a");
  const auto seen = rig.transport->seen();
  REQUIRE(seen.size() == 2);
  CHECK(rig.since_start(seen[1].at) == 900s);
}

TEST_CASE("403 with exhausted quota is a rate limit, not an auth failure") {
  Rig rig;
  const auto reset = rig.clock->epoch_seconds() + 30;
  rig.transport->push({403, "",
                       {{"X-RateLimit-Remaining", "0"},
                        {"X-RateLimit-Reset", std::to_string(reset)}}});
  rig.transport->push({200, "ok", {}});
  CHECK(rig.gateway.get("/a").status == 200);
  CHECK(rig.since_start(rig.transport->seen()[1].at) == 30s);
}

TEST_CASE("420 uses the default wait when no hint is given") {
  Rig rig;
  rig.transport->push({420, "", {}});
  rig.transport->push({200, "ok", {}});
  rig.gateway.get("/a");
  CHECK(rig.since_start(rig.transport->seen()[1].at) == 60s);
}

TEST_CASE("persistent rate limiting surfaces RateLimited with retry_after") {
  Rig rig;
  rig.transport->set_default(
      [](const std::string&) { return Reply{429, "", {{"Retry-After", "50"}}}; });
  try {
    rig.gateway.get("/a");
    FAIL("expected RateLimited");
  } catch (const src::SourceError& e) {
    CHECK(e.kind() == src::ErrorKind::RateLimited);
    REQUIRE(e.retry_after());
    CHECK(*e.retry_after() == 50s);
  }
  const auto seen = rig.transport->seen();
  REQUIRE(seen.size() == 4);
  for (std::size_t i = 1; i < seen.size(); ++i) {
    CHECK(seen[i].at - seen[i - 1].at >= 50s);
  }
  // the gate stays closed for the next caller
  CHECK(rig.gateway.gate() == rig.clock->now() + 50s);
}

TEST_CASE("a successful response announcing zero quota closes the gate") {
  Rig rig;
  const auto reset = rig.clock->epoch_seconds() + 300;
  rig.transport->push({200, "last", {{"x-rate-limit-remaining", "0"},
                                     {"x-rate-limit-reset", std::to_string(reset)}}});
  rig.transport->push({200, "next", {}});
  CHECK(rig.gateway.get("/a").body == "last");
  CHECK(rig.gateway.get("/b").body == "next");
  CHECK(rig.since_start(rig.transport->seen()[1].at) == 300s);
}

TEST_CASE("gate is shared by concurrent callers") {
  Rig rig;
  rig.transport->push({429, "", {{"Retry-After", "10"}}});
  rig.transport->set_default([](const std::string&) { return Reply{200, "ok", {}}; });
  rig.gateway.get("/first");
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&] { rig.gateway.get("/after"); });
  }
  for (auto& t : threads) t.join();
  const auto seen = rig.transport->seen();
  REQUIRE(seen.size() == 6);
  for (std::size_t i = 1; i < seen.size(); ++i) {
    CHECK(seen[i].at >= rig.start + 10s);
  }
}

TEST_SUITE_END();
