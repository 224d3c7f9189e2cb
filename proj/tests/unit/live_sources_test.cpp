#include <doctest.h>

#include <atomic>
#include <mutex>
#include <nlohmann/json.hpp>

#include "expertquest/live_sources.hpp"
#include "support/corpus_builder.hpp"
#include "support/fake_clock.hpp"
#include "support/stub_server.hpp"

TEST_SUITE_BEGIN("sources");

namespace src = expertquest::sources;
using expertquest::testing::FakeClock;
using expertquest::testing::StubServer;
using nlohmann::json;
using namespace std::chrono_literals;

namespace {

json tweet(const std::string& handle, const std::string& text, int followers) {
  return {{"full_text", text},
          {"user", {{"screen_name", handle}, {"name", handle + " N"}, {"followers_count", followers}}}};
}

const char* kClojureDoc = R"({
  "http://dbpedia.org/resource/Clojure": {
    "http://dbpedia.org/ontology/abstract": [
      {"type": "literal", "lang": "de", "value": "Clojure ist ein Lisp-Dialekt."},
      {"type": "literal", "lang": "en", "value": "Clojure is a dialect of Lisp."}
    ]
  },
  "http://dbpedia.org/resource/Rich_Hickey": {}
})";

/// Stub of all three services on one loopback port.
struct LiveRig {
  std::shared_ptr<FakeClock> clock = std::make_shared<FakeClock>();
  std::mutex mu;
  std::vector<std::string> paths;
  std::vector<src::Clock::time_point> limited_hits;
  std::atomic<int> limited_calls{0};
  std::string last_auth;
  // Last, so handlers and the logger never outlive the state they touch.
  StubServer stub;

  LiveRig() {
    auto& s = stub.server();
    s.set_logger([this](const httplib::Request& req, const httplib::Response&) {
      std::lock_guard lock(mu);
      paths.push_back(req.path);
    });
    s.Post("/oauth2/token", [this](const httplib::Request& req, httplib::Response& res) {
      {
        std::lock_guard lock(mu);
        last_auth = req.get_header_value("Authorization");
      }
      if (req.body != "grant_type=client_credentials") {
        res.status = 400;
        return;
      }
      res.set_content(R"js({"token_type":"bearer","access_token":"minted"})js", "application/json");
    });
    s.Get("/1.1/search/tweets.json", [this](const httplib::Request& req, httplib::Response& res) {
      {
        std::lock_guard lock(mu);
        last_auth = req.get_header_value("Authorization");
      }
      json statuses = json::array();
      const int count = std::stoi(req.get_param_value("count"));
      const std::string q = req.get_param_value("q");
      for (int i = 0; i < std::min(count, 3); ++i) {
        statuses.push_back(tweet("user" + std::to_string(i), q + " post", 10 * i));
      }
      res.set_content(json{{"statuses", statuses}}.dump(), "application/json");
    });
    s.Get("/1.1/statuses/user_timeline.json",
          [](const httplib::Request& req, httplib::Response& res) {
            if (req.get_param_value("screen_name") != "alice") {
              res.status = 404;
              res.set_content(R"js({"errors":[{"code":34}]})js", "application/json");
              return;
            }
            json arr = json::array();
            for (int i = 0; i < 40; ++i) arr.push_back(tweet("alice", "t" + std::to_string(i), 5));
            res.set_content(arr.dump(), "application/json");
          });
    s.Get("/users/alice", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"js({"login":"Alice","followers":42,"html_url":"https://github.com/Alice"})js",
                      "application/json");
    });
    s.Get("/users/alice/repos", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"([{"full_name":"Alice/one"},{"full_name":"Alice/two"},{"full_name":"Alice/gone"}])",
                      "application/json");
    });
    s.Get("/repos/Alice/one/languages", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"js({"Scala":1000})js", "application/json");
    });
    s.Get("/repos/Alice/two/languages", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"js({"Scala":500,"Java":10})js", "application/json");
    });
    s.Get("/data/Clojure.json", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kClojureDoc, "application/json");
    });
    s.Get(R"(/data/Java_\(programming_language\)\.json)",
          [](const httplib::Request&, httplib::Response& res) {
            res.set_content(R"js({"http://dbpedia.org/resource/Java_(programming_language)": {}})js",
                            "application/json");
          });
    s.Get("/limited", [this](const httplib::Request&, httplib::Response& res) {
      {
        std::lock_guard lock(mu);
        limited_hits.push_back(clock->now());
      }
      if (limited_calls++ < 2) {
        res.status = 429;
        res.set_header("Retry-After", "30");
        return;
      }
      res.set_content("done", "text/plain");
    });
    s.Get("/flaky", [this](const httplib::Request&, httplib::Response& res) {
      {
        std::lock_guard lock(mu);
        limited_hits.push_back(clock->now());
      }
      res.status = limited_calls++ < 2 ? 502 : 200;
    });
    stub.start();
  }

  src::Credentials creds(bool bearer = true) const {
    src::Credentials c;
    if (bearer) {
      c.twitter.bearer_token = "static";
    } else {
      c.twitter.consumer_key = "key";
      c.twitter.consumer_secret = "secret";
    }
    c.twitter.base_url = stub.base_url();
    c.github.base_url = stub.base_url();
    c.github.token = "gh";
    c.dbpedia.base_url = stub.base_url();
    return c;
  }

  src::SourceSet sources(bool bearer = true) {
    src::LiveOptions opts;
    opts.clock = clock;
    opts.timeout = 5s;
    return src::make_live_sources(creds(bearer), opts);
  }
};

}  // namespace

TEST_CASE("live twitter search and timeline against the stub") {
  LiveRig rig;
  auto s = rig.sources();
  CHECK(s.kind == src::BackendKind::Live);

  const auto posts = s.microblog->search_posts("C++ github", 2);
  REQUIRE(posts.size() == 2);
  CHECK(posts[0].text == "C++ github post");
  CHECK(posts[1].author_handle == "user1");
  CHECK(posts[1].author_follower_count == 10);
  CHECK(rig.last_auth == "Bearer static");

  CHECK(s.microblog->get_timeline("alice", 25).size() == 25);
  CHECK(s.microblog->get_timeline("alice", 25).front().text == "t0");
  try {
    s.microblog->get_timeline("nobody", 25);
    FAIL("expected UserNotFound");
  } catch (const src::SourceError& e) {
    CHECK(e.kind() == src::ErrorKind::UserNotFound);
  }
}

TEST_CASE("live twitter exchanges consumer credentials once") {
  LiveRig rig;
  auto s = rig.sources(false);
  s.microblog->search_posts("Go github", 1);
  CHECK(rig.last_auth == "Bearer minted");
  s.microblog->search_posts("Go github", 1);
  rig.stub.stop();  // flushes the access logger
  CHECK(std::count(rig.paths.begin(), rig.paths.end(), "/oauth2/token") == 1);
}

TEST_CASE("live github user and repository bytes") {
  LiveRig rig;
  auto s = rig.sources();
  const auto u = s.codehost->get_code_user("alice");
  REQUIRE(u);
  CHECK(u->handle == "Alice");
  CHECK(u->follower_count == 42);
  CHECK_FALSE(s.codehost->get_code_user("ghost"));
  CHECK(s.codehost->get_repo_language_bytes("alice", "Scala") == 1500);
  CHECK(s.codehost->get_repo_language_bytes("alice", "scala") == 1500);
  CHECK(s.codehost->get_repo_language_bytes("alice", "Fortran") == 0);
  CHECK_THROWS_AS(s.codehost->get_repo_language_bytes("ghost", "Scala"), src::SourceError);
}

TEST_CASE("live dbpedia abstract") {
  LiveRig rig;
  auto s = rig.sources();
  CHECK(s.encyclopedia->get_abstract("Clojure").text == "Clojure is a dialect of Lisp.");
  CHECK(s.encyclopedia->get_abstract("Java (programming language)").text.empty());
  try {
    s.encyclopedia->get_abstract("Nope");
    FAIL("expected ResourceNotFound");
  } catch (const src::SourceError& e) {
    CHECK(e.kind() == src::ErrorKind::ResourceNotFound);
  }
}

TEST_CASE("live rate limit is honoured against the stub with a fake clock") {
  LiveRig rig;
  auto transport = std::make_shared<src::HttplibTransport>(5s);
  src::HttpGateway gw(rig.stub.base_url(), transport, rig.clock);
  const auto start = rig.clock->now();
  CHECK(gw.get("/limited").body == "done");
  REQUIRE(rig.limited_hits.size() == 3);
  CHECK(rig.limited_hits[0] == start);
  CHECK(rig.limited_hits[1] == start + 30s);
  CHECK(rig.limited_hits[2] == start + 60s);
}

TEST_CASE("live 5xx is retried with backoff against the stub") {
  LiveRig rig;
  auto transport = std::make_shared<src::HttplibTransport>(5s);
  src::HttpGateway gw(rig.stub.base_url(), transport, rig.clock);
  const auto start = rig.clock->now();
  CHECK(gw.get("/flaky").status == 200);
  REQUIRE(rig.limited_hits.size() == 3);
  CHECK(rig.limited_hits[1] - start == 1s);
  CHECK(rig.limited_hits[2] - start == 3s);
}

TEST_CASE("live transport failure maps to BackendUnreachable") {
  auto clock = std::make_shared<FakeClock>();
  int port = 0;
  {
    StubServer closed;
    closed.start();
    port = closed.port();
  }
  auto transport = std::make_shared<src::HttplibTransport>(2s);
  src::HttpGateway gw("http://127.0.0.1:" + std::to_string(port), transport, clock);
  try {
    gw.get("/x");
    FAIL("expected BackendUnreachable");
  } catch (const src::SourceError& e) {
    CHECK(e.kind() == src::ErrorKind::BackendUnreachable);
  }
  CHECK(clock->sleeps() == std::vector<std::chrono::seconds>{1s, 2s, 4s});
}

TEST_CASE("parse_dbpedia_abstract") {
  CHECK(src::parse_dbpedia_abstract("Clojure", kClojureDoc).text ==
        "Clojure is a dialect of Lisp.");
  CHECK_THROWS_AS(src::parse_dbpedia_abstract("Clojure", "<html>"), src::SourceError);
  try {
    src::parse_dbpedia_abstract("Scala", kClojureDoc);
    FAIL("expected ResourceNotFound");
  } catch (const src::SourceError& e) {
    CHECK(e.kind() == src::ErrorKind::ResourceNotFound);
  }
  CHECK(src::parse_dbpedia_abstract("Rich Hickey", kClojureDoc).text.empty());
}

TEST_CASE("credentials parsing") {
  const auto c = src::Credentials::parse(
      R"js({"twitter": {"bearer_token": "t"}, "github": {"token": "g", "base_url": "http://x"}})js");
  CHECK(c.twitter.bearer_token == "t");
  CHECK(c.twitter.base_url == "https://api.twitter.com");
  CHECK(c.github.base_url == "http://x");
  CHECK(c.dbpedia.base_url == "https://dbpedia.org");
  CHECK_NOTHROW(src::Credentials::parse(
      R"js({"twitter": {"consumer_key": "k", "consumer_secret": "s"}})js"));
  CHECK_THROWS_AS(src::Credentials::parse(R"js({"twitter": {"consumer_key": "k"}})js"),
                  std::invalid_argument);
  CHECK_THROWS_AS(src::Credentials::parse("[]"), std::invalid_argument);
  CHECK_THROWS_AS(src::Credentials::parse("{"), std::invalid_argument);

  expertquest::testing::TempDir dir;
  std::ofstream(dir.path() / "c.json") << R"js({"twitter": {"bearer_token": "file"}})js";
  CHECK(src::Credentials::load(dir.path() / "c.json").twitter.bearer_token == "file");
  CHECK_THROWS(src::Credentials::load(dir.path() / "missing.json"));
}

TEST_SUITE_END();
