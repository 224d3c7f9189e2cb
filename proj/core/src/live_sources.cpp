#include <httplib.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "expertquest/live_sources.hpp"

namespace expertquest::sources {
namespace {

using nlohmann::json;

constexpr std::string_view kDbpediaResourcePrefix = "http://dbpedia.org/resource/";
constexpr std::string_view kDbpediaAbstract = "http://dbpedia.org/ontology/abstract";
constexpr std::size_t kMaxPageSize = 100;

json parse_body(const HttpResponse& r, const std::string& what) {
  try {
    return json::parse(r.body);
  } catch (const json::exception& e) {
    throw SourceError(ErrorKind::MalformedDocument, what + ": " + e.what());
  }
}

[[noreturn]] void unexpected(const HttpResponse& r, const std::string& what) {
  throw SourceError(ErrorKind::BackendUnreachable,
                    what + ": unexpected HTTP " + std::to_string(r.status));
}

Post tweet_to_post(const json& tweet) {
  const json& user = tweet.at("user");
  Post p;
  p.author_handle = user.at("screen_name").get<std::string>();
  p.author_display_name = user.value("name", std::string());
  p.author_follower_count = user.value("followers_count", std::uint64_t{0});
  p.text = tweet.contains("full_text") ? tweet.at("full_text").get<std::string>()
                                       : tweet.value("text", std::string());
  return p;
}

std::vector<Post> tweets_to_posts(const json& tweets, std::size_t count,
                                  const std::string& what) {
  if (!tweets.is_array()) {
    throw SourceError(ErrorKind::MalformedDocument, what + ": expected an array");
  }
  std::vector<Post> out;
  try {
    for (const auto& t : tweets) {
      if (out.size() >= count) break;
      out.push_back(tweet_to_post(t));
    }
  } catch (const json::exception& e) {
    throw SourceError(ErrorKind::MalformedDocument, what + ": " + e.what());
  }
  return out;
}

std::string underscored(std::string_view resource_id) {
  std::string out(resource_id);
  for (char& c : out) {
    if (c == ' ') c = '_';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

Credentials Credentials::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("credentials: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("credentials: expected an object");
  Credentials c;
  auto str = [](const json& obj, const char* key, std::string& into) {
    if (obj.contains(key)) into = obj.at(key).get<std::string>();
  };
  try {
    if (doc.contains("twitter")) {
      const auto& t = doc.at("twitter");
      str(t, "bearer_token", c.twitter.bearer_token);
      str(t, "consumer_key", c.twitter.consumer_key);
      str(t, "consumer_secret", c.twitter.consumer_secret);
      str(t, "base_url", c.twitter.base_url);
    }
    if (doc.contains("github")) {
      const auto& g = doc.at("github");
      str(g, "token", c.github.token);
      str(g, "base_url", c.github.base_url);
    }
    if (doc.contains("dbpedia")) str(doc.at("dbpedia"), "base_url", c.dbpedia.base_url);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("credentials: ") + e.what());
  }
  if (c.twitter.bearer_token.empty() &&
      (c.twitter.consumer_key.empty() || c.twitter.consumer_secret.empty())) {
    throw std::invalid_argument(
        "credentials: twitter needs bearer_token or consumer_key + consumer_secret");
  }
  return c;
}

Credentials Credentials::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

// --- Twitter --------------------------------------------------------------

TwitterClient::TwitterClient(std::shared_ptr<HttpGateway> gateway,
                             Credentials::Twitter creds)
    : gateway_(std::move(gateway)), creds_(std::move(creds)) {}

std::string TwitterClient::bearer() {
  std::lock_guard lock(token_mu_);
  if (!token_.empty()) return token_;
  if (!creds_.bearer_token.empty()) {
    token_ = creds_.bearer_token;
    return token_;
  }
  const auto basic = httplib::make_basic_authentication_header(
      percent_encode(creds_.consumer_key), percent_encode(creds_.consumer_secret));
  const auto r = gateway_->post_form("/oauth2/token", "grant_type=client_credentials",
                                     {{basic.first, basic.second}});
  if (r.status != 200) unexpected(r, "token exchange");
  const json doc = parse_body(r, "token exchange");
  if (!doc.is_object() || !doc.contains("access_token")) {
    throw SourceError(ErrorKind::AuthFailure, "token exchange: no access_token");
  }
  token_ = doc.at("access_token").get<std::string>();
  return token_;
}

std::vector<Post> TwitterClient::search_posts(std::string_view query,
                                              std::size_t count) {
  if (count == 0) throw std::invalid_argument("search_posts: count must be >= 1");
  const std::string what = "search '" + std::string(query) + "'";
  const std::string target = "/1.1/search/tweets.json?q=" + percent_encode(query) +
                             "&count=" + std::to_string(std::min(count, kMaxPageSize)) +
                             "&result_type=recent&tweet_mode=extended";
  const auto r = gateway_->get(target, {{"Authorization", "Bearer " + bearer()}});
  if (r.status != 200) unexpected(r, what);
  const json doc = parse_body(r, what);
  if (!doc.is_object() || !doc.contains("statuses")) {
    throw SourceError(ErrorKind::MalformedDocument, what + ": missing statuses");
  }
  return tweets_to_posts(doc.at("statuses"), count, what);
}

std::vector<Post> TwitterClient::get_timeline(std::string_view handle,
                                              std::size_t count) {
  if (count == 0) throw std::invalid_argument("get_timeline: count must be >= 1");
  const std::string what = "timeline " + std::string(handle);
  const std::string target = "/1.1/statuses/user_timeline.json?screen_name=" +
                             percent_encode(handle) + "&count=" +
                             std::to_string(std::min(count, kMaxPageSize)) +
                             "&tweet_mode=extended";
  const auto r = gateway_->get(target, {{"Authorization", "Bearer " + bearer()}});
  if (r.status == 404) throw SourceError(ErrorKind::UserNotFound, what);
  if (r.status != 200) unexpected(r, what);
  return tweets_to_posts(parse_body(r, what), count, what);
}

// --- GitHub ---------------------------------------------------------------

GitHubClient::GitHubClient(std::shared_ptr<HttpGateway> gateway,
                           Credentials::GitHub creds)
    : gateway_(std::move(gateway)), creds_(std::move(creds)) {}

Headers GitHubClient::headers() const {
  Headers h{{"Accept", "application/vnd.github+json"},
            {"User-Agent", "expertquest"}};
  if (!creds_.token.empty()) h.emplace_back("Authorization", "token " + creds_.token);
  return h;
}

std::optional<CodeHostUser> GitHubClient::get_code_user(std::string_view handle) {
  const std::string what = "user " + std::string(handle);
  const auto r = gateway_->get("/users/" + percent_encode(handle), headers());
  if (r.status == 404) return std::nullopt;
  if (r.status != 200) unexpected(r, what);
  const json doc = parse_body(r, what);
  try {
    CodeHostUser u;
    u.handle = doc.at("login").get<std::string>();
    u.follower_count = doc.value("followers", std::uint64_t{0});
    u.profile_url = doc.value("html_url", std::string());
    return u;
  } catch (const json::exception& e) {
    throw SourceError(ErrorKind::MalformedDocument, what + ": " + e.what());
  }
}

std::uint64_t GitHubClient::get_repo_language_bytes(std::string_view handle,
                                                    std::string_view language) {
  const std::string what = "repos " + std::string(handle);
  const auto r = gateway_->get(
      "/users/" + percent_encode(handle) + "/repos?per_page=100&type=owner", headers());
  if (r.status == 404) throw SourceError(ErrorKind::UserNotFound, what);
  if (r.status != 200) unexpected(r, what);
  const json repos = parse_body(r, what);
  if (!repos.is_array()) {
    throw SourceError(ErrorKind::MalformedDocument, what + ": expected an array");
  }

  std::uint64_t total = 0;
  for (const auto& repo : repos) {
    std::string full_name;
    try {
      full_name = repo.at("full_name").get<std::string>();
    } catch (const json::exception& e) {
      throw SourceError(ErrorKind::MalformedDocument, what + ": " + e.what());
    }
    const auto slash = full_name.find('/');
    const std::string target =
        "/repos/" + percent_encode(full_name.substr(0, slash)) + "/" +
        percent_encode(slash == std::string::npos ? "" : full_name.substr(slash + 1)) +
        "/languages";
    const auto lr = gateway_->get(target, headers());
    if (lr.status == 404) continue;  // deleted between listing and lookup
    if (lr.status != 200) unexpected(lr, "languages " + full_name);
    const json langs = parse_body(lr, "languages " + full_name);
    if (!langs.is_object()) {
      throw SourceError(ErrorKind::MalformedDocument, "languages " + full_name);
    }
    for (const auto& [name, bytes] : langs.items()) {
      if (iequals_ascii(name, language) && bytes.is_number_unsigned()) {
        total += bytes.get<std::uint64_t>();
      }
    }
  }
  return total;
}

// --- DBpedia --------------------------------------------------------------

Abstract parse_dbpedia_abstract(std::string_view resource_id,
                                std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw SourceError(ErrorKind::MalformedDocument,
                      "abstract " + std::string(resource_id) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw SourceError(ErrorKind::MalformedDocument,
                      "abstract " + std::string(resource_id) + ": expected an object");
  }
  const std::string subject =
      std::string(kDbpediaResourcePrefix) + underscored(resource_id);
  const json* node = nullptr;
  for (const auto& [key, value] : doc.items()) {
    if (key == subject || percent_decode(key) == subject) {
      node = &value;
      break;
    }
  }
  if (node == nullptr || !node->is_object()) {
    throw SourceError(ErrorKind::ResourceNotFound,
                      "no such resource " + std::string(resource_id));
  }
  Abstract out{std::string(resource_id), ""};
  const auto it = node->find(kDbpediaAbstract);
  if (it == node->end() || !it->is_array()) return out;
  for (const auto& literal : *it) {
    if (literal.is_object() && literal.value("lang", std::string()) == "en") {
      out.text = literal.value("value", std::string());
      break;
    }
  }
  return out;
}

DbpediaClient::DbpediaClient(std::shared_ptr<HttpGateway> gateway)
    : gateway_(std::move(gateway)) {}

Abstract DbpediaClient::get_abstract(std::string_view resource_id) {
  const auto r = gateway_->get(
      "/data/" + percent_encode(underscored(resource_id)) + ".json",
      {{"Accept", "application/json"}});
  if (r.status == 404) {
    throw SourceError(ErrorKind::ResourceNotFound, std::string(resource_id));
  }
  if (r.status != 200) unexpected(r, "abstract " + std::string(resource_id));
  return parse_dbpedia_abstract(resource_id, r.body);
}

SourceSet make_live_sources(const Credentials& creds, LiveOptions options) {
  auto clock = options.clock ? options.clock : std::make_shared<SystemClock>();
  auto transport = options.transport
                       ? options.transport
                       : std::make_shared<HttplibTransport>(options.timeout);
  auto gateway = [&](const std::string& base) {
    return std::make_shared<HttpGateway>(base, transport, clock, options.gateway);
  };
  SourceSet set;
  set.microblog = std::make_shared<TwitterClient>(gateway(creds.twitter.base_url),
                                                  creds.twitter);
  set.codehost = std::make_shared<GitHubClient>(gateway(creds.github.base_url),
                                                creds.github);
  set.encyclopedia = std::make_shared<DbpediaClient>(gateway(creds.dbpedia.base_url));
  set.kind = BackendKind::Live;
  return set;
}

}  // namespace expertquest::sources
