#include <doctest.h>

#include "oracle.hpp"
#include "polaris/core/artifacts.hpp"
#include "polaris/core/error.hpp"
#include "polaris/llm/scripted.hpp"

using namespace polaris;
using namespace polaris::llm;
using Script = std::vector<ScriptEntry>;

TEST_CASE("replies follow the script order") {
  ScriptedBackend b(Script{{"a", {"1"}}, {"b", {"2", "3"}}});
  CHECK(chat(b, make_request("", "q", "a")).texts == std::vector<std::string>{"1"});
  CHECK(chat(b, make_request("", "q", "b", 0.7, 2)).texts == std::vector<std::string>{"2", "3"});
  CHECK(b.cursor() == 2);
  CHECK(b.deterministic());
}

TEST_CASE("tag mismatch, count mismatch and exhaustion are configuration errors") {
  ScriptedBackend b(Script{{"a", {"1"}}, {"b", {"2"}}});
  CHECK_THROWS_AS(b.complete(make_request("", "q", "b")), ConfigError);
  ScriptedBackend c(Script{{"a", {"1"}}});
  CHECK_THROWS_AS(c.complete(make_request("", "q", "a", 0.0, 2)), ConfigError);
  ScriptedBackend d(Script{{"a", {"1"}}});
  d.complete(make_request("", "q", "a"));
  CHECK_THROWS_AS(d.complete(make_request("", "q", "a")), ConfigError);
}

TEST_CASE("NDJSON script files") {
  const auto s = ScriptedBackend::parse("{\"tag\":\"x\",\"texts\":[\"1\"]}\n\n{\"tag\":\"y\",\"texts\":[\"2\",\"3\"]}\n");
  REQUIRE(s.size() == 2);
  CHECK(s[1].texts.size() == 2);
  CHECK_THROWS_AS(ScriptedBackend::parse("{\"tag\":\"x\"}\n"), ConfigError);
  CHECK_THROWS_AS(ScriptedBackend::parse("{\"tag\":\"x\",\"texts\":[]}\n"), ConfigError);
  CHECK_THROWS_AS(ScriptedBackend::parse("nope\n"), ConfigError);
  CHECK_THROWS_AS(ScriptedBackend::load("/nonexistent/script.ndjson"), ConfigError);
}

TEST_CASE("the committed golden script equals the oracle transcript") {
  const auto dir = testing::fixture_dir() / "golden";
  const auto fresh = testing::to_ndjson(testing::GoldenScenario::load(dir).transcript());
  CHECK(fresh == read_file(dir / "script.ndjson"));
}

TEST_CASE("request validation") {
  ChatRequest r = make_request("sys", "user", "t");
  CHECK(r.messages.size() == 2);
  CHECK(make_request("", "user", "t").messages.size() == 1);
  r.n_responses = 0;
  CHECK_THROWS_AS(r.validate(), ParameterError);
  ChatRequest empty;
  CHECK_THROWS_AS(empty.validate(), ParameterError);
}

TEST_CASE("chat rejects a wrong number of replies") {
  struct Short final : Backend {
    ChatResponse complete(const ChatRequest&) override { return {{"only"}, std::nullopt, 0.0}; }
  } b;
  CHECK_THROWS_AS(chat(b, make_request("", "q", "t", 0.5, 3)), BackendError);
}
