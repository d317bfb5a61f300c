#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdqa/external_reader.hpp"
#include "support/mock_reader.hpp"
#include "support/oracles.hpp"

using namespace cdqa;
using testing_support::MockReader;

namespace {

struct Fixture {
  Corpus corpus{{{"pool", "Pool", "The pool opens at 7 AM. Towels are at the desk."},
                 {"gym", "Gym", "The gym is open all night.\n\nBring your key card."}}};
  TfIdfIndex index = TfIdfIndex::build(corpus);
  std::span<const Paragraph> paragraphs() const { return corpus.paragraphs(); }
};

ExternalReaderConfig config_for(const MockReader& mock, int timeout_ms = 2000, bool fallback = true) {
  ExternalReaderConfig c;
  c.endpoint = mock.endpoint();
  c.timeout = std::chrono::milliseconds(timeout_ms);
  c.fallback_to_lexical = fallback;
  return c;
}

}  // namespace

TEST_CASE("request body follows the wire contract") {
  Fixture f;
  const auto body = external_request_body("when?", f.paragraphs());
  CHECK(body["question"] == "when?");
  REQUIRE(body["paragraphs"].size() == 3);
  CHECK(body["paragraphs"][2] == nlohmann::json{{"doc_id", "gym"}, {"paragraph_index", 1}, {"text", "Bring your key card."}});
}

TEST_CASE("config validation") {
  ExternalReaderConfig c;
  c.endpoint = "http://localhost:1/x";
  CHECK_NOTHROW(c.validate());
  c.timeout = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.timeout = std::chrono::milliseconds(10);
  c.endpoint = "ftp://x";
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  const auto parsed = ExternalReaderConfig::from_json({{"endpoint", "http://h/r"}});
  CHECK(parsed.timeout.count() == 5000);
  CHECK(parsed.fallback_to_lexical);
}

TEST_CASE("map_external_response") {
  Fixture f;
  auto answers = [&](std::vector<std::tuple<std::string, int, int, int, double>> rows) {
    auto a = nlohmann::json::array();
    for (auto& [d, p, s, e, sc] : rows) {
      a.push_back({{"doc_id", d}, {"paragraph_index", p}, {"char_start", s}, {"char_end", e}, {"score", sc}});
    }
    return nlohmann::json{{"answers", a}};
  };

  SUBCASE("pass-through with clamping") {
    const auto r = map_external_response(
        answers({{"gym", 1, 0, 4, 0.25}, {"pool", 0, 4, 8, 1.7}, {"gym", 0, 0, 3, -0.2}}), "q", f.paragraphs(),
        f.index);
    CHECK_FALSE(r.degraded);
    REQUIRE(r.spans.size() == 3);
    CHECK(r.spans[0].text == "pool");
    CHECK(r.spans[0].reader_score == 1.0);
    CHECK(r.spans[1].reader_score == 0.0);
    CHECK(r.spans[1].text == "The");
    CHECK(r.spans[2].text == "Brin");
    CHECK(r.spans[2].reader_score == 0.25);
  }
  SUBCASE("out-of-bounds span is replaced by the lexical span") {
    const auto r = map_external_response(
        answers({{"pool", 0, 0, 999, 0.9}, {"gym", 0, 5, 2, 0.9}, {"gym", 1, 0, 4, 0.4}}), "key card",
        f.paragraphs(), f.index);
    CHECK(r.degraded);
    const auto lexical = read("key card", f.paragraphs(), f.index);
    CHECK(r.spans[0] == lexical[0]);
    CHECK(r.spans[1] == lexical[1]);
    CHECK(r.spans[2].text == "Brin");
  }
  SUBCASE("empty span with positive score is rejected per span") {
    const auto r = map_external_response(
        answers({{"pool", 0, 3, 3, 0.9}, {"gym", 0, 0, 3, 0.1}, {"gym", 1, 0, 0, 0.0}}), "pool", f.paragraphs(),
        f.index);
    CHECK(r.degraded);
    CHECK(r.spans[0] == read("pool", f.paragraphs(), f.index)[0]);
    CHECK(r.spans[2].text.empty());
  }
  SUBCASE("schema violations") {
    CHECK_THROWS_AS(map_external_response({{"nope", 1}}, "q", f.paragraphs(), f.index), ExternalReaderError);
    CHECK_THROWS_AS(map_external_response(answers({{"pool", 0, 0, 3, 0.1}}), "q", f.paragraphs(), f.index),
                    ExternalReaderError);
    CHECK_THROWS_AS(map_external_response(answers({{"pool", 0, 0, 3, 0.1}, {"pool", 0, 0, 3, 0.1},
                                                   {"gym", 1, 0, 3, 0.1}}),
                                          "q", f.paragraphs(), f.index),
                    ExternalReaderError);
    CHECK_THROWS_AS(map_external_response(answers({{"pool", 0, 0, 3, 0.1}, {"gym", 0, 0, 3, 0.1},
                                                   {"spa", 0, 0, 3, 0.1}}),
                                          "q", f.paragraphs(), f.index),
                    ExternalReaderError);
    auto bad = answers({{"pool", 0, 0, 3, 0.1}, {"gym", 0, 0, 3, 0.1}, {"gym", 1, 0, 3, 0.1}});
    bad["answers"][0]["score"] = "high";
    CHECK_THROWS_AS(map_external_response(bad, "q", f.paragraphs(), f.index), ExternalReaderError);
  }
}

TEST_CASE("external_read against a mock endpoint") {
  Fixture f;
  MockReader mock;

  SUBCASE("healthy endpoint") {
    mock.set_script(MockReader::echo(1.7, 3));
    const auto r = external_read(config_for(mock), "pool", f.paragraphs(), f.index);
    CHECK_FALSE(r.degraded);
    REQUIRE(r.spans.size() == 3);
    for (const auto& s : r.spans) CHECK(s.reader_score == 1.0);
    CHECK(r.spans[0].text == "The");
  }
  SUBCASE("HTTP error falls back to lexical") {
    mock.set_script([](const nlohmann::json&) { return std::make_pair(500, std::string("{}")); });
    const auto r = external_read(config_for(mock), "pool", f.paragraphs(), f.index);
    CHECK(r.degraded);
    CHECK(r.spans == read("pool", f.paragraphs(), f.index));
  }
  SUBCASE("malformed body falls back") {
    mock.set_script([](const nlohmann::json&) { return std::make_pair(200, std::string("<html>")); });
    const auto r = external_read(config_for(mock), "pool", f.paragraphs(), f.index);
    CHECK(r.degraded);
    CHECK(r.spans == read("pool", f.paragraphs(), f.index));
  }
  SUBCASE("timeout falls back") {
    mock.set_script([](const nlohmann::json& req) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      return MockReader::echo(0.9)(req);
    });
    const auto r = external_read(config_for(mock, 150), "pool", f.paragraphs(), f.index);
    CHECK(r.degraded);
    CHECK(r.spans == read("pool", f.paragraphs(), f.index));
  }
  SUBCASE("timeout without fallback surfaces the error") {
    mock.set_script([](const nlohmann::json& req) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      return MockReader::echo(0.9)(req);
    });
    try {
      external_read(config_for(mock, 150, false), "pool", f.paragraphs(), f.index);
      FAIL("expected an ExternalReaderError");
    } catch (const ExternalReaderError& e) {
      CHECK(e.kind() == ExternalReaderError::Kind::kTimeout);
    }
  }
}

TEST_CASE("unreachable endpoint") {
  Fixture f;
  ExternalReaderConfig c;
  {
    MockReader gone;  // grab a port, then release it
    c.endpoint = gone.endpoint();
  }
  c.timeout = std::chrono::milliseconds(500);
  const auto r = external_read(c, "gym", f.paragraphs(), f.index);
  CHECK(r.degraded);
  CHECK(r.spans == read("gym", f.paragraphs(), f.index));

  c.fallback_to_lexical = false;
  try {
    external_read(c, "gym", f.paragraphs(), f.index);
    FAIL("expected an ExternalReaderError");
  } catch (const ExternalReaderError& e) {
    CHECK(e.kind() == ExternalReaderError::Kind::kUnreachable);
  }
}
