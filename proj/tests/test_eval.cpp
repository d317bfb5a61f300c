#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "cdqa/eval.hpp"
#include "support/oracles.hpp"

using namespace cdqa;
using doctest::Approx;

TEST_CASE("normalize_answer") {
  CHECK(normalize_answer("The pool opens at 8 AM.") == "pool opens at 8 am");
  CHECK(normalize_answer("a an the") == "");
  CHECK(normalize_answer("Wi-Fi!") == "wi fi");
  CHECK(normalize_answer("  Theater   tickets ") == "theater tickets");
}

TEST_CASE("normalize_answer is idempotent") {
  std::mt19937 rng(8);
  const std::string alphabet = "aAtThHeEnN .,!-\t'x1";
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    for (int i = static_cast<int>(rng() % 30); i > 0; --i) s.push_back(alphabet[rng() % alphabet.size()]);
    const auto once = normalize_answer(s);
    CHECK(normalize_answer(once) == once);
  }
}

TEST_CASE("exact match and token F1") {
  CHECK(exact_match("the POOL opens!", "Pool opens"));
  CHECK_FALSE(exact_match("pool opens", "pool closes"));
  CHECK(token_f1("pool opens", "pool closes") == Approx(0.5));
  CHECK(token_f1("p q r s", "p q x y") == Approx(0.5));
  CHECK(token_f1("pool", "gym") == 0.0);
  CHECK(token_f1("", "") == 1.0);
  CHECK(token_f1("the", "pool") == 0.0);
  CHECK(token_f1("pool pool", "pool") == Approx(2.0 / 3.0));
}

TEST_CASE("EM never exceeds F1") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = oracle::random_text(rng, 5, 6);
    const auto b = oracle::random_text(rng, 5, 6);
    const double em = exact_match(a, b) ? 1.0 : 0.0;
    const double f1 = token_f1(a, b);
    CHECK(em <= f1);
    CHECK(f1 <= 1.0);
    if (em == 1.0) CHECK(f1 == 1.0);
  }
}

TEST_CASE("load_gold") {
  testing_support::TempDir dir;
  auto write = [&](const std::string& s) {
    std::ofstream(dir / "g.jsonl") << s;
    return dir / "g.jsonl";
  };
  const auto ok = load_gold(write("{\"question\":\"q\",\"answer\":\"a\"}\n\n{\"question\":\"q2\",\"answer\":\"b\",\"doc_id\":\"d\"}\n"));
  REQUIRE(ok.size() == 2);
  CHECK_FALSE(ok[0].doc_id.has_value());
  CHECK(ok[1].doc_id == "d");
  CHECK_THROWS_WITH(load_gold(write("{\"question\":\"q\"}\n")), doctest::Contains("g.jsonl:1"));
  CHECK_THROWS_WITH(load_gold(write("{\"question\":\"q\",\"answer\":\"a\"}\n[1,2\n")),
                    doctest::Contains("g.jsonl:2"));
  CHECK_THROWS_AS(load_gold(write("{\"question\":\"\",\"answer\":\"a\"}\n")), std::runtime_error);
  CHECK_THROWS_AS(load_gold(dir / "missing.jsonl"), std::runtime_error);
}

TEST_CASE("evaluate on a tiny corpus") {
  const auto kb = KnowledgeBase::build(Corpus({{"pool", "Pool", "The pool opens at 7 AM. Towels are free."},
                                               {"gym", "Gym", "The gym never closes."}}));
  const std::vector<GoldExample> gold = {
      {"When does the pool open?", "the pool opens at 7 am", "pool"},
      {"Does the gym close?", "The gym never closes.", "gym"},
      {"Are towels free?", "Towels cost money.", std::nullopt},
  };
  const auto report = evaluate(kb, gold, PipelineConfig{}, 1);
  CHECK(report.n == 3);
  CHECK(report.exact_match == Approx(2.0 / 3.0));
  CHECK(report.n_with_doc == 2);
  CHECK(report.recall_at_k == 1.0);
  CHECK(report.f1 > report.exact_match);
  const auto j = report.to_json();
  for (const char* key : {"n", "exact_match", "f1", "recall_at_k", "k"}) CHECK(j.contains(key));
  CHECK(report.to_table().find("exact_match") != std::string::npos);
}

TEST_CASE("fixture gold set") {
  const auto kb = KnowledgeBase::build(load_corpus(testing_support::fixture_corpus(), CorpusFormat::kJsonl));
  const auto gold = load_gold(testing_support::fixture_gold());
  CHECK(gold.size() == 60);
  const auto report = evaluate(kb, gold, PipelineConfig{}, 3);
  MESSAGE("EM=" << report.exact_match << " F1=" << report.f1 << " R@3=" << report.recall_at_k);
  CHECK(report.exact_match >= 0.90);
  CHECK(report.recall_at_k >= 0.95);
  CHECK(report.exact_match <= report.f1);
}
