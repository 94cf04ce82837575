#include <sstream>

#include "doctest.h"
#include "support/generators.hpp"
#include "symdyn/error.hpp"
#include "symdyn/io.hpp"

using namespace symdyn;
using symdyn::io::json;

TEST_CASE("shift configs round-trip canonically") {
  const std::vector<std::string> texts{
      R"({"alphabet": 3, "kind": "full"})",
      R"({"alphabet": 2, "forbidden": ["11"], "kind": "sft"})",
      R"({"alphabet": 2, "kind": "sft", "forbidden": ["111", "00", "11"]})",
      R"({"kind": "beta", "beta": "golden"})",
      R"({"kind": "beta", "beta": "5/2"})",
      R"({"kind": "sgap", "gaps": {"finite": [0, 1]}})",
      R"({"kind": "sgap", "gaps": {"arithmetic": {"start": 1, "step": 2}}, "gap_symbol": 0})",
      R"({"kind": "sgap", "gaps": {"cofinite": [3]}, "good_set": {"kind": "ends-with", "word": "0"}})",
      R"({"alphabet": 2, "forbidden": ["11"], "kind": "sft", "good_set": {"kind": "explicit", "words": ["10", "0"]}})",
      R"({"alphabet": 2, "kind": "full", "good_set": {"kind": "begins-and-ends-with", "word": "1"}})",
  };
  for (const auto& text : texts) {
    const io::ShiftConfig c = io::parse_shift(json::parse(text));
    const std::string canon = io::canonical_text(io::to_json(c));
    const io::ShiftConfig again = io::parse_shift(json::parse(canon));
    CHECK(io::canonical_text(io::to_json(again)) == canon);
    CHECK(again.shift.describe() == c.shift.describe());
    CHECK(again.good_set.has_value() == c.good_set.has_value());
  }
  const auto sorted = io::to_json(io::parse_shift(json::parse(texts[2])));
  CHECK(sorted.at("forbidden") == json::parse(R"(["00", "11", "111"])"));
  CHECK(io::to_json(Subshift::sft(2, {parse_word("11")})) == json::parse(texts[1]));
}

TEST_CASE("bad shift configs") {
  const std::vector<std::string> bad{
      R"([1, 2])",
      R"({"kind": "torus"})",
      R"({"kind": "full"})",
      R"({"kind": "full", "alphabet": "two"})",
      R"({"kind": "sft", "alphabet": 2, "forbidden": ["12"]})",
      R"({"kind": "beta", "beta": "golden", "alphabet": 3})",
      R"({"kind": "sgap", "gaps": {"finite": [0]}, "gap_symbol": 2})",
      R"({"kind": "sgap", "gaps": {"primes": true}})",
      R"({"kind": "full", "alphabet": 2, "good_set": {"kind": "odd"}})",
  };
  for (const auto& text : bad) CHECK_THROWS_AS(io::parse_shift(json::parse(text)), ConfigError);
  CHECK_THROWS_AS(io::load_shift("/nonexistent/shift.json"), ConfigError);
  CHECK_THROWS_AS(io::parse_shift(json::parse(R"({"kind": "beta", "beta": "0.5"})")), DomainError);
}

TEST_CASE("potential files") {
  std::istringstream in("# golden weights\nalphabet 2 depth 2\n00 0.5\n01 -1.25  # trailing\n10 2\n");
  const Potential phi = io::parse_potential(in);
  CHECK(phi.depth() == 2);
  CHECK(phi(parse_word("01")) == -1.25);
  CHECK_FALSE(phi.defined(3));
  std::ostringstream out;
  io::write_potential(out, phi);
  std::istringstream back(out.str());
  const Potential again = io::parse_potential(back);
  for (std::uint64_t i = 0; i < 4; ++i) {
    CHECK(again.defined(i) == phi.defined(i));
    if (phi.defined(i)) CHECK(again.at(i) == phi.at(i));
  }

  gen::Rng rng(2);
  const Potential random = gen::potential(rng, 3, 2);
  std::ostringstream r;
  io::write_potential(r, random);
  std::istringstream rb(r.str());
  CHECK(io::parse_potential(rb).table() == random.table());

  for (const char* text : {"", "alphabet 2\n", "alphabet 2 depth 1\n0 1\n0 2\n", "alphabet 2 depth 1\n00 1\n",
                           "alphabet 2 depth 1\n2 1\n", "alphabet 2 depth 1\n0 x\n", "alphabet 2 depth 1\n0 1 2\n"}) {
    std::istringstream b(text);
    CHECK_THROWS_AS(io::parse_potential(b), ConfigError);
  }
}

TEST_CASE("Markov measure files") {
  std::istringstream in("alphabet 2 memory 1\nstates 0 1\n0 0 0.5\n0 1 0.5\n1 0 1\n");
  const MarkovMeasure mu = io::parse_markov(in);
  CHECK(mu.stationary()[0] == doctest::Approx(2.0 / 3.0));
  std::ostringstream out;
  io::write_markov(out, mu);
  std::istringstream back(out.str());
  const MarkovMeasure again = io::parse_markov(back);
  CHECK(again.transitions() == mu.transitions());
  CHECK(again.stationary() == mu.stationary());

  std::istringstream wrong("alphabet 2 memory 1\nstates 0 1\n0 0 0.5\n0 1 0.5\n1 0 1\nstationary 0.5 0.5\n");
  CHECK_THROWS_AS(io::parse_markov(wrong), NumericError);
  std::istringstream unlisted("alphabet 2 memory 1\nstates 0\n1 0 1\n");
  CHECK_THROWS_AS(io::parse_markov(unlisted), ConfigError);
  std::istringstream rows("alphabet 2 memory 1\nstates 0 1\n0 0 0.5\n1 0 1\n");
  CHECK_THROWS_AS(io::parse_markov(rows), DomainError);
}

TEST_CASE("itineraries") {
  const Subshift golden = Subshift::sft(2, {parse_word("11")});
  const Itinerary it = io::parse_itinerary(
      json::parse(R"({"measures": [{"bernoulli": [0.5, 0.5]}, {"parry": true}], "chain_bound": 0.5})"), golden);
  REQUIRE(it.measures.size() == 2);
  CHECK(it.chain_bound == 0.5);
  CHECK(mass(it.measures[1], parse_word("11")) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(io::parse_itinerary(json::parse(R"({"measures": [{"dirac": 0}]})"), golden), ConfigError);
  CHECK_THROWS_AS(io::parse_itinerary(json::parse(R"({"measures": [{"parry": true}]})"),
                                      Subshift::beta(BetaValue("1.5"))),
                  ConfigError);
}
