#include <set>

#include "doctest.h"
#include "support/oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/subshift.hpp"

using namespace symdyn;

namespace {

Word w(const char* s) { return parse_word(s); }

std::vector<Word> words(std::initializer_list<const char*> xs) {
  std::vector<Word> out;
  for (const char* x : xs) out.push_back(parse_word(x));
  return out;
}

std::vector<Subshift> zoo() {
  return {
      Subshift::full(2),
      Subshift::full(3),
      Subshift::sft(2, words({"11"})),
      Subshift::sft(2, words({"101", "0000"})),
      Subshift::sft(3, words({"02", "11", "210"})),
      Subshift::beta(BetaValue("golden")),
      Subshift::beta(BetaValue("1.5")),
      Subshift::beta(BetaValue("2.5")),
      Subshift::beta(BetaValue("1.8")),
      Subshift::beta(BetaValue("2")),
      Subshift::sgap(GapSet::finite({0, 1})),
      Subshift::sgap(GapSet::finite({1, 2})),
      Subshift::sgap(GapSet::finite({0, 2, 4})),
      Subshift::sgap(GapSet::finite({0, 2}), 0),
      Subshift::sgap(GapSet::arithmetic(1, 2)),
      Subshift::sgap(GapSet::cofinite({1})),
  };
}

}  // namespace

TEST_CASE("contains: documented examples") {
  CHECK(Subshift::full(2).contains(w("0110")));
  // Gaps counted as runs of 0 between 1s.
  CHECK_FALSE(Subshift::sgap(GapSet::finite({0, 1}), 0).contains(w("1001")));
  CHECK(Subshift::sgap(GapSet::finite({0, 1})).contains(w("000")));
  CHECK(Subshift::sgap(GapSet::naturals(), 0).contains(w("000")));
  CHECK_THROWS_AS(Subshift::full(2).contains(w("012")), DomainError);
}

TEST_CASE("language: documented examples") {
  const auto full = Subshift::full(2).language(3);
  REQUIRE(full.size() == 8);
  CHECK(full.front() == w("000"));
  CHECK(full.back() == w("111"));
  CHECK(Subshift::sft(2, words({"11"})).language(4).size() == 8);
  CHECK(Subshift::beta(BetaValue("2")).language(5).size() == 32);
  CHECK(Subshift::full(3).language(0) == std::vector<Word>{Word{}});
}

TEST_CASE("language: budget") {
  try {
    (void)Subshift::full(2).language(12, 1000);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.budget().find("1000") != std::string::npos);
  }
  CHECK_THROWS_AS(Subshift::full(2).language(-1), DomainError);
}

TEST_CASE("beta_expansion: documented examples") {
  CHECK(beta_expansion(BetaValue("2"), 5).greedy == w("11111"));
  const auto golden = beta_expansion(BetaValue("golden"), 4);
  CHECK(golden.greedy == w("1100"));
  REQUIRE(golden.period);
  CHECK(*golden.period == w("10"));
  CHECK(beta_expansion(BetaValue("1.5"), 4).greedy == w("1010"));
  CHECK_FALSE(beta_expansion(BetaValue("1.5"), 4).period);
  CHECK_THROWS_AS(BetaValue("1"), DomainError);
  CHECK_THROWS_AS(BetaValue("0.7"), DomainError);
}

TEST_CASE("beta_expansion: rational bases") {
  // 5/2: r = 1 -> 2, r = 1/2 -> 1, r = 1/4 -> 0, r = 5/8 -> 1, ...
  const auto e = beta_expansion(BetaValue("5/2"), 4);
  CHECK(e.greedy == w("2101"));
  // 3/2 + ... terminates? 1.75 = 7/4: r=1 -> 1 (r=3/4), 21/16 -> 1 (5/16),
  // 35/64 -> 0, 245/256 -> 0, ...
  CHECK(beta_expansion(BetaValue("1.75"), 4).greedy == w("1100"));
}

TEST_CASE("lex_compare") {
  CHECK(lex_compare(w("10"), w("11")) == LexOrder::Less);
  CHECK(lex_compare(w("110"), w("110")) == LexOrder::EqualPrefix);
  CHECK(lex_compare(w("1101"), w("110")) == LexOrder::EqualPrefix);
  CHECK(lex_compare(w("111"), w("110")) == LexOrder::Greater);
}

TEST_CASE("SFT languages match the brute-force filter") {
  struct Case {
    int p;
    std::vector<Word> forbidden;
  };
  const std::vector<Case> cases = {
      {2, words({"11"})},
      {2, words({"101", "0000"})},
      {3, words({"02", "11", "210"})},
      {2, words({"01"})},  // only 0^k 1^j ... leading zeros die out
      {2, words({"0"})},
      {3, words({"0", "12", "21"})},
  };
  for (const auto& c : cases) {
    const auto x = Subshift::sft(c.p, c.forbidden);
    for (int n = 0; n <= 7; ++n) {
      std::vector<Word> expected;
      for (const Word& u : oracle::all_words(c.p, n)) {
        if (oracle::sft_member(u, c.p, c.forbidden, 10)) expected.push_back(u);
      }
      CHECK(x.language(n) == expected);
      CHECK(x.language_size(n) == expected.size());
      for (const Word& u : oracle::all_words(c.p, n)) {
        CHECK(x.contains(u) ==
              std::binary_search(expected.begin(), expected.end(), u));
      }
    }
  }
}

TEST_CASE("SFT with no infinite point is rejected") {
  CHECK_THROWS_AS(Subshift::sft(2, words({"0", "1"})), DomainError);
  CHECK_THROWS_AS(Subshift::sft(2, words({"00", "01", "10", "11"})),
                  DomainError);
}

TEST_CASE("beta languages match interval itineraries") {
  for (const char* b : {"golden", "1.5", "1.8", "2.5", "2", "3", "1.2"}) {
    const BetaValue beta(b);
    const auto x = Subshift::beta(beta);
    for (int n = 1; n <= 10; ++n) {
      std::vector<Word> expected;
      for (const Word& u : oracle::all_words(beta.digit_count(), n)) {
        if (oracle::beta_member(u, static_cast<long double>(beta.approx()))) {
          expected.push_back(u);
        }
      }
      INFO("beta=" << b << " n=" << n);
      CHECK(x.language(n) == expected);
    }
  }
}

TEST_CASE("S-gap languages match block concatenations") {
  struct Case {
    GapSet gaps;
    std::vector<int> listed;  // S truncated for the oracle
    Symbol gap_symbol;
  };
  const std::vector<Case> cases = {
      {GapSet::finite({0, 1}), {0, 1}, 1},
      {GapSet::finite({0, 1}), {0, 1}, 0},
      {GapSet::finite({1, 2}), {1, 2}, 1},
      {GapSet::finite({0, 2, 4}), {0, 2, 4}, 1},
      {GapSet::arithmetic(1, 2), {1, 3, 5, 7, 9}, 1},
      {GapSet::cofinite({1}), {0, 2, 3, 4, 5, 6, 7, 8, 9}, 0},
  };
  for (const auto& c : cases) {
    const auto x = Subshift::sgap(c.gaps, c.gap_symbol);
    for (int n = 1; n <= 7; ++n) {
      const auto expected = oracle::sgap_language(c.listed, c.gap_symbol, n);
      const auto got = x.language(n);
      INFO(x.describe() << " n=" << n);
      CHECK(std::set<Word>(got.begin(), got.end()) == expected);
      for (const Word& u : oracle::all_words(2, n)) {
        CHECK(x.contains(u) == (expected.count(u) == 1));
      }
    }
  }
}

TEST_CASE("automaton and direct rule agree") {
  for (const auto& x : zoo()) {
    for (int n = 0; n <= 9; ++n) {
      for (const Word& u : oracle::all_words(x.alphabet_size(), n)) {
        bool via_automaton = true;
        auto s = x.initial_state();
        for (Symbol a : u) {
          auto t = x.step(s, a);
          if (!t) {
            via_automaton = false;
            break;
          }
          s = *t;
        }
        INFO(x.describe() << " " << to_string(u));
        CHECK(via_automaton == x.contains(u));
      }
    }
  }
}

TEST_CASE("property: factorial, extendable, sorted") {
  for (const auto& x : zoo()) {
    for (int n = 0; n <= 12; ++n) {
      if (x.language_size(n) > 20000) break;
      const auto l = x.language(n);
      CHECK(std::is_sorted(l.begin(), l.end()));
      CHECK(l.size() == x.language_size(n));
      const auto next = x.language(n + 1);
      const std::set<Word> next_set(next.begin(), next.end());
      for (const Word& u : l) {
        for (std::size_t i = 0; i < u.size(); ++i) {
          for (std::size_t j = i; j <= u.size(); ++j) {
            REQUIRE(x.contains(WordView(u).subspan(i, j - i)));
          }
        }
        bool extends = false;
        for (int a = 0; a < x.alphabet_size() && !extends; ++a) {
          Word v = u;
          v.push_back(static_cast<Symbol>(a));
          extends = next_set.count(v) == 1;
        }
        INFO(x.describe() << " " << to_string(u));
        CHECK(extends);
      }
      // truncation maps L_{n+1} onto L_n
      std::set<Word> truncated;
      for (const Word& v : next) truncated.insert(Word(v.begin(), v.end() - 1));
      CHECK(truncated == std::set<Word>(l.begin(), l.end()));
    }
  }
}

TEST_CASE("full-shift coincidences up to n = 12") {
  const auto full = Subshift::full(2);
  const auto beta2 = Subshift::beta(BetaValue("2"));
  const auto all_gaps = Subshift::sgap(GapSet::naturals());
  const auto fib = Subshift::sft(2, words({"11"}));
  const auto s01 = Subshift::sgap(GapSet::finite({0, 1}));
  for (int n = 0; n <= 12; ++n) {
    CHECK(beta2.language(n) == full.language(n));
    CHECK(all_gaps.language(n) == full.language(n));
    CHECK(s01.language(n) == fib.language(n));
  }
}

TEST_CASE("log_language_size agrees with exact counts") {
  for (const auto& x : zoo()) {
    for (int n : {1, 5, 20, 40}) {
      CHECK(x.log_language_size(n) ==
            doctest::Approx(std::log(static_cast<double>(x.language_size(n))))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("inner_sft_approximation: documented examples") {
  const auto a = inner_sft_approximation(Subshift::sgap(GapSet::naturals()), 2);
  CHECK(a.kind() == ShiftKind::Sft);
  const auto b = Subshift::sgap(GapSet::finite({0, 1, 2}));
  for (int n = 0; n <= 10; ++n) CHECK(a.language(n) == b.language(n));

  const auto g = inner_sft_approximation(Subshift::beta(BetaValue("golden")), 2);
  CHECK(g.forbidden() == words({"11"}));

  const auto f = inner_sft_approximation(Subshift::full(2), 5);
  CHECK(f.kind() == ShiftKind::Full);
}

TEST_CASE("property: inner approximations increase inside X") {
  const std::vector<Subshift> shifts = {
      Subshift::beta(BetaValue("golden")), Subshift::beta(BetaValue("1.5")),
      Subshift::beta(BetaValue("2.5")),    Subshift::beta(BetaValue("1.8")),
      Subshift::beta(BetaValue("3")),      Subshift::sgap(GapSet::finite({1, 2})),
      Subshift::sgap(GapSet::finite({0, 2, 4})),
      Subshift::sgap(GapSet::arithmetic(1, 2)),
      Subshift::sgap(GapSet::naturals(), 0),
  };
  for (const auto& x : shifts) {
    for (int n = 1; n <= 10; ++n) {
      const auto lx = x.language(n);
      const std::set<Word> lx_set(lx.begin(), lx.end());
      std::uint64_t previous = 0;
      for (int m = 1; m <= 8; ++m) {
        std::optional<Subshift> inner;
        try {
          inner = inner_sft_approximation(x, m);
        } catch (const DomainError&) {
          continue;  // S has no element <= m yet
        }
        const auto li = inner->language(n);
        INFO(x.describe() << " m=" << m << " n=" << n);
        CHECK(li.size() >= previous);
        CHECK(li.size() <= lx.size());
        for (const Word& u : li) CHECK(lx_set.count(u) == 1);
        previous = li.size();
      }
    }
  }
  CHECK_THROWS_AS(inner_sft_approximation(Subshift::sgap(GapSet::finite({3})), 2),
                  DomainError);
}
