#include <cmath>
#include <set>

#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "symdyn/edit_metric.hpp"
#include "symdyn/error.hpp"
#include "symdyn/measure.hpp"

using namespace symdyn;

namespace {

Word w(const char* s) { return parse_word(s); }

const Subshift kGolden = Subshift::sft(2, {parse_word("11")});

std::vector<Word> words_up_to(int p, int n) {
  std::vector<Word> out;
  for (int k = 0; k <= n; ++k) {
    for (const Word& u : oracle::all_words(p, k)) out.push_back(u);
  }
  return out;
}

std::vector<Word> language_up_to(const Subshift& x, int n) {
  std::vector<Word> out;
  for (const Word& u : words_up_to(x.alphabet_size(), n)) {
    if (x.contains(u)) out.push_back(u);
  }
  return out;
}

NearestWord nearest_oracle(const Word& u, const GoodSet& g, int max_len) {
  std::optional<NearestWord> best;
  for (const Word& v : language_up_to(g.host(), max_len)) {
    if (v.empty() || !g.contains(v)) continue;
    const int d = oracle::edit_distance_bfs(u, v, g.host().alphabet_size());
    if (!best || d < best->distance ||
        (d == best->distance && ShortLex{}(v, best->word))) {
      best = NearestWord{v, d};
    }
  }
  REQUIRE(best);
  return *best;
}

}  // namespace

TEST_CASE("edit_distance: documented examples") {
  CHECK(edit_distance(w("0110"), w("0110")) == 0);
  CHECK(edit_distance(w("000"), w("")) == 3);
  CHECK(edit_distance(w("0110"), w("0101")) == 2);
  CHECK(oracle::edit_distance_bfs(w("0110"), w("0101"), 2) == 2);
}

TEST_CASE("edit_distance agrees with exhaustive edit search") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const Word a = gen::word(rng, 2, 6), b = gen::word(rng, 2, 6);
    CHECK(edit_distance(a, b) == oracle::edit_distance_bfs(a, b, 2));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Word a = gen::word(rng, 3, 5), b = gen::word(rng, 3, 5);
    CHECK(edit_distance(a, b) == oracle::edit_distance_bfs(a, b, 3));
  }
}

TEST_CASE("property: metric axioms on all binary words of length <= 4") {
  const auto all = words_up_to(2, 4);
  std::vector<std::vector<int>> d(all.size(), std::vector<int>(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) d[i][j] = edit_distance(all[i], all[j]);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      CHECK((d[i][j] == 0) == (i == j));
      CHECK(d[i][j] == d[j][i]);
      const int gap = std::abs(static_cast<int>(all[i].size()) - static_cast<int>(all[j].size()));
      CHECK(d[i][j] >= gap);
      for (std::size_t k = 0; k < all.size(); ++k) CHECK(d[i][k] <= d[i][j] + d[j][k]);
    }
  }
}

TEST_CASE("property: concatenation subadditivity") {
  gen::Rng rng(55);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word u = gen::word(rng, 2, 6), v = gen::word(rng, 2, 6), u2 = gen::word(rng, 2, 6),
               v2 = gen::word(rng, 2, 6);
    CHECK(edit_distance(concat(u, v), concat(u2, v2)) <= edit_distance(u, u2) + edit_distance(v, v2));
  }
}

TEST_CASE("edit_ball: documented examples and brute force") {
  CHECK(edit_ball(w("01"), 0, Subshift::full(2)) == std::vector<Word>{w("01")});
  const auto ball = edit_ball(w("0"), 1, Subshift::full(2));
  CHECK(ball == std::vector<Word>{w(""), w("0"), w("1"), w("00"), w("01"), w("10")});

  const auto g = edit_ball(w("11"), 1, kGolden);
  CHECK(std::find(g.begin(), g.end(), w("11")) == g.end());
  for (const Word& u : {w("1"), w("01"), w("10"), w("101")}) {
    CHECK(std::find(g.begin(), g.end(), u) != g.end());
  }

  gen::Rng rng(8);
  for (const Subshift& x : {Subshift::full(2), kGolden, Subshift::sgap(GapSet::finite({1, 2}))}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Word c = gen::word(rng, 2, 5);
      const int r = static_cast<int>(rng() % 3);
      std::vector<Word> expected;
      for (const Word& u : language_up_to(x, static_cast<int>(c.size()) + r)) {
        if (oracle::edit_distance_bfs(u, c, 2) <= r) expected.push_back(u);
      }
      std::sort(expected.begin(), expected.end(), ShortLex{});
      CHECK(edit_ball(c, r, x) == expected);
    }
  }
  CHECK_THROWS_AS(edit_ball(Word(40, 0), 6, Subshift::full(2), 1000), ResourceError);
}

TEST_CASE("ball_bound_report: documented examples") {
  const auto r = ball_bound_report(Subshift::full(2), 6, 1.0 / 6, 4.0);
  CHECK(r.radius == 1);
  CHECK(r.sampled == 64);
  CHECK(static_cast<double>(r.count) <= r.bound);
  CHECK(r.C_fit <= 4.0);
  CHECK(r.C_fit >= 1.0);
  // the fitted constant is the least one that works
  if (r.C_fit > 1.0) {
    CHECK(log_ball_bound(r.C_fit - 1e-6, 6, 1.0 / 6) < std::log(static_cast<double>(r.count)));
  }
  const auto zero = ball_bound_report(kGolden, 5, 0.1);
  CHECK(zero.radius == 0);
  CHECK(zero.count == 1);
  const auto g = ball_bound_report(kGolden, 8, 0.25);
  CHECK(std::isfinite(g.C_fit));
  CHECK_THROWS_AS(ball_bound_report(kGolden, 8, 1.5), DomainError);
}

TEST_CASE("check_w_specification: documented examples") {
  const auto whole = check_w_specification(GoodSet::whole_language(Subshift::full(2)), 0, 5);
  CHECK(whole.holds);
  CHECK(whole.max_gap == 0);
  const auto ends = check_w_specification(GoodSet::ends_with(kGolden, w("0")), 0, 5);
  CHECK(ends.holds);
  const auto fib0 = check_w_specification(GoodSet::whole_language(kGolden), 0, 5);
  CHECK_FALSE(fib0.holds);
  REQUIRE(fib0.first_failure);
  CHECK(fib0.first_failure->first == w("1"));
  CHECK(fib0.first_failure->second == w("1"));
  const auto fib1 = check_w_specification(GoodSet::whole_language(kGolden), 1, 5);
  CHECK(fib1.holds);
  CHECK(fib1.max_gap == 1);
}

TEST_CASE("check_free_concatenation: documented examples") {
  CHECK(check_free_concatenation(GoodSet::whole_language(Subshift::full(2)), 5).holds);
  CHECK(check_free_concatenation(GoodSet::ends_with(kGolden, w("0")), 5).holds);
  const auto r = check_free_concatenation(GoodSet::whole_language(kGolden), 5);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->first == w("1"));
  CHECK(r.counterexample->second == w("1"));
}

TEST_CASE("nearest_in: documented examples and brute force") {
  const auto ends0 = GoodSet::ends_with(kGolden, w("0"));
  const auto same = nearest_in(w("0100"), ends0);
  CHECK(same.word == w("0100"));
  CHECK(same.distance == 0);
  const auto a = nearest_in(w("11"), ends0);
  CHECK(a.word == w("10"));
  CHECK(a.distance == 1);
  const auto b = nearest_in(w("111"), ends0);
  const auto b_oracle = nearest_oracle(w("111"), ends0, 5);
  CHECK(b.word == b_oracle.word);
  CHECK(b.distance == b_oracle.distance);
  CHECK(b.word == w("10"));
  CHECK(b.distance == 2);

  const auto sgap = Subshift::sgap(GapSet::finite({0, 2}), 0);
  const auto ones = GoodSet::begins_and_ends_with(sgap, w("1"));
  for (const GoodSet& g : {ends0, ones}) {
    for (int n = 1; n <= 5; ++n) {
      for (const Word& u : g.host().language(n)) {
        const auto got = nearest_in(u, g);
        const auto expected = nearest_oracle(u, g, n + 3);
        CHECK(got.distance == expected.distance);
        CHECK(got.word == expected.word);
      }
    }
  }
  const auto only = GoodSet::explicit_list(Subshift::full(2), {w("1111111111")});
  CHECK_THROWS_AS(nearest_in(w("0"), only), NotFoundError);
}

TEST_CASE("empirical_mistake_function: documented examples") {
  const auto zero = empirical_mistake_function(kGolden, GoodSet::whole_language(kGolden), 8);
  for (int n = 1; n <= 8; ++n) CHECK(zero(n) == 0);
  const auto ends = empirical_mistake_function(kGolden, GoodSet::ends_with(kGolden, w("0")), 8);
  for (int n = 1; n <= 8; ++n) CHECK(ends(n) <= 1);
  CHECK(ends(8) == 1);

  const auto sgap = Subshift::sgap(GapSet::finite({0, 2}), 0);
  const auto ones = GoodSet::begins_and_ends_with(sgap, w("1"));
  const auto g = empirical_mistake_function(sgap, ones, 7);
  int running = 0;
  for (int n = 1; n <= 7; ++n) {
    int worst = 0;
    for (const Word& u : sgap.language(n)) worst = std::max(worst, nearest_oracle(u, ones, n + 3).distance);
    running = std::max(running, worst);
    CHECK(g(n) == running);
    CHECK(static_cast<double>(g(n)) / n <= 1.0);
  }
  // non-decreasing, extended by the last value
  for (int n = 1; n < 12; ++n) CHECK(g(n) <= g(n + 1));
}

TEST_CASE("MistakeFunction forms") {
  CHECK(MistakeFunction::zero()(100) == 0);
  CHECK(MistakeFunction::constant(3)(7) == 3);
  CHECK(MistakeFunction::ceil_sqrt()(16) == 4);
  CHECK(MistakeFunction::ceil_sqrt()(17) == 5);
  const auto t = MistakeFunction::table({0, 2, 1, 3});
  CHECK(t.values() == std::vector<int>{0, 2, 2, 3});
  CHECK(t(9) == 3);
}

TEST_CASE("glue: documented examples") {
  const auto full = GoodSet::whole_language(Subshift::full(2));
  const auto plain = glue({w("01"), w("110")}, full);
  CHECK(plain.glued == w("01110"));
  CHECK(plain.lengths == std::vector<int>{2, 3});
  const auto ends0 = GoodSet::ends_with(kGolden, w("0"));
  const auto r = glue({w("11"), w("11")}, ends0);
  CHECK(r.glued == w("1010"));
  CHECK(r.lengths == std::vector<int>{2, 2});
  CHECK(r.distances == std::vector<int>{1, 1});
  const auto single = glue({w("0100")}, ends0);
  CHECK(single.glued == w("0100"));
  CHECK(single.lengths == std::vector<int>{4});
}

TEST_CASE("property: glued words stay admissible with bounded length drift") {
  gen::Rng rng(77);
  const auto ends0 = GoodSet::ends_with(kGolden, w("0"));
  const auto g = empirical_mistake_function(kGolden, ends0, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Word> blocks;
    for (int j = 0; j < 4; ++j) {
      const auto l = kGolden.language(static_cast<int>(rng() % 9) + 2);
      blocks.push_back(l[rng() % l.size()]);
    }
    const auto r = glue(blocks, ends0);
    CHECK(kGolden.contains(r.glued));
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const int n = static_cast<int>(blocks[j].size());
      CHECK(std::abs(r.lengths[j] - n) <= g(n));
    }
  }
}

TEST_CASE("edit bounds hold on all pairs of length <= 8 at distance <= 2") {
  const auto all = words_up_to(2, 8);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].empty()) continue;
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[j].empty()) continue;
      const int k = edit_distance(all[i], all[j]);
      if (k > 2) continue;
      const int m = static_cast<int>(std::min(all[i].size(), all[j].size()));
      for (int r = 1; r <= 3; ++r) {
        CHECK(oracle::window_l1(all[i], all[j], 2, r) <= birkhoff_edit_bound(k, r, 1.0, m) + 1e-12);
      }
      const long K = indicator_count(2, 4);
      const double D = weak_star_distance(cycle_measure(all[i], 2, 4), cycle_measure(all[j], 2, 4), K).value;
      CHECK(D <= distance_edit_bound(k, 2, m, K) + 1e-12);
    }
  }
}

TEST_CASE("edit bounds vanish when k/m does") {
  double previous = 1e300;
  for (int m = 100; m <= 1'000'000; m *= 10) {
    const int k = static_cast<int>(std::sqrt(m));
    const double b = birkhoff_edit_bound(k, 3, 2.0, m);
    CHECK(b < previous);
    previous = b;
  }
  CHECK(previous < 0.015);
  CHECK(distance_edit_bound(10, 2, 1'000'000, 60) < 1e-4);
}
