#include "symdyn/edit_metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

// Depth-first walk over L(X) keeping the edit-distance row of the current
// prefix against w; branches whose row minimum exceeds the radius are cut.
void ball_search(WordView w, int radius, const Subshift& x, std::size_t budget,
                 const std::function<void(const Word&, int)>& visit) {
  const std::size_t n = w.size();
  std::size_t visited = 0;
  Word prefix;
  std::vector<int> first(n + 1);
  std::iota(first.begin(), first.end(), 0);

  std::function<void(Subshift::State, const std::vector<int>&)> walk =
      [&](Subshift::State state, const std::vector<int>& row) {
        if (++visited > budget) {
          throw ResourceError("edit-ball budget " + std::to_string(budget),
                              "edit ball of radius " + std::to_string(radius) +
                                  " around a word of length " + std::to_string(n) +
                                  " is too large");
        }
        if (row[n] <= radius) visit(prefix, row[n]);
        std::vector<int> next(n + 1);
        for (int a = 0; a < x.alphabet_size(); ++a) {
          const auto t = x.step(state, static_cast<Symbol>(a));
          if (!t) continue;
          next[0] = row[0] + 1;
          int best = next[0];
          for (std::size_t j = 1; j <= n; ++j) {
            next[j] = std::min({row[j] + 1, next[j - 1] + 1,
                                row[j - 1] + (w[j - 1] == a ? 0 : 1)});
            best = std::min(best, next[j]);
          }
          if (best > radius) continue;
          prefix.push_back(static_cast<Symbol>(a));
          walk(*t, next);
          prefix.pop_back();
        }
      };
  walk(x.initial_state(), first);
}

}  // namespace

int edit_distance(WordView v, WordView w) {
  std::vector<int> row(w.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= v.size(); ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= w.size(); ++j) {
      const int above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + (v[i - 1] == w[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[w.size()];
}

std::vector<Word> edit_ball(WordView w, int radius, const Subshift& x, std::size_t budget) {
  if (radius < 0) throw DomainError("edit-ball radius must be >= 0");
  require_in_alphabet(w, x.alphabet());
  std::vector<Word> out;
  ball_search(w, radius, x, budget, [&](const Word& u, int) { out.push_back(u); });
  std::sort(out.begin(), out.end(), ShortLex{});
  return out;
}

double log_ball_bound(double C, int n, double delta) {
  return std::log(C) + C * std::log(static_cast<double>(n)) +
         n * (C * delta - delta * std::log(delta));
}

BallBoundReport ball_bound_report(const Subshift& x, int n, double delta, double C,
                                  std::size_t sample_cap, std::size_t budget) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (n < 1) throw DomainError("ball bound needs n >= 1");
  BallBoundReport r{};
  r.n = n;
  r.delta = delta;
  r.radius = static_cast<int>(std::floor(delta * n + 1e-12));
  r.C = C;
  const std::vector<Word> language = x.language(n, budget);
  std::vector<std::size_t> picks;
  if (language.size() <= sample_cap) {
    picks.resize(language.size());
    std::iota(picks.begin(), picks.end(), 0);
  } else {
    for (std::size_t i = 0; i < sample_cap; ++i) picks.push_back(i * language.size() / sample_cap);
  }
  for (std::size_t i : picks) {
    std::uint64_t count = 0;
    ball_search(language[i], r.radius, x, budget, [&](const Word&, int) { ++count; });
    if (count > r.count) {
      r.count = count;
      r.worst = language[i];
    }
  }
  r.sampled = picks.size();
  r.bound = std::exp(log_ball_bound(C, n, delta));
  const double target = std::log(static_cast<double>(r.count));
  if (log_ball_bound(1.0, n, delta) >= target) {
    r.C_fit = 1.0;
  } else {
    double lo = 1.0, hi = 2.0;
    while (log_ball_bound(hi, n, delta) < target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (log_ball_bound(mid, n, delta) >= target ? hi : lo) = mid;
    }
    r.C_fit = hi;
  }
  return r;
}

WSpecReport check_w_specification(const GoodSet& g, int tau, int n_max) {
  if (tau < 0) throw DomainError("tau must be >= 0");
  const std::vector<Word> members = g.members_up_to(n_max);
  const int p = g.host().alphabet_size();
  std::vector<Word> connectors;
  for (int len = 0; len <= tau; ++len) {
    for (std::uint64_t i = 0; i < ipow(static_cast<std::uint64_t>(p), len); ++i) {
      connectors.push_back(word_from_index(i, len, p));
    }
  }
  WSpecReport report;
  for (const Word& v : members) {
    for (const Word& w : members) {
      ++report.pairs_checked;
      int gap = -1;
      for (const Word& u : connectors) {
        Word joined = v;
        joined.insert(joined.end(), u.begin(), u.end());
        joined.insert(joined.end(), w.begin(), w.end());
        if (g.contains(joined)) {
          gap = static_cast<int>(u.size());
          break;
        }
      }
      if (gap < 0) {
        if (report.holds) report.first_failure = std::make_pair(v, w);
        report.holds = false;
      } else {
        report.max_gap = std::max(report.max_gap, gap);
      }
    }
  }
  return report;
}

FreeConcatenationReport check_free_concatenation(const GoodSet& f, int n_max) {
  const std::vector<Word> members = f.members_up_to(n_max);
  FreeConcatenationReport report;
  for (const Word& u : members) {
    for (const Word& w : members) {
      ++report.pairs_checked;
      if (!f.contains(concat(u, w))) {
        report.holds = false;
        report.counterexample = std::make_pair(u, w);
        return report;
      }
    }
  }
  return report;
}

NearestWord nearest_in(WordView w, const GoodSet& g, std::optional<int> cap, std::size_t budget) {
  require_in_alphabet(w, g.host().alphabet());
  if (!w.empty() && g.contains(w)) return {Word(w.begin(), w.end()), 0};
  const int limit = cap.value_or(static_cast<int>((w.size() + 1) / 2) + 2);
  for (int r = 1; r <= limit; ++r) {
    std::optional<Word> best;
    ball_search(w, r, g.host(), budget, [&](const Word& u, int) {
      if (u.empty() || !g.contains(u)) return;
      if (!best || ShortLex{}(u, *best)) best = u;
    });
    if (best) return {*best, r};
  }
  throw NotFoundError("no member of " + g.describe() + " within edit distance " +
                      std::to_string(limit) + " of '" + to_string(w) + "'");
}

MistakeFunction MistakeFunction::constant(int c) {
  if (c < 0) throw DomainError("mistake function values must be >= 0");
  return MistakeFunction(Form::Constant, c, {});
}

MistakeFunction MistakeFunction::table(std::vector<int> values) {
  if (values.empty()) throw DomainError("empty mistake function table");
  int running = 0;
  for (int& v : values) {
    if (v < 0) throw DomainError("mistake function values must be >= 0");
    running = std::max(running, v);
    v = running;
  }
  return MistakeFunction(Form::Table, 0, std::move(values));
}

int MistakeFunction::operator()(int n) const {
  if (n < 0) throw DomainError("mistake function argument must be >= 0");
  switch (form_) {
    case Form::Constant:
      return c_;
    case Form::CeilSqrt:
      return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
    case Form::Table:
      if (n == 0) return 0;
      return values_[std::min<std::size_t>(static_cast<std::size_t>(n), values_.size()) - 1];
  }
  return 0;
}

MistakeFunction empirical_mistake_function(const Subshift& x, const GoodSet& g, int n_max,
                                           std::size_t budget) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  std::vector<int> values;
  for (int n = 1; n <= n_max; ++n) {
    int worst = 0;
    for (const Word& w : x.language(n, budget)) {
      worst = std::max(worst, nearest_in(w, g, std::nullopt, budget).distance);
    }
    values.push_back(worst);
  }
  return MistakeFunction::table(std::move(values));
}

GlueResult glue(const std::vector<Word>& words, const GoodSet& f) {
  GlueResult result;
  for (const Word& w : words) {
    const NearestWord near = nearest_in(w, f);
    result.glued.insert(result.glued.end(), near.word.begin(), near.word.end());
    result.lengths.push_back(static_cast<int>(near.word.size()));
    result.distances.push_back(near.distance);
  }
  return result;
}

double birkhoff_edit_bound(int k, int r, double sup_norm, int min_length) {
  if (min_length < 1) throw DomainError("edit bound needs non-empty words");
  return sup_norm * ((2.0 * r + 1.0) * k + 2.0 * (r - 1)) / min_length;
}

double distance_edit_bound(int k, int p, int min_length, long K) {
  double total = 0.0;
  double weight = 1.0;
  long index = 0;
  for (int len = 1; index < K && index < 1100; ++len) {
    const double term = std::min(1.0, birkhoff_edit_bound(k, len, 1.0, min_length));
    const long count = static_cast<long>(ipow(static_cast<std::uint64_t>(p), len));
    for (long i = 0; i < count && index < K && index < 1100; ++i, ++index) {
      weight *= 0.5;
      total += weight * term;
    }
  }
  return total + std::ldexp(1.0, static_cast<int>(-std::min<long>(K, 2000)));
}

}  // namespace symdyn
