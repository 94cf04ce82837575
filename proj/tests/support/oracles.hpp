#pragma once

// Brute-force reference implementations used only by the tests. None of
// them goes through the library's automata.

#include <cmath>
#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "symdyn/word.hpp"

namespace oracle {

using symdyn::Word;

inline std::vector<Word> all_words(int p, int n) {
  std::vector<Word> out;
  Word w(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == p - 1) {
      w[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return out;
}

inline bool has_subword(const Word& w, const std::vector<Word>& forbidden) {
  for (const Word& f : forbidden) {
    if (f.size() > w.size()) continue;
    for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
      if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i))) {
        return true;
      }
    }
  }
  return false;
}

// w is in the SFT language iff some allowed word of length |w| + slack
// starts with w; slack beyond the number of states adds nothing.
inline bool sft_member(const Word& w, int p, const std::vector<Word>& forbidden,
                       int slack) {
  if (has_subword(w, forbidden)) return false;
  std::function<bool(Word&, int)> extend = [&](Word& u, int left) {
    if (left == 0) return true;
    for (int a = 0; a < p; ++a) {
      u.push_back(static_cast<symdyn::Symbol>(a));
      bool ok = !has_subword(u, forbidden) && extend(u, left - 1);
      u.pop_back();
      if (ok) return true;
    }
    return false;
  };
  Word u = w;
  return extend(u, slack);
}

// Greedy beta-expansions: the set of x in [0,1) whose T_beta itinerary starts
// with w is an interval; track its image under T_beta^j.
inline bool beta_member(const Word& w, long double beta) {
  long double lo = 0.0L, hi = 1.0L;
  for (symdyn::Symbol d : w) {
    const long double a = std::max(lo, d / beta);
    const long double b = std::min(hi, (d + 1) / beta);
    if (b - a <= 1e-13L) return false;
    lo = beta * a - d;
    hi = beta * b - d;
  }
  return true;
}

// Length-n factors of concatenations of blocks marker gap^s, s in gaps.
inline std::set<Word> sgap_language(const std::vector<int>& gaps, int gap_symbol,
                                    int n) {
  const auto g = static_cast<symdyn::Symbol>(gap_symbol);
  const auto m = static_cast<symdyn::Symbol>(1 - gap_symbol);
  const std::size_t target = static_cast<std::size_t>(2 * n + 3);
  std::set<Word> out;
  std::function<void(Word&)> grow = [&](Word& x) {
    if (x.size() >= target) {
      for (std::size_t i = 0; i <= static_cast<std::size_t>(n + 2); ++i) {
        out.insert(Word(x.begin() + static_cast<long>(i),
                        x.begin() + static_cast<long>(i) + n));
      }
      return;
    }
    for (int s : gaps) {
      const std::size_t before = x.size();
      x.push_back(m);
      x.insert(x.end(), static_cast<std::size_t>(s), g);
      grow(x);
      x.resize(before);
    }
  };
  Word x;
  grow(x);
  return out;
}

}  // namespace oracle

namespace oracle {

// Breadth-first search over single edits; intermediate words never need to
// be longer than the longer endpoint plus one.
inline int edit_distance_bfs(const Word& v, const Word& w, int p) {
  if (v == w) return 0;
  const std::size_t cap = std::max(v.size(), w.size()) + 1;
  std::set<Word> seen{v};
  std::vector<Word> frontier{v};
  for (int depth = 1;; ++depth) {
    std::vector<Word> next;
    auto offer = [&](Word u) {
      if (u.size() > cap || !seen.insert(u).second) return false;
      if (u == w) return true;
      next.push_back(std::move(u));
      return false;
    };
    for (const Word& u : frontier) {
      for (std::size_t i = 0; i <= u.size(); ++i) {
        if (i < u.size()) {
          Word d = u;
          d.erase(d.begin() + static_cast<long>(i));
          if (offer(d)) return depth;
          for (int a = 0; a < p; ++a) {
            if (a == u[i]) continue;
            Word s = u;
            s[i] = static_cast<symdyn::Symbol>(a);
            if (offer(s)) return depth;
          }
        }
        for (int a = 0; a < p; ++a) {
          Word ins = u;
          ins.insert(ins.begin() + static_cast<long>(i), static_cast<symdyn::Symbol>(a));
          if (offer(ins)) return depth;
        }
      }
    }
    frontier = std::move(next);
  }
}

// Sum over windows of depth r of |E_v[u] - E_w[u]| for periodic extensions:
// the largest Birkhoff-average gap over potentials with sup norm 1.
inline double window_l1(const Word& v, const Word& w, int p, int r) {
  auto freq = [&](const Word& x) {
    std::map<Word, double> f;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Word u;
      for (int j = 0; j < r; ++j) u.push_back(x[(i + static_cast<std::size_t>(j)) % x.size()]);
      f[u] += 1.0 / static_cast<double>(x.size());
    }
    return f;
  };
  (void)p;
  auto a = freq(v), b = freq(w);
  double s = 0.0;
  for (const auto& [u, m] : a) s += std::abs(m - (b.count(u) ? b[u] : 0.0));
  for (const auto& [u, m] : b) {
    if (!a.count(u)) s += m;
  }
  return s;
}

}  // namespace oracle
