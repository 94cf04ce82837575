#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symdyn/good_set.hpp"
#include "symdyn/subshift.hpp"

namespace symdyn {

/// Minimum number of substitutions, insertions and deletions turning v into w.
int edit_distance(WordView v, WordView w);

/// All v in L(X) with edit_distance(v, w) <= radius, in short-lex order.
/// Throws ResourceError when the search visits more than `budget` prefixes.
std::vector<Word> edit_ball(WordView w, int radius, const Subshift& x,
                            std::size_t budget = kDefaultBudget);

/// log of C n^C (e^{C delta} e^{-delta log delta})^n.
double log_ball_bound(double C, int n, double delta);

struct BallBoundReport {
  int n;
  double delta;
  int radius;           // floor(delta n)
  std::uint64_t count;  // largest ball over the sample
  Word worst;           // a centre attaining it
  std::size_t sampled;
  double C;             // constant the bound was evaluated at
  double bound;
  double C_fit;         // least C >= 1 with count <= bound
};

/// Ball sizes over L_n (every word when |L_n| <= sample_cap, otherwise an
/// evenly spaced sample) against the growth bound.
BallBoundReport ball_bound_report(const Subshift& x, int n, double delta, double C = 2.0,
                                  std::size_t sample_cap = 512,
                                  std::size_t budget = kDefaultBudget);

struct WSpecReport {
  bool holds = true;
  /// Largest over pairs of the shortest connector length.
  int max_gap = 0;
  std::optional<std::pair<Word, Word>> first_failure;
  std::size_t pairs_checked = 0;
};

/// For all v, w in G of length 1..n_max: is there u with |u| <= tau and
/// vuw in G?
WSpecReport check_w_specification(const GoodSet& g, int tau, int n_max);

struct FreeConcatenationReport {
  bool holds = true;
  std::optional<std::pair<Word, Word>> counterexample;
  std::size_t pairs_checked = 0;
};

/// uw in F for all u, w in F of length 1..n_max.
FreeConcatenationReport check_free_concatenation(const GoodSet& f, int n_max);

struct NearestWord {
  Word word;
  int distance;
};

/// A closest member of G to w, ties broken by length then lexicographically.
/// The search radius defaults to ceil(|w|/2) + 2; NotFoundError beyond it.
NearestWord nearest_in(WordView w, const GoodSet& g, std::optional<int> cap = std::nullopt,
                       std::size_t budget = kDefaultBudget);

/// A non-decreasing integer function g(n), either tabulated (extended by its
/// last value) or closed form.
class MistakeFunction {
 public:
  static MistakeFunction zero() { return MistakeFunction(Form::Constant, 0, {}); }
  static MistakeFunction constant(int c);
  static MistakeFunction ceil_sqrt() { return MistakeFunction(Form::CeilSqrt, 0, {}); }
  /// values[i] = g(i + 1); the running maximum is stored.
  static MistakeFunction table(std::vector<int> values);

  int operator()(int n) const;
  const std::vector<int>& values() const noexcept { return values_; }
  bool tabulated() const noexcept { return form_ == Form::Table; }

 private:
  enum class Form { Constant, CeilSqrt, Table };
  MistakeFunction(Form form, int c, std::vector<int> values)
      : form_(form), c_(c), values_(std::move(values)) {}

  Form form_;
  int c_;
  std::vector<int> values_;
};

/// g(n) = max over w in L_n(X) of the distance from w to G, for n <= n_max,
/// made non-decreasing.
MistakeFunction empirical_mistake_function(const Subshift& x, const GoodSet& g, int n_max,
                                           std::size_t budget = kDefaultBudget);

struct GlueResult {
  Word glued;
  std::vector<int> lengths;    // |phi_F(w^j)|
  std::vector<int> distances;  // d(w^j, phi_F(w^j))
};

/// phi_F(w^1) phi_F(w^2) ... with phi_F = nearest_in(., F). The input words
/// need not be admissible; the output is whenever F is closed under
/// concatenation.
GlueResult glue(const std::vector<Word>& words, const GoodSet& f);

/// Bound on |S phi(v^inf)/|v| - S phi(w^inf)/|w|| over periodic extensions
/// when edit_distance(v, w) = k and phi has depth r:
/// sup|phi| ((2r+1)k + 2(r-1)) / min(|v|, |w|).
double birkhoff_edit_bound(int k, int r, double sup_norm, int min_length);

/// Matching bound on D(E_v, E_w) for cycle measures, summed over the first K
/// cylinder indicators plus the 2^-K tail.
double distance_edit_bound(int k, int p, int min_length, long K);

}  // namespace symdyn
