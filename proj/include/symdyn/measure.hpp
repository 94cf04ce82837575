#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "symdyn/potential.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

/// A shift-invariant Markov measure of memory m >= 1: the next symbol is drawn
/// from P(last m symbols, .). States are indexed by word_index over p^m words;
/// a state whose row is all zero is never visited.
class MarkovMeasure {
 public:
  /// Tolerances enforced at construction.
  static constexpr double kRowTolerance = 1e-12;
  static constexpr double kStationaryTolerance = 1e-10;

  /// `transitions` is row-major, p^m rows by p columns. Without `stationary`
  /// the stationary vector is solved for and must be unique (NumericError
  /// otherwise); a supplied one is checked instead.
  MarkovMeasure(int p, int memory, std::vector<double> transitions,
                std::optional<std::vector<double>> stationary = std::nullopt);

  /// i.i.d. symbols with the given probabilities.
  static MarkovMeasure bernoulli(std::vector<double> probs);
  /// Bernoulli on {0,1} with P(1) = q.
  static MarkovMeasure bernoulli2(double q) { return bernoulli({1.0 - q, q}); }

  int alphabet_size() const noexcept { return p_; }
  int memory() const noexcept { return m_; }
  std::size_t state_count() const noexcept { return pi_.size(); }
  double transition(std::uint64_t state, Symbol a) const noexcept {
    return P_[state * static_cast<std::uint64_t>(p_) + a];
  }
  const std::vector<double>& transitions() const noexcept { return P_; }
  const std::vector<double>& stationary() const noexcept { return pi_; }

  /// mu[w].
  double mass(WordView w) const;
  /// -sum pi_s P(s,a) log P(s,a), in nats.
  double entropy() const;

 private:
  int p_;
  int m_;
  std::vector<double> P_;
  std::vector<double> pi_;
  std::vector<double> pi_prefix_;  // running sums of pi_
};

/// Cylinder masses of every word of length <= depth. Empirical measures,
/// periodic-orbit measures and mixtures are stored this way.
class CylinderTable {
 public:
  /// `top` holds masses of the p^depth words of length `depth`; shorter
  /// lengths are obtained by summing over the last symbol.
  CylinderTable(int p, int depth, std::vector<double> top);

  int alphabet_size() const noexcept { return p_; }
  int depth() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  /// Throws DomainError when |w| > depth.
  double mass(WordView w) const;
  const std::vector<double>& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }

 private:
  int p_;
  std::vector<std::vector<double>> levels_;
};

using MeasureRep = std::variant<MarkovMeasure, CylinderTable>;

int alphabet_size(const MeasureRep& mu);
/// Deepest word length on which mu can be evaluated; empty when unlimited.
std::optional<int> max_depth(const MeasureRep& mu);
double mass(const MeasureRep& mu, WordView w);
/// Masses of all words of length d as a table.
CylinderTable cylinder_table(const MeasureRep& mu, int d);

/// E_n(x): frequencies of the length-k windows starting at 0..n-1, for every
/// k <= d. Needs |x| >= n + d - 1.
CylinderTable empirical_measure(WordView x, int p, int n, int d);

/// Invariant measure on the orbit of the periodic point w^infinity, evaluated
/// to depth d (the periodic-extension empirical measure E_w).
CylinderTable cycle_measure(WordView w, int p, int d);

enum class DepthPolicy {
  /// Throw DomainError naming the largest usable K.
  Strict,
  /// Silently use the largest usable K and report the larger tail.
  Truncate,
};

struct WeakStarDistance {
  double value;
  double tail_bound;  // 2^-K_used
  long K_used;
};

/// Partial sum over the first K cylinder indicators in length-lexicographic
/// order of |mu[w_k] - nu[w_k]| / 2^k.
WeakStarDistance weak_star_distance(const MeasureRep& mu, const MeasureRep& nu,
                                    long K, DepthPolicy policy = DepthPolicy::Strict);

/// Number of cylinder indicators of length <= d: p + p^2 + ... + p^d.
long indicator_count(int p, int d);

/// The k-th (1-based) word of A^* minus the empty word in length-lex order.
Word separating_word(int p, long k);

double markov_entropy(const MarkovMeasure& mu);

/// sum over words w of length r of phi(w) mu[w].
double integrate(const Potential& phi, const MeasureRep& mu);

/// Cylinder-wise convex combination evaluated at depth d.
CylinderTable mixture(const std::vector<MeasureRep>& measures,
                      const std::vector<double>& weights, int d);

/// H_d = -sum_{|w|=d} mu[w] log mu[w].
double block_entropy(const MeasureRep& mu, int d);
/// H_d - H_{d-1}, a decreasing upper estimate of the entropy.
double block_entropy_rate(const MeasureRep& mu, int d);

}  // namespace symdyn
