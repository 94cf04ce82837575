#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "symdyn/edit_metric.hpp"
#include "symdyn/good_set.hpp"
#include "symdyn/measure.hpp"
#include "symdyn/subshift.hpp"

namespace symdyn {

/// How a word's distance to mu is turned into a statement about its cylinder.
enum class ErrorMode {
  /// D(E_w, mu) + d/n + 2^-K(d) < eps: holds for every point of [w].
  Certified,
  /// D(E_w, mu) < eps on the periodic extension alone.
  Surrogate,
};

/// e(n, d) = d/n + 2^-K(d), K(d) = p + ... + p^d.
double certified_error(int p, int n, int d);

/// D(E_w, mu) over the first indicator_count(p, d) cylinders, for every w of
/// length n in L(X), in short-lex order.
struct ScoredWord {
  Word word;
  double distance;
};
std::vector<ScoredWord> score_words(const Subshift& x, const MeasureRep& mu, int n, int d,
                                    std::size_t budget = kDefaultBudget);

/// Words w of L_n(X) with D(E_w, mu) (+ e(n, d) when certified) < eps.
std::vector<Word> good_words(const Subshift& x, const MeasureRep& mu, double eps, int n, int d,
                             ErrorMode mode = ErrorMode::Certified,
                             std::size_t budget = kDefaultBudget);

struct KatokCheck {
  int n;
  std::size_t count;
  double threshold;  // e^{n (h - delta)}
  bool pass;
  /// Least n0 such that the check passes for every n0 <= m <= n.
  std::optional<int> onset;
};

KatokCheck katok_count_check(const Subshift& x, const MarkovMeasure& mu, double eps, double delta,
                             int n, int d = 2, ErrorMode mode = ErrorMode::Certified,
                             std::size_t budget = kDefaultBudget);

/// Entropy of a measure: exact for Markov measures, the block rate at the
/// table depth otherwise.
double measure_entropy(const MeasureRep& mu);

struct Itinerary {
  std::vector<MeasureRep> measures;
  double chain_bound = std::numeric_limits<double>::infinity();

  /// Throws DomainError unless every measure reaches depth d over a common
  /// alphabet and consecutive distances stay within chain_bound.
  void validate(int d) const;
  std::vector<double> chain_distances(int d) const;
};

struct Stage {
  std::size_t measure;  // index into the itinerary
  int n;
  long repeats;
  double eps;
  int mistakes;  // g(n)
  std::size_t good_count;
};

struct ScheduleOptions {
  int depth = 4;
  double delta = 0.1;
  ErrorMode mode = ErrorMode::Certified;
  int n_min = 0;  // 0 selects max(depth, 2)
  int n_max = 20;
  /// Give up once the lower length bound passes overshoot * T.
  double overshoot = 4.0;
  std::size_t budget = kDefaultBudget;
};

struct Schedule {
  std::vector<Stage> stages;
  MistakeFunction g;
  double theta;
  int depth;
  ErrorMode mode;

  long block_count() const;
  /// sum (n_j - g(n_j)) N_j over all stages.
  long min_length() const;
  /// Both ratio families, stage by stage; every entry is <= theta.
  std::vector<double> ratios() const;
};

inline const std::vector<double> kEpsGrid{0.4, 0.3, 0.2, 0.1, 0.05, 0.025, 0.0125};

/// Stages visit the itinerary back and forth (0, 1, ..., J-1, J-2, ..., 1,
/// 0, 1, ...) until every measure has been used and sum (n - g(n)) N >= T.
/// Each stage uses the least n whose good-word count reaches e^{n (h - delta)}
/// for some grid eps, with the smallest such eps.
Schedule make_schedule(const Subshift& x, const Itinerary& itinerary, const MistakeFunction& g,
                       double theta, long T, const ScheduleOptions& options = {});

struct Segment {
  long j;  // 1-based block number
  std::size_t stage;
  std::size_t measure;
  int n;
  int l;
  long t;
  int edits;
  bool within_mistake_bound;  // |l - n| <= g(n)
};

struct GeneratedPoint {
  Word prefix;
  std::vector<Segment> segments;
  std::uint64_t seed;
  /// sum over blocks of log |D'_j|.
  double log_choices;

  /// log_choices / t_J.
  double counting_rate() const;
};

/// Glues phi_F(w^1) phi_F(w^2) ... with w^j seeded-uniform from the stage's
/// good words.
GeneratedPoint generate_point(const Subshift& x, const Itinerary& itinerary, const Schedule& schedule,
                              const GoodSet& f, std::uint64_t seed,
                              std::size_t budget = kDefaultBudget);

struct Checkpoint {
  long j;
  long t;
  std::size_t measure;
  double distance;  // D(E_t(x), alpha'_j)
};

struct ConvergenceReport {
  std::vector<Checkpoint> checkpoints;
  /// For each itinerary measure, min D(E_t(x), alpha_k) over checkpoints
  /// with t >= |x| / 10.
  std::vector<double> late_minimum;
};

/// One checkpoint per segment. Windows that run past the end of x wrap
/// around to its start. DomainError when the log does not end at |x|.
ConvergenceReport track_convergence(WordView x, const Itinerary& itinerary,
                                    const std::vector<Segment>& segments, int d);

}  // namespace symdyn
