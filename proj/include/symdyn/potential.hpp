#pragma once

#include <utility>
#include <vector>

#include "symdyn/word.hpp"

namespace symdyn {

/// A locally constant potential: phi(x) depends on the first `depth` symbols.
///
/// The table is indexed by word_index over all p^depth words. Entries may be
/// NaN, meaning "undefined"; such words must not occur in the shift the
/// potential is used with.
class Potential {
 public:
  Potential(int p, int depth, std::vector<double> table);

  static Potential constant(int p, double c);
  /// 1 on the cylinder [w], 0 elsewhere; depth |w|.
  static Potential indicator(int p, const Word& w);
  /// Listed words get their value, everything else is undefined.
  static Potential from_entries(int p, int depth,
                                const std::vector<std::pair<Word, double>>& entries);

  int alphabet_size() const noexcept { return p_; }
  int depth() const noexcept { return depth_; }
  const std::vector<double>& table() const noexcept { return table_; }

  /// Value on a window of exactly `depth` symbols. Throws DomainError when
  /// the entry is undefined.
  double operator()(WordView window) const;
  double at(std::uint64_t index) const noexcept { return table_[index]; }
  bool defined(std::uint64_t index) const noexcept;

  /// The same function written as a depth-d table, d >= depth.
  Potential reblocked(int d) const;

  Potential operator+(const Potential& other) const;
  Potential operator-(const Potential& other) const;
  Potential operator+(double c) const;
  Potential operator*(double s) const;

  /// Extremes over defined entries.
  double min_value() const;
  double max_value() const;
  double sup_norm() const;

 private:
  int p_;
  int depth_;
  std::vector<double> table_;
};

inline Potential operator*(double s, const Potential& phi) { return phi * s; }

/// S_n phi(x) = sum_{i<n} phi(x_i .. x_{i+r-1}); needs |x| >= n + r - 1.
double birkhoff_sum(const Potential& phi, WordView x, int n);

/// Birkhoff sum along the periodic extension w w w ..., n = |w| windows.
double periodic_birkhoff_sum(const Potential& phi, WordView w);

}  // namespace symdyn
