#pragma once

#include <optional>
#include <vector>

namespace symdyn {

/// The set S of admissible gap lengths of an S-gap shift. Finite sets,
/// arithmetic progressions {start + k*step : k >= 0} and cofinite sets
/// (N minus a finite exclusion list) are supported.
class GapSet {
 public:
  enum class Kind { Finite, Arithmetic, Cofinite };

  static GapSet finite(std::vector<int> elements);
  static GapSet arithmetic(int start, int step);
  static GapSet cofinite(std::vector<int> excluded);
  static GapSet naturals() { return cofinite({}); }

  Kind kind() const noexcept { return kind_; }
  bool contains(int n) const noexcept;
  bool bounded() const noexcept { return kind_ == Kind::Finite; }
  /// Largest element; empty for unbounded sets.
  std::optional<int> max() const noexcept;
  /// True iff some s in S satisfies s >= n.
  bool has_element_at_least(int n) const noexcept;
  std::vector<int> elements_up_to(int m) const;
  GapSet restricted(int m) const { return finite(elements_up_to(m)); }

  /// Finite: the elements. Cofinite: the exclusions. Arithmetic: {start, step}.
  const std::vector<int>& values() const noexcept { return values_; }
  int start() const noexcept { return start_; }
  int step() const noexcept { return step_; }

  bool operator==(const GapSet&) const = default;

 private:
  GapSet(Kind kind, std::vector<int> values, int start, int step);

  Kind kind_;
  std::vector<int> values_;
  int start_ = 0;
  int step_ = 1;
};

}  // namespace symdyn
