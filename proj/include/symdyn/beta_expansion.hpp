#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/word.hpp"

namespace symdyn {

struct BetaOptions {
  /// Number of expansion digits kept by a beta-shift.
  int depth = 128;
  /// |beta*r - round(beta*r)| below this counts as an exact integer hit.
  double guard = 1e-120;
};

/// A base beta > 1 given as text: a decimal ("1.5"), a fraction ("5/2") or
/// the keyword "golden". Digits are extracted in 200-digit decimal floating
/// point, which is exact for decimal input over the default depth.
class BetaValue {
 public:
  explicit BetaValue(std::string text);

  const std::string& text() const noexcept { return text_; }
  double approx() const noexcept { return approx_; }
  /// ceil(beta): the digit alphabet is {0, ..., ceil(beta) - 1}.
  int digit_count() const noexcept { return digits_; }
  bool is_integer() const noexcept { return integer_; }

 private:
  std::string text_;
  double approx_ = 0.0;
  int digits_ = 0;
  bool integer_ = false;
};

struct BetaExpansion {
  /// First k digits of the greedy expansion of 1, w_j = min(floor(beta r), b-1).
  Word greedy;
  /// When 1 has a finite expansion w_1..w_m (or beta is an integer), the
  /// quasi-greedy expansion is period^infinity with
  /// period = w_1..w_{m-1}(w_m - 1).
  std::optional<Word> period;
  /// 0-based positions where beta*r fell within the guard of an integer.
  std::vector<std::size_t> flagged;

  /// j-th digit (0-based) of the quasi-greedy expansion. Requires a period or
  /// j < greedy.size().
  Symbol quasi_digit(std::size_t j) const;
  /// First k quasi-greedy digits.
  Word quasi_prefix(std::size_t k) const;
};

BetaExpansion beta_expansion(const BetaValue& beta, int k,
                             const BetaOptions& options = {});

}  // namespace symdyn
