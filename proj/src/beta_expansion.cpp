#include "symdyn/beta_expansion.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_dec_float<200>>;

Real parse_real(const std::string& text) {
  if (text == "golden") return (Real(1) + sqrt(Real(5))) / 2;
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      Real num(text.substr(0, slash));
      Real den(text.substr(slash + 1));
      if (den == 0) throw DomainError("beta has zero denominator");
      return num / den;
    }
    return Real(text);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse beta value '" + text + "'");
  }
}

}  // namespace

BetaValue::BetaValue(std::string text) : text_(std::move(text)) {
  const Real beta = parse_real(text_);
  if (beta <= 1) throw DomainError("beta must exceed 1, got " + text_);
  if (beta > 36) throw DomainError("beta above 36 exceeds the alphabet limit");
  approx_ = beta.convert_to<double>();
  const Real r = round(beta);
  integer_ = abs(beta - r) < Real(1e-150);
  digits_ = integer_ ? r.convert_to<int>() : ceil(beta).convert_to<int>();
}

Symbol BetaExpansion::quasi_digit(std::size_t j) const {
  if (period) return (*period)[j % period->size()];
  if (j >= greedy.size()) {
    throw ResourceError("beta expansion depth",
                        "quasi-greedy digit " + std::to_string(j) +
                            " beyond computed depth " +
                            std::to_string(greedy.size()));
  }
  return greedy[j];
}

Word BetaExpansion::quasi_prefix(std::size_t k) const {
  Word out(k);
  for (std::size_t j = 0; j < k; ++j) out[j] = quasi_digit(j);
  return out;
}

BetaExpansion beta_expansion(const BetaValue& beta_value, int k,
                             const BetaOptions& options) {
  if (k < 1) throw DomainError("beta_expansion needs k >= 1");
  const Real beta = parse_real(beta_value.text());
  const int b = beta_value.digit_count();
  BetaExpansion out;

  if (beta_value.is_integer()) {
    // The digit b itself is outside {0..b-1}; clamping keeps r = 1 forever.
    out.greedy.assign(static_cast<std::size_t>(k), static_cast<Symbol>(b - 1));
    out.period = Word{static_cast<Symbol>(b - 1)};
    return out;
  }

  // Run past k so that a finite expansion ending after position k is still
  // recognised.
  const int horizon = k + options.depth;
  const Real guard(options.guard);
  Real r = 1;
  Word digits;
  bool terminated = false;
  for (int j = 0; j < horizon && !terminated; ++j) {
    const Real x = beta * r;
    const Real nearest = round(x);
    int digit = 0;
    if (abs(x - nearest) < guard) {
      out.flagged.push_back(static_cast<std::size_t>(j));
      digit = nearest.convert_to<int>();
      terminated = true;
    } else {
      digit = floor(x).convert_to<int>();
      r = x - digit;
    }
    digits.push_back(static_cast<Symbol>(std::min(digit, b - 1)));
  }

  out.greedy.assign(static_cast<std::size_t>(k), 0);
  for (std::size_t j = 0; j < out.greedy.size() && j < digits.size(); ++j) {
    out.greedy[j] = digits[j];
  }
  std::erase_if(out.flagged,
                [k](std::size_t j) { return j >= static_cast<std::size_t>(k); });

  if (terminated) {
    Word period = digits;
    while (!period.empty() && period.back() == 0) period.pop_back();
    if (!period.empty()) {
      period.back() = static_cast<Symbol>(period.back() - 1);
      out.period = std::move(period);
    }
  }
  return out;
}

}  // namespace symdyn
