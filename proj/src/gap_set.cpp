#include "symdyn/gap_set.hpp"

#include <algorithm>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (int x : v) {
    if (x < 0) throw DomainError("gap lengths must be non-negative");
  }
  return v;
}

}  // namespace

GapSet::GapSet(Kind kind, std::vector<int> values, int start, int step)
    : kind_(kind), values_(std::move(values)), start_(start), step_(step) {}

GapSet GapSet::finite(std::vector<int> elements) {
  auto v = sorted_unique(std::move(elements));
  if (v.empty()) throw DomainError("gap set must be non-empty");
  return GapSet(Kind::Finite, std::move(v), 0, 1);
}

GapSet GapSet::arithmetic(int start, int step) {
  if (start < 0 || step < 1) {
    throw DomainError("arithmetic gap set needs start >= 0 and step >= 1");
  }
  return GapSet(Kind::Arithmetic, {}, start, step);
}

GapSet GapSet::cofinite(std::vector<int> excluded) {
  return GapSet(Kind::Cofinite, sorted_unique(std::move(excluded)), 0, 1);
}

bool GapSet::contains(int n) const noexcept {
  if (n < 0) return false;
  switch (kind_) {
    case Kind::Finite:
      return std::binary_search(values_.begin(), values_.end(), n);
    case Kind::Arithmetic:
      return n >= start_ && (n - start_) % step_ == 0;
    case Kind::Cofinite:
      return !std::binary_search(values_.begin(), values_.end(), n);
  }
  return false;
}

std::optional<int> GapSet::max() const noexcept {
  if (kind_ == Kind::Finite) return values_.back();
  return std::nullopt;
}

bool GapSet::has_element_at_least(int n) const noexcept {
  if (kind_ != Kind::Finite) return true;
  return values_.back() >= n;
}

std::vector<int> GapSet::elements_up_to(int m) const {
  std::vector<int> out;
  for (int n = 0; n <= m; ++n) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

}  // namespace symdyn
