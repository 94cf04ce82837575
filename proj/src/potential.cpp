#include "symdyn/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

std::pair<Potential, Potential> common_depth(const Potential& a,
                                             const Potential& b) {
  if (a.alphabet_size() != b.alphabet_size()) {
    throw DomainError("potentials over different alphabets");
  }
  const int d = std::max(a.depth(), b.depth());
  return {a.reblocked(d), b.reblocked(d)};
}

}  // namespace

Potential::Potential(int p, int depth, std::vector<double> table)
    : p_(Alphabet(p).size()), depth_(depth), table_(std::move(table)) {
  if (depth < 1) throw DomainError("potential depth must be >= 1");
  if (table_.size() != ipow(static_cast<std::uint64_t>(p), depth)) {
    throw DomainError("potential table must have p^depth entries");
  }
  for (double v : table_) {
    if (std::isinf(v)) throw DomainError("potential values must be finite");
  }
}

Potential Potential::constant(int p, double c) {
  return Potential(p, 1, std::vector<double>(static_cast<std::size_t>(p), c));
}

Potential Potential::indicator(int p, const Word& w) {
  if (w.empty()) return constant(p, 1.0);
  require_in_alphabet(w, Alphabet(p));
  const auto depth = static_cast<int>(w.size());
  std::vector<double> table(ipow(static_cast<std::uint64_t>(p), depth), 0.0);
  table[word_index(w, p)] = 1.0;
  return Potential(p, depth, std::move(table));
}

Potential Potential::from_entries(
    int p, int depth, const std::vector<std::pair<Word, double>>& entries) {
  std::vector<double> table(ipow(static_cast<std::uint64_t>(p), depth),
                            kUndefined);
  for (const auto& [w, v] : entries) {
    if (static_cast<int>(w.size()) != depth) {
      throw DomainError("potential entry '" + to_string(w) +
                        "' does not have length " + std::to_string(depth));
    }
    require_in_alphabet(w, Alphabet(p));
    table[word_index(w, p)] = v;
  }
  return Potential(p, depth, std::move(table));
}

double Potential::operator()(WordView window) const {
  if (static_cast<int>(window.size()) != depth_) {
    throw DomainError("potential window has the wrong length");
  }
  const double v = table_[word_index(window, p_)];
  if (std::isnan(v)) {
    throw DomainError("potential undefined on '" + to_string(window) + "'");
  }
  return v;
}

bool Potential::defined(std::uint64_t index) const noexcept {
  return !std::isnan(table_[index]);
}

Potential Potential::reblocked(int d) const {
  if (d < depth_) throw DomainError("cannot reblock to a smaller depth");
  if (d == depth_) return *this;
  const std::uint64_t stride = ipow(static_cast<std::uint64_t>(p_), d - depth_);
  std::vector<double> table(table_.size() * stride);
  for (std::uint64_t i = 0; i < table.size(); ++i) table[i] = table_[i / stride];
  return Potential(p_, d, std::move(table));
}

Potential Potential::operator+(const Potential& other) const {
  auto [a, b] = common_depth(*this, other);
  std::vector<double> t = a.table_;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += b.table_[i];
  return Potential(p_, a.depth_, std::move(t));
}

Potential Potential::operator-(const Potential& other) const {
  return *this + other * -1.0;
}

Potential Potential::operator+(double c) const {
  std::vector<double> t = table_;
  for (double& v : t) v += c;
  return Potential(p_, depth_, std::move(t));
}

Potential Potential::operator*(double s) const {
  std::vector<double> t = table_;
  for (double& v : t) v *= s;
  return Potential(p_, depth_, std::move(t));
}

double Potential::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : table_) {
    if (!std::isnan(v)) m = std::min(m, v);
  }
  return m;
}

double Potential::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : table_) {
    if (!std::isnan(v)) m = std::max(m, v);
  }
  return m;
}

double Potential::sup_norm() const {
  return std::max(std::abs(min_value()), std::abs(max_value()));
}

double birkhoff_sum(const Potential& phi, WordView x, int n) {
  if (n < 0) throw DomainError("Birkhoff sum length must be non-negative");
  const auto needed = static_cast<std::size_t>(n + phi.depth() - 1);
  if (n > 0 && x.size() < needed) {
    throw DomainError("prefix of length " + std::to_string(x.size()) +
                      " too short for " + std::to_string(n) +
                      " windows of depth " + std::to_string(phi.depth()));
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    s += phi(x.subspan(static_cast<std::size_t>(i),
                       static_cast<std::size_t>(phi.depth())));
  }
  return s;
}

double periodic_birkhoff_sum(const Potential& phi, WordView w) {
  if (w.empty()) return 0.0;
  Word x(w.begin(), w.end());
  while (x.size() < w.size() + static_cast<std::size_t>(phi.depth()) - 1) {
    x.insert(x.end(), w.begin(), w.end());
  }
  return birkhoff_sum(phi, x, static_cast<int>(w.size()));
}

}  // namespace symdyn
