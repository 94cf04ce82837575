#include "symdyn/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

constexpr long kLongMax = std::numeric_limits<long>::max();

std::vector<double> solve_stationary(int p, int m, const std::vector<double>& P,
                                     const std::vector<bool>& active) {
  const std::uint64_t states = active.size();
  std::vector<std::uint64_t> ids;
  std::vector<long> position(states, -1);
  for (std::uint64_t s = 0; s < states; ++s) {
    if (active[s]) {
      position[s] = static_cast<long>(ids.size());
      ids.push_back(s);
    }
  }
  const auto n = static_cast<Eigen::Index>(ids.size());
  // Rows 0..n-1: (Q^T - I) pi = 0; row n: sum(pi) = 1.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::uint64_t s = ids[static_cast<std::size_t>(i)];
    A(i, i) -= 1.0;
    for (int a = 0; a < p; ++a) {
      const double q = P[s * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(a)];
      if (q == 0.0) continue;
      const std::uint64_t t = (s * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(a)) % states;
      A(position[t], i) += q;
    }
    A(n, i) = 1.0;
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b(n) = 1.0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-11);
  if (qr.rank() < n) {
    throw NumericError("stationary vector is not unique (memory " +
                       std::to_string(m) + " chain has several closed classes)");
  }
  const Eigen::VectorXd x = qr.solve(b);
  std::vector<double> pi(states, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    pi[ids[static_cast<std::size_t>(i)]] = std::max(0.0, x(i));
  }
  const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& v : pi) v /= total;
  return pi;
}

double stationarity_residual(int p, const std::vector<double>& P,
                             const std::vector<double>& pi) {
  const std::uint64_t states = pi.size();
  std::vector<double> image(states, 0.0);
  for (std::uint64_t s = 0; s < states; ++s) {
    if (pi[s] == 0.0) continue;
    for (int a = 0; a < p; ++a) {
      const std::uint64_t e = s * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(a);
      image[e % states] += pi[s] * P[e];
    }
  }
  double r = 0.0;
  for (std::uint64_t s = 0; s < states; ++s) r = std::max(r, std::abs(image[s] - pi[s]));
  return r;
}

}  // namespace

MarkovMeasure::MarkovMeasure(int p, int memory, std::vector<double> transitions,
                             std::optional<std::vector<double>> stationary)
    : p_(Alphabet(p).size()), m_(memory), P_(std::move(transitions)) {
  if (memory < 1) throw DomainError("Markov memory must be >= 1");
  const std::uint64_t states = ipow(static_cast<std::uint64_t>(p), memory);
  if (P_.size() != states * static_cast<std::uint64_t>(p)) {
    throw DomainError("transition table must have p^(m+1) entries");
  }
  std::vector<bool> active(states, false);
  for (std::uint64_t s = 0; s < states; ++s) {
    double row = 0.0;
    for (int a = 0; a < p; ++a) {
      const double q = P_[s * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(a)];
      if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
        throw DomainError("transition probabilities must lie in [0,1]");
      }
      row += q;
    }
    if (row == 0.0) continue;
    if (std::abs(row - 1.0) > kRowTolerance) {
      throw DomainError("transition row " + to_string(word_from_index(s, memory, p)) +
                        " does not sum to 1");
    }
    active[s] = true;
  }
  for (std::uint64_t s = 0; s < states; ++s) {
    if (!active[s]) continue;
    for (int a = 0; a < p; ++a) {
      const std::uint64_t e = s * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(a);
      if (P_[e] > 0.0 && !active[e % states]) {
        throw DomainError("transition into state " +
                          to_string(word_from_index(e % states, memory, p)) +
                          " which has no outgoing probability");
      }
    }
  }
  if (std::none_of(active.begin(), active.end(), [](bool b) { return b; })) {
    throw DomainError("Markov measure has no active state");
  }
  if (stationary) {
    if (stationary->size() != states) {
      throw DomainError("stationary vector must have p^m entries");
    }
    double total = 0.0;
    for (std::uint64_t s = 0; s < states; ++s) {
      const double v = (*stationary)[s];
      if (!std::isfinite(v) || v < 0.0) throw DomainError("stationary entries must be >= 0");
      if (v > 0.0 && !active[s]) {
        throw DomainError("stationary mass on a state without transitions");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > kStationaryTolerance) {
      throw DomainError("stationary vector does not sum to 1");
    }
    pi_ = std::move(*stationary);
  } else {
    pi_ = solve_stationary(p, memory, P_, active);
  }
  if (stationarity_residual(p, P_, pi_) > kStationaryTolerance) {
    throw NumericError("stationary vector fails pi P = pi within tolerance");
  }
  pi_prefix_.resize(pi_.size() + 1, 0.0);
  for (std::size_t i = 0; i < pi_.size(); ++i) pi_prefix_[i + 1] = pi_prefix_[i] + pi_[i];
}

MarkovMeasure MarkovMeasure::bernoulli(std::vector<double> probs) {
  const int p = static_cast<int>(probs.size());
  std::vector<double> P;
  P.reserve(probs.size() * probs.size());
  for (int s = 0; s < p; ++s) P.insert(P.end(), probs.begin(), probs.end());
  return MarkovMeasure(p, 1, std::move(P), probs);
}

double MarkovMeasure::mass(WordView w) const {
  require_in_alphabet(w, Alphabet(p_));
  const auto m = static_cast<std::size_t>(m_);
  if (w.size() <= m) {
    const std::uint64_t span = ipow(static_cast<std::uint64_t>(p_), m_ - static_cast<int>(w.size()));
    const std::uint64_t lo = word_index(w, p_) * span;
    return pi_prefix_[lo + span] - pi_prefix_[lo];
  }
  std::uint64_t state = word_index(w.first(m), p_);
  double mu = pi_[state];
  const std::uint64_t states = pi_.size();
  for (std::size_t i = m; i < w.size() && mu > 0.0; ++i) {
    mu *= transition(state, w[i]);
    state = (state * static_cast<std::uint64_t>(p_) + w[i]) % states;
  }
  return mu;
}

double MarkovMeasure::entropy() const {
  double h = 0.0;
  for (std::uint64_t s = 0; s < pi_.size(); ++s) {
    if (pi_[s] == 0.0) continue;
    for (int a = 0; a < p_; ++a) {
      const double q = transition(s, static_cast<Symbol>(a));
      if (q > 0.0) h -= pi_[s] * q * std::log(q);
    }
  }
  return std::max(0.0, h);
}

CylinderTable::CylinderTable(int p, int depth, std::vector<double> top)
    : p_(Alphabet(p).size()) {
  if (depth < 0) throw DomainError("cylinder table depth must be >= 0");
  if (top.size() != ipow(static_cast<std::uint64_t>(p), depth)) {
    throw DomainError("cylinder table must have p^depth entries");
  }
  double total = 0.0;
  for (double& v : top) {
    if (!std::isfinite(v) || v < -1e-15) throw DomainError("cylinder masses must be >= 0");
    v = std::max(0.0, v);
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("cylinder masses must sum to 1");
  }
  levels_.resize(static_cast<std::size_t>(depth) + 1);
  levels_.back() = std::move(top);
  for (int k = depth - 1; k >= 0; --k) {
    const auto& finer = levels_[static_cast<std::size_t>(k) + 1];
    auto& coarse = levels_[static_cast<std::size_t>(k)];
    coarse.assign(finer.size() / static_cast<std::size_t>(p), 0.0);
    for (std::size_t i = 0; i < finer.size(); ++i) coarse[i / static_cast<std::size_t>(p)] += finer[i];
  }
}

double CylinderTable::mass(WordView w) const {
  if (static_cast<int>(w.size()) > depth()) {
    throw DomainError("cylinder of length " + std::to_string(w.size()) +
                      " beyond table depth " + std::to_string(depth()));
  }
  require_in_alphabet(w, Alphabet(p_));
  return levels_[w.size()][word_index(w, p_)];
}

int alphabet_size(const MeasureRep& mu) {
  return std::visit([](const auto& m) { return m.alphabet_size(); }, mu);
}

std::optional<int> max_depth(const MeasureRep& mu) {
  if (const auto* t = std::get_if<CylinderTable>(&mu)) return t->depth();
  return std::nullopt;
}

double mass(const MeasureRep& mu, WordView w) {
  return std::visit([&](const auto& m) { return m.mass(w); }, mu);
}

CylinderTable cylinder_table(const MeasureRep& mu, int d) {
  const int p = alphabet_size(mu);
  if (const auto* t = std::get_if<CylinderTable>(&mu)) {
    if (d > t->depth()) {
      throw DomainError("measure known only to depth " + std::to_string(t->depth()));
    }
    return CylinderTable(p, d, t->level(d));
  }
  const auto& markov = std::get<MarkovMeasure>(mu);
  const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), d);
  std::vector<double> top(count);
  for (std::uint64_t i = 0; i < count; ++i) top[i] = markov.mass(word_from_index(i, d, p));
  return CylinderTable(p, d, std::move(top));
}

CylinderTable empirical_measure(WordView x, int p, int n, int d) {
  if (n < 1 || d < 0) throw DomainError("empirical measure needs n >= 1, d >= 0");
  if (x.size() < static_cast<std::size_t>(n + d - 1)) {
    throw DomainError("prefix of length " + std::to_string(x.size()) +
                      " too short: need n + d - 1 = " + std::to_string(n + d - 1));
  }
  require_in_alphabet(x, Alphabet(p));
  std::vector<double> top(ipow(static_cast<std::uint64_t>(p), d), 0.0);
  const double unit = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    top[word_index(x.subspan(static_cast<std::size_t>(i), static_cast<std::size_t>(d)), p)] += unit;
  }
  return CylinderTable(p, d, std::move(top));
}

CylinderTable cycle_measure(WordView w, int p, int d) {
  if (w.empty()) throw DomainError("cycle measure of the empty word");
  Word x(w.begin(), w.end());
  while (x.size() < w.size() + static_cast<std::size_t>(d)) x.insert(x.end(), w.begin(), w.end());
  return empirical_measure(x, p, static_cast<int>(w.size()), d);
}

long indicator_count(int p, int d) {
  long total = 0;
  long power = 1;
  for (int k = 1; k <= d; ++k) {
    if (power > kLongMax / p) return kLongMax;
    power *= p;
    if (total > kLongMax - power) return kLongMax;
    total += power;
  }
  return total;
}

Word separating_word(int p, long k) {
  if (k < 1) throw DomainError("separating family is indexed from 1");
  long remaining = k - 1;
  long power = p;
  int len = 1;
  while (remaining >= power) {
    remaining -= power;
    power *= p;
    ++len;
  }
  return word_from_index(static_cast<std::uint64_t>(remaining), len, p);
}

WeakStarDistance weak_star_distance(const MeasureRep& mu, const MeasureRep& nu,
                                    long K, DepthPolicy policy) {
  const int p = alphabet_size(mu);
  if (alphabet_size(nu) != p) throw DomainError("measures over different alphabets");
  if (K < 0) throw DomainError("K must be >= 0");
  long usable = kLongMax;
  for (const MeasureRep* m : {&mu, &nu}) {
    if (auto d = max_depth(*m)) usable = std::min(usable, indicator_count(p, *d));
  }
  if (K > usable) {
    if (policy == DepthPolicy::Strict) {
      throw DomainError("K = " + std::to_string(K) +
                        " needs deeper cylinders than available; maximum usable K is " +
                        std::to_string(usable));
    }
    K = usable;
  }
  // Terms beyond 2^-1100 vanish in double precision.
  const long evaluated = std::min<long>(K, 1100);
  double value = 0.0;
  double weight = 1.0;
  long k = 0;
  for (int len = 1; k < evaluated; ++len) {
    const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), len);
    for (std::uint64_t i = 0; i < count && k < evaluated; ++i) {
      ++k;
      weight *= 0.5;
      const Word w = word_from_index(i, len, p);
      value += weight * std::abs(mass(mu, w) - mass(nu, w));
    }
  }
  return {value, std::ldexp(1.0, static_cast<int>(-std::min<long>(K, 2000))), K};
}

double markov_entropy(const MarkovMeasure& mu) { return mu.entropy(); }

double integrate(const Potential& phi, const MeasureRep& mu) {
  const int p = phi.alphabet_size();
  if (alphabet_size(mu) != p) throw DomainError("potential and measure alphabets differ");
  const CylinderTable t = cylinder_table(mu, phi.depth());
  const auto& masses = t.level(phi.depth());
  double s = 0.0;
  for (std::uint64_t i = 0; i < masses.size(); ++i) {
    if (masses[i] == 0.0) continue;
    if (!phi.defined(i)) {
      throw DomainError("potential undefined on '" +
                        to_string(word_from_index(i, phi.depth(), p)) +
                        "' which has positive mass");
    }
    s += phi.at(i) * masses[i];
  }
  return s;
}

CylinderTable mixture(const std::vector<MeasureRep>& measures,
                      const std::vector<double>& weights, int d) {
  if (measures.empty() || measures.size() != weights.size()) {
    throw DomainError("mixture needs one weight per measure");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("mixture weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
  const int p = alphabet_size(measures.front());
  std::vector<double> top(ipow(static_cast<std::uint64_t>(p), d), 0.0);
  for (std::size_t j = 0; j < measures.size(); ++j) {
    if (alphabet_size(measures[j]) != p) throw DomainError("measures over different alphabets");
    const CylinderTable t = cylinder_table(measures[j], d);
    for (std::size_t i = 0; i < top.size(); ++i) top[i] += weights[j] * t.level(d)[i];
  }
  return CylinderTable(p, d, std::move(top));
}

double block_entropy(const MeasureRep& mu, int d) {
  if (d == 0) return 0.0;
  const CylinderTable t = cylinder_table(mu, d);
  double h = 0.0;
  for (double m : t.level(d)) {
    if (m > 0.0) h -= m * std::log(m);
  }
  return h;
}

double block_entropy_rate(const MeasureRep& mu, int d) {
  if (d < 1) throw DomainError("block entropy rate needs d >= 1");
  return block_entropy(mu, d) - block_entropy(mu, d - 1);
}

}  // namespace symdyn
