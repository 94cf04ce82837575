#include "symdyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "symdyn/edit_metric.hpp"
#include "symdyn/error.hpp"
#include "symdyn/moran.hpp"
#include "symdyn/pressure.hpp"
#include "symdyn/variational.hpp"

namespace symdyn::verify {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Word w(const char* s) { return parse_word(s); }
Subshift golden() { return Subshift::sft(2, {w("11")}); }
Potential ones() { return Potential::indicator(2, w("1")); }
Potential zero() { return Potential::constant(2, 0.0); }

const double kLog2 = std::log(2.0);
const double kGoldenLog = std::log((1.0 + std::sqrt(5.0)) / 2.0);

double binary_entropy(double a) { return -a * std::log(a) - (1.0 - a) * std::log(1.0 - a); }

// Root x > 1 of sum_{n in S} x^-(n+1) = 1 for finite S, by bisection on the
// polynomial form.
double gap_series_root(const std::vector<int>& S) {
  auto f = [&](double x) {
    double s = 0.0;
    for (int n : S) s += std::pow(x, -(n + 1));
    return s - 1.0;
  };
  double lo = 1.0 + 1e-12, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<Word> all_words(int p, int n) {
  std::vector<Word> out;
  for (std::uint64_t i = 0; i < ipow(static_cast<std::uint64_t>(p), n); ++i) out.push_back(word_from_index(i, n, p));
  return out;
}

// Shortest edit sequence by breadth-first search from both ends.
int edit_distance_search(const Word& v, const Word& target, int p) {
  if (v == target) return 0;
  const std::size_t cap = std::max(v.size(), target.size()) + 1;
  auto expand = [&](const Word& u, const std::function<void(Word)>& visit) {
    for (std::size_t i = 0; i <= u.size(); ++i) {
      if (i < u.size()) {
        Word d = u;
        d.erase(d.begin() + static_cast<long>(i));
        visit(std::move(d));
        for (int a = 0; a < p; ++a) {
          if (a == u[i]) continue;
          Word s = u;
          s[i] = static_cast<Symbol>(a);
          visit(std::move(s));
        }
      }
      if (u.size() < cap) {
        for (int a = 0; a < p; ++a) {
          Word ins = u;
          ins.insert(ins.begin() + static_cast<long>(i), static_cast<Symbol>(a));
          visit(std::move(ins));
        }
      }
    }
  };
  std::set<Word> seen_a{v}, seen_b{target};
  std::vector<Word> front_a{v}, front_b{target};
  int da = 0, db = 0;
  while (true) {
    const bool grow_a = front_a.size() <= front_b.size();
    auto& front = grow_a ? front_a : front_b;
    auto& seen = grow_a ? seen_a : seen_b;
    const auto& other = grow_a ? seen_b : seen_a;
    std::vector<Word> next;
    bool met = false;
    for (const Word& u : front) {
      expand(u, [&](Word x) {
        if (other.count(x)) met = true;
        if (seen.insert(x).second) next.push_back(std::move(x));
      });
    }
    (grow_a ? da : db) += 1;
    if (met) return da + db;
    front = std::move(next);
  }
}

MarkovMeasure random_markov_on(Rng& rng, const Subshift& x, int m) {
  const int p = x.alphabet_size();
  const auto P = static_cast<std::uint64_t>(p);
  std::vector<double> T(ipow(P, m) * P, 0.0);
  for (std::uint64_t s = 0; s < ipow(P, m); ++s) {
    const Word u = word_from_index(s, m, p);
    if (!x.contains(u)) continue;
    std::vector<int> next;
    for (int a = 0; a < p; ++a) {
      Word v = u;
      v.push_back(static_cast<Symbol>(a));
      if (x.contains(v)) next.push_back(a);
    }
    double total = 0.0;
    std::vector<double> weights;
    for (std::size_t i = 0; i < next.size(); ++i) {
      weights.push_back(-std::log(uniform(rng, 1e-9, 1.0)));
      total += weights.back();
    }
    for (std::size_t i = 0; i < next.size(); ++i) T[s * P + static_cast<std::uint64_t>(next[i])] = weights[i] / total;
  }
  return MarkovMeasure(p, m, std::move(T));
}

Potential random_potential(Rng& rng, int p, int depth, double scale) {
  std::vector<double> t(ipow(static_cast<std::uint64_t>(p), depth));
  for (double& v : t) v = uniform(rng, -scale, scale);
  return Potential(p, depth, std::move(t));
}

struct Tally {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      pass = false;
      detail << what << "; ";
    }
  }
};

CriterionResult entropy_exactness(Rng&) {
  Tally t;
  double worst_full = 0.0;
  for (int p : {2, 3, 5}) {
    const PressureEstimate e = entropy(Subshift::full(p));
    worst_full = std::max({worst_full, std::abs(e.lower - std::log(p)), std::abs(e.upper - std::log(p))});
  }
  const PressureEstimate g = entropy(golden());
  const double golden_err = std::max(std::abs(g.lower - kGoldenLog), std::abs(g.upper - kGoldenLog));
  std::uint64_t a = 1, b = 1;  // F_1, F_2
  int counted = 0;
  for (int n = 1; n <= 20; ++n) {
    const std::uint64_t fib = a + b;  // F_{n+2}
    a = b;
    b = fib;
    const bool ok = golden().language_size(n) == fib && golden().language(n).size() == fib;
    t.require(ok, "|L_" + std::to_string(n) + "| != F_" + std::to_string(n + 2));
    counted += ok;
  }
  t.require(worst_full <= 1e-10, "full shift entropy error " + fmt(worst_full));
  t.require(golden_err <= 1e-9, "golden entropy error " + fmt(golden_err));
  t.detail << "max |h - log p| = " << fmt(worst_full) << ", golden error = " << fmt(golden_err)
           << ", Fibonacci counts matched " << counted << "/20";
  return {1, "entropy exactness", t.pass, t.detail.str()};
}

CriterionResult language_identity(Rng&) {
  Tally t;
  const Subshift sgap = Subshift::sgap(GapSet::finite({0, 1}));
  const Subshift beta2 = Subshift::beta(BetaValue("2"));
  std::size_t words = 0;
  for (int n = 1; n <= 12; ++n) {
    const auto a = sgap.language(n);
    t.require(a == golden().language(n), "SGap({0,1}) differs at n = " + std::to_string(n));
    t.require(beta2.language(n) == Subshift::full(2).language(n), "Beta(2) differs at n = " + std::to_string(n));
    words += a.size();
  }
  t.detail << "n <= 12 compared, " << words << " S-gap words";
  return {2, "cross-model language identity", t.pass, t.detail.str()};
}

CriterionResult sgap_series(Rng&) {
  Tally t;
  for (const auto& S : std::vector<std::vector<int>>{{0, 1}, {1, 2}, {0, 2, 4}}) {
    const double root = std::log(gap_series_root(S));
    const PressureEstimate e = entropy(Subshift::sgap(GapSet::finite(S)), 18);
    std::ostringstream name;
    name << "S={";
    for (std::size_t i = 0; i < S.size(); ++i) name << (i ? "," : "") << S[i];
    name << "}";
    t.require(e.lower <= root && root <= e.upper, name.str() + " bracket misses the root");
    t.require(e.upper - e.lower <= 0.05, name.str() + " bracket too wide");
    t.detail << name.str() << ": [" << fmt(e.lower) << ", " << fmt(e.upper) << "] root " << fmt(root) << "; ";
  }
  return {3, "S-gap series oracle", t.pass, t.detail.str()};
}

CriterionResult beta_convergence(Rng&) {
  Tally t;
  for (const char* b : {"1.5", "golden", "2.5"}) {
    const BetaValue beta(b);
    const double target = std::log(beta.approx());
    const PressureEstimate e = entropy(Subshift::beta(beta), 18, 10);
    t.require(e.lower <= target && target <= e.upper, std::string("beta ") + b + " bracket misses log beta");
    t.require(e.upper - e.lower <= 0.06, std::string("beta ") + b + " bracket too wide");
    t.detail << "beta " << b << ": [" << fmt(e.lower) << ", " << fmt(e.upper) << "] log beta " << fmt(target) << "; ";
  }
  return {4, "beta-shift convergence", t.pass, t.detail.str()};
}

CriterionResult pressure_properties(Rng& rng) {
  Tally t;
  double shift_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Subshift x = i % 2 ? golden() : Subshift::full(2);
    const Potential phi = random_potential(rng, 2, 1 + i % 3, 1.0);
    const double c = uniform(rng, -2.0, 2.0);
    shift_err = std::max(shift_err, std::abs(transfer_pressure(x, phi + c) - transfer_pressure(x, phi) - c));
  }
  const Potential phi = random_potential(rng, 2, 2, 1.0);
  const TransferResult top = transfer(golden(), phi);
  double worst_excess = -1e300;
  for (int i = 0; i < 100; ++i) {
    const MarkovMeasure mu = random_markov_on(rng, golden(), 1 + i % 3);
    worst_excess = std::max(worst_excess, mu.entropy() + integrate(phi, mu) - top.pressure);
  }
  const double eq_gap = std::abs(top.equilibrium.entropy() + integrate(phi, top.equilibrium) - top.pressure);
  t.require(shift_err <= 1e-10, "additive shift error " + fmt(shift_err));
  t.require(worst_excess <= 1e-8, "variational inequality violated by " + fmt(worst_excess));
  t.require(eq_gap <= 1e-6, "equilibrium gap " + fmt(eq_gap));
  t.detail << "shift error " << fmt(shift_err) << ", max h + int phi - P = " << fmt(worst_excess)
           << ", equilibrium gap " << fmt(eq_gap);
  return {5, "pressure properties", t.pass, t.detail.str()};
}

CriterionResult conditional_principle(Rng&) {
  Tally t;
  double legendre_err = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double a = k / 10.0;
    legendre_err = std::max(legendre_err,
                            std::abs(spectrum_legendre(Subshift::full(2), zero(), ones(), a).value - binary_entropy(a)));
  }
  double duality = 0.0;
  for (double a : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    duality = std::max(duality, std::abs(spectrum_direct(Subshift::full(2), zero(), ones(), a, 200) -
                                         spectrum_legendre(Subshift::full(2), zero(), ones(), a).value));
  }
  for (double a : {0.1, 0.2, 0.25, 0.3, 0.4}) {
    duality = std::max(duality, std::abs(spectrum_direct(golden(), zero(), ones(), a, 200) -
                                         spectrum_legendre(golden(), zero(), ones(), a).value));
  }
  t.require(legendre_err <= 1e-6, "Legendre vs H(alpha) " + fmt(legendre_err));
  t.require(duality <= 1e-3, "direct vs Legendre " + fmt(duality));
  t.detail << "max |F(alpha) - H(alpha)| = " << fmt(legendre_err) << ", max direct gap = " << fmt(duality);
  return {6, "conditional variational principle", t.pass, t.detail.str()};
}

CriterionResult envelope(Rng& rng) {
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Potential phi = random_potential(rng, 2, 1, 1.0);
    Potential psi = random_potential(rng, 2, 1, 1.0);
    while (std::abs(psi.at(0) - psi.at(1)) < 1e-3) psi = random_potential(rng, 2, 1, 1.0);
    const TransferResult top = transfer(Subshift::full(2), phi);
    const SpectrumDomain d = spectrum_domain(Subshift::full(2), psi);
    const double star = integrate(psi, top.equilibrium);
    const double h = std::min(star - d.alpha_min, d.alpha_max - star) / 20.0;
    double best = -1e300;
    for (int k = -20; k <= 20; ++k) {
      best = std::max(best, spectrum_legendre(Subshift::full(2), phi, psi, star + k * h).value);
    }
    worst = std::max(worst, std::abs(best - top.pressure));
  }
  t.require(worst <= 1e-6, "envelope gap " + fmt(worst));
  t.detail << "max |max_alpha F - P| over 3 pairs = " << fmt(worst);
  return {7, "envelope property", t.pass, t.detail.str()};
}

CriterionResult bowen(Rng&) {
  Tally t;
  const Potential log2 = Potential::constant(2, kLog2);
  const double full = bowen_dimension(Subshift::full(2), log2);
  const double gold = bowen_dimension(golden(), log2);
  double spectrum_err = 0.0;
  for (double a : {0.25, 0.5, 0.75}) {
    spectrum_err = std::max(spectrum_err, std::abs(dimension_spectrum(Subshift::full(2), log2, ones(), a) -
                                                   binary_entropy(a) / kLog2));
  }
  t.require(std::abs(full - 1.0) <= 1e-10, "full shift dimension " + fmt(full));
  t.require(std::abs(gold - kGoldenLog / kLog2) <= 1e-8, "golden dimension " + fmt(gold));
  t.require(spectrum_err <= 1e-6, "dimension spectrum error " + fmt(spectrum_err));
  t.detail << "dim Full(2) = " << fmt(full) << ", dim golden = " << fmt(gold) << ", spectrum error "
           << fmt(spectrum_err);
  return {8, "Bowen dimension", t.pass, t.detail.str()};
}

CriterionResult irregular(Rng&) {
  Tally t;
  for (const auto& [name, x, P] : std::vector<std::tuple<std::string, Subshift, double>>{
           {"Full(2)", Subshift::full(2), kLog2}, {"golden", golden(), kGoldenLog}}) {
    const IrregularPressure r = irregular_pressure(x, zero(), ones());
    t.require(!r.empty && std::abs(r.value - P) <= 1e-10, name + " value " + fmt(r.value));
    t.require(r.diagnostic.size() == 5 && r.diagnostic.back() > P - 1e-3, name + " diagnostic too low");
    t.detail << name << ": value " << fmt(r.value) << ", inf over K_5 = " << fmt(r.diagnostic.back()) << "; ";
  }
  const bool empty = irregular_pressure(Subshift::full(2), zero(), Potential::constant(2, 0.4)).empty;
  t.require(empty, "constant psi not reported empty");
  t.detail << "constant psi empty: " << (empty ? "yes" : "no");
  return {9, "irregular set", t.pass, t.detail.str()};
}

CriterionResult edit_metric(Rng& rng) {
  Tally t;
  std::vector<Word> words;
  for (int n = 0; n <= 5; ++n) {
    for (Word& v : all_words(2, n)) words.push_back(std::move(v));
  }
  const std::size_t N = words.size();
  std::vector<int> D(N * N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) D[i * N + j] = edit_distance(words[i], words[j]);
  }
  long violations = 0;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const int d = D[i * N + j];
      if ((d == 0) != (i == j) || d != D[j * N + i]) ++violations;
      for (std::size_t k = 0; k < N; ++k) {
        if (d > D[i * N + k] + D[k * N + j]) ++violations;
      }
    }
  }
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Word v(rng() % 7), u(rng() % 7);
    for (auto& a : v) a = static_cast<Symbol>(rng() % 2);
    for (auto& a : u) a = static_cast<Symbol>(rng() % 2);
    mismatches += edit_distance(v, u) != edit_distance_search(v, u, 2);
  }
  t.require(violations == 0, std::to_string(violations) + " axiom violations");
  t.require(mismatches == 0, std::to_string(mismatches) + " DP/search mismatches");
  t.detail << N * N << " pairs and " << N * N * N << " triangles checked, " << violations << " violations; "
           << "500 random pairs, " << mismatches << " mismatches";
  return {10, "edit metric", t.pass, t.detail.str()};
}

CriterionResult ball_bound(Rng&) {
  Tally t;
  double C = 1.0;
  int cases = 0;
  for (const auto& x : {Subshift::full(2), golden()}) {
    for (double delta : {0.1, 0.2}) {
      for (int n = 1; n <= 10; ++n) {
        C = std::max(C, ball_bound_report(x, n, delta).C_fit);
        ++cases;
      }
    }
  }
  t.require(C <= 6.0, "needed C = " + fmt(C));
  t.detail << "single C = " << fmt(C) << " covers " << cases << " cases";
  return {11, "ball bound", t.pass, t.detail.str()};
}

CriterionResult katok(Rng&) {
  Tally t;
  const MarkovMeasure mu = MarkovMeasure::bernoulli2(0.5);
  for (int n = 12; n <= 18; ++n) {
    const KatokCheck k = katok_count_check(Subshift::full(2), mu, 0.5, 0.1, n);
    t.require(k.pass, "n = " + std::to_string(n) + " count " + std::to_string(k.count) + " below " + fmt(k.threshold));
    if (n == 12 || n == 18) t.detail << "n = " << n << ": " << k.count << " >= " << fmt(k.threshold) << "; ";
  }
  return {12, "Katok counting", t.pass, t.detail.str()};
}

CriterionResult moran(Rng& rng) {
  Tally t;
  const Subshift full = Subshift::full(2);
  const GoodSet F = GoodSet::whole_language(full);
  Itinerary one{{MarkovMeasure::bernoulli2(0.5)}};
  const Schedule s1 = make_schedule(full, one, MistakeFunction::zero(), 0.2, 100000);
  const GeneratedPoint p1 = generate_point(full, one, s1, F, rng());
  const ConvergenceReport r1 = track_convergence(p1.prefix, one, p1.segments, 4);
  const double final_D = r1.checkpoints.back().distance;
  const bool lengths = std::all_of(p1.segments.begin(), p1.segments.end(),
                                   [&](const Segment& s) { return std::abs(s.l - s.n) <= s1.g(s.n); });
  const double rate = p1.counting_rate();

  Itinerary two{{MarkovMeasure::bernoulli2(0.3), MarkovMeasure::bernoulli2(0.7)}};
  const Schedule s2 = make_schedule(full, two, MistakeFunction::zero(), 0.1, 100000);
  const GeneratedPoint p2 = generate_point(full, two, s2, F, rng());
  const ConvergenceReport r2 = track_convergence(p2.prefix, two, p2.segments, 4);
  double closest[2] = {1e300, 1e300};
  for (const Checkpoint& c : r2.checkpoints) closest[c.measure] = std::min(closest[c.measure], c.distance);

  t.require(final_D <= 0.05, "final D " + fmt(final_D));
  t.require(lengths, "segment length outside the mistake bound");
  t.require(closest[0] <= 0.1 && closest[1] <= 0.1, "a target was not approached");
  t.require(rate >= kLog2 - 0.15, "counting rate " + fmt(rate));
  t.detail << "final D = " << fmt(final_D) << " after " << p1.prefix.size() << " symbols, counting rate "
           << fmt(rate) << ", two-target closest " << fmt(closest[0]) << " / " << fmt(closest[1]);
  return {13, "Moran generator", t.pass, t.detail.str()};
}

}  // namespace

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CriterionResult run(int id, std::uint64_t seed) {
  static const std::vector<CriterionResult (*)(Rng&)> checks{
      entropy_exactness, language_identity, sgap_series, beta_convergence, pressure_properties,
      conditional_principle, envelope, bowen, irregular, edit_metric, ball_bound, katok, moran};
  if (id < 1 || id > kCriterionCount) throw DomainError("no check numbered " + std::to_string(id));
  Rng rng(seed + static_cast<std::uint64_t>(id));
  try {
    CriterionResult r = checks[static_cast<std::size_t>(id - 1)](rng);
    while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
    return r;
  } catch (const Error& e) {
    return {id, "check " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run(id, seed));
  return out;
}

std::string render(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    char head[96];
    std::snprintf(head, sizeof head, "%2d %s  ", r.id, r.pass ? "PASS" : "FAIL");
    os << head << r.name << ": " << r.detail << "\n";
  }
  return os.str();
}

}  // namespace symdyn::verify
