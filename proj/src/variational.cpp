#include "symdyn/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/pressure.hpp"

namespace symdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SftView {
  Subshift shift;
  std::optional<int> level;
};

SftView as_sft(const Subshift& x) {
  if (x.is_sft()) return {x, std::nullopt};
  return {inner_sft_approximation(x, kSpectrumInnerLevel), kSpectrumInnerLevel};
}

// Karp: maximum mean weight of a cycle in a strongly connected graph.
double max_mean_cycle(std::size_t n, const std::vector<TransferGraph::Edge>& edges) {
  std::vector<std::vector<double>> D(n + 1, std::vector<double>(n, -kInf));
  D[0][0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& e : edges) {
      if (D[k - 1][e.from] > -kInf) D[k][e.to] = std::max(D[k][e.to], D[k - 1][e.from] + e.weight);
    }
  }
  double best = -kInf;
  for (std::size_t v = 0; v < n; ++v) {
    if (D[n][v] == -kInf) continue;
    double worst = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      if (D[k][v] == -kInf) continue;
      worst = std::min(worst, (D[n][v] - D[k][v]) / static_cast<double>(n - k));
    }
    best = std::max(best, worst);
  }
  return best;
}

std::string interval_text(const SpectrumDomain& d) {
  std::ostringstream os;
  os.precision(12);
  os << "[" << d.alpha_min << ", " << d.alpha_max << "]";
  return os.str();
}

double integral_at(const Subshift& x, const Potential& phi, const Potential& psi, double q,
                   MarkovMeasure* witness = nullptr, double* pressure_out = nullptr) {
  const TransferResult r = transfer(x, phi + psi * q);
  if (witness) *witness = r.equilibrium;
  if (pressure_out) *pressure_out = r.pressure;
  return integrate(psi, r.equilibrium);
}

}  // namespace

SpectrumDomain spectrum_domain(const Subshift& x, const Potential& psi) {
  const SftView view = as_sft(x);
  const TransferGraph g = transfer_graph(view.shift, psi);
  SpectrumDomain d{kInf, -kInf, g.components.size() > 1};
  for (const auto& comp : g.components) {
    std::vector<long> local(g.states.size(), -1);
    for (std::size_t k = 0; k < comp.size(); ++k) local[comp[k]] = static_cast<long>(k);
    std::vector<TransferGraph::Edge> inside, negated;
    for (const auto& e : g.edges) {
      if (local[e.from] < 0 || local[e.to] < 0) continue;
      TransferGraph::Edge l{static_cast<std::size_t>(local[e.from]), static_cast<std::size_t>(local[e.to]),
                            e.symbol, e.weight};
      inside.push_back(l);
      l.weight = -l.weight;
      negated.push_back(l);
    }
    d.alpha_max = std::max(d.alpha_max, max_mean_cycle(comp.size(), inside));
    d.alpha_min = std::min(d.alpha_min, -max_mean_cycle(comp.size(), negated));
  }
  d.alpha_min += 0.0;
  return d;
}

SpectrumPoint spectrum_legendre(const Subshift& x, const Potential& phi, const Potential& psi,
                                double alpha) {
  const SftView view = as_sft(x);
  const Subshift& sft = view.shift;
  const SpectrumDomain dom = spectrum_domain(sft, psi);
  const double range = dom.alpha_max - dom.alpha_min;
  const double edge_tol = 1e-9 * std::max(1.0, range);
  if (alpha < dom.alpha_min - edge_tol || alpha > dom.alpha_max + edge_tol) {
    std::ostringstream os;
    os.precision(12);
    os << "alpha = " << alpha << " outside the spectrum domain " << interval_text(dom);
    throw DomainError(os.str());
  }
  MarkovMeasure witness = MarkovMeasure::bernoulli2(0.5);
  double pressure_q = 0.0;

  if (range <= edge_tol) {
    integral_at(sft, phi, psi, 0.0, &witness, &pressure_q);
    return {alpha, pressure_q, 0.0, true, witness, view.level};
  }

  const bool at_min = alpha - dom.alpha_min <= edge_tol;
  const bool at_max = dom.alpha_max - alpha <= edge_tol;
  if (at_min || at_max) {
    const double sign = at_min ? -1.0 : 1.0;
    const double a = at_min ? dom.alpha_min : dom.alpha_max;
    double q = sign;
    integral_at(sft, phi, psi, q, &witness, &pressure_q);
    double value = pressure_q - q * a;
    for (int k = 0; k < 20; ++k) {
      const double q2 = 2.0 * q;
      MarkovMeasure w2 = witness;
      double p2 = 0.0;
      try {
        integral_at(sft, phi, psi, q2, &w2, &p2);
      } catch (const NumericError&) {
        break;
      }
      const double v2 = p2 - q2 * a;
      const bool settled = std::abs(v2 - value) <= 1e-11;
      q = q2;
      value = v2;
      witness = std::move(w2);
      if (settled) break;
    }
    return {alpha, value, q, true, witness, view.level};
  }

  const double gap = std::min(alpha - dom.alpha_min, dom.alpha_max - alpha);
  const int p = sft.alphabet_size();
  const double bound =
      (std::abs(transfer_pressure(sft, phi)) + phi.sup_norm() + std::log(static_cast<double>(p))) / gap + 1.0;
  double lo = -bound, hi = bound;
  double q = 0.0;
  for (int it = 0; it < 200; ++it) {
    q = 0.5 * (lo + hi);
    const double d = integral_at(sft, phi, psi, q, &witness, &pressure_q);
    if (std::abs(d - alpha) <= 1e-12 * std::max(1.0, range)) break;
    (d < alpha ? lo : hi) = q;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(q))) break;
  }
  return {alpha, pressure_q - q * alpha, q, false, witness, view.level};
}

double spectrum_direct(const Subshift& x, const Potential& phi, const Potential& psi, double alpha,
                       int grid) {
  if (grid < 10) throw DomainError("spectrum_direct needs grid >= 10");
  const Subshift sft = as_sft(x).shift;
  const int depth = std::max(phi.depth(), psi.depth());
  const TransferGraph g = transfer_graph(sft, Potential::constant(sft.alphabet_size(), 0.0).reblocked(depth));
  if (g.states.size() > 4) {
    throw DomainError("spectrum_direct supports at most 4 states, got " + std::to_string(g.states.size()));
  }
  const int p = g.alphabet_size;
  std::vector<std::vector<const TransferGraph::Edge*>> out(g.states.size());
  for (const auto& e : g.edges) out[e.from].push_back(&e);
  std::size_t dims = 0;
  for (const auto& o : out) dims += o.size() - 1;

  struct Eval {
    double objective;
    double constraint;
  };
  auto evaluate = [&](const std::vector<double>& theta) -> std::optional<Eval> {
    std::vector<double> P(ipow(static_cast<std::uint64_t>(p), g.memory) * static_cast<std::uint64_t>(p), 0.0);
    std::size_t c = 0;
    for (std::size_t u = 0; u < out.size(); ++u) {
      double rest = 1.0;
      const std::uint64_t s = word_index(g.states[u], p);
      for (std::size_t k = 0; k < out[u].size(); ++k) {
        const double share = k + 1 == out[u].size() ? rest : rest * theta[c++];
        P[s * static_cast<std::uint64_t>(p) + out[u][k]->symbol] = share;
        rest -= share;
      }
    }
    try {
      const MarkovMeasure mu(p, g.memory, std::move(P));
      return Eval{mu.entropy() + integrate(phi, mu), integrate(psi, mu)};
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  const double range = psi.max_value() - psi.min_value();
  int steps = grid;
  while (dims > 0 && std::pow(steps + 1.0, static_cast<double>(dims)) > 250000.0) --steps;
  const double tol = range > 0.0 ? range / steps : 1e-12;

  std::vector<std::pair<double, std::vector<double>>> feasible;
  std::vector<int> odometer(dims, 0);
  std::vector<double> theta(dims, 0.0);
  while (true) {
    for (std::size_t i = 0; i < dims; ++i) theta[i] = static_cast<double>(odometer[i]) / steps;
    if (auto e = evaluate(theta); e && std::abs(e->constraint - alpha) <= tol) {
      feasible.emplace_back(e->objective, theta);
    }
    std::size_t i = 0;
    while (i < dims && odometer[i] == steps) odometer[i++] = 0;
    if (i == dims) break;
    ++odometer[i];
  }
  if (feasible.empty()) {
    throw InfeasibleError("no grid point with |int psi - alpha| <= " + std::to_string(tol) +
                          "; alpha is too close to the boundary for grid " + std::to_string(grid));
  }
  std::sort(feasible.begin(), feasible.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (dims == 0) return feasible.front().first;

  // Move one coordinate so the constraint holds exactly.
  auto restore = [&](std::vector<double>& t, std::size_t pivot) -> bool {
    const double start = t[pivot];
    constexpr int kScan = 64;
    std::optional<std::pair<double, double>> bracket;
    double best_distance = kInf;
    double prev_t = 0.0;
    std::optional<double> prev_gap;
    for (int i = 0; i <= kScan; ++i) {
      t[pivot] = static_cast<double>(i) / kScan;
      const auto e = evaluate(t);
      if (!e) {
        prev_gap.reset();
        continue;
      }
      const double gap = e->constraint - alpha;
      if (prev_gap && (*prev_gap <= 0.0) != (gap <= 0.0)) {
        const double distance = std::abs(0.5 * (prev_t + t[pivot]) - start);
        if (distance < best_distance) {
          best_distance = distance;
          bracket = std::make_pair(prev_t, t[pivot]);
        }
      }
      prev_t = t[pivot];
      prev_gap = gap;
    }
    if (!bracket) {
      t[pivot] = start;
      return false;
    }
    double lo = bracket->first, hi = bracket->second;
    t[pivot] = lo;
    const bool rising = evaluate(t)->constraint < alpha;
    for (int it = 0; it < 80; ++it) {
      t[pivot] = 0.5 * (lo + hi);
      const auto e = evaluate(t);
      if (!e) return false;
      ((e->constraint < alpha) == rising ? lo : hi) = t[pivot];
    }
    t[pivot] = 0.5 * (lo + hi);
    return evaluate(t).has_value();
  };

  double best = -kInf;
  const std::size_t starts = std::min<std::size_t>(feasible.size(), 6);
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<double> t = feasible[s].second;
    std::size_t pivot = 0;
    double sensitivity = -1.0;
    for (std::size_t i = 0; i < dims; ++i) {
      std::vector<double> a = t, b = t;
      a[i] = std::max(0.0, t[i] - 1e-4);
      b[i] = std::min(1.0, t[i] + 1e-4);
      const auto ea = evaluate(a), eb = evaluate(b);
      if (!ea || !eb) continue;
      const double slope = std::abs(eb->constraint - ea->constraint);
      if (slope > sensitivity) {
        sensitivity = slope;
        pivot = i;
      }
    }
    if (!restore(t, pivot)) continue;
    double value = evaluate(t)->objective;
    double step = 1.0 / steps;
    int budget = 20000;
    while (step > 1e-9 && budget > 0) {
      bool improved = false;
      for (std::size_t i = 0; i < dims && budget > 0; ++i) {
        if (i == pivot) continue;
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = t;
          trial[i] = std::clamp(t[i] + dir * step, 0.0, 1.0);
          if (trial[i] == t[i]) continue;
          --budget;
          if (!restore(trial, pivot)) continue;
          const double v = evaluate(trial)->objective;
          if (v > value + 1e-15) {
            value = v;
            t = std::move(trial);
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    best = std::max(best, value);
  }
  if (best == -kInf) return feasible.front().first;
  return best;
}

double dimension_spectrum(const Subshift& x, const Potential& phi, const Potential& psi, double alpha,
                          double tol) {
  const double phi_min = phi.min_value();
  if (!(phi_min > 0.0)) throw DomainError("dimension spectrum needs a strictly positive potential");
  const Subshift sft = as_sft(x).shift;
  double lo = 0.0;
  double hi = transfer_pressure(sft, Potential::constant(sft.alphabet_size(), 0.0)) / phi_min;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (spectrum_legendre(sft, phi * -mid, psi, alpha).value > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

IrregularPressure irregular_pressure(const Subshift& x, const Potential& phi, const Potential& psi) {
  const Subshift sft = as_sft(x).shift;
  const SpectrumDomain dom = spectrum_domain(sft, psi);
  const double width = dom.alpha_max - dom.alpha_min;
  if (width <= 1e-12) return {true, 0.0, {}};
  const TransferResult top = transfer(sft, phi);
  const double eps = 0.25 / width;
  const MarkovMeasure nu = transfer(sft, phi + psi * eps).equilibrium;
  const double free_energy_nu = nu.entropy() + integrate(phi, nu);
  IrregularPressure out{false, top.pressure, {}};
  const double free_energy_mu = top.pressure;
  for (int n = 1; n <= 5; ++n) {
    const double pn = std::ldexp(1.0, -n);
    const double nu_n = pn * free_energy_nu + (1.0 - pn) * free_energy_mu;
    double inf = kInf;
    for (int k = 0; k <= 100; ++k) {
      const double t = k / 100.0;
      inf = std::min(inf, t * nu_n + (1.0 - t) * free_energy_mu);
    }
    out.diagnostic.push_back(inf);
  }
  return out;
}

}  // namespace symdyn
