#include "symdyn/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <functional>
#include <unordered_map>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

constexpr double kPerronTolerance = 1e-12;
constexpr int kPerronMaxIterations = 100000;

struct LocalEdge {
  std::size_t from;
  std::size_t to;
  double weight;
};

struct Perron {
  double rho;
  std::vector<double> vec;
  int iterations;
};

// Dominant eigenpair of an irreducible non-negative matrix given by its
// edges. Iterates x <- (B + c I) x with c the current lower Collatz-Wielandt
// bound, which removes periodicity, and stops when the two bounds meet.
Perron perron(std::size_t n, const std::vector<LocalEdge>& edges) {
  std::vector<double> x(n, 1.0), y(n);
  double shift = 0.0;
  for (int it = 1; it <= kPerronMaxIterations; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    for (const LocalEdge& e : edges) y[e.from] += e.weight * x[e.to];
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = y[i] / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    if (!(hi > 0.0) || !std::isfinite(hi)) {
      throw NumericError("power iteration produced a non-finite or zero vector");
    }
    if (hi - lo <= kPerronTolerance * hi) {
      return {0.5 * (lo + hi), x, it};
    }
    shift = lo;
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += shift * x[i];
      top = std::max(top, y[i]);
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / top;
    // keep strictly positive entries so the ratios stay defined
    for (double& v : x) v = std::max(v, 1e-300);
  }
  throw NumericError("power iteration did not converge within " +
                     std::to_string(kPerronMaxIterations) + " iterations");
}

std::vector<std::vector<std::size_t>> cyclic_components(std::size_t n,
                                                        const std::vector<TransferGraph::Edge>& edges) {
  std::vector<std::vector<std::size_t>> out_adj(n);
  for (const auto& e : edges) out_adj[e.from].push_back(e.to);
  // Iterative Tarjan.
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  long counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < out_adj[v].size()) {
        const std::size_t w = out_adj[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        sccs.push_back(std::move(comp));
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  std::vector<long> comp_of(n, -1);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (std::size_t v : sccs[c]) comp_of[v] = static_cast<long>(c);
  }
  std::vector<bool> cyclic(sccs.size(), false);
  for (const auto& e : edges) {
    if (comp_of[e.from] == comp_of[e.to]) cyclic[static_cast<std::size_t>(comp_of[e.from])] = true;
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    if (cyclic[c]) out.push_back(std::move(sccs[c]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Largest S_k phi over the windows that start inside the word but reach past
// its end, maximised over admissible continuations from `state`.
double tail_max(const Subshift& x, const Potential& phi, Subshift::State state, const Word& suffix) {
  const int r = phi.depth();
  if (r == 1) return 0.0;
  const auto need = static_cast<std::size_t>(r - 1);
  double best = -std::numeric_limits<double>::infinity();
  Word t = suffix;
  std::function<void(Subshift::State)> extend = [&](Subshift::State s) {
    if (t.size() == suffix.size() + need) {
      double total = 0.0;
      for (std::size_t j = 0; j < suffix.size(); ++j) {
        total += phi(WordView(t).subspan(j, static_cast<std::size_t>(r)));
      }
      best = std::max(best, total);
      return;
    }
    for (int a = 0; a < x.alphabet_size(); ++a) {
      if (auto next = x.step(s, static_cast<Symbol>(a))) {
        t.push_back(static_cast<Symbol>(a));
        extend(*next);
        t.pop_back();
      }
    }
  };
  extend(state);
  return best;
}

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log sum_{w in L_n} exp(sup_[w] S_n phi) by dynamic programming over
// (presentation state, last r-1 symbols).
double log_partition(const Subshift& x, const Potential& phi, int n) {
  const int r = phi.depth();
  const auto keep = static_cast<std::size_t>(r - 1);
  using Key = std::pair<Subshift::State, Word>;
  std::map<Key, double> layer{{{x.initial_state(), Word{}}, 0.0}};
  for (int i = 0; i < n; ++i) {
    std::map<Key, double> next;
    for (const auto& [key, value] : layer) {
      const auto& [state, suffix] = key;
      for (int a = 0; a < x.alphabet_size(); ++a) {
        const auto t = x.step(state, static_cast<Symbol>(a));
        if (!t) continue;
        Word window = suffix;
        window.push_back(static_cast<Symbol>(a));
        double v = value;
        if (window.size() == static_cast<std::size_t>(r)) v += phi(window);
        if (window.size() > keep) window.erase(window.begin());
        auto [it, inserted] = next.try_emplace(Key{*t, std::move(window)}, v);
        if (!inserted) it->second = log_sum_exp(it->second, v);
      }
    }
    layer = std::move(next);
  }
  double total = -std::numeric_limits<double>::infinity();
  for (const auto& [key, value] : layer) {
    total = log_sum_exp(total, value + tail_max(x, phi, key.first, key.second));
  }
  return total;
}

Potential zero_potential(int p) { return Potential::constant(p, 0.0); }

}  // namespace

TransferGraph transfer_graph(const Subshift& x, const Potential& phi, int min_memory) {
  if (!x.is_sft()) {
    throw DomainError("transfer operator needs a shift of finite type, got " + x.describe());
  }
  if (phi.alphabet_size() != x.alphabet_size()) {
    throw DomainError("potential and shift alphabets differ");
  }
  TransferGraph g;
  g.alphabet_size = x.alphabet_size();
  g.memory = std::max({1, x.memory(), phi.depth() - 1, min_memory});
  g.states = x.language(g.memory);
  std::unordered_map<std::uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    position.emplace(word_index(g.states[i], g.alphabet_size), i);
  }
  const auto r = static_cast<std::size_t>(phi.depth());
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    Word ua = g.states[i];
    ua.push_back(0);
    for (int a = 0; a < g.alphabet_size; ++a) {
      ua.back() = static_cast<Symbol>(a);
      if (!x.contains(ua)) continue;
      const std::size_t to = position.at(word_index(WordView(ua).subspan(1), g.alphabet_size));
      g.edges.push_back({i, to, static_cast<Symbol>(a), phi(WordView(ua).first(r))});
    }
  }
  g.components = cyclic_components(g.states.size(), g.edges);
  return g;
}

TransferResult transfer(const Subshift& x, const Potential& phi) {
  const TransferGraph g = transfer_graph(x, phi);
  if (g.components.empty()) throw DomainError("transition graph has no cycle");
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges) top = std::max(top, e.weight);

  std::vector<long> comp_of(g.states.size(), -1), local(g.states.size(), -1);
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    for (std::size_t k = 0; k < g.components[c].size(); ++k) {
      comp_of[g.components[c][k]] = static_cast<long>(c);
      local[g.components[c][k]] = static_cast<long>(k);
    }
  }
  std::vector<std::vector<LocalEdge>> comp_edges(g.components.size());
  for (const auto& e : g.edges) {
    if (comp_of[e.from] >= 0 && comp_of[e.from] == comp_of[e.to]) {
      comp_edges[static_cast<std::size_t>(comp_of[e.from])].push_back(
          {static_cast<std::size_t>(local[e.from]), static_cast<std::size_t>(local[e.to]),
           std::exp(e.weight - top)});
    }
  }
  std::size_t best = 0;
  std::vector<Perron> right;
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    right.push_back(perron(g.components[c].size(), comp_edges[c]));
    if (right[c].rho > right[best].rho) best = c;
  }
  const auto& comp = g.components[best];
  const Perron& r = right[best];
  std::vector<LocalEdge> transposed;
  for (const auto& e : comp_edges[best]) transposed.push_back({e.to, e.from, e.weight});
  const Perron l = perron(comp.size(), transposed);

  const int p = g.alphabet_size;
  const std::uint64_t markov_states = ipow(static_cast<std::uint64_t>(p), g.memory);
  std::vector<double> P(markov_states * static_cast<std::uint64_t>(p), 0.0);
  std::vector<double> pi(markov_states, 0.0);
  std::vector<double> row_sum(comp.size(), 0.0);
  for (const auto& e : g.edges) {
    if (comp_of[e.from] != static_cast<long>(best) || comp_of[e.to] != static_cast<long>(best)) continue;
    const auto u = static_cast<std::size_t>(local[e.from]);
    const auto v = static_cast<std::size_t>(local[e.to]);
    const double q = std::exp(e.weight - top) * r.vec[v] / (r.rho * r.vec[u]);
    P[word_index(g.states[e.from], p) * static_cast<std::uint64_t>(p) + e.symbol] = q;
    row_sum[u] += q;
  }
  double mass = 0.0;
  for (std::size_t k = 0; k < comp.size(); ++k) mass += l.vec[k] * r.vec[k];
  for (std::size_t k = 0; k < comp.size(); ++k) {
    const std::uint64_t s = word_index(g.states[comp[k]], p);
    for (int a = 0; a < p; ++a) P[s * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(a)] /= row_sum[k];
    pi[s] = l.vec[k] * r.vec[k] / mass;
  }
  const bool reducible = g.components.size() > 1 || comp.size() != g.states.size();
  return TransferResult{std::log(r.rho) + top,
                        reducible,
                        g.memory,
                        comp.size(),
                        r.iterations + l.iterations,
                        MarkovMeasure(p, g.memory, std::move(P), std::move(pi))};
}

double transfer_pressure(const Subshift& x, const Potential& phi) {
  return transfer(x, phi).pressure;
}

PressureEstimate counting_pressure(const Subshift& x, const Potential& phi, int n) {
  if (n < 1) throw DomainError("counting pressure needs n >= 1");
  if (phi.alphabet_size() != x.alphabet_size()) {
    throw DomainError("potential and shift alphabets differ");
  }
  const double u_n = log_partition(x, phi, n) / n;
  const double u_2n = log_partition(x, phi, 2 * n) / (2 * n);
  PressureEstimate e;
  e.upper = u_n;
  e.lower = std::min(2.0 * u_2n - u_n, u_n);
  e.method = "counting: upper bound at n, lower = Richardson estimate 2u(2n)-u(n)";
  e.n = n;
  return e;
}

PressureEstimate pressure(const Subshift& x, const Potential& phi, int n, int m) {
  PressureEstimate e;
  if (x.is_sft()) {
    const double v = transfer_pressure(x, phi);
    e.lower = e.upper = v;
    e.method = "transfer matrix";
    e.exact = true;
    return e;
  }
  e.lower = transfer_pressure(inner_sft_approximation(x, m), phi);
  e.upper = counting_pressure(x, phi, n).upper;
  e.method = "inner SFT lower bound + counting upper bound";
  e.n = n;
  e.m = m;
  return e;
}

PressureEstimate entropy(const Subshift& x, int n, int m) {
  PressureEstimate e = pressure(x, zero_potential(x.alphabet_size()), n, m);
  if (x.kind() == ShiftKind::SGap) e.series_oracle = sgap_series_entropy(x.gaps());
  return e;
}

double sgap_series_entropy(const GapSet& s) {
  auto f = [&](double x) {
    switch (s.kind()) {
      case GapSet::Kind::Finite: {
        double total = 0.0;
        for (int g : s.values()) total += std::pow(x, -(g + 1.0));
        return total;
      }
      case GapSet::Kind::Arithmetic:
        return std::pow(x, -(s.start() + 1.0)) / (1.0 - std::pow(x, -static_cast<double>(s.step())));
      case GapSet::Kind::Cofinite: {
        double total = 1.0 / (x - 1.0);
        for (int g : s.values()) total -= std::pow(x, -(g + 1.0));
        return total;
      }
    }
    return 0.0;
  };
  double lo = 1.0, hi = 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 1.0 ? lo : hi) = mid;
  }
  return std::log(0.5 * (lo + hi));
}

double cylinder_sup(const Subshift& x, const Potential& phi, WordView w) {
  const int r = phi.depth();
  auto state = x.initial_state();
  for (Symbol a : w) {
    const auto t = x.step(state, a);
    if (!t) throw DomainError("'" + to_string(w) + "' is not in the language");
    state = *t;
  }
  const std::size_t inside = w.size() >= static_cast<std::size_t>(r) ? w.size() - static_cast<std::size_t>(r) + 1 : 0;
  double total = 0.0;
  for (std::size_t i = 0; i < inside; ++i) total += phi(w.subspan(i, static_cast<std::size_t>(r)));
  const std::size_t keep = std::min(w.size(), static_cast<std::size_t>(r - 1));
  return total + tail_max(x, phi, state, Word(w.end() - static_cast<long>(keep), w.end()));
}

double cover_pressure_sum(const Subshift& x, const std::vector<Word>& cover, double t,
                          const Potential& phi) {
  double total = 0.0;
  for (const Word& w : cover) {
    total += std::exp(-t * static_cast<double>(w.size()) + cylinder_sup(x, phi, w));
  }
  return total;
}

double bowen_dimension(const Subshift& x, const Potential& phi, double tol) {
  const double phi_min = phi.min_value();
  if (!(phi_min > 0.0)) throw DomainError("Bowen equation needs a strictly positive potential");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  double lo = 0.0;
  double hi = transfer_pressure(x, zero_potential(x.alphabet_size())) / phi_min;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (transfer_pressure(x, phi * -mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace symdyn
