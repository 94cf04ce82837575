#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symdyn/gap_set.hpp"
#include "symdyn/measure.hpp"
#include "symdyn/potential.hpp"
#include "symdyn/subshift.hpp"

namespace symdyn {

/// Higher-block presentation of an SFT weighted by a potential. Vertices are
/// the words of L_M(X); the edge u -> v labelled a exists when ua is in
/// L_{M+1}(X) and v is ua without its first symbol, and carries phi evaluated
/// on the first r symbols of ua.
struct TransferGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Symbol symbol;
    double weight;
  };

  int alphabet_size = 0;
  int memory = 0;
  std::vector<Word> states;
  std::vector<Edge> edges;
  /// Strongly connected components containing at least one cycle.
  std::vector<std::vector<std::size_t>> components;
};

/// M = max(1, memory of X, depth of phi - 1, min_memory). X must be an SFT.
TransferGraph transfer_graph(const Subshift& x, const Potential& phi, int min_memory = 1);

struct TransferResult {
  double pressure;
  /// More than one cyclic component, or vertices outside it.
  bool reducible;
  int memory;
  std::size_t component_size;
  int iterations;
  /// Equilibrium state of the dominant component, a Markov measure of the
  /// graph's memory built from the left and right Perron vectors.
  MarkovMeasure equilibrium;
};

/// log of the spectral radius of the weighted transition matrix, by power
/// iteration on the dominant component (relative tolerance 1e-12, at most
/// 1e5 iterations, NumericError otherwise).
TransferResult transfer(const Subshift& x, const Potential& phi);
double transfer_pressure(const Subshift& x, const Potential& phi);

struct PressureEstimate {
  double lower;
  double upper;
  std::string method;
  int n = 0;  // counting length (0 when unused)
  int m = 0;  // inner approximation level (0 when unused)
  bool exact = false;
  /// S-gap shifts only: the independent gap-series value.
  std::optional<double> series_oracle;
};

/// upper = (1/n) log sum_{w in L_n} exp(sup_[w] S_n phi); the supremum runs
/// over admissible completions of the last windows. lower = 2 u_{2n} - u_n,
/// a Richardson estimate of the limit clipped to [.., upper]; it is not a
/// rigorous bound and is tagged as such.
PressureEstimate counting_pressure(const Subshift& x, const Potential& phi, int n);

/// Exact transfer value on SFTs; otherwise the bracket
/// [P of the level-m inner SFT, counting upper bound at n].
PressureEstimate pressure(const Subshift& x, const Potential& phi, int n = 18, int m = 10);
PressureEstimate entropy(const Subshift& x, int n = 18, int m = 10);

/// log of the root x > 1 of sum_{s in S} x^-(s+1) = 1, the entropy of the
/// S-gap shift. Closed-form sums are used for arithmetic and cofinite S.
double sgap_series_entropy(const GapSet& s);

/// sup over x in [w] of S_{|w|} phi(x).
double cylinder_sup(const Subshift& x, const Potential& phi, WordView w);

/// sum over the cover of exp(-t |w| + sup_[w] S_{|w|} phi).
double cover_pressure_sum(const Subshift& x, const std::vector<Word>& cover, double t,
                          const Potential& phi);

/// Root s of P(-s phi) = 0 for phi > 0, by bisection to width tol.
double bowen_dimension(const Subshift& x, const Potential& phi, double tol = 1e-12);

}  // namespace symdyn
