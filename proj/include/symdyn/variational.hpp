#pragma once

#include <optional>
#include <vector>

#include "symdyn/measure.hpp"
#include "symdyn/potential.hpp"
#include "symdyn/subshift.hpp"

namespace symdyn {

/// Inner approximation level used when a spectrum is requested on a shift
/// that is not of finite type.
inline constexpr int kSpectrumInnerLevel = 10;

struct SpectrumDomain {
  double alpha_min;
  double alpha_max;
  /// Several cyclic components; the hull of their intervals is reported.
  bool reducible;
};

/// [min, max] of the integral of psi over invariant measures: the extreme
/// mean cycle weights of psi on the transition graph (Karp's algorithm).
SpectrumDomain spectrum_domain(const Subshift& x, const Potential& psi);

struct SpectrumPoint {
  double alpha;
  double value;
  double q;
  /// alpha at an end of the domain: value is the limit as |q| grows.
  bool boundary;
  MarkovMeasure witness;
  /// Set when x is not an SFT and the spectrum was computed on its inner
  /// approximation at this level.
  std::optional<int> inner_level;
};

/// sup{h + int phi : int psi = alpha} as inf_q P(phi + q psi) - q alpha; the
/// optimal q matches int psi d(equilibrium of phi + q psi) to alpha.
SpectrumPoint spectrum_legendre(const Subshift& x, const Potential& phi, const Potential& psi,
                                double alpha);

/// The same supremum by direct search over Markov measures on the transition
/// graph (at most four states): a grid over row-stochastic matrices filtered by
/// |int psi - alpha| <= range(psi)/grid, then a constrained compass search.
double spectrum_direct(const Subshift& x, const Potential& phi, const Potential& psi, double alpha,
                       int grid = 200);

/// Root s of spectrum_legendre(x, -s phi, psi, alpha) = 0, for phi > 0.
double dimension_spectrum(const Subshift& x, const Potential& phi, const Potential& psi,
                          double alpha, double tol = 1e-12);

struct IrregularPressure {
  bool empty;
  double value;
  /// inf over t of h + int phi on {t nu_n + (1-t) mu}, nu_n = p_n nu + (1-p_n) mu,
  /// p_n = 2^-n for n = 1..5, where mu is the equilibrium of phi and nu that
  /// of phi + eps psi.
  std::vector<double> diagnostic;
};

IrregularPressure irregular_pressure(const Subshift& x, const Potential& phi, const Potential& psi);

}  // namespace symdyn
