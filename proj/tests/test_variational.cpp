#include <cmath>

#include "doctest.h"
#include "support/generators.hpp"
#include "symdyn/error.hpp"
#include "symdyn/pressure.hpp"
#include "symdyn/variational.hpp"

using namespace symdyn;

namespace {

Word w(const char* s) { return parse_word(s); }

double binary_entropy(double a) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return -a * std::log(a) - (1.0 - a) * std::log(1.0 - a);
}

// Max entropy on the golden SFT with a fixed frequency of 1s: the 2-block
// marginal is pinned by a, so the maximiser is the 1-step chain 0 -> 1 w.p. a/(1-a).
double golden_spectrum(double a) { return (1.0 - a) * binary_entropy(a / (1.0 - a)); }

Subshift golden() { return Subshift::sft(2, {w("11")}); }
Potential ones() { return Potential::indicator(2, w("1")); }
Potential zero() { return Potential::constant(2, 0.0); }

}  // namespace

TEST_CASE("spectrum domain from mean cycles") {
  SpectrumDomain d = spectrum_domain(Subshift::full(2), ones());
  CHECK(d.alpha_min == doctest::Approx(0.0));
  CHECK(d.alpha_max == doctest::Approx(1.0));
  d = spectrum_domain(golden(), ones());
  CHECK(d.alpha_min == doctest::Approx(0.0));
  CHECK(d.alpha_max == doctest::Approx(0.5));
  d = spectrum_domain(Subshift::full(3), Potential::constant(3, 0.7));
  CHECK(d.alpha_min == doctest::Approx(0.7));
  CHECK(d.alpha_max == doctest::Approx(0.7));

  Potential pairs = Potential::indicator(2, w("01"));
  d = spectrum_domain(Subshift::full(2), pairs);
  CHECK(d.alpha_max == doctest::Approx(0.5));
  CHECK(d.alpha_min == doctest::Approx(0.0));
}

TEST_CASE("legendre spectrum matches binary entropy on the full shift") {
  for (int k = 1; k <= 9; ++k) {
    const double a = k / 10.0;
    const SpectrumPoint pt = spectrum_legendre(Subshift::full(2), zero(), ones(), a);
    CHECK(std::abs(pt.value - binary_entropy(a)) < 1e-9);
    CHECK_FALSE(pt.boundary);
    CHECK(std::abs(pt.witness.mass(w("1")) - a) < 1e-9);
  }
  const SpectrumPoint quarter = spectrum_legendre(Subshift::full(2), zero(), ones(), 0.25);
  CHECK(quarter.value == doctest::Approx(0.562335).epsilon(1e-6));
  const SpectrumPoint shifted = spectrum_legendre(Subshift::full(2), ones(), ones(), 0.25);
  CHECK(std::abs(shifted.value - (binary_entropy(0.25) + 0.25)) < 1e-9);
  const SpectrumPoint half = spectrum_legendre(Subshift::full(2), zero(), ones(), 0.5);
  CHECK(std::abs(half.value - std::log(2.0)) < 1e-10);
  CHECK(std::abs(half.q) < 1e-8);
}

TEST_CASE("legendre spectrum on the golden shift") {
  for (double a : {0.05, 0.15, 0.25, 0.3, 0.4, 0.45}) {
    const SpectrumPoint pt = spectrum_legendre(golden(), zero(), ones(), a);
    CHECK(std::abs(pt.value - golden_spectrum(a)) < 1e-9);
  }
}

TEST_CASE("boundary and out-of-domain levels") {
  const SpectrumPoint lo = spectrum_legendre(Subshift::full(2), zero(), ones(), 0.0);
  CHECK(lo.boundary);
  CHECK(std::abs(lo.value) < 1e-8);
  const SpectrumPoint hi = spectrum_legendre(golden(), zero(), ones(), 0.5);
  CHECK(hi.boundary);
  CHECK(std::abs(hi.value) < 1e-8);
  CHECK_THROWS_AS(spectrum_legendre(golden(), zero(), ones(), 0.6), DomainError);
  try {
    spectrum_legendre(golden(), zero(), ones(), -0.1);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("[0, 0.5]") != std::string::npos);
  }
  const SpectrumPoint flat = spectrum_legendre(Subshift::full(2), zero(), Potential::constant(2, 0.3), 0.3);
  CHECK(flat.boundary);
  CHECK(std::abs(flat.value - std::log(2.0)) < 1e-10);
}

TEST_CASE("non-SFT shifts use the inner approximation") {
  const Subshift beta = Subshift::beta(BetaValue("1.5"));
  const SpectrumPoint pt = spectrum_legendre(beta, zero(), ones(), 0.2);
  REQUIRE(pt.inner_level.has_value());
  CHECK(*pt.inner_level == kSpectrumInnerLevel);
  const SpectrumPoint direct =
      spectrum_legendre(inner_sft_approximation(beta, kSpectrumInnerLevel), zero(), ones(), 0.2);
  CHECK(pt.value == doctest::Approx(direct.value).epsilon(1e-12));
  CHECK_FALSE(direct.inner_level.has_value());
}

TEST_CASE("concavity of the spectrum") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const Potential phi = gen::potential(rng, 2, 2, 0.5);
    const Potential psi = gen::potential(rng, 2, 1, 1.0);
    const SpectrumDomain d = spectrum_domain(Subshift::full(2), psi);
    std::vector<double> values;
    for (int k = 1; k < 30; ++k) {
      const double a = d.alpha_min + (d.alpha_max - d.alpha_min) * k / 30.0;
      values.push_back(spectrum_legendre(Subshift::full(2), phi, psi, a).value);
    }
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
      CHECK(values[i - 1] - 2.0 * values[i] + values[i + 1] <= 1e-8);
    }
  }
}

TEST_CASE("envelope of the spectrum is the pressure") {
  gen::Rng rng(29);
  for (int trial = 0; trial < 3; ++trial) {
    const Potential phi = gen::potential(rng, 2, 1, 1.0);
    const Potential psi = gen::potential(rng, 2, 1, 1.0);
    const TransferResult top = transfer(Subshift::full(2), phi);
    const double star = integrate(psi, top.equilibrium);
    const SpectrumPoint at_star = spectrum_legendre(Subshift::full(2), phi, psi, star);
    CHECK(std::abs(at_star.value - top.pressure) < 1e-9);
    const SpectrumDomain d = spectrum_domain(Subshift::full(2), psi);
    double best = -1e300;
    for (int k = 0; k <= 40; ++k) {
      const double a = d.alpha_min + (d.alpha_max - d.alpha_min) * k / 40.0;
      best = std::max(best, spectrum_legendre(Subshift::full(2), phi, psi, a).value);
    }
    CHECK(best <= top.pressure + 1e-9);
  }
}

TEST_CASE("witness feasibility and value identity") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const Subshift x = trial % 2 ? golden() : Subshift::full(2);
    const Potential phi = gen::potential(rng, 2, 2, 0.5);
    const Potential psi = gen::potential(rng, 2, 2, 1.0);
    const SpectrumDomain d = spectrum_domain(x, psi);
    const double a = d.alpha_min + (d.alpha_max - d.alpha_min) * gen::uniform(rng, 0.1, 0.9);
    const SpectrumPoint pt = spectrum_legendre(x, phi, psi, a);
    CHECK(std::abs(integrate(psi, pt.witness) - a) <= 1e-6);
    CHECK(std::abs(pt.witness.entropy() + integrate(phi, pt.witness) - pt.value) <= 1e-6);
  }
}

TEST_CASE("direct optimisation agrees with the Legendre route") {
  for (double a : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const double direct = spectrum_direct(Subshift::full(2), zero(), ones(), a, 200);
    CHECK(std::abs(direct - binary_entropy(a)) < 1e-3);
  }
  CHECK(std::abs(spectrum_direct(Subshift::full(2), zero(), ones(), 0.5, 200) - std::log(2.0)) < 1e-4);
  for (double a : {0.1, 0.2, 0.25, 0.3, 0.4}) {
    const double direct = spectrum_direct(golden(), zero(), ones(), a, 200);
    CHECK(std::abs(direct - spectrum_legendre(golden(), zero(), ones(), a).value) < 1e-3);
  }
  gen::Rng rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const Potential phi = gen::potential(rng, 2, 2, 0.5);
    const Potential psi = gen::potential(rng, 2, 1, 1.0);
    const SpectrumDomain d = spectrum_domain(Subshift::full(2), psi);
    const double a = 0.5 * (d.alpha_min + d.alpha_max);
    const double direct = spectrum_direct(Subshift::full(2), phi, psi, a, 100);
    CHECK(std::abs(direct - spectrum_legendre(Subshift::full(2), phi, psi, a).value) < 1e-3);
  }
}

TEST_CASE("direct optimisation rejects what it cannot handle") {
  CHECK_THROWS_AS(spectrum_direct(Subshift::full(5), Potential::constant(5, 0.0),
                                  Potential::indicator(5, w("1")), 0.3, 50),
                  DomainError);
  CHECK_THROWS_AS(spectrum_direct(Subshift::full(2), zero(), ones(), 0.5, 5), DomainError);
  CHECK_THROWS_AS(spectrum_direct(Subshift::full(2), zero(), ones(), 1.5, 20), InfeasibleError);
}

TEST_CASE("dimension spectrum") {
  const Potential log2 = Potential::constant(2, std::log(2.0));
  CHECK(std::abs(dimension_spectrum(Subshift::full(2), log2, ones(), 0.5) - 1.0) < 1e-9);
  for (double a : {0.25, 0.75}) {
    const double expect = binary_entropy(a) / std::log(2.0);
    CHECK(std::abs(dimension_spectrum(Subshift::full(2), log2, ones(), a) - expect) < 1e-9);
  }
  const Potential c = Potential::constant(2, 1.7);
  CHECK(std::abs(dimension_spectrum(Subshift::full(2), c, ones(), 0.3) - binary_entropy(0.3) / 1.7) < 1e-9);
  CHECK_THROWS_AS(dimension_spectrum(Subshift::full(2), zero(), ones(), 0.3), DomainError);
}

TEST_CASE("dimension spectrum is bounded by the Bowen dimension") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    Potential phi = gen::potential(rng, 2, 1, 0.5) + 1.0;
    const Potential psi = gen::potential(rng, 2, 1, 1.0);
    const double bowen = bowen_dimension(golden(), phi);
    const SpectrumDomain d = spectrum_domain(golden(), psi);
    for (int k = 1; k < 8; ++k) {
      const double a = d.alpha_min + (d.alpha_max - d.alpha_min) * k / 8.0;
      CHECK(dimension_spectrum(golden(), phi, psi, a) <= bowen + 1e-10);
    }
    const TransferResult eq = transfer(golden(), phi * -bowen);
    const double star = integrate(psi, eq.equilibrium);
    CHECK(std::abs(dimension_spectrum(golden(), phi, psi, star) - bowen) < 1e-8);
  }
}

TEST_CASE("irregular set pressure") {
  const IrregularPressure full = irregular_pressure(Subshift::full(2), zero(), ones());
  CHECK_FALSE(full.empty);
  CHECK(std::abs(full.value - std::log(2.0)) < 1e-10);
  REQUIRE(full.diagnostic.size() == 5);
  for (std::size_t i = 1; i < full.diagnostic.size(); ++i) CHECK(full.diagnostic[i] > full.diagnostic[i - 1]);
  CHECK(full.diagnostic.back() > std::log(2.0) - 1e-3);
  CHECK(full.diagnostic.back() <= std::log(2.0) + 1e-12);

  const IrregularPressure gold = irregular_pressure(golden(), zero(), ones());
  CHECK(std::abs(gold.value - std::log((1.0 + std::sqrt(5.0)) / 2.0)) < 1e-10);
  CHECK(gold.diagnostic.back() > gold.value - 1e-3);

  CHECK(irregular_pressure(Subshift::full(2), zero(), zero()).empty);
  CHECK(irregular_pressure(golden(), ones(), Potential::constant(2, 2.0)).empty);
}
