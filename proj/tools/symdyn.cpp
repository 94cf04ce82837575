#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symdyn/error.hpp"
#include "symdyn/io.hpp"
#include "symdyn/pressure.hpp"
#include "symdyn/variational.hpp"
#include "symdyn/verify.hpp"

using namespace symdyn;
using io::json;

namespace {

struct Options {
  std::string shift;
  std::string potential;
  std::string psi;
  std::string itinerary;
  std::vector<double> alpha;
  int alpha_grid = 0;
  int n = 18;
  int depth = 10;
  int moran_depth = 4;
  int tau = 2;
  double theta = 0.2;
  long length = 100000;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::size_t budget = kDefaultBudget;
  std::string mistake = "auto";
  std::string prefix_out;
  std::vector<std::string> configs;
};

double round12(double v) { return std::isfinite(v) ? std::stod(verify::fmt(v)) : v; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

Potential potential_or_zero(const std::string& path, const Subshift& x) {
  if (path.empty()) return Potential::constant(x.alphabet_size(), 0.0);
  Potential phi = io::load_potential(path);
  if (phi.alphabet_size() != x.alphabet_size()) throw ConfigError(path + ": alphabet does not match the shift");
  return phi;
}

json estimate_json(const PressureEstimate& e) {
  json j{{"method", e.method}, {"n", e.n}, {"m", e.m}, {"exact", e.exact}};
  if (e.exact) {
    j["value"] = round12(e.lower);
  } else {
    j["lower"] = round12(e.lower);
    j["upper"] = round12(e.upper);
  }
  if (e.series_oracle) j["series_oracle"] = round12(*e.series_oracle);
  return j;
}

int cmd_pressure(const Options& o, bool zero_potential) {
  const Subshift x = io::load_shift(o.shift).shift;
  const Potential phi = zero_potential ? Potential::constant(x.alphabet_size(), 0.0) : potential_or_zero(o.potential, x);
  if (o.format == "csv") {
    std::cout << "n,lower,upper\n";
    for (int n = 1; n <= o.n; ++n) {
      const PressureEstimate e = pressure(x, phi, n, o.depth);
      std::cout << n << "," << verify::fmt(e.lower) << "," << verify::fmt(e.upper) << "\n";
    }
    return 0;
  }
  emit(estimate_json(zero_potential ? entropy(x, o.n, o.depth) : pressure(x, phi, o.n, o.depth)));
  return 0;
}

std::vector<double> alpha_values(const Options& o, const SpectrumDomain& d) {
  std::vector<double> out = o.alpha;
  if (o.alpha_grid > 0) {
    for (int k = 0; k < o.alpha_grid; ++k) {
      const double t = o.alpha_grid == 1 ? 0.5 : static_cast<double>(k) / (o.alpha_grid - 1);
      out.push_back(d.alpha_min + t * (d.alpha_max - d.alpha_min));
    }
  }
  if (out.empty()) throw ConfigError("give --alpha or --alpha-grid");
  return out;
}

int cmd_spectrum(const Options& o, bool dimension) {
  const Subshift x = io::load_shift(o.shift).shift;
  const Potential phi = potential_or_zero(o.potential, x);
  if (o.psi.empty()) throw ConfigError("--psi is required");
  const Potential psi = potential_or_zero(o.psi, x);
  const SpectrumDomain d = spectrum_domain(x, psi);
  const auto alphas = alpha_values(o, d);
  json points = json::array();
  if (o.format == "csv") std::cout << (dimension ? "alpha,dimension\n" : "alpha,value,q,boundary,witness\n");
  for (double a : alphas) {
    if (dimension) {
      const double v = dimension_spectrum(x, phi, psi, a);
      if (o.format == "csv") std::cout << verify::fmt(a) << "," << verify::fmt(v) << "\n";
      points.push_back({{"alpha", round12(a)}, {"dimension", round12(v)}});
      continue;
    }
    const SpectrumPoint pt = spectrum_legendre(x, phi, psi, a);
    const double h = pt.witness.entropy();
    const double integral = integrate(psi, pt.witness);
    if (o.format == "csv") {
      std::cout << verify::fmt(a) << "," << verify::fmt(pt.value) << "," << verify::fmt(pt.q) << ","
                << (pt.boundary ? 1 : 0) << ",h=" << verify::fmt(h) << ";int_psi=" << verify::fmt(integral)
                << ";memory=" << pt.witness.memory() << "\n";
    }
    json p{{"alpha", round12(a)}, {"value", round12(pt.value)}, {"q", round12(pt.q)}, {"boundary", pt.boundary},
           {"witness", {{"entropy", round12(h)}, {"integral_psi", round12(integral)}, {"memory", pt.witness.memory()}}}};
    if (pt.inner_level) p["inner_level"] = *pt.inner_level;
    points.push_back(p);
  }
  if (o.format == "csv") return 0;
  json out{{"domain", {round12(d.alpha_min), round12(d.alpha_max)}}, {"points", points}};
  if (!dimension) {
    const IrregularPressure irr = irregular_pressure(x, phi, psi);
    json diag = json::array();
    for (double v : irr.diagnostic) diag.push_back(round12(v));
    out["irregular"] = {{"empty", irr.empty}, {"value", round12(irr.value)}, {"diagnostic", diag}};
  }
  emit(out);
  return 0;
}

int cmd_bowen(const Options& o) {
  const Subshift x = io::load_shift(o.shift).shift;
  if (o.potential.empty()) throw ConfigError("--potential is required");
  const double v = bowen_dimension(x, potential_or_zero(o.potential, x));
  if (o.format == "csv") {
    std::cout << "dimension\n" << verify::fmt(v) << "\n";
  } else {
    emit({{"dimension", round12(v)}});
  }
  return 0;
}

std::string run_length(const Word& x) {
  std::ostringstream os;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    if (i) os << ' ';
    os << to_string(Word{x[i]}) << ':' << j - i;
    i = j;
  }
  return os.str();
}

MistakeFunction mistake_for(const Options& o, const io::ShiftConfig& c, const GoodSet& f) {
  const std::string kind = o.mistake == "auto" ? (c.good_set && f.kind() != GoodSet::Kind::WholeLanguage ? "empirical" : "zero")
                                              : o.mistake;
  if (kind == "zero") return MistakeFunction::zero();
  if (kind == "sqrt") return MistakeFunction::ceil_sqrt();
  if (kind == "empirical") return empirical_mistake_function(c.shift, f, 16, o.budget);
  throw ConfigError("--mistake must be auto, zero, sqrt or empirical");
}

int cmd_moran(const Options& o) {
  const io::ShiftConfig c = io::load_shift(o.shift);
  if (o.itinerary.empty()) throw ConfigError("--itinerary is required");
  const Itinerary it = io::load_itinerary(o.itinerary, c.shift);
  const GoodSet f = c.good_set.value_or(GoodSet::whole_language(c.shift));
  ScheduleOptions so;
  so.depth = o.moran_depth;
  so.budget = o.budget;
  const Schedule s = make_schedule(c.shift, it, mistake_for(o, c, f), o.theta, o.length, so);
  const GeneratedPoint pt = generate_point(c.shift, it, s, f, o.seed, o.budget);
  const ConvergenceReport r = track_convergence(pt.prefix, it, pt.segments, o.moran_depth);
  if (!o.prefix_out.empty()) {
    std::ofstream out(o.prefix_out);
    if (!out) throw ConfigError("cannot write " + o.prefix_out);
    out << run_length(pt.prefix) << "\n";
  }
  if (o.format == "csv") {
    std::cout << "j,n_j,l_j,t_j,D_j\n";
    for (std::size_t i = 0; i < pt.segments.size(); ++i) {
      const Segment& g = pt.segments[i];
      std::cout << g.j << "," << g.n << "," << g.l << "," << g.t << "," << verify::fmt(r.checkpoints[i].distance) << "\n";
    }
    return 0;
  }
  json stages = json::array();
  for (const Stage& st : s.stages) {
    stages.push_back({{"measure", st.measure}, {"n", st.n}, {"repeats", st.repeats}, {"eps", st.eps},
                      {"mistakes", st.mistakes}, {"good_words", st.good_count}});
  }
  json late = json::array();
  for (double v : r.late_minimum) late.push_back(round12(v));
  json segments = json::array();
  for (std::size_t i = 0; i < pt.segments.size(); ++i) {
    const Segment& g = pt.segments[i];
    segments.push_back({g.j, g.n, g.l, g.t, round12(r.checkpoints[i].distance)});
  }
  emit({{"shift", io::to_json(c)},
        {"seed", o.seed},
        {"length", pt.prefix.size()},
        {"stages", stages},
        {"final_distance", round12(r.checkpoints.back().distance)},
        {"late_minimum", late},
        {"counting_rate", round12(pt.counting_rate())},
        {"all_within_mistake_bound",
         std::all_of(pt.segments.begin(), pt.segments.end(), [](const Segment& g) { return g.within_mistake_bound; })},
        {"segments", segments},
        {"prefix", run_length(pt.prefix)}});
  return 0;
}

int cmd_edit(const Options& o) {
  const io::ShiftConfig c = io::load_shift(o.shift);
  const GoodSet f = c.good_set.value_or(GoodSet::whole_language(c.shift));
  const int n_max = std::min(o.n, 16);
  const MistakeFunction g = empirical_mistake_function(c.shift, f, n_max, o.budget);
  if (o.format == "csv") {
    std::cout << "n,g,g_over_n\n";
    for (int n = 1; n <= n_max; ++n) std::cout << n << "," << g(n) << "," << verify::fmt(static_cast<double>(g(n)) / n) << "\n";
    return 0;
  }
  json mistakes = json::array();
  for (int n = 1; n <= n_max; ++n) mistakes.push_back({{"n", n}, {"g", g(n)}});
  const int pair_max = std::min(n_max, 6);
  const WSpecReport ws = check_w_specification(f, o.tau, pair_max);
  const FreeConcatenationReport fc = check_free_concatenation(f, pair_max);
  json balls = json::array();
  for (double delta : {0.1, 0.2}) {
    for (int n = 2; n <= std::min(n_max, 10); n += 2) {
      const BallBoundReport b = ball_bound_report(c.shift, n, delta, 2.0, 512, o.budget);
      balls.push_back({{"n", n}, {"delta", delta}, {"radius", b.radius}, {"count", b.count}, {"C_fit", round12(b.C_fit)}});
    }
  }
  json out{{"good_set", f.describe()},
           {"mistake_function", mistakes},
           {"w_specification", {{"tau", o.tau}, {"holds", ws.holds}, {"max_gap", ws.max_gap}, {"pairs", ws.pairs_checked}}},
           {"free_concatenation", {{"holds", fc.holds}, {"pairs", fc.pairs_checked}}},
           {"ball_bound", balls}};
  if (fc.counterexample) out["free_concatenation"]["counterexample"] = {to_string(fc.counterexample->first), to_string(fc.counterexample->second)};
  emit(out);
  return 0;
}

int cmd_verify(const Options& o) {
  std::vector<verify::CriterionResult> results = verify::run_all(o.seed);
  int id = verify::kCriterionCount;
  for (const auto& path : o.configs) {
    verify::CriterionResult r{++id, "config " + std::filesystem::path(path).filename().string(), true, {}};
    try {
      const io::ShiftConfig c = io::load_shift(path);
      const std::string canon = io::canonical_text(io::to_json(c));
      const bool round_trip = io::canonical_text(io::to_json(io::parse_shift(json::parse(canon)))) == canon;
      const PressureEstimate e = entropy(c.shift, 12, 8);
      r.pass = round_trip && e.lower <= e.upper + 1e-12;
      r.detail = c.shift.describe() + ", entropy in [" + verify::fmt(e.lower) + ", " + verify::fmt(e.upper) + "]" +
                 (round_trip ? "" : ", canonical form not stable");
    } catch (const Error& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    results.push_back(r);
  }
  if (o.format == "csv") {
    std::cout << "id,name,pass,detail\n";
    for (const auto& r : results) std::cout << r.id << ",\"" << r.name << "\"," << (r.pass ? 1 : 0) << ",\"" << r.detail << "\"\n";
  } else if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : results) arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    emit(arr);
  } else {
    std::cout << verify::render(results);
  }
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; }) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic formalism for subshifts"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool needs_shift = true) {
    auto* s = sub->add_option("--shift", o.shift, "shift definition (JSON)");
    if (needs_shift) s->required()->check(CLI::ExistingFile);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--budget", o.budget, "enumeration budget")->check(CLI::PositiveNumber);
  };
  auto* entropy_cmd = app.add_subcommand("entropy", "topological entropy");
  auto* pressure_cmd = app.add_subcommand("pressure", "topological pressure of a potential");
  for (auto* sub : {entropy_cmd, pressure_cmd}) {
    common(sub);
    sub->add_option("--n", o.n, "counting length")->check(CLI::Range(1, 64));
    sub->add_option("--depth", o.depth, "inner SFT level for non-SFT shifts")->check(CLI::Range(1, 64));
  }
  pressure_cmd->add_option("--potential", o.potential, "potential file")->check(CLI::ExistingFile);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Birkhoff level-set pressure spectrum");
  auto* dimension_cmd = app.add_subcommand("dimension", "dimension spectrum of Birkhoff level sets");
  dimension_cmd->alias("dimension-spectrum");
  for (auto* sub : {spectrum_cmd, dimension_cmd}) {
    common(sub);
    sub->add_option("--potential", o.potential, "phi (default 0)")->check(CLI::ExistingFile);
    sub->add_option("--psi", o.psi, "observable psi")->check(CLI::ExistingFile);
    sub->add_option("--alpha", o.alpha, "levels");
    sub->add_option("--alpha-grid", o.alpha_grid, "evenly spaced levels across the domain")->check(CLI::Range(1, 100000));
  }

  auto* bowen_cmd = app.add_subcommand("bowen", "Bowen dimension");
  common(bowen_cmd);
  bowen_cmd->add_option("--potential", o.potential, "strictly positive phi")->check(CLI::ExistingFile);

  auto* moran_cmd = app.add_subcommand("moran-generate", "glue good words along an itinerary");
  common(moran_cmd);
  moran_cmd->add_option("--itinerary", o.itinerary, "itinerary (JSON)")->check(CLI::ExistingFile);
  moran_cmd->add_option("--theta", o.theta, "schedule ratio bound");
  moran_cmd->add_option("--length", o.length, "target prefix length")->check(CLI::PositiveNumber);
  moran_cmd->add_option("--seed", o.seed, "random seed");
  moran_cmd->add_option("--depth", o.moran_depth, "cylinder depth for distances")->check(CLI::Range(1, 8));
  moran_cmd->add_option("--mistake", o.mistake, "auto, zero, sqrt or empirical");
  moran_cmd->add_option("--prefix-out", o.prefix_out, "write the run-length encoded prefix here");

  auto* edit_cmd = app.add_subcommand("edit-analyze", "mistake function, specification and ball bounds");
  common(edit_cmd);
  edit_cmd->add_option("--n", o.n, "largest word length")->check(CLI::Range(1, 16));
  edit_cmd->add_option("--tau", o.tau, "connector length for the specification check")->check(CLI::Range(0, 16));

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in check suite");
  verify_cmd->add_option("--seed", o.seed, "random seed");
  verify_cmd->add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  verify_cmd->add_option("--shift", o.configs, "also check these shift files")->check(CLI::ExistingFile);
  verify_cmd->callback([&] {
    if (verify_cmd->count("--format") == 0) o.format = "table";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (entropy_cmd->parsed()) return cmd_pressure(o, true);
    if (pressure_cmd->parsed()) return cmd_pressure(o, false);
    if (spectrum_cmd->parsed()) return cmd_spectrum(o, false);
    if (dimension_cmd->parsed()) return cmd_spectrum(o, true);
    if (bowen_cmd->parsed()) return cmd_bowen(o);
    if (moran_cmd->parsed()) return cmd_moran(o);
    if (edit_cmd->parsed()) return cmd_edit(o);
    if (verify_cmd->parsed()) return cmd_verify(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
