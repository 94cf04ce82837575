#include "symdyn/moran.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void require_depth(const MeasureRep& mu, int d) {
  if (d < 1) throw DomainError("depth must be >= 1");
  if (auto top = max_depth(mu); top && *top < d) {
    throw DomainError("measure is tabulated to depth " + std::to_string(*top) + ", need " +
                      std::to_string(d));
  }
}

// Index in [0, size) from a single draw.
std::size_t pick(std::mt19937_64& rng, std::size_t size) { return static_cast<std::size_t>(rng() % size); }

struct BlockChoice {
  int n;
  double eps;
  std::size_t count;
};

BlockChoice choose_block(const Subshift& x, const MeasureRep& mu, const MistakeFunction& g,
                         const ScheduleOptions& opt, std::size_t index) {
  const int p = x.alphabet_size();
  const int n_min = opt.n_min > 0 ? opt.n_min : std::max(opt.depth, 2);
  const double h = measure_entropy(mu);
  for (int n = n_min; n <= opt.n_max; ++n) {
    if (n - g(n) <= 0) continue;
    const auto scored = score_words(x, mu, n, opt.depth, opt.budget);
    const double slack = opt.mode == ErrorMode::Certified ? certified_error(p, n, opt.depth) : 0.0;
    const double need = std::max(1.0, std::exp(n * (h - opt.delta)));
    for (auto eps = kEpsGrid.rbegin(); eps != kEpsGrid.rend(); ++eps) {
      const auto count = static_cast<std::size_t>(std::count_if(
          scored.begin(), scored.end(), [&](const ScoredWord& s) { return s.distance + slack < *eps; }));
      if (static_cast<double>(count) >= need) return {n, *eps, count};
    }
  }
  throw ResourceError("n_max = " + std::to_string(opt.n_max),
                      "no block length yields e^{n(h - delta)} good words for itinerary measure " +
                          std::to_string(index));
}

std::size_t ping_pong(std::size_t i, std::size_t J) {
  if (J == 1) return 0;
  const std::size_t r = i % (2 * (J - 1));
  return r < J ? r : 2 * (J - 1) - r;
}

long ceil_div(double a, double b) { return static_cast<long>(std::ceil(a / b - 1e-12)); }

}  // namespace

double certified_error(int p, int n, int d) {
  const long K = indicator_count(p, d);
  return static_cast<double>(d) / n + std::ldexp(1.0, -static_cast<int>(std::min<long>(K, 2000)));
}

std::vector<ScoredWord> score_words(const Subshift& x, const MeasureRep& mu, int n, int d,
                                    std::size_t budget) {
  const int p = x.alphabet_size();
  if (alphabet_size(mu) != p) throw DomainError("measure and shift use different alphabets");
  require_depth(mu, d);
  if (n < d) throw DomainError("good words need n >= d");
  const long K = indicator_count(p, d);
  std::vector<double> target(static_cast<std::size_t>(K));
  std::vector<double> weight(static_cast<std::size_t>(K));
  for (long k = 1; k <= K; ++k) {
    target[static_cast<std::size_t>(k - 1)] = mass(mu, separating_word(p, k));
    weight[static_cast<std::size_t>(k - 1)] = std::ldexp(1.0, -static_cast<int>(k));
  }
  std::vector<ScoredWord> out;
  std::vector<long> counts(static_cast<std::size_t>(K));
  const auto P = static_cast<std::uint64_t>(p);
  for (Word& w : x.language(n, budget)) {
    std::fill(counts.begin(), counts.end(), 0);
    std::size_t offset = 0;
    std::uint64_t span = P;
    for (int len = 1; len <= d; ++len) {
      for (int i = 0; i < n; ++i) {
        std::uint64_t code = 0;
        for (int t = 0; t < len; ++t) code = code * P + w[static_cast<std::size_t>((i + t) % n)];
        ++counts[offset + code];
      }
      offset += span;
      span *= P;
    }
    double distance = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      distance += weight[k] * std::abs(static_cast<double>(counts[k]) / n - target[k]);
    }
    out.push_back({std::move(w), distance});
  }
  return out;
}

std::vector<Word> good_words(const Subshift& x, const MeasureRep& mu, double eps, int n, int d,
                             ErrorMode mode, std::size_t budget) {
  const double slack = mode == ErrorMode::Certified ? certified_error(x.alphabet_size(), n, d) : 0.0;
  std::vector<Word> out;
  for (auto& s : score_words(x, mu, n, d, budget)) {
    if (s.distance + slack < eps) out.push_back(std::move(s.word));
  }
  return out;
}

KatokCheck katok_count_check(const Subshift& x, const MarkovMeasure& mu, double eps, double delta, int n,
                             int d, ErrorMode mode, std::size_t budget) {
  const double h = mu.entropy();
  auto check = [&](int m) {
    const std::size_t count = good_words(x, mu, eps, m, d, mode, budget).size();
    const double threshold = std::exp(m * (h - delta));
    return KatokCheck{m, count, threshold, static_cast<double>(count) >= threshold, std::nullopt};
  };
  KatokCheck result = check(n);
  if (result.pass) {
    int onset = n;
    while (onset > d && check(onset - 1).pass) --onset;
    result.onset = onset;
  }
  return result;
}

double measure_entropy(const MeasureRep& mu) {
  if (const auto* m = std::get_if<MarkovMeasure>(&mu)) return m->entropy();
  const auto& table = std::get<CylinderTable>(mu);
  return block_entropy_rate(table, table.depth());
}

void Itinerary::validate(int d) const {
  if (measures.empty()) throw DomainError("itinerary is empty");
  const int p = alphabet_size(measures.front());
  for (const auto& mu : measures) {
    if (alphabet_size(mu) != p) throw DomainError("itinerary measures use different alphabets");
    require_depth(mu, d);
  }
  const auto gaps = chain_distances(d);
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    if (gaps[j] > chain_bound) {
      std::ostringstream os;
      os << "D(alpha_" << j + 1 << ", alpha_" << j + 2 << ") = " << gaps[j] << " exceeds the chain bound "
         << chain_bound;
      throw DomainError(os.str());
    }
  }
}

std::vector<double> Itinerary::chain_distances(int d) const {
  std::vector<double> out;
  if (measures.empty()) return out;
  const long K = indicator_count(alphabet_size(measures.front()), d);
  for (std::size_t j = 0; j + 1 < measures.size(); ++j) {
    out.push_back(weak_star_distance(measures[j], measures[j + 1], K).value);
  }
  return out;
}

long Schedule::block_count() const {
  long total = 0;
  for (const auto& s : stages) total += s.repeats;
  return total;
}

long Schedule::min_length() const {
  long total = 0;
  for (const auto& s : stages) total += (s.n - s.mistakes) * s.repeats;
  return total;
}

std::vector<double> Schedule::ratios() const {
  std::vector<double> out;
  double lower = 0.0, upper = 0.0;
  for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
    lower += static_cast<double>(stages[k].n - stages[k].mistakes) * stages[k].repeats;
    upper += static_cast<double>(stages[k].n + stages[k].mistakes) * stages[k].repeats;
    const Stage& next = stages[k + 1];
    out.push_back((next.n + next.mistakes) / lower);
    out.push_back(upper / (lower + static_cast<double>(next.n - next.mistakes) * next.repeats));
  }
  return out;
}

Schedule make_schedule(const Subshift& x, const Itinerary& itinerary, const MistakeFunction& g, double theta,
                       long T, const ScheduleOptions& options) {
  if (!(theta > 0.0 && theta < 0.25)) throw DomainError("theta must lie in (0, 1/4)");
  if (T < 1) throw DomainError("target length must be positive");
  itinerary.validate(options.depth);
  const std::size_t J = itinerary.measures.size();
  std::map<std::size_t, BlockChoice> chosen;
  auto block = [&](std::size_t k) -> const BlockChoice& {
    auto it = chosen.find(k);
    if (it == chosen.end()) it = chosen.emplace(k, choose_block(x, itinerary.measures[k], g, options, k)).first;
    return it->second;
  };

  Schedule s{{}, g, theta, options.depth, options.mode};
  if (J == 1) {
    const BlockChoice& b = block(0);
    const int m = g(b.n);
    s.stages.push_back({0, b.n, ceil_div(static_cast<double>(T), b.n - m), b.eps, m, b.count});
    return s;
  }

  double lower = 0.0, upper = 0.0;
  const double cap = options.overshoot * static_cast<double>(T);
  for (std::size_t i = 0;; ++i) {
    const std::size_t k = ping_pong(i, J);
    const BlockChoice& b = block(k);
    const int m = g(b.n);
    const double shrink = b.n - m;
    long N = 1;
    std::string binding = "N >= 1";
    if (i > 0) {
      const long need = ceil_div(upper / theta - lower, shrink);
      if (need > N) {
        N = need;
        binding = "earlier stages at most theta of the running length";
      }
    }
    const BlockChoice& nb = block(ping_pong(i + 1, J));
    const double next_plus = nb.n + g(nb.n);
    const long need_next = ceil_div(next_plus / theta - lower, shrink);
    if (need_next > N) {
      N = need_next;
      binding = "next block at most theta of the running length";
    }
    s.stages.push_back({k, b.n, N, b.eps, m, b.count});
    lower += shrink * N;
    upper += (b.n + m) * static_cast<double>(N);
    if (i + 1 < J && lower > cap) {
      std::ostringstream os;
      os << "stage " << i + 1 << " needs running length " << lower << " > " << options.overshoot
         << " * T to satisfy: " << binding;
      std::ostringstream cap_text;
      cap_text << "overshoot " << options.overshoot;
      throw ResourceError(cap_text.str(), os.str());
    }
    if (i + 1 >= J && lower >= static_cast<double>(T)) break;
  }
  return s;
}

double GeneratedPoint::counting_rate() const {
  if (prefix.empty()) return 0.0;
  return log_choices / static_cast<double>(prefix.size());
}

GeneratedPoint generate_point(const Subshift& x, const Itinerary& itinerary, const Schedule& schedule,
                              const GoodSet& f, std::uint64_t seed, std::size_t budget) {
  const FreeConcatenationReport free = check_free_concatenation(f, 6);
  if (!free.holds) throw ConstructionError("good set " + f.describe() + " is not closed under concatenation");
  std::mt19937_64 rng(seed);
  GeneratedPoint out{{}, {}, seed, 0.0};
  std::map<Word, Word> edited;
  long j = 0;
  for (std::size_t st = 0; st < schedule.stages.size(); ++st) {
    const Stage& stage = schedule.stages[st];
    const auto pool = good_words(x, itinerary.measures.at(stage.measure), stage.eps, stage.n, schedule.depth,
                                 schedule.mode, budget);
    if (pool.empty()) {
      throw ConstructionError("stage " + std::to_string(st + 1) + " (n = " + std::to_string(stage.n) +
                              ") has no good words at eps = " + std::to_string(stage.eps));
    }
    const double log_pool = std::log(static_cast<double>(pool.size()));
    for (long r = 0; r < stage.repeats; ++r) {
      const Word& w = pool[pick(rng, pool.size())];
      auto it = edited.find(w);
      if (it == edited.end()) it = edited.emplace(w, nearest_in(w, f, std::nullopt, budget).word).first;
      const Word& v = it->second;
      out.prefix.insert(out.prefix.end(), v.begin(), v.end());
      const int l = static_cast<int>(v.size());
      out.segments.push_back({++j, st, stage.measure, stage.n, l, static_cast<long>(out.prefix.size()),
                              edit_distance(w, v), std::abs(l - stage.n) <= schedule.g(stage.n)});
      out.log_choices += log_pool;
    }
  }
  if (!x.contains(out.prefix)) throw ConstructionError("glued prefix left the language of " + x.describe());
  return out;
}

ConvergenceReport track_convergence(WordView x, const Itinerary& itinerary, const std::vector<Segment>& segments,
                                    int d) {
  if (segments.empty() || segments.back().t != static_cast<long>(x.size())) {
    throw DomainError("segment log does not end at the prefix length " + std::to_string(x.size()));
  }
  itinerary.validate(d);
  const int p = alphabet_size(itinerary.measures.front());
  const auto P = static_cast<std::uint64_t>(p);
  const std::size_t n = x.size();
  const long K = indicator_count(p, d);
  std::vector<double> counts(ipow(P, d), 0.0);
  ConvergenceReport report;
  report.late_minimum.assign(itinerary.measures.size(), std::numeric_limits<double>::infinity());
  long done = 0;
  for (const Segment& s : segments) {
    for (; done < s.t; ++done) {
      std::uint64_t code = 0;
      for (int k = 0; k < d; ++k) code = code * P + x[(static_cast<std::size_t>(done) + k) % n];
      ++counts[code];
    }
    std::vector<double> top(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) top[i] = counts[i] / static_cast<double>(s.t);
    const MeasureRep empirical = CylinderTable(p, d, std::move(top));
    report.checkpoints.push_back(
        {s.j, s.t, s.measure,
         weak_star_distance(empirical, itinerary.measures.at(s.measure), K, DepthPolicy::Truncate).value});
    if (s.t * 10 >= static_cast<long>(n)) {
      for (std::size_t k = 0; k < itinerary.measures.size(); ++k) {
        report.late_minimum[k] = std::min(
            report.late_minimum[k],
            weak_star_distance(empirical, itinerary.measures[k], K, DepthPolicy::Truncate).value);
      }
    }
  }
  return report;
}

}  // namespace symdyn
