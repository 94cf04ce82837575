#include "symdyn/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/pressure.hpp"

namespace symdyn::io {

namespace {

Word parse_in(const std::string& text, const Alphabet& a) {
  Word w = parse_word(text);
  require_in_alphabet(w, a);
  return w;
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": bad \"" + key + "\": " + e.what());
  }
}

Word word_field(const json& j, const char* key, const Alphabet& a, const std::string& where) {
  const auto text = field<std::string>(j, key, where);
  try {
    return parse_in(text, a);
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::vector<Word> word_list(const json& j, const char* key, const Alphabet& a, const std::string& where) {
  std::vector<Word> out;
  for (const auto& text : field<std::vector<std::string>>(j, key, where)) {
    try {
      out.push_back(parse_in(text, a));
    } catch (const DomainError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return out;
}

GapSet parse_gaps(const json& j) {
  const std::string where = "gaps";
  if (!j.is_object() || j.size() != 1) throw ConfigError("gaps: expected one of finite, arithmetic, cofinite");
  if (j.contains("finite")) return GapSet::finite(field<std::vector<int>>(j, "finite", where));
  if (j.contains("cofinite")) return GapSet::cofinite(field<std::vector<int>>(j, "cofinite", where));
  if (j.contains("arithmetic")) {
    const json& a = j.at("arithmetic");
    return GapSet::arithmetic(field<int>(a, "start", "gaps.arithmetic"), field<int>(a, "step", "gaps.arithmetic"));
  }
  throw ConfigError("gaps: expected one of finite, arithmetic, cofinite");
}

json gaps_json(const GapSet& s) {
  switch (s.kind()) {
    case GapSet::Kind::Finite:
      return {{"finite", s.values()}};
    case GapSet::Kind::Cofinite:
      return {{"cofinite", s.values()}};
    case GapSet::Kind::Arithmetic:
      return {{"arithmetic", {{"start", s.start()}, {"step", s.step()}}}};
  }
  return {};
}

std::vector<std::string> word_texts(const std::vector<Word>& words) {
  std::vector<std::string> out;
  for (const Word& w : words) out.push_back(to_string(w));
  return out;
}

GoodSet parse_good_set(const json& j, const Subshift& host) {
  const std::string where = "good_set";
  const auto kind = field<std::string>(j, "kind", where);
  const Alphabet& a = host.alphabet();
  if (kind == "whole-language") return GoodSet::whole_language(host);
  if (kind == "ends-with") return GoodSet::ends_with(host, word_field(j, "word", a, where));
  if (kind == "begins-and-ends-with") return GoodSet::begins_and_ends_with(host, word_field(j, "word", a, where));
  if (kind == "explicit") return GoodSet::explicit_list(host, word_list(j, "words", a, where));
  throw ConfigError("good_set: unknown kind \"" + kind + "\"");
}

json good_set_json(const GoodSet& g) {
  switch (g.kind()) {
    case GoodSet::Kind::WholeLanguage:
      return {{"kind", "whole-language"}};
    case GoodSet::Kind::EndsWith:
      return {{"kind", "ends-with"}, {"word", to_string(g.affix())}};
    case GoodSet::Kind::BeginsAndEndsWith:
      return {{"kind", "begins-and-ends-with"}, {"word", to_string(g.affix())}};
    case GoodSet::Kind::Explicit:
      return {{"kind", "explicit"}, {"words", word_texts(g.words())}};
  }
  return {};
}

// Next non-blank line with comments removed.
bool next_line(std::istream& in, std::istringstream& line, int& number) {
  std::string text;
  while (std::getline(in, text)) {
    ++number;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    line.clear();
    line.str(text);
    return true;
  }
  return false;
}

[[noreturn]] void bad_line(int number, const std::string& what) {
  throw ConfigError("line " + std::to_string(number) + ": " + what);
}

void expect_end(std::istringstream& line, int number) {
  std::string extra;
  if (line >> extra) bad_line(number, "unexpected \"" + extra + "\"");
}

std::pair<int, int> header(std::istream& in, const std::string& second, int& number) {
  std::istringstream line;
  if (!next_line(in, line, number)) throw ConfigError("empty file");
  std::string k1, k2;
  int p = 0, r = 0;
  if (!(line >> k1 >> p >> k2 >> r) || k1 != "alphabet" || k2 != second) {
    bad_line(number, "expected \"alphabet <p> " + second + " <n>\"");
  }
  expect_end(line, number);
  if (p < 2 || p > 36) bad_line(number, "alphabet size must lie in 2..36");
  if (r < 1) bad_line(number, second + " must be >= 1");
  return {p, r};
}

std::string exact(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return in;
}

}  // namespace

ShiftConfig parse_shift(const json& j) {
  const std::string where = "shift";
  if (!j.is_object()) throw ConfigError("shift: expected a JSON object");
  const auto kind = field<std::string>(j, "kind", where);
  std::optional<Subshift> x;
  if (kind == "full") {
    x = Subshift::full(field<int>(j, "alphabet", where));
  } else if (kind == "sft") {
    const int p = field<int>(j, "alphabet", where);
    x = Subshift::sft(p, word_list(j, "forbidden", Alphabet(p), where));
  } else if (kind == "beta") {
    x = Subshift::beta(BetaValue(field<std::string>(j, "beta", where)));
  } else if (kind == "sgap") {
    if (!j.contains("gaps")) throw ConfigError("shift: missing \"gaps\"");
    const int symbol = j.contains("gap_symbol") ? field<int>(j, "gap_symbol", where) : 1;
    if (symbol != 0 && symbol != 1) throw ConfigError("shift: gap_symbol must be 0 or 1");
    x = Subshift::sgap(parse_gaps(j.at("gaps")), static_cast<Symbol>(symbol));
  } else {
    throw ConfigError("shift: unknown kind \"" + kind + "\"");
  }
  if (j.contains("alphabet") && field<int>(j, "alphabet", where) != x->alphabet_size()) {
    throw ConfigError("shift: alphabet " + std::to_string(field<int>(j, "alphabet", where)) + " does not match " +
                      x->describe());
  }
  ShiftConfig out{*x, std::nullopt};
  if (j.contains("good_set")) out.good_set = parse_good_set(j.at("good_set"), *x);
  return out;
}

ShiftConfig load_shift(const std::filesystem::path& path) { return parse_shift(read_json(path)); }

json to_json(const Subshift& x) {
  json j{{"alphabet", x.alphabet_size()}};
  switch (x.kind()) {
    case ShiftKind::Full:
      j["kind"] = "full";
      break;
    case ShiftKind::Sft:
      j["kind"] = "sft";
      j["forbidden"] = word_texts(x.forbidden());
      break;
    case ShiftKind::Beta:
      j["kind"] = "beta";
      j["beta"] = x.beta_value().text();
      break;
    case ShiftKind::SGap:
      j["kind"] = "sgap";
      j["gaps"] = gaps_json(x.gaps());
      j["gap_symbol"] = static_cast<int>(x.gap_symbol());
      break;
  }
  return j;
}

json to_json(const ShiftConfig& config) {
  json j = to_json(config.shift);
  if (config.good_set) j["good_set"] = good_set_json(*config.good_set);
  return j;
}

std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

Potential parse_potential(std::istream& in) {
  int number = 0;
  const auto [p, r] = header(in, "depth", number);
  const Alphabet a(p);
  std::map<Word, double> entries;
  std::istringstream line;
  while (next_line(in, line, number)) {
    std::string text, value_text;
    if (!(line >> text >> value_text)) bad_line(number, "expected \"word value\"");
    expect_end(line, number);
    Word w;
    try {
      w = parse_in(text, a);
    } catch (const DomainError& e) {
      bad_line(number, e.what());
    }
    if (static_cast<int>(w.size()) != r) bad_line(number, "word \"" + text + "\" is not of length " + std::to_string(r));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(value_text, &used);
      if (used != value_text.size()) throw std::invalid_argument(value_text);
    } catch (const std::exception&) {
      bad_line(number, "bad value \"" + value_text + "\"");
    }
    if (!std::isfinite(value)) bad_line(number, "value must be finite");
    if (!entries.emplace(w, value).second) bad_line(number, "duplicate word \"" + text + "\"");
  }
  return Potential::from_entries(p, r, {entries.begin(), entries.end()});
}

Potential load_potential(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_potential(in);
}

void write_potential(std::ostream& out, const Potential& phi) {
  const int p = phi.alphabet_size();
  out << "alphabet " << p << " depth " << phi.depth() << "\n";
  for (std::uint64_t i = 0; i < phi.table().size(); ++i) {
    if (!phi.defined(i)) continue;
    out << to_string(word_from_index(i, phi.depth(), p)) << " " << exact(phi.at(i)) << "\n";
  }
}

MarkovMeasure parse_markov(std::istream& in) {
  int number = 0;
  const auto [p, m] = header(in, "memory", number);
  const Alphabet a(p);
  const auto P = static_cast<std::uint64_t>(p);
  std::istringstream line;
  if (!next_line(in, line, number)) throw ConfigError("missing states line");
  std::string key;
  line >> key;
  if (key != "states") bad_line(number, "expected \"states ...\"");
  std::vector<std::uint64_t> states;
  std::string text;
  auto state_of = [&](const std::string& t) {
    Word w;
    try {
      w = parse_in(t, a);
    } catch (const DomainError& e) {
      bad_line(number, e.what());
    }
    if (static_cast<int>(w.size()) != m) bad_line(number, "state \"" + t + "\" is not of length " + std::to_string(m));
    return word_index(w, p);
  };
  while (line >> text) states.push_back(state_of(text));
  if (states.empty()) bad_line(number, "no states listed");
  std::vector<double> T(ipow(P, m) * P, 0.0);
  std::optional<std::vector<double>> pi;
  while (next_line(in, line, number)) {
    std::string first;
    line >> first;
    if (first == "stationary") {
      std::vector<double> listed;
      double v = 0.0;
      while (line >> v) listed.push_back(v);
      if (!line.eof()) bad_line(number, "bad stationary value");
      if (listed.size() != states.size()) bad_line(number, "stationary vector must list every state");
      pi = std::vector<double>(ipow(P, m), 0.0);
      for (std::size_t i = 0; i < states.size(); ++i) (*pi)[states[i]] = listed[i];
      continue;
    }
    const std::uint64_t s = state_of(first);
    if (std::find(states.begin(), states.end(), s) == states.end()) bad_line(number, "state \"" + first + "\" not listed");
    std::string symbol;
    double prob = 0.0;
    if (!(line >> symbol >> prob)) bad_line(number, "expected \"state symbol probability\"");
    expect_end(line, number);
    Word b;
    try {
      b = parse_in(symbol, a);
    } catch (const DomainError& e) {
      bad_line(number, e.what());
    }
    if (b.size() != 1) bad_line(number, "symbol must be a single character");
    if (!(prob >= 0.0 && prob <= 1.0)) bad_line(number, "probability outside [0, 1]");
    T[s * P + b[0]] = prob;
  }
  return MarkovMeasure(p, m, std::move(T), std::move(pi));
}

MarkovMeasure load_markov(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_markov(in);
}

void write_markov(std::ostream& out, const MarkovMeasure& mu) {
  const int p = mu.alphabet_size();
  const int m = mu.memory();
  std::vector<std::uint64_t> states;
  for (std::uint64_t s = 0; s < mu.state_count(); ++s) {
    for (int a = 0; a < p; ++a) {
      if (mu.transition(s, static_cast<Symbol>(a)) > 0.0) {
        states.push_back(s);
        break;
      }
    }
  }
  out << "alphabet " << p << " memory " << m << "\nstates";
  for (auto s : states) out << " " << to_string(word_from_index(s, m, p));
  out << "\n";
  for (auto s : states) {
    for (int a = 0; a < p; ++a) {
      const double v = mu.transition(s, static_cast<Symbol>(a));
      if (v > 0.0) out << to_string(word_from_index(s, m, p)) << " " << to_string(Word{static_cast<Symbol>(a)}) << " " << exact(v) << "\n";
    }
  }
  out << "stationary";
  for (auto s : states) out << " " << exact(mu.stationary()[s]);
  out << "\n";
}

Itinerary parse_itinerary(const json& j, const Subshift& x, const std::filesystem::path& base) {
  const std::string where = "itinerary";
  if (!j.is_object() || !j.contains("measures") || !j.at("measures").is_array()) {
    throw ConfigError("itinerary: expected {\"measures\": [...]}");
  }
  Itinerary it;
  for (const json& entry : j.at("measures")) {
    if (entry.contains("bernoulli")) {
      it.measures.emplace_back(MarkovMeasure::bernoulli(field<std::vector<double>>(entry, "bernoulli", where)));
    } else if (entry.contains("markov")) {
      it.measures.emplace_back(load_markov(base / field<std::string>(entry, "markov", where)));
    } else if (entry.contains("parry")) {
      if (!x.is_sft()) throw ConfigError("itinerary: parry needs an SFT shift");
      it.measures.emplace_back(transfer(x, Potential::constant(x.alphabet_size(), 0.0)).equilibrium);
    } else {
      throw ConfigError("itinerary: each measure needs bernoulli, markov or parry");
    }
  }
  if (j.contains("chain_bound")) it.chain_bound = field<double>(j, "chain_bound", where);
  return it;
}

Itinerary load_itinerary(const std::filesystem::path& path, const Subshift& x) {
  return parse_itinerary(read_json(path), x, path.parent_path());
}

json read_json(const std::filesystem::path& path) {
  auto in = open(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace symdyn::io
