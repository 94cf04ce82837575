#include "symdyn/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <variant>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

constexpr int kLenShift = 58;
constexpr std::uint64_t kCodeMask = (std::uint64_t{1} << kLenShift) - 1;
constexpr std::uint64_t kMaxSftStates = std::uint64_t{1} << 24;

struct FullData {};

struct SftData {
  std::vector<Word> forbidden;
  int memory = 1;
  std::uint64_t states = 0;  // p^memory
  std::vector<bool> window_ok;  // words of length memory+1 with no forbidden subword
  std::vector<bool> live;       // words of length memory with an infinite future
  std::vector<std::vector<bool>> live_prefix;  // by length < memory
};

struct BetaData {
  BetaValue value;
  BetaExpansion expansion;
};

struct GapData {
  GapSet gaps;
  Symbol gap_symbol;
};

bool has_forbidden_subword(WordView w, const std::vector<Word>& forbidden) {
  for (const Word& f : forbidden) {
    if (f.size() > w.size()) continue;
    auto it = std::search(w.begin(), w.end(), f.begin(), f.end());
    if (it != w.end()) return true;
  }
  return false;
}

}  // namespace

struct Subshift::Impl {
  ShiftKind kind;
  Alphabet alphabet;
  std::variant<FullData, SftData, BetaData, GapData> data;
};

Subshift::Subshift(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Subshift Subshift::full(int p) {
  return Subshift(std::make_shared<const Impl>(
      Impl{ShiftKind::Full, Alphabet(p), FullData{}}));
}

Subshift Subshift::sft(int p, std::vector<Word> forbidden) {
  Alphabet alphabet(p);
  for (const Word& f : forbidden) {
    if (f.empty()) throw DomainError("forbidden words must be non-empty");
    require_in_alphabet(f, alphabet);
  }
  std::sort(forbidden.begin(), forbidden.end(), ShortLex{});
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()),
                  forbidden.end());

  SftData d;
  std::size_t longest = 1;
  for (const Word& f : forbidden) longest = std::max(longest, f.size());
  d.memory = std::max<int>(1, static_cast<int>(longest) - 1);
  d.states = ipow(static_cast<std::uint64_t>(p), d.memory);
  if (d.states * static_cast<std::uint64_t>(p) > kMaxSftStates) {
    throw ResourceError("SFT state table",
                        "forbidden words too long for a dense presentation");
  }
  const std::uint64_t windows = d.states * static_cast<std::uint64_t>(p);
  d.window_ok.resize(windows);
  for (std::uint64_t c = 0; c < windows; ++c) {
    d.window_ok[c] =
        !has_forbidden_subword(word_from_index(c, d.memory + 1, p), forbidden);
  }
  std::vector<bool> allowed(d.states);
  for (std::uint64_t c = 0; c < d.states; ++c) {
    allowed[c] =
        !has_forbidden_subword(word_from_index(c, d.memory, p), forbidden);
  }
  d.live = allowed;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint64_t u = 0; u < d.states; ++u) {
      if (!d.live[u]) continue;
      bool has_successor = false;
      for (int a = 0; a < p && !has_successor; ++a) {
        const std::uint64_t w = u * static_cast<std::uint64_t>(p) + a;
        has_successor = d.window_ok[w] && d.live[w % d.states];
      }
      if (!has_successor) {
        d.live[u] = false;
        changed = true;
      }
    }
  }
  if (std::none_of(d.live.begin(), d.live.end(), [](bool b) { return b; })) {
    throw DomainError("SFT has an empty language");
  }
  d.live_prefix.resize(static_cast<std::size_t>(d.memory));
  for (int len = 0; len < d.memory; ++len) {
    const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), len);
    const std::uint64_t block = d.states / count;
    auto& table = d.live_prefix[static_cast<std::size_t>(len)];
    table.assign(count, false);
    for (std::uint64_t u = 0; u < d.states; ++u) {
      if (d.live[u]) table[u / block] = true;
    }
  }
  d.forbidden = std::move(forbidden);
  return Subshift(std::make_shared<const Impl>(
      Impl{ShiftKind::Sft, alphabet, std::move(d)}));
}

Subshift Subshift::beta(const BetaValue& beta, const BetaOptions& options) {
  BetaData d{beta, beta_expansion(beta, options.depth, options)};
  return Subshift(std::make_shared<const Impl>(
      Impl{ShiftKind::Beta, Alphabet(beta.digit_count()), std::move(d)}));
}

Subshift Subshift::sgap(GapSet gaps, Symbol gap_symbol) {
  if (gap_symbol > 1) throw DomainError("S-gap gap symbol must be 0 or 1");
  return Subshift(std::make_shared<const Impl>(
      Impl{ShiftKind::SGap, Alphabet(2), GapData{std::move(gaps), gap_symbol}}));
}

ShiftKind Subshift::kind() const noexcept { return impl_->kind; }
const Alphabet& Subshift::alphabet() const noexcept { return impl_->alphabet; }

bool Subshift::contains(WordView w) const {
  require_in_alphabet(w, impl_->alphabet);
  const int p = alphabet_size();
  switch (impl_->kind) {
    case ShiftKind::Full:
      return true;
    case ShiftKind::Sft: {
      const auto& d = std::get<SftData>(impl_->data);
      if (has_forbidden_subword(w, d.forbidden)) return false;
      const auto m = static_cast<std::size_t>(d.memory);
      if (w.size() >= m) return d.live[word_index(w.last(m), p)];
      return d.live_prefix[w.size()][word_index(w, p)];
    }
    case ShiftKind::Beta: {
      const auto& e = std::get<BetaData>(impl_->data).expansion;
      for (std::size_t j = 0; j < w.size(); ++j) {
        for (std::size_t i = j; i < w.size(); ++i) {
          const Symbol a = e.quasi_digit(i - j);
          if (w[i] < a) break;
          if (w[i] > a) return false;
        }
      }
      return true;
    }
    case ShiftKind::SGap: {
      const auto& d = std::get<GapData>(impl_->data);
      const Symbol marker = static_cast<Symbol>(1 - d.gap_symbol);
      std::vector<std::size_t> marks;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == marker) marks.push_back(i);
      }
      if (marks.empty()) {
        return w.empty() || d.gaps.has_element_at_least(static_cast<int>(w.size()));
      }
      const int lead = static_cast<int>(marks.front());
      const int trail = static_cast<int>(w.size() - 1 - marks.back());
      if (!d.gaps.has_element_at_least(lead) ||
          !d.gaps.has_element_at_least(trail)) {
        return false;
      }
      for (std::size_t k = 1; k < marks.size(); ++k) {
        if (!d.gaps.contains(static_cast<int>(marks[k] - marks[k - 1] - 1))) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

Subshift::State Subshift::initial_state() const noexcept { return 0; }

std::optional<Subshift::State> Subshift::step(State s, Symbol a) const {
  if (!impl_->alphabet.contains(a)) {
    throw DomainError("symbol outside alphabet");
  }
  const auto p = static_cast<std::uint64_t>(alphabet_size());
  switch (impl_->kind) {
    case ShiftKind::Full:
      return State{0};
    case ShiftKind::Sft: {
      const auto& d = std::get<SftData>(impl_->data);
      const auto len = static_cast<int>(s >> kLenShift);
      const std::uint64_t code = s & kCodeMask;
      const std::uint64_t next = code * p + a;
      if (len < d.memory) {
        const int nlen = len + 1;
        if (nlen < d.memory) {
          if (!d.live_prefix[static_cast<std::size_t>(nlen)][next]) return std::nullopt;
        } else if (!d.live[next]) {
          return std::nullopt;
        }
        return (static_cast<std::uint64_t>(nlen) << kLenShift) | next;
      }
      if (!d.window_ok[next]) return std::nullopt;
      const std::uint64_t ncode = next % d.states;
      if (!d.live[ncode]) return std::nullopt;
      return (static_cast<std::uint64_t>(len) << kLenShift) | ncode;
    }
    case ShiftKind::Beta: {
      const auto& e = std::get<BetaData>(impl_->data).expansion;
      const Symbol digit = e.quasi_digit(s);
      if (a > digit) return std::nullopt;
      if (a < digit) return State{0};
      State next = s + 1;
      if (e.period && next == e.period->size()) next = 0;
      return next;
    }
    case ShiftKind::SGap: {
      const auto& d = std::get<GapData>(impl_->data);
      const bool seen = (s >> 32) != 0;
      const auto run = static_cast<int>(s & 0xffffffffu);
      if (a == d.gap_symbol) {
        if (!d.gaps.has_element_at_least(run + 1)) return std::nullopt;
        return (s & ~std::uint64_t{0xffffffffu}) | static_cast<std::uint64_t>(run + 1);
      }
      if (seen && !d.gaps.contains(run)) return std::nullopt;
      return std::uint64_t{1} << 32;
    }
  }
  return std::nullopt;
}

std::uint64_t Subshift::language_size(int n) const {
  if (n < 0) throw DomainError("word length must be non-negative");
  std::map<State, std::uint64_t> layer{{initial_state(), 1}};
  for (int k = 0; k < n; ++k) {
    std::map<State, std::uint64_t> next;
    for (const auto& [s, count] : layer) {
      for (int a = 0; a < alphabet_size(); ++a) {
        if (auto t = step(s, static_cast<Symbol>(a))) {
          std::uint64_t& slot = next[*t];
          if (__builtin_add_overflow(slot, count, &slot)) {
            throw ResourceError("64-bit word count",
                                "|L_" + std::to_string(n) + "| overflows");
          }
        }
      }
    }
    layer = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [s, count] : layer) {
    if (__builtin_add_overflow(total, count, &total)) {
      throw ResourceError("64-bit word count",
                          "|L_" + std::to_string(n) + "| overflows");
    }
  }
  return total;
}

double Subshift::log_language_size(int n) const {
  if (n < 0) throw DomainError("word length must be non-negative");
  std::map<State, double> layer{{initial_state(), 1.0}};
  double log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    std::map<State, double> next;
    for (const auto& [s, count] : layer) {
      for (int a = 0; a < alphabet_size(); ++a) {
        if (auto t = step(s, static_cast<Symbol>(a))) next[*t] += count;
      }
    }
    double biggest = 0.0;
    for (const auto& [s, c] : next) biggest = std::max(biggest, c);
    for (auto& [s, c] : next) c /= biggest;
    log_scale += std::log(biggest);
    layer = std::move(next);
  }
  double total = 0.0;
  for (const auto& [s, c] : layer) total += c;
  return log_scale + std::log(total);
}

std::vector<Word> Subshift::language(int n, std::size_t budget) const {
  if (n < 0) throw DomainError("word length must be non-negative");
  const double log_size = log_language_size(n);
  if (log_size > std::log(static_cast<double>(budget)) + 1e-9 ||
      language_size(n) > budget) {
    throw ResourceError("enumeration budget " + std::to_string(budget),
                        "L_" + std::to_string(n) + " of " + describe() +
                            " is too large to enumerate");
  }
  std::vector<Word> out;
  Word current;
  std::vector<State> states{initial_state()};
  // Iterative depth-first search in lexicographic order.
  std::vector<int> next_symbol{0};
  if (n == 0) return {Word{}};
  while (!next_symbol.empty()) {
    int& a = next_symbol.back();
    if (a >= alphabet_size()) {
      next_symbol.pop_back();
      states.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const Symbol sym = static_cast<Symbol>(a++);
    auto t = step(states.back(), sym);
    if (!t) continue;
    current.push_back(sym);
    if (static_cast<int>(current.size()) == n) {
      out.push_back(current);
      current.pop_back();
      continue;
    }
    states.push_back(*t);
    next_symbol.push_back(0);
  }
  return out;
}

const std::vector<Word>& Subshift::forbidden() const {
  static const std::vector<Word> none;
  if (kind() == ShiftKind::Full) return none;
  if (kind() != ShiftKind::Sft) throw DomainError("forbidden(): not an SFT");
  return std::get<SftData>(impl_->data).forbidden;
}

int Subshift::memory() const {
  if (kind() == ShiftKind::Full) return 1;
  if (kind() != ShiftKind::Sft) throw DomainError("memory(): not an SFT");
  return std::get<SftData>(impl_->data).memory;
}

const BetaValue& Subshift::beta_value() const {
  if (kind() != ShiftKind::Beta) throw DomainError("not a beta-shift");
  return std::get<BetaData>(impl_->data).value;
}

const BetaExpansion& Subshift::expansion() const {
  if (kind() != ShiftKind::Beta) throw DomainError("not a beta-shift");
  return std::get<BetaData>(impl_->data).expansion;
}

const GapSet& Subshift::gaps() const {
  if (kind() != ShiftKind::SGap) throw DomainError("not an S-gap shift");
  return std::get<GapData>(impl_->data).gaps;
}

Symbol Subshift::gap_symbol() const {
  if (kind() != ShiftKind::SGap) throw DomainError("not an S-gap shift");
  return std::get<GapData>(impl_->data).gap_symbol;
}

std::string Subshift::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case ShiftKind::Full:
      os << "full(p=" << alphabet_size() << ")";
      break;
    case ShiftKind::Sft: {
      os << "sft(p=" << alphabet_size() << "; forbid";
      for (const Word& f : forbidden()) os << ' ' << to_string(f);
      os << ")";
      break;
    }
    case ShiftKind::Beta:
      os << "beta(" << beta_value().text() << ")";
      break;
    case ShiftKind::SGap: {
      const GapSet& s = gaps();
      os << "sgap(S=";
      switch (s.kind()) {
        case GapSet::Kind::Finite: {
          os << '{';
          for (std::size_t i = 0; i < s.values().size(); ++i) {
            os << (i ? "," : "") << s.values()[i];
          }
          os << '}';
          break;
        }
        case GapSet::Kind::Arithmetic:
          os << s.start() << "+" << s.step() << "N";
          break;
        case GapSet::Kind::Cofinite: {
          os << "N";
          if (!s.values().empty()) {
            os << "\\{";
            for (std::size_t i = 0; i < s.values().size(); ++i) {
              os << (i ? "," : "") << s.values()[i];
            }
            os << '}';
          }
          break;
        }
      }
      os << "; gap=" << int(gap_symbol()) << ")";
      break;
    }
  }
  return os.str();
}

Subshift inner_sft_approximation(const Subshift& x, int m) {
  if (m < 1) throw DomainError("inner_sft_approximation needs m >= 1");
  switch (x.kind()) {
    case ShiftKind::Full:
    case ShiftKind::Sft:
      return x;
    case ShiftKind::Beta: {
      const BetaExpansion& e = x.expansion();
      Word reference;
      if (e.period) {
        // Finite expansion of 1: the exact shift once m covers it.
        if (static_cast<std::size_t>(m) >= e.period->size()) reference = *e.period;
      }
      if (reference.empty()) {
        if (static_cast<std::size_t>(m) > e.greedy.size()) {
          throw ResourceError("beta expansion depth",
                              "approximation level exceeds computed digits");
        }
        reference.assign(e.greedy.begin(), e.greedy.begin() + m);
        while (reference.back() == 0) reference.pop_back();
        reference.back() = static_cast<Symbol>(reference.back() - 1);
      }
      // x avoids these words iff every shift of x is <= reference^infinity.
      std::vector<Word> forbidden;
      for (std::size_t k = 0; k < reference.size(); ++k) {
        for (int a = reference[k] + 1; a < x.alphabet_size(); ++a) {
          Word f(reference.begin(), reference.begin() + static_cast<long>(k));
          f.push_back(static_cast<Symbol>(a));
          forbidden.push_back(std::move(f));
        }
      }
      return Subshift::sft(x.alphabet_size(), std::move(forbidden));
    }
    case ShiftKind::SGap: {
      const std::vector<int> allowed = x.gaps().elements_up_to(m);
      if (allowed.empty()) {
        throw DomainError("no admissible gap length <= " + std::to_string(m));
      }
      const Symbol g = x.gap_symbol();
      const Symbol marker = static_cast<Symbol>(1 - g);
      const int top = allowed.back();
      std::vector<Word> forbidden;
      forbidden.push_back(Word(static_cast<std::size_t>(top + 1), g));
      for (int k = 0; k < top; ++k) {
        if (std::binary_search(allowed.begin(), allowed.end(), k)) continue;
        Word f{marker};
        f.insert(f.end(), static_cast<std::size_t>(k), g);
        f.push_back(marker);
        forbidden.push_back(std::move(f));
      }
      return Subshift::sft(2, std::move(forbidden));
    }
  }
  return x;
}

}  // namespace symdyn
