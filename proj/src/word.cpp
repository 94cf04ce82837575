#include "symdyn/word.hpp"

#include <algorithm>
#include <limits>

#include "symdyn/error.hpp"

namespace symdyn {

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 2 || size > 36) {
    throw DomainError("alphabet size must lie in [2, 36], got " +
                      std::to_string(size));
  }
}

Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      w.push_back(static_cast<Symbol>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      w.push_back(static_cast<Symbol>(10 + c - 'a'));
    } else {
      throw DomainError(std::string("invalid symbol character '") + c + "'");
    }
  }
  return w;
}

std::string to_string(WordView w) {
  std::string s;
  s.reserve(w.size());
  for (Symbol a : w) {
    s.push_back(a < 10 ? static_cast<char>('0' + a)
                       : static_cast<char>('a' + (a - 10)));
  }
  return s;
}

void require_in_alphabet(WordView w, const Alphabet& alphabet) {
  for (Symbol a : w) {
    if (!alphabet.contains(a)) {
      throw DomainError("symbol " + std::to_string(int(a)) +
                        " outside alphabet of size " +
                        std::to_string(alphabet.size()));
    }
  }
}

LexOrder lex_compare(WordView u, WordView v) noexcept {
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] < v[i]) return LexOrder::Less;
    if (u[i] > v[i]) return LexOrder::Greater;
  }
  return LexOrder::EqualPrefix;
}

std::size_t common_prefix_length(WordView u, WordView v) noexcept {
  const std::size_t n = std::min(u.size(), v.size());
  std::size_t i = 0;
  while (i < n && u[i] == v[i]) ++i;
  return i;
}

Word concat(WordView u, WordView v) {
  Word w(u.begin(), u.end());
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

std::uint64_t word_index(WordView w, int p) noexcept {
  std::uint64_t idx = 0;
  for (Symbol a : w) idx = idx * static_cast<std::uint64_t>(p) + a;
  return idx;
}

Word word_from_index(std::uint64_t index, int length, int p) {
  Word w(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<Symbol>(index % p);
    index /= static_cast<std::uint64_t>(p);
  }
  return w;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw ResourceError("64-bit word index",
                          "p^" + std::to_string(exp) + " overflows");
    }
    r *= base;
  }
  return r;
}

}  // namespace symdyn
