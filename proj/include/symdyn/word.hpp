#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

using Symbol = std::uint8_t;

/// A finite word over {0, ..., p-1}. Words are plain vectors so that the
/// standard comparison operators give lexicographic order within a length.
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

/// Alphabet {0, ..., p-1} with p >= 2.
class Alphabet {
 public:
  explicit Alphabet(int size);

  int size() const noexcept { return size_; }
  bool contains(Symbol s) const noexcept { return s < size_; }
  bool operator==(const Alphabet&) const = default;

 private:
  int size_;
};

/// Parses "0110" style text; digits then lower-case letters (base 36).
Word parse_word(std::string_view text);
std::string to_string(WordView w);

/// Throws DomainError if some symbol is outside the alphabet.
void require_in_alphabet(WordView w, const Alphabet& alphabet);

enum class LexOrder { Less, EqualPrefix, Greater };

/// Lexicographic comparison on the common length; EqualPrefix when one word
/// is a prefix of the other.
LexOrder lex_compare(WordView u, WordView v) noexcept;

/// Length of the longest common prefix |u ^ v|.
std::size_t common_prefix_length(WordView u, WordView v) noexcept;

Word concat(WordView u, WordView v);

/// Length-then-lexicographic order, the canonical order of A^*.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Index of w among words of its length in base-p order (first symbol most
/// significant).
std::uint64_t word_index(WordView w, int p) noexcept;
Word word_from_index(std::uint64_t index, int length, int p);
std::uint64_t ipow(std::uint64_t base, int exp);

}  // namespace symdyn
