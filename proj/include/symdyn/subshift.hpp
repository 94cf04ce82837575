#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/beta_expansion.hpp"
#include "symdyn/gap_set.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

enum class ShiftKind { Full, Sft, Beta, SGap };

/// Default cap on the number of words a single enumeration may produce.
inline constexpr std::size_t kDefaultBudget = 2'000'000;

/// A one-sided subshift over {0..p-1}, given by its language.
///
/// Values are immutable and cheap to copy. Besides the membership test each
/// kind exposes a deterministic right-resolving presentation (initial_state /
/// step): every word of the language labels exactly one path from the
/// initial state, and the follower set of a word depends only on the state it
/// reaches. Enumeration and weighted counting run on that presentation,
/// `contains` implements the defining rule directly.
class Subshift {
 public:
  using State = std::uint64_t;

  static Subshift full(int p);
  /// Sequences avoiding every word in `forbidden`.
  static Subshift sft(int p, std::vector<Word> forbidden);
  static Subshift beta(const BetaValue& beta, const BetaOptions& options = {});
  /// Binary S-gap shift: maximal runs of `gap_symbol` between consecutive
  /// occurrences of the other symbol have lengths in S; a leading or trailing
  /// run of length a is allowed iff S is unbounded or max S >= a.
  static Subshift sgap(GapSet gaps, Symbol gap_symbol = 1);

  ShiftKind kind() const noexcept;
  const Alphabet& alphabet() const noexcept;
  int alphabet_size() const noexcept { return alphabet().size(); }
  bool is_sft() const noexcept {
    return kind() == ShiftKind::Full || kind() == ShiftKind::Sft;
  }

  /// w in L(X). Throws DomainError for symbols outside the alphabet.
  bool contains(WordView w) const;

  /// L_n(X) in lexicographic order. Throws ResourceError when |L_n| > budget.
  std::vector<Word> language(int n, std::size_t budget = kDefaultBudget) const;
  /// |L_n(X)| by dynamic programming over the presentation.
  std::uint64_t language_size(int n) const;
  /// log |L_n(X)|, without overflow for large n.
  double log_language_size(int n) const;

  State initial_state() const noexcept;
  std::optional<State> step(State s, Symbol a) const;

  // Kind-specific parameters.
  /// Sorted (short-lex), duplicate-free forbidden list; empty for Full.
  const std::vector<Word>& forbidden() const;
  /// Step length of an SFT presentation: max(1, longest forbidden word - 1).
  int memory() const;
  const BetaValue& beta_value() const;
  const BetaExpansion& expansion() const;
  const GapSet& gaps() const;
  Symbol gap_symbol() const;

  std::string describe() const;

 private:
  struct Impl;
  explicit Subshift(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// SFT inside X whose languages increase with m:
///  - Full and Sft: X itself;
///  - Beta: sequences dominated by the periodic word built from the first m
///    greedy digits (the exact shift once m covers a finite expansion);
///  - SGap: gaps restricted to S intersected with [0, m].
Subshift inner_sft_approximation(const Subshift& x, int m);

}  // namespace symdyn
