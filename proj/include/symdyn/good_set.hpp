#pragma once

#include <string>
#include <vector>

#include "symdyn/subshift.hpp"

namespace symdyn {

/// A subset G of L(X) given by a membership rule.
class GoodSet {
 public:
  enum class Kind { WholeLanguage, EndsWith, BeginsAndEndsWith, Explicit };

  static GoodSet whole_language(Subshift host);
  static GoodSet ends_with(Subshift host, Word suffix);
  /// Words that start and end with `affix` (a word shorter than |affix|
  /// never qualifies; a word equal to affix does).
  static GoodSet begins_and_ends_with(Subshift host, Word affix);
  /// Every listed word must lie in L(host).
  static GoodSet explicit_list(Subshift host, std::vector<Word> words);

  Kind kind() const noexcept { return kind_; }
  const Subshift& host() const noexcept { return host_; }
  const Word& affix() const noexcept { return affix_; }
  const std::vector<Word>& words() const noexcept { return words_; }

  bool contains(WordView w) const;
  /// G_n in lexicographic order.
  std::vector<Word> members(int n, std::size_t budget = kDefaultBudget) const;
  /// G_1 .. G_n_max in short-lex order.
  std::vector<Word> members_up_to(int n_max, std::size_t budget = kDefaultBudget) const;
  std::string describe() const;

 private:
  GoodSet(Kind kind, Subshift host, Word affix, std::vector<Word> words);

  Kind kind_;
  Subshift host_;
  Word affix_;
  std::vector<Word> words_;  // sorted short-lex, explicit kind only
};

}  // namespace symdyn
