#include "symdyn/good_set.hpp"

#include <algorithm>

#include "symdyn/error.hpp"

namespace symdyn {

GoodSet::GoodSet(Kind kind, Subshift host, Word affix, std::vector<Word> words)
    : kind_(kind), host_(std::move(host)), affix_(std::move(affix)), words_(std::move(words)) {
  require_in_alphabet(affix_, host_.alphabet());
}

GoodSet GoodSet::whole_language(Subshift host) {
  return GoodSet(Kind::WholeLanguage, std::move(host), {}, {});
}

GoodSet GoodSet::ends_with(Subshift host, Word suffix) {
  return GoodSet(Kind::EndsWith, std::move(host), std::move(suffix), {});
}

GoodSet GoodSet::begins_and_ends_with(Subshift host, Word affix) {
  return GoodSet(Kind::BeginsAndEndsWith, std::move(host), std::move(affix), {});
}

GoodSet GoodSet::explicit_list(Subshift host, std::vector<Word> words) {
  for (const Word& w : words) {
    if (!host.contains(w)) {
      throw DomainError("good word '" + to_string(w) + "' is not in the language");
    }
  }
  std::sort(words.begin(), words.end(), ShortLex{});
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return GoodSet(Kind::Explicit, std::move(host), {}, std::move(words));
}

bool GoodSet::contains(WordView w) const {
  if (!host_.contains(w)) return false;
  switch (kind_) {
    case Kind::WholeLanguage:
      return true;
    case Kind::EndsWith:
      return w.size() >= affix_.size() &&
             std::equal(affix_.begin(), affix_.end(), w.end() - static_cast<long>(affix_.size()));
    case Kind::BeginsAndEndsWith:
      return w.size() >= affix_.size() && !w.empty() &&
             std::equal(affix_.begin(), affix_.end(), w.begin()) &&
             std::equal(affix_.begin(), affix_.end(), w.end() - static_cast<long>(affix_.size()));
    case Kind::Explicit:
      return std::binary_search(words_.begin(), words_.end(), Word(w.begin(), w.end()), ShortLex{});
  }
  return false;
}

std::vector<Word> GoodSet::members(int n, std::size_t budget) const {
  if (kind_ == Kind::Explicit) {
    std::vector<Word> out;
    for (const Word& w : words_) {
      if (static_cast<int>(w.size()) == n) out.push_back(w);
    }
    return out;
  }
  std::vector<Word> all = host_.language(n, budget);
  if (kind_ == Kind::WholeLanguage) return all;
  std::vector<Word> out;
  for (Word& w : all) {
    if (contains(w)) out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> GoodSet::members_up_to(int n_max, std::size_t budget) const {
  std::vector<Word> out;
  for (int n = 1; n <= n_max; ++n) {
    auto g = members(n, budget);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

std::string GoodSet::describe() const {
  switch (kind_) {
    case Kind::WholeLanguage:
      return "L(" + host_.describe() + ")";
    case Kind::EndsWith:
      return "words of " + host_.describe() + " ending in " + to_string(affix_);
    case Kind::BeginsAndEndsWith:
      return "words of " + host_.describe() + " beginning and ending in " + to_string(affix_);
    case Kind::Explicit:
      return std::to_string(words_.size()) + " listed words of " + host_.describe();
  }
  return {};
}

}  // namespace symdyn
