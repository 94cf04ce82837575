#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "symdyn/good_set.hpp"
#include "symdyn/measure.hpp"
#include "symdyn/moran.hpp"
#include "symdyn/potential.hpp"
#include "symdyn/subshift.hpp"

namespace symdyn::io {

using nlohmann::json;

/// A shift definition with the optional good set F used for gluing.
///
///   {"kind": "full", "alphabet": 3}
///   {"kind": "sft", "alphabet": 2, "forbidden": ["11"]}
///   {"kind": "beta", "beta": "golden"}
///   {"kind": "sgap", "gaps": {"finite": [0, 1]}, "gap_symbol": 1}
///   ... "good_set": {"kind": "ends-with", "word": "0"}
///
/// "gaps" also accepts {"arithmetic": {"start": a, "step": s}} and
/// {"cofinite": [excluded...]}. Good-set kinds: whole-language, ends-with,
/// begins-and-ends-with (with "word") and explicit (with "words").
struct ShiftConfig {
  Subshift shift;
  std::optional<GoodSet> good_set;
};

ShiftConfig parse_shift(const json& j);
ShiftConfig load_shift(const std::filesystem::path& path);

/// Canonical form: every key present, sorted keys, words in short-lex order.
json to_json(const Subshift& x);
json to_json(const ShiftConfig& config);
std::string canonical_text(const json& j);

/// "alphabet p depth r" followed by "word value" lines; '#' starts a comment.
/// Words not listed are undefined.
Potential parse_potential(std::istream& in);
Potential load_potential(const std::filesystem::path& path);
void write_potential(std::ostream& out, const Potential& phi);

/// "alphabet p memory m", "states w1 w2 ...", then "state symbol probability"
/// triplets and an optional "stationary v1 v2 ..." line in the order of the
/// states line. Unlisted states are never visited.
MarkovMeasure parse_markov(std::istream& in);
MarkovMeasure load_markov(const std::filesystem::path& path);
void write_markov(std::ostream& out, const MarkovMeasure& mu);

/// {"measures": [...], "chain_bound": b}. Each entry is one of
/// {"bernoulli": [p0, p1, ...]}, {"markov": "file"} (relative to the
/// itinerary file) or {"parry": true} (maximal-entropy measure of the SFT).
Itinerary parse_itinerary(const json& j, const Subshift& x, const std::filesystem::path& base = {});
Itinerary load_itinerary(const std::filesystem::path& path, const Subshift& x);

json read_json(const std::filesystem::path& path);

}  // namespace symdyn::io
