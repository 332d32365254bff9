#pragma once

// Evaluation of learned SRs against a manually sense-tagged test sample:
// coverage, abstraction ratio, and precision/recall on word sense selection
// (WSS), plus the uniform guessing baseline and threshold sweeps.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "selres/corpus.hpp"
#include "selres/error.hpp"
#include "selres/learner.hpp"
#include "selres/random.hpp"
#include "selres/taxonomy.hpp"
#include "selres/text.hpp"

namespace selres {

struct GoldTriple {
  Context context;
  std::string noun;
  ClassId gold{};
};

// Checks the gold sense belongs to the noun. `line` only feeds the message.
inline GoldTriple make_gold(Context ctx, std::string noun, std::string_view gold_class,
                            const Taxonomy& t, std::size_t line = 0) {
  const auto* senses = t.find_senses(noun);
  if (senses == nullptr) throw DataError("gold noun not in taxonomy: " + noun, line);
  const auto gold = t.find(gold_class);
  if (!gold) throw DataError("gold sense names unknown class '" + std::string(gold_class) + "'", line);
  if (std::find(senses->begin(), senses->end(), *gold) == senses->end()) {
    throw DataError("'" + std::string(gold_class) + "' is not a sense of '" + noun + "'", line);
  }
  return GoldTriple{std::move(ctx), std::move(noun), *gold};
}

// Gold file: <verb> <relation> <noun> <gold-class> per line.
inline std::vector<GoldTriple> load_gold(std::istream& in, const Taxonomy& t) {
  std::vector<GoldTriple> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::strip_comment(raw);
    if (line.empty()) continue;
    const auto f = text::fields(line);
    if (f.size() != 4) throw DataError("expected '<verb> <relation> <noun> <gold-class>'", line_no);
    out.push_back(make_gold(Context{std::string(f[0]), std::string(f[1])}, std::string(f[2]), f[3], t,
                            line_no));
  }
  return out;
}

// Result of WSS on one triple; nullopt chosen means undecided.
struct WssOutcome {
  std::optional<ClassId> chosen;
  bool matched = false;

  bool decided() const noexcept { return chosen.has_value(); }
};

// Picks the noun sense lying under the highest-scored SR of the triple's own
// context. Senses under equally top-scored SRs are pooled, ordered by class
// id text, and one is drawn uniformly from `rng`. Undecided when no SR of the
// context subsumes any sense.
inline WssOutcome wss_select(const GoldTriple& g, const RestrictionSet& srs, const Taxonomy& t,
                             SeededStream& rng) {
  const auto& senses = t.sense_classes(g.noun);
  std::optional<double> best;
  std::vector<ClassId> pool;
  for (const auto& sr : srs.lookup(g.context)) {
    for (ClassId k : senses) {
      if (!t.subsumes(sr.cls, k)) continue;
      if (!best || sr.score > *best) {
        best = sr.score;
        pool.clear();
      }
      if (sr.score == *best && std::find(pool.begin(), pool.end(), k) == pool.end()) {
        pool.push_back(k);
      }
    }
  }
  if (pool.empty()) return {};
  std::sort(pool.begin(), pool.end(), [&](ClassId a, ClassId b) { return t.name(a) < t.name(b); });
  const ClassId chosen = pool[rng.uniform_index(pool.size())];
  return {chosen, chosen == g.gold};
}

struct EvaluationReport {
  std::uint64_t total = 0;
  std::uint64_t decided = 0;
  std::uint64_t matched = 0;
  std::uint64_t covered = 0;          // triples whose gold sense lies under some SR
  std::uint64_t covered_senses = 0;   // noun senses lying under some SR, summed over triples
  std::uint64_t correct_covered = 0;  // of those, the gold senses

  static double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  }
  double coverage() const { return ratio(covered, total); }
  double abstraction() const { return ratio(correct_covered, covered_senses); }
  double precision() const { return ratio(matched, decided); }
  double recall() const { return ratio(matched, total); }

  bool operator==(const EvaluationReport&) const = default;
};

inline EvaluationReport evaluate(const std::vector<GoldTriple>& test, const RestrictionSet& srs,
                                 const Taxonomy& t, std::uint64_t seed) {
  EvaluationReport r;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto& g = test[i];
    const auto& senses = t.sense_classes(g.noun);
    const auto rules = srs.lookup(g.context);
    auto under_sr = [&](ClassId k) {
      return std::any_of(rules.begin(), rules.end(),
                         [&](const SelectionalRestriction& sr) { return t.subsumes(sr.cls, k); });
    };
    ++r.total;
    for (ClassId k : senses) {
      if (!under_sr(k)) continue;
      ++r.covered_senses;
      if (k == g.gold) {
        ++r.correct_covered;
        ++r.covered;
      }
    }
    SeededStream rng(seed, i);
    const auto outcome = wss_select(g, srs, t, rng);
    if (outcome.decided()) {
      ++r.decided;
      if (outcome.matched) ++r.matched;
    }
  }
  return r;
}

// Uniform random sense per triple; always decided, so precision == recall.
inline EvaluationReport guessing_baseline(const std::vector<GoldTriple>& test, const Taxonomy& t,
                                          std::uint64_t seed) {
  EvaluationReport r;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto& senses = t.sense_classes(test[i].noun);
    SeededStream rng(seed, i);
    const ClassId chosen = senses[rng.uniform_index(senses.size())];
    ++r.total;
    ++r.decided;
    if (chosen == test[i].gold) ++r.matched;
  }
  return r;
}

struct SweepRow {
  std::uint64_t threshold = 0;
  EvaluationReport report;
};

// Re-learns and evaluates at every threshold in [lo, hi].
inline std::vector<SweepRow> threshold_sweep(const EstimationModel& model,
                                             const std::vector<GoldTriple>& test, LearnConfig cfg,
                                             std::uint64_t lo, std::uint64_t hi, std::uint64_t seed) {
  if (lo < 1 || lo > hi) throw ConfigError("threshold range must satisfy 1 <= from <= to");
  std::vector<SweepRow> rows;
  for (std::uint64_t th = lo; th <= hi; ++th) {
    cfg.threshold = th;
    rows.push_back({th, evaluate(test, learn_restrictions(model, cfg), model.taxonomy(), seed)});
  }
  return rows;
}

}  // namespace selres
