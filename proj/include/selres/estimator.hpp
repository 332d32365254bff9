#pragma once

// Weighted class frequencies and the probabilities derived from them.
//
// A noun observed f times contributes to class c once per sense of the noun
// that c subsumes. Under GLOBAL weighting every contribution is scaled by the
// corpus-wide constant w = sum(f) / sum(f * |senses(n)|); under LOCAL
// weighting each sense receives f / |senses(n)|. Probabilities divide by the
// weighted mass at the root for the same conditioning event, so p(ROOT|.) = 1.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "selres/corpus.hpp"
#include "selres/error.hpp"
#include "selres/taxonomy.hpp"

namespace selres {

enum class WeightingScheme { Global, Local };

enum class PriorKind {
  Positional,  // p(c|s), mass summed over every verb in relation s
  Heads,       // p(c), mass summed over every complement head
  AllNouns,    // p(c), mass from the unigram table
};

struct ClassMass {
  double weighted = 0.0;
  // Unweighted sense occurrences: sum of f * |dominated senses|.
  std::uint64_t sense_occurrences = 0;
};

// Per-class masses for one conditioning event. Only classes subsuming some
// observed sense are stored; everything else has zero mass.
class MassTable {
 public:
  const ClassMass& at(ClassId c) const {
    static const ClassMass kZero{};
    const auto it = masses_.find(c);
    return it == masses_.end() ? kZero : it->second;
  }

  double weighted(ClassId c) const { return at(c).weighted; }
  std::uint64_t sense_occurrences(ClassId c) const { return at(c).sense_occurrences; }
  const std::map<ClassId, ClassMass>& entries() const noexcept { return masses_; }

  // Accumulates nouns with their counts. `global_w` is ignored under LOCAL.
  static MassTable build(const std::map<std::string, std::uint64_t, std::less<>>& nouns,
                         const Taxonomy& taxonomy, WeightingScheme scheme, double global_w) {
    MassTable table;
    for (const auto& [noun, count] : nouns) {
      const auto* senses = taxonomy.find_senses(noun);
      if (senses == nullptr) continue;
      const double share = 1.0 / static_cast<double>(senses->size());
      // Dominated-sense multiplicity per class, accumulated over the senses.
      std::map<ClassId, std::uint64_t> dominated;
      for (ClassId k : *senses) {
        for (ClassId a : taxonomy.ancestors(k)) ++dominated[a];
      }
      for (const auto& [c, mult] : dominated) {
        auto& m = table.masses_[c];
        m.sense_occurrences += count * mult;
        if (scheme == WeightingScheme::Local) {
          m.weighted += static_cast<double>(count) * (static_cast<double>(mult) * share);
        }
      }
    }
    if (scheme == WeightingScheme::Global) {
      // Integer sums first: equal sense counts give bit-identical masses.
      for (auto& [c, m] : table.masses_) m.weighted = static_cast<double>(m.sense_occurrences) * global_w;
    }
    return table;
  }

 private:
  std::map<ClassId, ClassMass> masses_;
};

// w = sum f / sum f*|senses(n)| over the (filtered) corpus.
inline double global_weight(const TripleCorpus& corpus, const Taxonomy& taxonomy) {
  std::uint64_t tokens = 0;
  std::uint64_t sense_tokens = 0;
  for (const auto& [ctx, counts] : corpus.contexts()) {
    for (const auto& [noun, count] : counts.nouns) {
      tokens += count;
      sense_tokens += count * taxonomy.sense_classes(noun).size();
    }
  }
  if (tokens == 0) throw DataError("global weight of an empty corpus is undefined");
  return static_cast<double>(tokens) / static_cast<double>(sense_tokens);
}

inline double unigram_global_weight(const UnigramTable& unigrams, const Taxonomy& taxonomy) {
  std::uint64_t tokens = 0;
  std::uint64_t sense_tokens = 0;
  for (const auto& [noun, count] : unigrams.counts()) {
    if (const auto* senses = taxonomy.find_senses(noun)) {
      tokens += count;
      sense_tokens += count * senses->size();
    }
  }
  return sense_tokens == 0 ? 0.0 : static_cast<double>(tokens) / static_cast<double>(sense_tokens);
}

// Numerator and normalizer of a prior: p = numerator / root.
struct PriorMass {
  double numerator = 0.0;
  double root = 0.0;
};

// Precomputes every table at construction and is immutable afterwards, so
// concurrent readers need no locking. Holds references to the corpus and the
// taxonomy, which must outlive it.
class EstimationModel {
 public:
  EstimationModel(const TripleCorpus& corpus, const Taxonomy& taxonomy, WeightingScheme scheme,
                  const UnigramTable* unigrams = nullptr)
      : corpus_(&corpus), taxonomy_(&taxonomy), scheme_(scheme) {
    global_w_ = corpus.empty() ? 1.0 : global_weight(corpus, taxonomy);

    std::map<std::string, std::map<std::string, std::uint64_t, std::less<>>, std::less<>> by_relation;
    std::map<std::string, std::uint64_t, std::less<>> heads;
    for (const auto& [ctx, counts] : corpus.contexts()) {
      contexts_.emplace(ctx, MassTable::build(counts.nouns, taxonomy, scheme, global_w_));
      auto& rel = by_relation[ctx.relation];
      for (const auto& [noun, count] : counts.nouns) {
        rel[noun] += count;
        heads[noun] += count;
      }
    }
    for (const auto& [rel, nouns] : by_relation) {
      relations_.emplace(rel, MassTable::build(nouns, taxonomy, scheme, global_w_));
    }
    heads_ = MassTable::build(heads, taxonomy, scheme, global_w_);

    if (unigrams != nullptr && !unigrams->empty()) {
      has_unigrams_ = true;
      unigram_w_ = unigram_global_weight(*unigrams, taxonomy);
      unigram_ = MassTable::build(unigrams->counts(), taxonomy, scheme, unigram_w_);
    }
  }

  const TripleCorpus& corpus() const noexcept { return *corpus_; }
  const Taxonomy& taxonomy() const noexcept { return *taxonomy_; }
  WeightingScheme scheme() const noexcept { return scheme_; }
  double global_w() const noexcept { return global_w_; }
  bool has_unigrams() const noexcept { return has_unigrams_; }

  const MassTable& context_table(const Context& ctx) const {
    const auto it = contexts_.find(ctx);
    if (it == contexts_.end()) {
      throw UnseenEventError("unseen context (" + ctx.verb + ", " + ctx.relation + ")");
    }
    return it->second;
  }

  const MassTable& relation_table(std::string_view relation) const {
    const auto it = relations_.find(relation);
    if (it == relations_.end()) throw UnseenEventError("unseen relation " + std::string(relation));
    return it->second;
  }

  const MassTable& heads_table() const noexcept { return heads_; }

  const MassTable& unigram_table() const {
    if (!has_unigrams_) throw ConfigError("the all-nouns prior requires a non-empty unigram table");
    return unigram_;
  }

  // freq_w(v,s,c)
  double class_frequency(const Context& ctx, ClassId c) const {
    return context_table(ctx).weighted(c);
  }

  // Raw sense occurrences of c in the context; the stage-1 threshold applies to this.
  std::uint64_t support(const Context& ctx, ClassId c) const {
    return context_table(ctx).sense_occurrences(c);
  }

  // p(c|v,s)
  double conditional_probability(ClassId c, const Context& ctx) const {
    const auto& table = context_table(ctx);
    return table.weighted(c) / table.weighted(taxonomy_->root());
  }

  PriorMass prior_mass(ClassId c, std::string_view relation, PriorKind kind) const {
    const MassTable* table = nullptr;
    switch (kind) {
      case PriorKind::Positional: table = &relation_table(relation); break;
      case PriorKind::Heads: table = &heads_; break;
      case PriorKind::AllNouns: table = &unigram_table(); break;
    }
    return {table->weighted(c), table->weighted(taxonomy_->root())};
  }

  // p(c|s) for POSITIONAL, p(c) otherwise.
  double prior_probability(ClassId c, std::string_view relation, PriorKind kind) const {
    const auto mass = prior_mass(c, relation, kind);
    if (mass.root <= 0.0) throw IncompatiblePriorError("prior has zero total mass");
    return mass.numerator / mass.root;
  }

 private:
  const TripleCorpus* corpus_;
  const Taxonomy* taxonomy_;
  WeightingScheme scheme_;
  double global_w_ = 1.0;
  std::map<Context, MassTable> contexts_;
  std::map<std::string, MassTable, std::less<>> relations_;
  MassTable heads_;
  bool has_unigrams_ = false;
  double unigram_w_ = 0.0;
  MassTable unigram_;
};

}  // namespace selres
