#pragma once

// Three-stage SR acquisition:
//   1. candidate space: every class subsuming an observed sense of the
//      context, kept when its sense-occurrence support reaches the threshold;
//   2. scoring with the configured association measure and prior;
//   3. greedy selection of a maximal antichain, best score first.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "selres/config.hpp"
#include "selres/corpus.hpp"
#include "selres/error.hpp"
#include "selres/estimator.hpp"
#include "selres/measures.hpp"
#include "selres/taxonomy.hpp"
#include "selres/text.hpp"

namespace selres {

struct LearnConfig {
  MeasureKind measure = MeasureKind::Assoc;
  PriorKind prior = PriorKind::Positional;
  WeightingScheme weighting = WeightingScheme::Global;
  std::uint64_t threshold = 1;
  double log_base = kDefaultLogBase;
  // Worker threads for per-context learning. Never affects the output.
  unsigned jobs = 1;

  void validate() const {
    if (threshold < 1) throw ConfigError("threshold must be >= 1");
    if (!(log_base > 0.0) || log_base == 1.0) throw ConfigError("log base must be positive and != 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
  }

  // Everything that determines the learned SRs (jobs excluded).
  std::string describe() const {
    return "measure=" + std::string(to_string(measure)) + " prior=" + std::string(to_string(prior)) +
           " weighting=" + std::string(to_string(weighting)) +
           " threshold=" + std::to_string(threshold) + " log_base=" + text::format_real(log_base);
  }
};

struct Candidate {
  ClassId cls{};
  std::uint64_t support = 0;
  double score = 0.0;
};

struct SelectionalRestriction {
  ClassId cls{};
  double score = 0.0;
  std::uint64_t support = 0;

  bool operator==(const SelectionalRestriction&) const = default;
};

// Learned SRs per context, each list in selection order (descending score).
struct RestrictionSet {
  std::map<Context, std::vector<SelectionalRestriction>> by_context;
  LearnConfig provenance;

  std::span<const SelectionalRestriction> lookup(const Context& ctx) const {
    const auto it = by_context.find(ctx);
    if (it == by_context.end()) return {};
    return it->second;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [ctx, srs] : by_context) n += srs.size();
    return n;
  }
};

// Stage 1. Unscored candidates ordered by class id; empty for an unseen context.
inline std::vector<Candidate> candidate_space(const EstimationModel& model, const Context& ctx,
                                              std::uint64_t threshold) {
  if (threshold < 1) throw ConfigError("threshold must be >= 1");
  std::vector<Candidate> out;
  const auto* counts = model.corpus().find(ctx);
  if (counts == nullptr) return out;
  for (const auto& [cls, mass] : model.context_table(ctx).entries()) {
    if (mass.sense_occurrences >= threshold) out.push_back({cls, mass.sense_occurrences, 0.0});
  }
  return out;
}

namespace detail {

inline std::string describe(const Context& ctx, const Taxonomy& t, ClassId c) {
  return "(" + ctx.verb + ", " + ctx.relation + ", " + t.name(c) + "): ";
}

}  // namespace detail

// Stage 2. Candidates the measure cannot score (unattested) are dropped.
inline std::vector<Candidate> score_candidates(const EstimationModel& model, const Context& ctx,
                                               std::vector<Candidate> candidates,
                                               const LearnConfig& cfg) {
  std::vector<Candidate> out;
  out.reserve(candidates.size());
  for (auto& cand : candidates) {
    std::optional<double> s;
    try {
      s = score(cfg.measure, build_cross_table(model, ctx, cand.cls, cfg.prior), cfg.log_base);
    } catch (const UndefinedAssociationError& e) {
      throw UndefinedAssociationError(detail::describe(ctx, model.taxonomy(), cand.cls) + e.what());
    } catch (const IncompatiblePriorError& e) {
      throw IncompatiblePriorError(detail::describe(ctx, model.taxonomy(), cand.cls) + e.what());
    }
    if (!s) continue;
    cand.score = *s;
    out.push_back(cand);
  }
  return out;
}

// Visit order of stage 3: score desc, then depth desc (more specific first),
// then class id text asc.
inline void sort_for_selection(std::vector<Candidate>& cands, const Taxonomy& t) {
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    const int da = t.depth(a.cls);
    const int db = t.depth(b.cls);
    if (da != db) return da > db;
    return t.name(a.cls) < t.name(b.cls);
  });
}

// Stage 3. Greedy maximal antichain: accept a candidate unless it subsumes,
// or is subsumed by, one already accepted.
inline std::vector<Candidate> select_disjoint(std::vector<Candidate> scored, const Taxonomy& t) {
  sort_for_selection(scored, t);
  std::vector<Candidate> accepted;
  for (const auto& cand : scored) {
    const bool clash = std::any_of(accepted.begin(), accepted.end(),
                                   [&](const Candidate& a) { return t.related(a.cls, cand.cls); });
    if (!clash) accepted.push_back(cand);
  }
  return accepted;
}

// Scored candidates of one context in visit order, with the selection marked.
struct ContextCandidates {
  Context context;
  std::vector<Candidate> scored;
  std::vector<bool> selected;
};

inline ContextCandidates inspect_context(const EstimationModel& model, const Context& ctx,
                                         const LearnConfig& cfg) {
  ContextCandidates out{ctx, {}, {}};
  out.scored = score_candidates(model, ctx, candidate_space(model, ctx, cfg.threshold), cfg);
  sort_for_selection(out.scored, model.taxonomy());
  const auto chosen = select_disjoint(out.scored, model.taxonomy());
  for (const auto& cand : out.scored) {
    out.selected.push_back(std::any_of(chosen.begin(), chosen.end(),
                                       [&](const Candidate& c) { return c.cls == cand.cls; }));
  }
  return out;
}

namespace detail {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Exceptions are
// rethrown in index order so failures are deterministic too.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto body = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

// Learns one antichain per observed context. Output is ordered by (verb,
// relation) and identical for every value of cfg.jobs.
inline RestrictionSet learn_restrictions(const EstimationModel& model, const LearnConfig& cfg) {
  cfg.validate();
  if (cfg.prior == PriorKind::AllNouns && !model.has_unigrams()) {
    throw ConfigError("the all-nouns prior requires a non-empty unigram table");
  }
  std::vector<Context> contexts;
  for (const auto& [ctx, counts] : model.corpus().contexts()) contexts.push_back(ctx);

  std::vector<std::vector<SelectionalRestriction>> results(contexts.size());
  detail::parallel_for(contexts.size(), cfg.jobs, [&](std::size_t i) {
    auto scored = score_candidates(model, contexts[i],
                                   candidate_space(model, contexts[i], cfg.threshold), cfg);
    for (const auto& c : select_disjoint(std::move(scored), model.taxonomy())) {
      results[i].push_back({c.cls, c.score, c.support});
    }
  });

  RestrictionSet set;
  set.provenance = cfg;
  set.provenance.jobs = 1;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    set.by_context.emplace(contexts[i], std::move(results[i]));
  }
  return set;
}

inline RestrictionSet learn_restrictions(const TripleCorpus& corpus, const Taxonomy& taxonomy,
                                         const LearnConfig& cfg,
                                         const UnigramTable* unigrams = nullptr) {
  const EstimationModel model(corpus, taxonomy, cfg.weighting, unigrams);
  return learn_restrictions(model, cfg);
}

}  // namespace selres
