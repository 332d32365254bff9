#pragma once

// Verb-relation-noun co-occurrence triples and noun unigram counts.

#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "selres/error.hpp"
#include "selres/taxonomy.hpp"
#include "selres/text.hpp"

namespace selres {

// A (verb, syntactic relation) pair: the conditioning event of an SR.
struct Context {
  std::string verb;
  std::string relation;

  auto operator<=>(const Context&) const = default;
};

struct Triple {
  std::string verb;
  std::string relation;
  std::string noun;
  std::uint64_t count = 1;
};

// Noun counts observed in one context, ordered by lemma.
struct ContextCounts {
  std::map<std::string, std::uint64_t, std::less<>> nouns;
  std::uint64_t total = 0;

  bool operator==(const ContextCounts&) const = default;
};

// Aggregated triple counts over a closed vocabulary (nouns unknown to the
// taxonomy are rejected at insertion and tallied). Ordered containers make
// the aggregate independent of insertion order.
class TripleCorpus {
 public:
  // Returns false (and tallies the count) when the noun is not in `taxonomy`.
  bool add(const Triple& t, const Taxonomy& taxonomy) {
    if (!taxonomy.has_noun(t.noun)) {
      skipped_count_ += t.count;
      ++skipped_lines_;
      return false;
    }
    add_known(t);
    return true;
  }

  // Combines two partitions. Commutative and associative over counts.
  void merge(const TripleCorpus& other) {
    for (const auto& [ctx, counts] : other.contexts_) {
      auto& mine = contexts_[ctx];
      for (const auto& [noun, count] : counts.nouns) mine.nouns[noun] += count;
      mine.total += counts.total;
    }
    total_ += other.total_;
    skipped_count_ += other.skipped_count_;
    skipped_lines_ += other.skipped_lines_;
  }

  const std::map<Context, ContextCounts>& contexts() const noexcept { return contexts_; }

  const ContextCounts* find(const Context& ctx) const {
    const auto it = contexts_.find(ctx);
    return it == contexts_.end() ? nullptr : &it->second;
  }

  std::uint64_t count(const Context& ctx, std::string_view noun) const {
    const auto* c = find(ctx);
    if (c == nullptr) return 0;
    const auto it = c->nouns.find(noun);
    return it == c->nouns.end() ? 0 : it->second;
  }

  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  // Summed counts of skipped triples (unknown nouns).
  std::uint64_t skipped_count() const noexcept { return skipped_count_; }
  std::uint64_t skipped_lines() const noexcept { return skipped_lines_; }

  bool operator==(const TripleCorpus&) const = default;

 private:
  void add_known(const Triple& t) {
    auto& counts = contexts_[Context{t.verb, t.relation}];
    counts.nouns[t.noun] += t.count;
    counts.total += t.count;
    total_ += t.count;
  }

  std::map<Context, ContextCounts> contexts_;
  std::uint64_t total_ = 0;
  std::uint64_t skipped_count_ = 0;
  std::uint64_t skipped_lines_ = 0;
};

// Triple file: <verb> <relation> <noun> [<count>], tab separated, default
// count 1.
inline TripleCorpus load_triples(std::istream& in, const Taxonomy& taxonomy) {
  TripleCorpus corpus;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::strip_comment(raw);
    if (line.empty()) continue;
    const auto f = text::fields(line);
    if (f.size() != 3 && f.size() != 4) {
      throw DataError("expected 3 or 4 fields, got " + std::to_string(f.size()), line_no);
    }
    std::uint64_t count = 1;
    if (f.size() == 4) {
      const auto parsed = text::parse_count(f[3]);
      if (!parsed) throw DataError("count must be a positive integer: '" + std::string(f[3]) + "'", line_no);
      count = *parsed;
    }
    corpus.add(Triple{std::string(f[0]), std::string(f[1]), std::string(f[2]), count}, taxonomy);
  }
  return corpus;
}

// Counts of all nouns in the corpus regardless of syntactic position.
class UnigramTable {
 public:
  void add(std::string_view lemma, std::uint64_t count) { counts_[std::string(lemma)] += count; }

  std::uint64_t count(std::string_view lemma) const {
    const auto it = counts_.find(lemma);
    return it == counts_.end() ? 0 : it->second;
  }

  bool empty() const noexcept { return counts_.empty(); }
  std::size_t size() const noexcept { return counts_.size(); }
  const std::map<std::string, std::uint64_t, std::less<>>& counts() const noexcept { return counts_; }

 private:
  std::map<std::string, std::uint64_t, std::less<>> counts_;
};

// Unigram file: <noun> <count> per line.
inline UnigramTable load_unigrams(std::istream& in) {
  UnigramTable table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::strip_comment(raw);
    if (line.empty()) continue;
    const auto f = text::fields(line);
    if (f.size() != 2) throw DataError("expected '<noun> <count>'", line_no);
    const auto count = text::parse_count(f[1]);
    if (!count) throw DataError("count must be a positive integer: '" + std::string(f[1]) + "'", line_no);
    table.add(f[0], *count);
  }
  return table;
}

}  // namespace selres
