#pragma once

// Semantic-class hierarchy (a rooted DAG) with noun sense attachments.
//
// File format, one record per line, '#' starts a comment:
//   c <class-id> <parent-id>[,<parent-id>...]     root uses parent "-"
//   n <lemma> <class-id>[,<class-id>...]
// Records may reference classes defined further down. Repeated "n" lines for
// one lemma merge their sense sets.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selres/error.hpp"
#include "selres/text.hpp"

namespace selres {

enum class ClassId : std::uint32_t {};

constexpr std::size_t index_of(ClassId c) noexcept { return static_cast<std::size_t>(c); }

class Taxonomy;

// Accumulates classes and nouns, then validates everything at once in
// build(). Line numbers are optional and only used in error messages.
class TaxonomyBuilder {
 public:
  void add_class(std::string_view id, std::vector<std::string> parents, std::size_t line = 0) {
    if (classes_.count(id) != 0) {
      throw DataError("duplicate class id '" + std::string(id) + "'", line);
    }
    classes_.emplace(std::string(id), Pending{std::move(parents), line, order_++});
  }

  void add_noun(std::string_view lemma, const std::vector<std::string>& senses,
                std::size_t line = 0) {
    if (senses.empty()) {
      throw DataError("noun '" + std::string(lemma) + "' has an empty sense list", line);
    }
    auto& entry = nouns_[std::string(lemma)];
    for (const auto& s : senses) entry.emplace_back(s, line);
  }

  Taxonomy build() &&;

 private:
  struct Pending {
    std::vector<std::string> parents;
    std::size_t line;
    std::size_t order;
  };
  std::map<std::string, Pending, std::less<>> classes_;
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>, std::less<>> nouns_;
  std::size_t order_ = 0;
};

// Immutable after construction; safe for concurrent readers.
class Taxonomy {
 public:
  std::size_t class_count() const noexcept { return names_.size(); }
  std::size_t noun_count() const noexcept { return nouns_.size(); }
  ClassId root() const noexcept { return root_; }

  const std::string& name(ClassId c) const { return names_.at(index_of(c)); }
  std::span<const ClassId> parents(ClassId c) const { return parents_.at(index_of(c)); }
  int depth(ClassId c) const { return depth_.at(index_of(c)); }

  // Every class id, in file order.
  std::vector<ClassId> classes() const {
    std::vector<ClassId> out(class_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ClassId(i);
    return out;
  }

  std::optional<ClassId> find(std::string_view id) const {
    const auto it = by_name_.find(id);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  ClassId id(std::string_view name) const {
    if (auto c = find(name)) return *c;
    throw UnknownIdError("unknown class id: " + std::string(name));
  }

  // Reflexive: a class subsumes itself.
  bool subsumes(ClassId ancestor, ClassId descendant) const {
    const auto a = index_of(ancestor);
    const auto& bits = reach_.at(index_of(descendant));
    return (bits[a / 64] >> (a % 64)) & 1U;
  }

  bool subsumes(std::string_view ancestor, std::string_view descendant) const {
    return subsumes(id(ancestor), id(descendant));
  }

  bool related(ClassId a, ClassId b) const { return subsumes(a, b) || subsumes(b, a); }

  // The class itself and all of its hyperonyms, ordered by id.
  std::span<const ClassId> ancestors(ClassId c) const { return ancestors_.at(index_of(c)); }

  bool has_noun(std::string_view lemma) const { return nouns_.find(lemma) != nouns_.end(); }

  // nullptr when the lemma is absent; the non-throwing lookup used by ingestion.
  const std::vector<ClassId>* find_senses(std::string_view lemma) const {
    const auto it = nouns_.find(lemma);
    return it == nouns_.end() ? nullptr : &it->second;
  }

  // Sense classes of a noun, ordered by class id text.
  const std::vector<ClassId>& sense_classes(std::string_view lemma) const {
    if (const auto* s = find_senses(lemma)) return *s;
    throw UnknownNounError(std::string(lemma));
  }

  std::vector<ClassId> dominated_senses(ClassId c, std::string_view lemma) const {
    std::vector<ClassId> out;
    for (ClassId k : sense_classes(lemma)) {
      if (subsumes(c, k)) out.push_back(k);
    }
    return out;
  }

  std::size_t dominated_count(ClassId c, std::span<const ClassId> senses) const {
    return static_cast<std::size_t>(
        std::count_if(senses.begin(), senses.end(), [&](ClassId k) { return subsumes(c, k); }));
  }

  const std::map<std::string, std::vector<ClassId>, std::less<>>& nouns() const { return nouns_; }

  // Writes the taxonomy back in the file format; loading the output yields
  // the same classes, parents and noun senses.
  void serialize(std::ostream& out) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      out << "c " << names_[i] << ' ';
      if (parents_[i].empty()) {
        out << '-';
      } else {
        for (std::size_t j = 0; j < parents_[i].size(); ++j) {
          out << (j ? "," : "") << name(parents_[i][j]);
        }
      }
      out << '\n';
    }
    for (const auto& [lemma, senses] : nouns_) {
      out << "n " << lemma << ' ';
      for (std::size_t j = 0; j < senses.size(); ++j) out << (j ? "," : "") << name(senses[j]);
      out << '\n';
    }
  }

 private:
  friend class TaxonomyBuilder;

  std::vector<std::string> names_;
  std::vector<std::vector<ClassId>> parents_;
  std::vector<int> depth_;
  std::vector<std::vector<std::uint64_t>> reach_;
  std::vector<std::vector<ClassId>> ancestors_;
  std::map<std::string, ClassId, std::less<>> by_name_;
  std::map<std::string, std::vector<ClassId>, std::less<>> nouns_;
  ClassId root_{};
};

inline Taxonomy TaxonomyBuilder::build() && {
  // Ids follow declaration order so serialization is stable.
  std::vector<const std::pair<const std::string, Pending>*> ordered;
  ordered.reserve(classes_.size());
  for (const auto& entry : classes_) ordered.push_back(&entry);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->second.order < b->second.order; });

  Taxonomy t;
  const std::size_t n = ordered.size();
  if (n == 0) throw DataError("taxonomy has no classes");
  t.names_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.names_.push_back(ordered[i]->first);
    t.by_name_.emplace(ordered[i]->first, ClassId(i));
  }

  t.parents_.resize(n);
  std::vector<std::vector<ClassId>> children(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pending = ordered[i]->second;
    for (const auto& p : pending.parents) {
      const auto pid = t.find(p);
      if (!pid) {
        throw DataError("class '" + t.names_[i] + "' names unknown parent '" + p + "'",
                        pending.line);
      }
      if (std::find(t.parents_[i].begin(), t.parents_[i].end(), *pid) == t.parents_[i].end()) {
        t.parents_[i].push_back(*pid);
        children[index_of(*pid)].push_back(ClassId(i));
      }
    }
  }

  // Kahn's algorithm over parent->child edges; leftovers sit on or below a cycle.
  std::vector<std::size_t> pending_parents(n);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    pending_parents[i] = t.parents_[i].size();
    if (pending_parents[i] == 0) queue.push_back(i);
  }
  std::vector<std::size_t> topo;
  topo.reserve(n);
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    topo.push_back(i);
    for (ClassId child : children[i]) {
      if (--pending_parents[index_of(child)] == 0) queue.push_back(index_of(child));
    }
  }
  if (topo.size() != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pending_parents[i] != 0) {
        throw DataError("cycle detected involving class '" + t.names_[i] + "'",
                        ordered[i]->second.line);
      }
    }
  }

  std::optional<std::size_t> root;
  for (std::size_t i = 0; i < n; ++i) {
    if (!t.parents_[i].empty()) continue;
    if (root) {
      throw DataError("multiple roots: '" + t.names_[*root] + "' and '" + t.names_[i] + "'",
                      ordered[i]->second.line);
    }
    root = i;
  }
  t.root_ = ClassId(*root);

  const std::size_t words = (n + 63) / 64;
  t.reach_.assign(n, std::vector<std::uint64_t>(words, 0));
  t.depth_.assign(n, 0);
  for (const auto i : topo) {
    auto& bits = t.reach_[i];
    bits[i / 64] |= std::uint64_t{1} << (i % 64);
    int depth = -1;
    for (ClassId p : t.parents_[i]) {
      const auto& pbits = t.reach_[index_of(p)];
      for (std::size_t w = 0; w < words; ++w) bits[w] |= pbits[w];
      const int d = t.depth_[index_of(p)] + 1;
      if (depth < 0 || d < depth) depth = d;
    }
    t.depth_[i] = depth < 0 ? 0 : depth;
  }
  t.ancestors_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      if ((t.reach_[i][a / 64] >> (a % 64)) & 1U) t.ancestors_[i].push_back(ClassId(a));
    }
  }

  for (const auto& [lemma, senses] : nouns_) {
    std::vector<ClassId> ids;
    for (const auto& [sense, line] : senses) {
      const auto id = t.find(sense);
      if (!id) {
        throw DataError("noun '" + lemma + "' names unknown class '" + sense + "'", line);
      }
      if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end(),
              [&](ClassId a, ClassId b) { return t.name(a) < t.name(b); });
    t.nouns_.emplace(lemma, std::move(ids));
  }
  return t;
}

inline Taxonomy load_taxonomy(std::istream& in) {
  TaxonomyBuilder builder;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = text::strip_comment(raw);
    if (line.empty()) continue;
    const auto f = text::fields(line);
    if (f.size() == 2 && f[0] == "n") {
      throw DataError("noun '" + std::string(f[1]) + "' has an empty sense list", line_no);
    }
    if (f.size() != 3 || (f[0] != "c" && f[0] != "n")) {
      throw DataError("expected 'c <id> <parents>' or 'n <lemma> <senses>'", line_no);
    }
    std::vector<std::string> ids;
    if (!(f[0] == "c" && f[2] == "-")) {
      for (auto part : text::split(f[2], ',')) {
        if (part.empty()) throw DataError("empty id in list '" + std::string(f[2]) + "'", line_no);
        ids.emplace_back(part);
      }
    }
    if (f[0] == "c") {
      if (f[1] == "-") throw DataError("'-' is reserved for the root parent", line_no);
      builder.add_class(f[1], std::move(ids), line_no);
    } else {
      builder.add_noun(f[1], ids, line_no);
    }
  }
  return std::move(builder).build();
}

}  // namespace selres
