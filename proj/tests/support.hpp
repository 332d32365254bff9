#pragma once

// Fixtures and input generators shared by the unit, property and acceptance
// suites. Generators draw from std::mt19937_64 with explicit seeds so every
// failure is replayable.

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "selres/selres.hpp"

namespace selres::testing {

inline std::string data_path(const std::string& name) { return std::string(SELRES_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Taxonomy toy_taxonomy() {
  std::ifstream in(data_path("toy.tax"));
  return load_taxonomy(in);
}

inline TripleCorpus toy_corpus(const Taxonomy& t, int which) {
  std::ifstream in(data_path(which == 1 ? "toy1.tsv" : "toy2.tsv"));
  return load_triples(in, t);
}

inline Taxonomy taxonomy_from(const std::string& text) {
  std::istringstream in(text);
  return load_taxonomy(in);
}

inline TripleCorpus corpus_from(const std::string& text, const Taxonomy& t) {
  std::istringstream in(text);
  return load_triples(in, t);
}

// Random rooted DAG: class i > 0 takes 1..max_parents distinct parents among
// the classes before it. Nouns get 1..max_senses distinct senses anywhere in
// the hierarchy.
inline Taxonomy random_taxonomy(std::mt19937_64& rng, int classes, int nouns, int max_parents = 2,
                                int max_senses = 3) {
  TaxonomyBuilder b;
  b.add_class("c0", {});
  for (int i = 1; i < classes; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    std::uniform_int_distribution<int> howmany(1, max_parents);
    std::vector<std::string> parents;
    const int k = howmany(rng);
    for (int j = 0; j < k; ++j) {
      auto p = "c" + std::to_string(pick(rng));
      if (std::find(parents.begin(), parents.end(), p) == parents.end()) parents.push_back(p);
    }
    b.add_class("c" + std::to_string(i), parents);
  }
  std::uniform_int_distribution<int> any_class(0, classes - 1);
  std::uniform_int_distribution<int> sense_count(1, max_senses);
  for (int n = 0; n < nouns; ++n) {
    std::vector<std::string> senses;
    const int k = sense_count(rng);
    for (int j = 0; j < k; ++j) senses.push_back("c" + std::to_string(any_class(rng)));
    b.add_noun("n" + std::to_string(n), senses);
  }
  return std::move(b).build();
}

inline TripleCorpus random_corpus(std::mt19937_64& rng, const Taxonomy& t, int verbs, int relations,
                                  int triples, std::uint64_t max_count = 5) {
  std::vector<std::string> nouns;
  for (const auto& [lemma, senses] : t.nouns()) nouns.push_back(lemma);
  std::uniform_int_distribution<int> verb(0, verbs - 1);
  std::uniform_int_distribution<int> rel(0, relations - 1);
  std::uniform_int_distribution<std::size_t> noun(0, nouns.size() - 1);
  std::uniform_int_distribution<std::uint64_t> count(1, max_count);
  TripleCorpus corpus;
  for (int i = 0; i < triples; ++i) {
    corpus.add(Triple{"v" + std::to_string(verb(rng)), "r" + std::to_string(rel(rng)), nouns[noun(rng)],
                      count(rng)},
               t);
  }
  return corpus;
}

// Synthetic corpus with known answers. A 50-class taxonomy (root, 7 mid
// classes, 6 leaves under each) carries 5 nouns per leaf; every noun has its
// own leaf as the true sense plus 1-3 distractor leaf senses. Each of the 10
// contexts plants one class; 80% of its triples draw a noun from under the
// planted class (gold = the noun's true sense), 20% draw any noun.
struct PlantedSample {
  Taxonomy taxonomy;
  TripleCorpus corpus;
  std::vector<GoldTriple> gold;
  std::vector<std::pair<Context, ClassId>> planted;
};

inline PlantedSample planted_sample(std::uint64_t seed, int triples = 1000, double noise = 0.2) {
  std::mt19937_64 rng(seed);
  constexpr int kMid = 7;
  constexpr int kLeavesPerMid = 6;
  constexpr int kNounsPerLeaf = 5;
  TaxonomyBuilder b;
  b.add_class("root", {});
  std::vector<std::string> leaves;
  for (int m = 0; m < kMid; ++m) {
    const auto mid = "m" + std::to_string(m);
    b.add_class(mid, {"root"});
    for (int l = 0; l < kLeavesPerMid; ++l) {
      leaves.push_back(mid + "_l" + std::to_string(l));
      b.add_class(leaves.back(), {mid});
    }
  }
  std::uniform_int_distribution<std::size_t> any_leaf(0, leaves.size() - 1);
  std::uniform_int_distribution<int> extra(1, 3);
  std::vector<std::pair<std::string, std::string>> nouns;  // lemma, true leaf
  for (const auto& leaf : leaves) {
    for (int k = 0; k < kNounsPerLeaf; ++k) {
      const auto lemma = leaf + "_n" + std::to_string(k);
      std::vector<std::string> senses{leaf};
      const int e = extra(rng);
      for (int j = 0; j < e; ++j) {
        const auto& d = leaves[any_leaf(rng)];
        if (std::find(senses.begin(), senses.end(), d) == senses.end()) senses.push_back(d);
      }
      b.add_noun(lemma, senses);
      nouns.emplace_back(lemma, leaf);
    }
  }
  PlantedSample s{std::move(b).build(), {}, {}, {}};
  const auto& t = s.taxonomy;

  // Five contexts plant a mid class, five plant a leaf (all distinct).
  std::vector<ClassId> targets;
  for (int m = 0; m < 5; ++m) targets.push_back(t.id("m" + std::to_string(m)));
  for (int m = 5; m < 7; ++m) {
    for (int l = 0; l < 3 && targets.size() < 10; ++l) {
      targets.push_back(t.id("m" + std::to_string(m) + "_l" + std::to_string(l)));
    }
  }
  std::vector<Context> contexts;
  for (int i = 0; i < 10; ++i) {
    contexts.push_back(Context{"verb" + std::to_string(i), i % 2 == 0 ? "obj" : "subj"});
    s.planted.emplace_back(contexts.back(), targets[i]);
  }

  std::uniform_int_distribution<std::size_t> any_noun(0, nouns.size() - 1);
  std::bernoulli_distribution is_noise(noise);
  for (int i = 0; i < triples; ++i) {
    const auto ci = static_cast<std::size_t>(i % 10);
    const ClassId target = targets[ci];
    std::size_t pick;
    if (is_noise(rng)) {
      pick = any_noun(rng);
    } else {
      do {
        pick = any_noun(rng);
      } while (!t.subsumes(target, t.id(nouns[pick].second)));
    }
    const auto& [lemma, leaf] = nouns[pick];
    s.corpus.add(Triple{contexts[ci].verb, contexts[ci].relation, lemma, 1}, t);
    s.gold.push_back(make_gold(contexts[ci], lemma, leaf, t));
  }
  return s;
}

struct CliResult {
  int status = -1;
  std::string out;
};

// Runs the CLI with stdout captured; stderr goes to /dev/null.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SELRES_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace selres::testing
