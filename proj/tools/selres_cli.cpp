// selres: learn selectional restrictions from co-occurrence triples and
// evaluate them.
//
//   selres learn           --triples T --taxonomy X [options] [-o srs.tsv]
//   selres eval            --srs S --gold G --taxonomy X [--baseline guessing]
//   selres sweep           --triples T --gold G --taxonomy X --from N --to M
//   selres dump-freqs      --triples T --taxonomy X [--weighting W]
//   selres emit-candidates --triples T --taxonomy X [options]
//
// Exit status: 0 ok, 1 data or I/O error, 2 configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selres/selres.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

class IoError : public selres::Error {
 public:
  using selres::Error::Error;
};

struct Options {
  std::string triples;
  std::string taxonomy;
  std::string unigrams;
  std::string srs;
  std::string gold;
  std::string output;
  std::string measure = "assoc";
  std::string prior = "positional";
  std::string weighting = "global";
  std::string format = "tsv";
  std::string baseline;
  std::uint64_t threshold = 1;
  double log_base = selres::kDefaultLogBase;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t from = 1;
  std::uint64_t to = 1;
};

std::ifstream open_input(const std::string& path, std::string_view what) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + std::string(what) + " file '" + path + "'");
  return in;
}

void require(const std::string& value, std::string_view flag) {
  if (value.empty()) throw selres::ConfigError("missing required option " + std::string(flag));
}

selres::LearnConfig learn_config(const Options& o) {
  selres::LearnConfig cfg;
  const auto m = selres::parse_measure(o.measure);
  if (!m) throw selres::ConfigError("unknown measure '" + o.measure + "'");
  const auto p = selres::parse_prior(o.prior);
  if (!p) throw selres::ConfigError("unknown prior '" + o.prior + "'");
  const auto w = selres::parse_weighting(o.weighting);
  if (!w) throw selres::ConfigError("unknown weighting '" + o.weighting + "'");
  cfg.measure = *m;
  cfg.prior = *p;
  cfg.weighting = *w;
  cfg.threshold = o.threshold;
  cfg.log_base = o.log_base;
  cfg.jobs = o.jobs;
  cfg.validate();
  if (cfg.prior == selres::PriorKind::AllNouns && o.unigrams.empty()) {
    throw selres::ConfigError("--prior allnouns requires --unigrams");
  }
  return cfg;
}

void check_format(const Options& o) {
  if (o.format != "tsv" && o.format != "json") {
    throw selres::ConfigError("unknown format '" + o.format + "' (tsv|json)");
  }
}

void emit(const Options& o, const std::string& data) {
  if (o.output.empty() || o.output == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw IoError("cannot write output file '" + o.output + "'");
  out << data;
  if (!out) throw IoError("write failed for '" + o.output + "'");
}

std::string or_dash(const std::string& s) { return s.empty() ? "-" : s; }

// Learning-side configuration echoed into output headers.
selres::Provenance learn_provenance(std::string_view command, const Options& o,
                                    const selres::LearnConfig& cfg) {
  selres::Provenance p{{"command", std::string(command)},
                       {"triples", o.triples},
                       {"taxonomy", o.taxonomy},
                       {"unigrams", or_dash(o.unigrams)}};
  for (auto& kv : selres::provenance_of(cfg)) p.push_back(std::move(kv));
  p.emplace_back("seed", std::to_string(o.seed));
  p.emplace_back("format", o.format);
  return p;
}

struct Inputs {
  selres::Taxonomy taxonomy;
  selres::TripleCorpus corpus;
  std::optional<selres::UnigramTable> unigrams;
};

Inputs load_inputs(const Options& o, bool need_triples) {
  require(o.taxonomy, "--taxonomy");
  if (need_triples) require(o.triples, "--triples");
  auto tax_in = open_input(o.taxonomy, "taxonomy");
  Inputs in{selres::load_taxonomy(tax_in), {}, std::nullopt};
  if (need_triples) {
    auto tri_in = open_input(o.triples, "triples");
    in.corpus = selres::load_triples(tri_in, in.taxonomy);
    std::cerr << "triples: " << in.corpus.total() << " occurrences in " << in.corpus.contexts().size()
              << " contexts; skipped " << in.corpus.skipped_count() << " occurrences ("
              << in.corpus.skipped_lines() << " lines) with nouns not in the taxonomy\n";
  }
  if (!o.unigrams.empty()) {
    auto uni_in = open_input(o.unigrams, "unigram");
    in.unigrams = selres::load_unigrams(uni_in);
    if (in.unigrams->empty()) std::cerr << "warning: unigram table is empty\n";
  }
  return in;
}

const selres::UnigramTable* unigram_ptr(const Inputs& in) {
  return in.unigrams ? &*in.unigrams : nullptr;
}

int run_learn(const Options& o) {
  check_format(o);
  const auto cfg = learn_config(o);
  const auto in = load_inputs(o, true);
  const selres::EstimationModel model(in.corpus, in.taxonomy, cfg.weighting, unigram_ptr(in));
  const auto srs = selres::learn_restrictions(model, cfg);
  for (const auto& [ctx, list] : srs.by_context) {
    std::cerr << ctx.verb << '\t' << ctx.relation << '\t' << in.corpus.find(ctx)->total
              << " occurrences\t" << list.size() << " SRs\n";
  }
  std::ostringstream out;
  const auto prov = learn_provenance("learn", o, cfg);
  if (o.format == "json") {
    selres::write_restrictions_json(out, srs, in.taxonomy, prov);
  } else {
    selres::write_restrictions_tsv(out, srs, in.taxonomy, prov);
  }
  emit(o, out.str());
  return kExitOk;
}

int run_eval(const Options& o) {
  check_format(o);
  require(o.gold, "--gold");
  if (!o.baseline.empty() && o.baseline != "guessing") {
    throw selres::ConfigError("unknown baseline '" + o.baseline + "' (guessing)");
  }
  if (o.baseline.empty()) require(o.srs, "--srs");
  const auto in = load_inputs(o, false);
  auto gold_in = open_input(o.gold, "gold");
  const auto gold = selres::load_gold(gold_in, in.taxonomy);

  selres::EvaluationReport report;
  selres::Provenance prov{{"command", "eval"}, {"taxonomy", o.taxonomy}, {"gold", o.gold}};
  if (o.baseline == "guessing") {
    report = selres::guessing_baseline(gold, in.taxonomy, o.seed);
    prov.emplace_back("baseline", "guessing");
  } else {
    auto srs_in = open_input(o.srs, "SR");
    const auto srs = selres::read_restrictions(srs_in, in.taxonomy);
    report = selres::evaluate(gold, srs, in.taxonomy, o.seed);
    prov.emplace_back("srs", o.srs);
  }
  prov.emplace_back("seed", std::to_string(o.seed));
  prov.emplace_back("format", o.format);

  std::cerr << "evaluated " << report.total << " triples, " << report.decided << " decided\n";
  std::ostringstream out;
  if (o.format == "json") {
    selres::write_report_json(out, report, prov);
  } else {
    selres::write_report_tsv(out, report, prov);
  }
  emit(o, out.str());
  return kExitOk;
}

int run_sweep(const Options& o) {
  check_format(o);
  if (o.from < 1 || o.from > o.to) throw selres::ConfigError("--from must satisfy 1 <= from <= to");
  require(o.gold, "--gold");
  const auto cfg = learn_config(o);
  const auto in = load_inputs(o, true);
  auto gold_in = open_input(o.gold, "gold");
  const auto gold = selres::load_gold(gold_in, in.taxonomy);
  const selres::EstimationModel model(in.corpus, in.taxonomy, cfg.weighting, unigram_ptr(in));
  const auto rows = selres::threshold_sweep(model, gold, cfg, o.from, o.to, o.seed);

  auto prov = learn_provenance("sweep", o, cfg);
  prov.erase(std::remove_if(prov.begin(), prov.end(), [](const auto& kv) { return kv.first == "threshold"; }),
             prov.end());
  prov.emplace_back("gold", o.gold);
  prov.emplace_back("from", std::to_string(o.from));
  prov.emplace_back("to", std::to_string(o.to));
  std::ostringstream out;
  if (o.format == "json") {
    selres::write_sweep_json(out, rows, prov);
  } else {
    selres::write_sweep_tsv(out, rows, prov);
  }
  emit(o, out.str());
  return kExitOk;
}

int run_dump_freqs(const Options& o) {
  const auto w = selres::parse_weighting(o.weighting);
  if (!w) throw selres::ConfigError("unknown weighting '" + o.weighting + "'");
  const auto in = load_inputs(o, true);
  const selres::EstimationModel model(in.corpus, in.taxonomy, *w, unigram_ptr(in));
  std::ostringstream out;
  selres::write_frequencies_tsv(out, model,
                                {{"command", "dump-freqs"},
                                 {"triples", o.triples},
                                 {"taxonomy", o.taxonomy},
                                 {"unigrams", or_dash(o.unigrams)},
                                 {"weighting", o.weighting}});
  emit(o, out.str());
  return kExitOk;
}

int run_emit_candidates(const Options& o) {
  const auto cfg = learn_config(o);
  const auto in = load_inputs(o, true);
  const selres::EstimationModel model(in.corpus, in.taxonomy, cfg.weighting, unigram_ptr(in));
  std::vector<selres::ContextCandidates> all;
  for (const auto& [ctx, counts] : in.corpus.contexts()) {
    all.push_back(selres::inspect_context(model, ctx, cfg));
  }
  std::ostringstream out;
  auto prov = learn_provenance("emit-candidates", o, cfg);
  selres::write_candidates_tsv(out, all, in.taxonomy, prov);
  emit(o, out.str());
  return kExitOk;
}

void add_io(CLI::App* cmd, Options& o) {
  cmd->add_option("--taxonomy", o.taxonomy, "Taxonomy file");
  cmd->add_option("-o,--output", o.output, "Output file (default: stdout)");
}

void add_learning(CLI::App* cmd, Options& o) {
  cmd->add_option("--triples", o.triples, "Triple file: verb, relation, noun[, count]");
  cmd->add_option("--unigrams", o.unigrams, "Noun unigram counts (needed by --prior allnouns)");
  cmd->add_option("--measure", o.measure, "assoc|pmi|loglik|phi2|relent");
  cmd->add_option("--prior", o.prior, "positional|heads|allnouns");
  cmd->add_option("--weighting", o.weighting, "global|local");
  cmd->add_option("--threshold", o.threshold, "Minimum candidate support (>= 1)");
  cmd->add_option("--log-base", o.log_base, "Log base for assoc/pmi/relent");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--jobs", o.jobs, "Worker threads for per-context learning");
  cmd->add_option("--format", o.format, "tsv|json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selectional restriction acquisition and evaluation"};
  app.require_subcommand(1);
  Options o;

  auto* learn = app.add_subcommand("learn", "Learn SRs from triples");
  add_io(learn, o);
  add_learning(learn, o);

  auto* eval = app.add_subcommand("eval", "Evaluate SRs against a gold sample");
  add_io(eval, o);
  eval->add_option("--srs", o.srs, "SR file (TSV or JSON)");
  eval->add_option("--gold", o.gold, "Gold file: verb, relation, noun, gold class");
  eval->add_option("--seed", o.seed, "Random seed for WSS ties");
  eval->add_option("--baseline", o.baseline, "Report a baseline instead: guessing");
  eval->add_option("--format", o.format, "tsv|json");

  auto* sweep = app.add_subcommand("sweep", "Learn and evaluate over a threshold range");
  add_io(sweep, o);
  add_learning(sweep, o);
  sweep->add_option("--gold", o.gold, "Gold file");
  sweep->add_option("--from", o.from, "First threshold");
  sweep->add_option("--to", o.to, "Last threshold");

  auto* dump = app.add_subcommand("dump-freqs", "Export weighted class frequency tables");
  add_io(dump, o);
  dump->add_option("--triples", o.triples, "Triple file");
  dump->add_option("--unigrams", o.unigrams, "Noun unigram counts");
  dump->add_option("--weighting", o.weighting, "global|local");

  auto* cands = app.add_subcommand("emit-candidates", "Scored candidates before selection");
  add_io(cands, o);
  add_learning(cands, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (learn->parsed()) return run_learn(o);
    if (eval->parsed()) return run_eval(o);
    if (sweep->parsed()) return run_sweep(o);
    if (dump->parsed()) return run_dump_freqs(o);
    if (cands->parsed()) return run_emit_candidates(o);
  } catch (const selres::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitData;
  } catch (const selres::Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}
