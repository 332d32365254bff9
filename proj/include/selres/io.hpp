#pragma once

// Readers and writers for learned SRs, evaluation reports, sweeps and the
// inspection dumps. Every file starts with one provenance line
//   # selres <kind> key=value key=value ...
// followed by a column header and tab-separated rows. The JSON emitters carry
// the same fields plus the provenance as an object.

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "selres/config.hpp"
#include "selres/error.hpp"
#include "selres/estimator.hpp"
#include "selres/evaluator.hpp"
#include "selres/learner.hpp"
#include "selres/taxonomy.hpp"
#include "selres/text.hpp"

namespace selres {

// Ordered key/value pairs echoed into every output file.
using Provenance = std::vector<std::pair<std::string, std::string>>;

inline Provenance provenance_of(const LearnConfig& cfg) {
  return {{"measure", std::string(to_string(cfg.measure))},
          {"prior", std::string(to_string(cfg.prior))},
          {"weighting", std::string(to_string(cfg.weighting))},
          {"threshold", std::to_string(cfg.threshold)},
          {"log_base", text::format_real(cfg.log_base)}};
}

inline void write_provenance(std::ostream& out, std::string_view kind, const Provenance& p) {
  out << "# selres " << kind;
  for (const auto& [k, v] : p) out << ' ' << k << '=' << v;
  out << '\n';
}

inline nlohmann::ordered_json provenance_json(std::string_view kind, const Provenance& p) {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

inline constexpr std::string_view kRestrictionColumns = "verb\trelation\tclass\tscore\tsupport";

inline void write_restrictions_tsv(std::ostream& out, const RestrictionSet& srs, const Taxonomy& t,
                                   const Provenance& p) {
  write_provenance(out, "restrictions", p);
  out << kRestrictionColumns << '\n';
  for (const auto& [ctx, list] : srs.by_context) {
    for (const auto& sr : list) {
      out << ctx.verb << '\t' << ctx.relation << '\t' << t.name(sr.cls) << '\t'
          << text::format_real(sr.score) << '\t' << sr.support << '\n';
    }
  }
}

inline void write_restrictions_json(std::ostream& out, const RestrictionSet& srs, const Taxonomy& t,
                                    const Provenance& p) {
  nlohmann::ordered_json doc;
  doc["provenance"] = provenance_json("restrictions", p);
  auto& rows = doc["restrictions"] = nlohmann::ordered_json::array();
  for (const auto& [ctx, list] : srs.by_context) {
    for (const auto& sr : list) {
      rows.push_back({{"verb", ctx.verb},
                      {"relation", ctx.relation},
                      {"class", t.name(sr.cls)},
                      {"score", sr.score},
                      {"support", sr.support}});
    }
  }
  out << doc.dump(2) << '\n';
}

namespace detail {

inline void apply_provenance(LearnConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "measure") {
    if (auto m = parse_measure(value)) cfg.measure = *m;
  } else if (key == "prior") {
    if (auto p = parse_prior(value)) cfg.prior = *p;
  } else if (key == "weighting") {
    if (auto w = parse_weighting(value)) cfg.weighting = *w;
  } else if (key == "threshold") {
    if (auto th = text::parse_count(value)) cfg.threshold = *th;
  } else if (key == "log_base") {
    try {
      cfg.log_base = std::stod(std::string(value));
    } catch (const std::exception&) {
    }
  }
}

inline void add_restriction(RestrictionSet& srs, const Taxonomy& t, Context ctx,
                            std::string_view cls, double score, std::uint64_t support,
                            std::size_t line) {
  const auto id = t.find(cls);
  if (!id) throw DataError("SR class '" + std::string(cls) + "' is not in the taxonomy", line);
  srs.by_context[std::move(ctx)].push_back({*id, score, support});
}

inline RestrictionSet read_restrictions_json(std::istream& in, const Taxonomy& t) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed SR document: ") + e.what());
  }
  RestrictionSet srs;
  try {
    if (doc.contains("provenance")) {
      for (const auto& [k, v] : doc["provenance"].items()) {
        if (v.is_string()) apply_provenance(srs.provenance, k, v.get<std::string>());
      }
    }
    std::size_t row = 0;
    for (const auto& r : doc.at("restrictions")) {
      ++row;
      add_restriction(srs, t, Context{r.at("verb").get<std::string>(), r.at("relation").get<std::string>()},
                      r.at("class").get<std::string>(), r.at("score").get<double>(),
                      r.at("support").get<std::uint64_t>(), row);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed SR document: ") + e.what());
  }
  return srs;
}

}  // namespace detail

// Reads either SR format; a document whose first non-blank character is '{'
// is taken as JSON. Class ids must exist in `t`.
inline RestrictionSet read_restrictions(std::istream& in, const Taxonomy& t) {
  in >> std::ws;
  if (in.peek() == '{') return detail::read_restrictions_json(in, t);

  RestrictionSet srs;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view view(raw);
    if (view.rfind("# selres ", 0) == 0) {
      for (auto field : text::fields(view.substr(9))) {
        const auto eq = field.find('=');
        if (eq != std::string_view::npos) {
          detail::apply_provenance(srs.provenance, field.substr(0, eq), field.substr(eq + 1));
        }
      }
      continue;
    }
    const auto line = text::strip_comment(view);
    if (line.empty() || line == kRestrictionColumns) continue;
    const auto f = text::fields(line);
    if (f.size() != 5) throw DataError("expected 5 SR fields", line_no);
    double score = 0.0;
    try {
      std::size_t used = 0;
      score = std::stod(std::string(f[3]), &used);
      if (used != f[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError("bad score '" + std::string(f[3]) + "'", line_no);
    }
    const auto support = text::parse_count(f[4]);
    if (!support) throw DataError("bad support '" + std::string(f[4]) + "'", line_no);
    detail::add_restriction(srs, t, Context{std::string(f[0]), std::string(f[1])}, f[2], score,
                            *support, line_no);
  }
  return srs;
}

inline constexpr std::string_view kReportColumns =
    "coverage\tabstraction\tprecision\trecall\ttotal\tdecided\tmatched\tcovered\tcovered_senses\tcorrect_covered";

inline void write_report_row(std::ostream& out, const EvaluationReport& r) {
  out << text::format_real(r.coverage()) << '\t' << text::format_real(r.abstraction()) << '\t'
      << text::format_real(r.precision()) << '\t' << text::format_real(r.recall()) << '\t' << r.total
      << '\t' << r.decided << '\t' << r.matched << '\t' << r.covered << '\t' << r.covered_senses
      << '\t' << r.correct_covered << '\n';
}

inline void write_report_tsv(std::ostream& out, const EvaluationReport& r, const Provenance& p) {
  write_provenance(out, "report", p);
  out << kReportColumns << '\n';
  write_report_row(out, r);
}

inline nlohmann::ordered_json report_json(const EvaluationReport& r) {
  return {{"coverage", r.coverage()},       {"abstraction", r.abstraction()},
          {"precision", r.precision()},     {"recall", r.recall()},
          {"total", r.total},               {"decided", r.decided},
          {"matched", r.matched},           {"covered", r.covered},
          {"covered_senses", r.covered_senses}, {"correct_covered", r.correct_covered}};
}

inline void write_report_json(std::ostream& out, const EvaluationReport& r, const Provenance& p) {
  nlohmann::ordered_json doc;
  doc["provenance"] = provenance_json("report", p);
  doc["report"] = report_json(r);
  out << doc.dump(2) << '\n';
}

inline void write_sweep_tsv(std::ostream& out, const std::vector<SweepRow>& rows, const Provenance& p) {
  write_provenance(out, "sweep", p);
  out << "threshold\tcoverage\tabstraction\tprecision\trecall\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << row.threshold << '\t' << text::format_real(r.coverage()) << '\t'
        << text::format_real(r.abstraction()) << '\t' << text::format_real(r.precision()) << '\t'
        << text::format_real(r.recall()) << '\n';
  }
}

inline void write_sweep_json(std::ostream& out, const std::vector<SweepRow>& rows, const Provenance& p) {
  nlohmann::ordered_json doc;
  doc["provenance"] = provenance_json("sweep", p);
  auto& arr = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    auto j = report_json(row.report);
    j["threshold"] = row.threshold;
    arr.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

// Estimator tables: event, class, weighted frequency. Events are
// "ctx:<verb>/<relation>", "rel:<relation>", "heads" and, with unigrams,
// "unigrams".
inline void write_frequencies_tsv(std::ostream& out, const EstimationModel& model, const Provenance& p) {
  const auto& t = model.taxonomy();
  write_provenance(out, "frequencies", p);
  out << "event\tclass\tweighted_frequency\n";
  auto dump = [&](const std::string& event, const MassTable& table) {
    for (const auto& [c, m] : table.entries()) {
      out << event << '\t' << t.name(c) << '\t' << text::format_real(m.weighted) << '\n';
    }
  };
  std::set<std::string> relations;
  for (const auto& [ctx, counts] : model.corpus().contexts()) {
    dump("ctx:" + ctx.verb + "/" + ctx.relation, model.context_table(ctx));
    relations.insert(ctx.relation);
  }
  for (const auto& rel : relations) dump("rel:" + rel, model.relation_table(rel));
  dump("heads", model.heads_table());
  if (model.has_unigrams()) dump("unigrams", model.unigram_table());
}

inline void write_candidates_tsv(std::ostream& out, const std::vector<ContextCandidates>& all,
                                 const Taxonomy& t, const Provenance& p) {
  write_provenance(out, "candidates", p);
  out << "verb\trelation\tclass\tscore\tsupport\tselected\n";
  for (const auto& cc : all) {
    for (std::size_t i = 0; i < cc.scored.size(); ++i) {
      const auto& c = cc.scored[i];
      out << cc.context.verb << '\t' << cc.context.relation << '\t' << t.name(c.cls) << '\t'
          << text::format_real(c.score) << '\t' << c.support << '\t' << (cc.selected[i] ? 1 : 0)
          << '\n';
    }
  }
}

}  // namespace selres
