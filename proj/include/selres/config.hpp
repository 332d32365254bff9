#pragma once

// Textual names for the enumerated options, as used on the command line and
// in provenance headers.

#include <optional>
#include <string>
#include <string_view>

#include "selres/estimator.hpp"
#include "selres/measures.hpp"

namespace selres {

inline std::string_view to_string(MeasureKind m) {
  switch (m) {
    case MeasureKind::Assoc: return "assoc";
    case MeasureKind::Pmi: return "pmi";
    case MeasureKind::LogLik: return "loglik";
    case MeasureKind::Phi2: return "phi2";
    case MeasureKind::RelEnt: return "relent";
  }
  return "?";
}

inline std::string_view to_string(PriorKind p) {
  switch (p) {
    case PriorKind::Positional: return "positional";
    case PriorKind::Heads: return "heads";
    case PriorKind::AllNouns: return "allnouns";
  }
  return "?";
}

inline std::string_view to_string(WeightingScheme w) {
  switch (w) {
    case WeightingScheme::Global: return "global";
    case WeightingScheme::Local: return "local";
  }
  return "?";
}

inline std::optional<MeasureKind> parse_measure(std::string_view s) {
  for (auto m : {MeasureKind::Assoc, MeasureKind::Pmi, MeasureKind::LogLik, MeasureKind::Phi2,
                 MeasureKind::RelEnt}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

inline std::optional<PriorKind> parse_prior(std::string_view s) {
  for (auto p : {PriorKind::Positional, PriorKind::Heads, PriorKind::AllNouns}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

inline std::optional<WeightingScheme> parse_weighting(std::string_view s) {
  for (auto w : {WeightingScheme::Global, WeightingScheme::Local}) {
    if (to_string(w) == s) return w;
  }
  return std::nullopt;
}

}  // namespace selres
