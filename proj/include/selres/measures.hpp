#pragma once

// 2x2 cross-table of a context v_s against a class c, and the association
// measures computed from it.
//
//              c       not c
//   v_s        k11     k12      row1
//   not v_s    k21     k22      row2
//              col1    col2     N

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "selres/error.hpp"
#include "selres/estimator.hpp"

namespace selres {

enum class MeasureKind { Assoc, Pmi, LogLik, Phi2, RelEnt };

// Base of the information-theoretic logs (assoc, pmi, relent). G^2 always
// uses natural logs.
inline constexpr double kDefaultLogBase = 2.0;

struct CrossTable {
  double k11 = 0.0;
  double k12 = 0.0;
  double k21 = 0.0;
  double k22 = 0.0;

  double row1() const noexcept { return k11 + k12; }
  double row2() const noexcept { return k21 + k22; }
  double col1() const noexcept { return k11 + k21; }
  double col2() const noexcept { return k12 + k22; }
  double n() const noexcept { return k11 + k12 + k21 + k22; }

  double p_c_given_vs() const noexcept { return k11 / row1(); }
  double p_notc_given_vs() const noexcept { return k12 / row1(); }
  double p_c_given_notvs() const noexcept { return k21 / row2(); }
  double p_notc_given_notvs() const noexcept { return k22 / row2(); }
  double p_c() const noexcept { return col1() / n(); }
  double p_notc() const noexcept { return col2() / n(); }

  // Builds the table from the joint mass k11, the context mass row1, the
  // class mass col1 and the total N. Rounding residue below a relative 1e-9
  // of N is clamped to zero; anything more negative means the prior source
  // does not contain the corpus.
  static CrossTable from_margins(double k11, double row1, double col1, double n) {
    const double tol = 1e-9 * std::max(n, 1.0);
    auto cell = [tol](double v, const char* name) {
      if (v < -tol) {
        throw IncompatiblePriorError(std::string("negative cross-table cell ") + name +
                                     " (prior source inconsistent with the corpus)");
      }
      return v < 0.0 ? 0.0 : v;
    };
    CrossTable t;
    t.k11 = cell(k11, "k11");
    t.k12 = cell(row1 - k11, "k12");
    t.k21 = cell(col1 - k11, "k21");
    t.k22 = cell(n - row1 - col1 + k11, "k22");
    return t;
  }
};

inline CrossTable build_cross_table(const EstimationModel& model, const Context& ctx, ClassId c,
                                    PriorKind prior) {
  const auto& table = model.context_table(ctx);
  const double k11 = table.weighted(c);
  const double row1 = table.weighted(model.taxonomy().root());
  const auto mass = model.prior_mass(c, ctx.relation, prior);
  return CrossTable::from_margins(k11, row1, mass.numerator, mass.root);
}

namespace detail {

inline double log_in(double x, double base) { return std::log(x) / std::log(base); }

// p * log(p / q) with 0 log 0 = 0.
inline double plogpq(double p, double q, double base) {
  if (p <= 0.0) return 0.0;
  if (q <= 0.0) throw UndefinedAssociationError("positive posterior against a zero prior");
  return p * log_in(p / q, base);
}

}  // namespace detail

// p(c|v_s) * log(p(c|v_s) / p(c)). The prior is whatever the table's column
// margin encodes: p(c|s) for a positional table, p(c) otherwise.
inline double assoc_score(const CrossTable& ct, double log_base = kDefaultLogBase) {
  return detail::plogpq(ct.p_c_given_vs(), ct.p_c(), log_base);
}

// log(p(c|v_s) / p(c)); nullopt for an unattested class (zero posterior).
inline std::optional<double> pmi_score(const CrossTable& ct, double log_base = kDefaultLogBase) {
  const double p = ct.p_c_given_vs();
  if (!(p > 0.0)) return std::nullopt;
  const double q = ct.p_c();
  if (!(q > 0.0)) throw UndefinedAssociationError("positive posterior against a zero prior");
  return detail::log_in(p / q, log_base);
}

// Dunning's G^2 = 2 sum k_ij ln(k_ij / E_ij), E_ij = row_i col_j / N.
inline double loglik_score(const CrossTable& ct) {
  const double n = ct.n();
  if (!(n > 0.0)) return 0.0;
  const double cells[2][2] = {{ct.k11, ct.k12}, {ct.k21, ct.k22}};
  const double rows[2] = {ct.row1(), ct.row2()};
  const double cols[2] = {ct.col1(), ct.col2()};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double k = cells[i][j];
      if (k <= 0.0) continue;
      sum += k * std::log(k * n / (rows[i] * cols[j]));
    }
  }
  // Rounding can leave a tiny negative residue on near-independent tables.
  return std::max(0.0, 2.0 * sum);
}

// (k11 k22 - k12 k21)^2 / (row1 row2 col1 col2); nullopt when a margin is 0.
inline std::optional<double> phi2_score(const CrossTable& ct) {
  const double denom = ct.row1() * ct.row2() * ct.col1() * ct.col2();
  if (!(denom > 0.0)) return std::nullopt;
  const double num = ct.k11 * ct.k22 - ct.k12 * ct.k21;
  return std::min(1.0, num * num / denom);
}

// D(P(X|v_s) || P(X)) over X in {c, not c}.
inline double relent_score(const CrossTable& ct, double log_base = kDefaultLogBase) {
  const double d = detail::plogpq(ct.p_c_given_vs(), ct.p_c(), log_base) +
                   detail::plogpq(ct.p_notc_given_vs(), ct.p_notc(), log_base);
  return std::max(0.0, d);
}

// Dispatches on the measure; nullopt marks an unattested class, which the
// learner leaves out of the ranking.
inline std::optional<double> score(MeasureKind kind, const CrossTable& ct,
                                   double log_base = kDefaultLogBase) {
  switch (kind) {
    case MeasureKind::Assoc: return assoc_score(ct, log_base);
    case MeasureKind::Pmi: return pmi_score(ct, log_base);
    case MeasureKind::LogLik: return loglik_score(ct);
    case MeasureKind::Phi2: return phi2_score(ct);
    case MeasureKind::RelEnt: return relent_score(ct, log_base);
  }
  return std::nullopt;
}

}  // namespace selres
