#include <gtest/gtest.h>

#include <cmath>

#include "selres/measures.hpp"
#include "support.hpp"

// Frozen values from tests/oracle/toy_oracle.py.

namespace selres {
namespace {

using testing::toy_corpus;
using testing::toy_taxonomy;

class MeasuresToy2 : public ::testing::Test {
 protected:
  Taxonomy t = toy_taxonomy();
  TripleCorpus c = toy_corpus(t, 2);
  EstimationModel m{c, t, WeightingScheme::Global};

  CrossTable table(const char* verb, const char* cls) {
    return build_cross_table(m, Context{verb, "obj"}, t.id(cls), PriorKind::Positional);
  }
};

TEST_F(MeasuresToy2, CrossTableCells) {
  const auto ct = table("pet", "A");
  EXPECT_NEAR(ct.k11, 12.0 / 7.0, 1e-12);
  EXPECT_NEAR(ct.k12, 0.0, 1e-12);
  EXPECT_NEAR(ct.k21, 24.0 / 7.0, 1e-12);
  EXPECT_NEAR(ct.k22, 6.0 / 7.0, 1e-12);
  EXPECT_NEAR(ct.n(), 6.0, 1e-12);
  EXPECT_NEAR(ct.p_c() + ct.p_notc(), 1.0, 1e-15);
}

TEST_F(MeasuresToy2, UnseenClassHasZeroJointCell) {
  const auto ct = build_cross_table(m, Context{"pet", "obj"}, t.id("B"), PriorKind::Positional);
  EXPECT_EQ(ct.k11, 0.0);
  EXPECT_NEAR(ct.k12, ct.row1(), 1e-12);
  EXPECT_EQ(assoc_score(ct), 0.0);
  EXPECT_FALSE(pmi_score(ct).has_value());
}

TEST(MeasuresToy1, RootAbsorbsEverything) {
  const auto t = toy_taxonomy();
  const auto c = toy_corpus(t, 1);
  const EstimationModel m(c, t, WeightingScheme::Global);
  const auto ct = build_cross_table(m, Context{"feed", "obj"}, t.root(), PriorKind::Positional);
  EXPECT_EQ(ct.k12, 0.0);
  EXPECT_EQ(ct.k22, 0.0);
  EXPECT_FALSE(phi2_score(ct).has_value());
}

TEST_F(MeasuresToy2, Assoc) {
  EXPECT_NEAR(assoc_score(table("feed", "A")), -0.079628538841, 1e-9);
  EXPECT_NEAR(assoc_score(table("pet", "A")), 0.222392421336, 1e-9);
}

TEST_F(MeasuresToy2, Pmi) {
  EXPECT_NEAR(*pmi_score(table("feed", "A")), -0.099535673551, 1e-9);
  EXPECT_NEAR(*pmi_score(table("pet", "A")), 0.222392421336, 1e-9);
}

TEST_F(MeasuresToy2, LogLikelihood) { EXPECT_NEAR(loglik_score(table("pet", "A")), 0.632232189134, 1e-9); }

TEST_F(MeasuresToy2, PhiSquared) { EXPECT_NEAR(*phi2_score(table("pet", "A")), 1.0 / 15.0, 1e-12); }

TEST_F(MeasuresToy2, RelativeEntropy) {
  EXPECT_NEAR(relent_score(table("pet", "A")), 0.222392421336, 1e-9);
  EXPECT_NEAR(relent_score(table("feed", "A")), 0.017456826593, 1e-9);
}

TEST(MeasuresTest, DegenerateLogLikelihoodIsFiniteAndPositive) {
  // c coextensive with v_s: pet/obj sees only dog (a1), feed/obj only bat.
  const auto t = toy_taxonomy();
  const auto c = testing::corpus_from("pet\tobj\tdog\nfeed\tobj\tbat\n", t);
  const EstimationModel m(c, t, WeightingScheme::Global);
  const auto ct = build_cross_table(m, Context{"pet", "obj"}, t.id("a1"), PriorKind::Positional);
  EXPECT_NEAR(ct.k11, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(ct.k12, 0.0);
  EXPECT_NEAR(ct.k21, 0.0, 1e-12);
  const double g2 = loglik_score(ct);
  EXPECT_TRUE(std::isfinite(g2));
  EXPECT_NEAR(g2, 2.546056673179, 1e-9);
  EXPECT_NEAR(*phi2_score(ct), 1.0, 1e-12);
}

TEST(MeasuresTest, IndependenceZeroesEveryMeasure) {
  // k_ij = row_i col_j / N with rows (3, 9) and columns (4, 8).
  const CrossTable ct{1.0, 2.0, 3.0, 6.0};
  EXPECT_NEAR(assoc_score(ct), 0.0, 1e-15);
  EXPECT_NEAR(*pmi_score(ct), 0.0, 1e-15);
  EXPECT_NEAR(loglik_score(ct), 0.0, 1e-12);
  EXPECT_NEAR(*phi2_score(ct), 0.0, 1e-15);
  EXPECT_NEAR(relent_score(ct), 0.0, 1e-12);
}

TEST(MeasuresTest, PerfectAssociationHasUnitPhi2) {
  const CrossTable ct{5.0, 0.0, 0.0, 7.0};
  EXPECT_DOUBLE_EQ(*phi2_score(ct), 1.0);
}

TEST(MeasuresTest, ZeroPriorWithPositivePosteriorIsUndefined) {
  CrossTable ct;
  ct.k11 = 1.0;  // built by hand; from_margins would reject it
  ct.k21 = -1.0;
  ct.k22 = 5.0;
  EXPECT_THROW(assoc_score(ct), UndefinedAssociationError);
  EXPECT_THROW(relent_score(ct), UndefinedAssociationError);
}

TEST(MeasuresTest, NegativeCellsSignalIncompatiblePrior) {
  EXPECT_THROW(CrossTable::from_margins(4.0, 5.0, 2.0, 10.0), IncompatiblePriorError);
  EXPECT_THROW(CrossTable::from_margins(1.0, 5.0, 2.0, 3.0), IncompatiblePriorError);
}

TEST(MeasuresTest, AllNounsPriorDisjointFromCorpusIsIncompatible) {
  const auto t = toy_taxonomy();
  const auto c = toy_corpus(t, 2);
  UnigramTable u;
  u.add("bat", 1);
  const EstimationModel m(c, t, WeightingScheme::Global, &u);
  EXPECT_THROW(build_cross_table(m, Context{"feed", "obj"}, t.id("a1"), PriorKind::AllNouns),
               IncompatiblePriorError);
}

TEST(MeasuresTest, LogBaseRescalesWithoutReordering) {
  const CrossTable ct{3.0, 1.0, 2.0, 6.0};
  EXPECT_NEAR(assoc_score(ct, std::exp(1.0)), assoc_score(ct, 2.0) * std::log(2.0), 1e-12);
}

TEST(MeasuresTest, ScoreDispatch) {
  const CrossTable ct{3.0, 1.0, 2.0, 6.0};
  EXPECT_EQ(*score(MeasureKind::Assoc, ct), assoc_score(ct));
  EXPECT_EQ(*score(MeasureKind::Pmi, ct), *pmi_score(ct));
  EXPECT_EQ(*score(MeasureKind::LogLik, ct), loglik_score(ct));
  EXPECT_EQ(*score(MeasureKind::Phi2, ct), *phi2_score(ct));
  EXPECT_EQ(*score(MeasureKind::RelEnt, ct), relent_score(ct));
}

}  // namespace
}  // namespace selres
