#include <gtest/gtest.h>

#include "oracle.hpp"
#include "possibilistic/entailment.hpp"
#include "possibilistic/utility.hpp"
#include "possibilistic/worked_example.hpp"

using namespace possibilistic;

namespace {

std::vector<Rational> raw(const PossibilityDistribution& pi) {
  std::vector<Rational> out;
  for (const auto& l : pi.values()) out.push_back(pi.scale().value(l));
  return out;
}

BinaryUtility bu(const Scale& s, const char* l, const char* m) { return BinaryUtility::make(s.parse(l), s.parse(m)); }

}  // namespace

TEST(Pessimistic, WorkedValues) {
  const auto ex = make_worked_example();
  EXPECT_EQ(ex.u.label(qu_minus(ex.pi1, ex.config)), ".5");
  EXPECT_EQ(ex.u.label(qu_minus(ex.pi2, ex.config)), "0");
  EXPECT_EQ(qu_minus(point_mass(ex.labels, ex.v, 0), ex.config), ex.u.top());
  const auto ignorance = mixture(ex.v.top(), point_mass(ex.labels, ex.v, 0), ex.v.top(), point_mass(ex.labels, ex.v, 3));
  EXPECT_EQ(qu_minus(ignorance, ex.config), ex.u.bottom());
  EXPECT_EQ(ex.u.label(ex.config.nh(ex.v.parse(".7"))), ".3");
  EXPECT_EQ(ex.u.label(ex.config.nh(ex.v.parse(".5"))), ".5");
}

TEST(Pessimistic, DecompositionWorkedCase) {
  const auto ex = make_worked_example();
  const auto best = point_mass(ex.labels, ex.v, 0), worst = point_mass(ex.labels, ex.v, 3);
  EXPECT_EQ(qu_minus_via_decomposition(ex.v.top(), best, ex.v.top(), worst, ex.config), ex.u.bottom());
  for (const Level& mu : ex.v.levels()) {
    EXPECT_EQ(qu_minus_via_decomposition(ex.v.top(), ex.pi1, mu, ex.pi1, ex.config), qu_minus(ex.pi1, ex.config));
  }
}

TEST(Optimistic, WorkedValues) {
  const auto ex = make_worked_example();
  const auto best = point_mass(ex.labels, ex.v, 0), worst = point_mass(ex.labels, ex.v, 3);
  EXPECT_EQ(qu_plus(worst, ex.config), ex.u.bottom());
  for (const Level& mu : ex.v.levels()) EXPECT_EQ(qu_plus(mixture(ex.v.top(), best, mu, worst), ex.config), ex.u.top());
  EXPECT_EQ(ex.u.label(qu_plus(mixture(ex.v.parse(".7"), best, ex.v.top(), worst), ex.config)), ".5");
  // (λ/x̄, μ/x̲) reaches QU⁺(x̄) = 1 only when λ = 1.
  EXPECT_NE(qu_plus(mixture(ex.v.parse(".5"), best, ex.v.top(), worst), ex.config), qu_plus(best, ex.config));
}

TEST(PessimisticOptimistic, MatchRationalOracleOverWorkedUniverse) {
  const auto ex = make_worked_example();
  auto table = [&](const LevelMap& m) {
    return [&m](const Rational& r) {
      const Scale& from = m.from();
      return m.to().value(m(*from.find_value(r)));
    };
  };
  const auto h = table(ex.h);
  auto nh = [&](const Rational& r) { return ex.u.value(ex.config.nh(*ex.v.find_value(r))); };
  std::vector<Rational> u;
  for (const auto& l : ex.config.utility()) u.push_back(ex.u.value(l));
  for (const auto& pi : enumerate_distributions(ex.labels, ex.v)) {
    EXPECT_EQ(ex.u.value(qu_minus(pi, ex.config)), oracle::qu_minus(raw(pi), u, nh));
    EXPECT_EQ(ex.u.value(qu_plus(pi, ex.config)), oracle::qu_plus(raw(pi), u, h));
  }
}

TEST(PessOptConfig, RejectsInconsistentTables) {
  const auto ex = make_worked_example();
  const auto& u = ex.u;
  EXPECT_THROW(PessOptConfig(ex.outcomes, ex.v, u, {u.parse("1"), u.parse(".3"), u.parse(".5"), u.parse("0")}, ex.n, ex.h),
               ValidationError);
  EXPECT_THROW(PessOptConfig(ex.outcomes, ex.v, u, {u.parse(".5"), u.parse(".5"), u.parse(".3"), u.parse("0")}, ex.n, ex.h),
               ValidationError);
  const auto bad_n = Involution::from_labels(u, {{"1", "0"}, {".5", ".5"}, {".3", ".3"}, {"0", "1"}});
  EXPECT_THROW(PessOptConfig(ex.outcomes, ex.v, u, ex.config.utility(), bad_n, ex.h), ValidationError);
  const auto not_onto = ScaleMap::from_labels(ex.v, u, {{"1", "1"}, {".7", "1"}, {".5", ".3"}, {"0", "0"}});
  EXPECT_THROW(PessOptConfig(ex.outcomes, ex.v, u, ex.config.utility(), ex.n, not_onto), ValidationError);
}

TEST(Binary, WorkedValues) {
  const auto ex = make_worked_example();
  for (const auto* a : {&ex.assessment, &ex.pessimistic_assessment}) {
    EXPECT_EQ(format_binary(ex.v, qu_binary(ex.pi1, *a)), "⟨1,.5⟩");
    EXPECT_EQ(format_binary(ex.v, qu_binary(ex.pi2, *a)), "⟨1,1⟩");
  }
  EXPECT_EQ(format_binary(ex.v, qu_binary(point_mass(ex.labels, ex.v, 0), ex.assessment)), "⟨1,0⟩");
}

TEST(Binary, StandardLotteriesEvaluateToTheirOwnPair) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const Scale v = standard_scale(n, "V");
    const auto xs = outcome_labels(3);
    const auto outcomes = OutcomeSet::strict(xs);
    const auto a = enumerate_assessments(outcomes, v).front();
    for (const auto& s : standard_lotteries(v)) {
      const auto pi = s.to_distribution(outcomes, v);
      const auto got = qu_binary(pi, a);
      EXPECT_EQ(got.lambda(), s.lambda());
      EXPECT_EQ(got.mu(), s.mu());
    }
  }
}

TEST(Binary, MatchesRationalOracleForEveryAssessment) {
  const Scale v = standard_scale(3, "V");
  const auto xs = outcome_labels(3);
  for (const auto& o : enumerate_preorders(xs)) {
    for (Anchoring anchoring : {Anchoring::standard, Anchoring::pessimistic, Anchoring::optimistic}) {
      for (const auto& a : enumerate_assessments(o, v, anchoring)) {
        std::vector<oracle::Pair> u;
        for (const auto& b : a.utility()) u.push_back({v.value(b.lambda()), v.value(b.mu())});
        for (const auto& pi : enumerate_distributions(xs, v)) {
          const auto got = qu_binary(pi, a);
          const auto expected = oracle::qu(raw(pi), u);
          EXPECT_EQ(v.value(got.lambda()), expected.lambda);
          EXPECT_EQ(v.value(got.mu()), expected.mu);
        }
      }
    }
  }
}

TEST(Binary, ReductionToStandardLottery) {
  const auto ex = make_worked_example();
  const auto s = reduce_to_standard(ex.pi1, ex.assessment);
  EXPECT_EQ(ex.v.label(s.lambda()), "1");
  EXPECT_EQ(ex.v.label(s.mu()), ".5");
  for (std::size_t x = 0; x < ex.labels.size(); ++x) {
    const auto r = reduce_to_standard(point_mass(ex.labels, ex.v, x), ex.assessment);
    EXPECT_EQ(r.lambda(), ex.assessment.utility(x).lambda());
    EXPECT_EQ(r.mu(), ex.assessment.utility(x).mu());
  }
  const auto ignorance = mixture(ex.v.top(), point_mass(ex.labels, ex.v, 0), ex.v.top(), point_mass(ex.labels, ex.v, 3));
  const auto both = reduce_to_standard(ignorance, ex.assessment);
  EXPECT_TRUE(both.lambda().is_top());
  EXPECT_TRUE(both.mu().is_top());
}

TEST(Binary, AssessmentValidation) {
  const auto ex = make_worked_example();
  const Scale& v = ex.v;
  // standard anchors required by default
  EXPECT_THROW(BasicUtilityAssessment(ex.outcomes, v, {bu(v, "1", "0"), bu(v, "1", ".5"), bu(v, "1", ".7"), bu(v, "1", "1")}),
               ValidationError);
  // order must follow the prizes
  EXPECT_THROW(BasicUtilityAssessment(ex.outcomes, v, {bu(v, "1", "0"), bu(v, "1", ".7"), bu(v, "1", ".5"), bu(v, "0", "1")}),
               ValidationError);
  // ties between strictly ranked prizes
  EXPECT_THROW(BasicUtilityAssessment(ex.outcomes, v, {bu(v, "1", "0"), bu(v, "1", ".5"), bu(v, "1", ".5"), bu(v, "0", "1")}),
               ValidationError);
  EXPECT_THROW(BasicUtilityAssessment(ex.outcomes, v, {bu(v, "1", "0"), bu(v, "1", ".5"), bu(v, ".5", "1"), bu(v, "1", "1")},
                                      Anchoring::pessimistic),
               ValidationError);
  EXPECT_EQ(infer_anchoring(ex.outcomes, ex.pessimistic_assessment.utility()), Anchoring::pessimistic);
  EXPECT_EQ(infer_anchoring(ex.outcomes, ex.assessment.utility()), Anchoring::standard);
}

TEST(Binary, PessimisticHalfAgreesWithPessimisticUtility) {
  // B⁻ assessments u(x) = ⟨1, μ_x⟩ order lotteries like QU⁻ with U = V,
  // h the identity, n the reversal and u(x) = n(μ_x).
  const Scale v = standard_scale(4, "V");
  const auto xs = outcome_labels(3);
  const auto n = Involution::reversal(v);
  for (const auto& o : enumerate_preorders(xs)) {
    for (const auto& a : enumerate_assessments(o, v, Anchoring::pessimistic)) {
      std::vector<Level> u;
      for (const auto& b : a.utility()) u.push_back(n(b.mu()));
      const PessOptConfig cfg(o, v, v, u, n, ScaleMap::identity(v));
      const auto all = enumerate_distributions(xs, v);
      for (const auto& p : all) {
        for (const auto& q : all) {
          EXPECT_EQ(compare_binary(qu_binary(p, a), qu_binary(q, a)) >= 0, qu_minus(p, cfg) >= qu_minus(q, cfg));
        }
      }
    }
  }
}

TEST(Ranking, OrdersAndGroupsTies) {
  const auto ex = make_worked_example();
  const std::vector<std::pair<std::string, PossibilityDistribution>> items = {{"pi2", ex.pi2}, {"pi1", ex.pi1}};
  for (const UtilityMethod& m : {UtilityMethod{BinaryMethod{ex.assessment}}, UtilityMethod{PessimisticMethod{ex.config}}}) {
    const auto r = rank_decisions(items, m);
    ASSERT_EQ(r.classes.size(), 2u);
    EXPECT_EQ(r.classes[0].ids, std::vector<std::string>{"pi1"});
    EXPECT_EQ(r.classes[1].ids, std::vector<std::string>{"pi2"});
  }
  const auto best = point_mass(ex.labels, ex.v, 0), worst = point_mass(ex.labels, ex.v, 3);
  const auto ignorance = mixture(ex.v.top(), best, ex.v.top(), worst);
  const std::vector<std::pair<std::string, PossibilityDistribution>> anomaly = {{"ignorance", ignorance},
                                                                                {"worst", worst}};
  const auto tied = rank_decisions(anomaly, PessimisticMethod{ex.config});
  ASSERT_EQ(tied.classes.size(), 1u);
  EXPECT_EQ(tied.classes[0].ids, (std::vector<std::string>{"ignorance", "worst"}));
  const auto strict = rank_decisions(anomaly, BinaryMethod{ex.assessment});
  ASSERT_EQ(strict.classes.size(), 2u);
  EXPECT_EQ(strict.classes[0].ids, std::vector<std::string>{"ignorance"});

  const Scale other = Scale::from_labels({"0", ".5", ".7", "1"});
  const std::vector<std::pair<std::string, PossibilityDistribution>> mixed = {{"a", ex.pi1},
                                                                              {"b", point_mass(ex.labels, other, 0)}};
  EXPECT_THROW(rank_decisions(mixed, BinaryMethod{ex.assessment}), DomainMismatch);
}
