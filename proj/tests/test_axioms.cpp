#include <gtest/gtest.h>

#include "possibilistic/axioms.hpp"
#include "possibilistic/entailment.hpp"
#include "possibilistic/worked_example.hpp"

using namespace possibilistic;

namespace {

struct Worked {
  WorkedExample ex = make_worked_example();
  std::shared_ptr<const LotteryUniverse> universe = LotteryUniverse::make(ex.outcomes, ex.v);

  std::size_t ignorance() const { return universe->standard(ex.v.size() - 1, ex.v.size() - 1); }
  std::size_t worst() const { return universe->point_mass(ex.outcomes.worst()); }
  std::size_t best() const { return universe->point_mass(ex.outcomes.best()); }
};

PreferenceRelation empty_relation(const std::shared_ptr<const LotteryUniverse>& u) { return PreferenceRelation(u); }

void expect_replays(const PreferenceRelation& r, const AxiomReport& rep) {
  ASSERT_FALSE(rep.satisfied);
  ASSERT_TRUE(rep.witness);
  EXPECT_TRUE(replay_witness(r, rep)) << format_witness(r.universe(), *rep.witness);
}

}  // namespace

TEST(Universe, IndexesMembersAndMixtures) {
  const Worked w;
  const auto& u = *w.universe;
  EXPECT_EQ(u.size(), 175u);
  EXPECT_EQ(u.standard_members().size(), 7u);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(u.index_of(u.member(i)), i);
  EXPECT_TRUE(u.in_b_minus(w.ignorance()));
  EXPECT_TRUE(u.in_b_plus(w.ignorance()));
  EXPECT_TRUE(u.in_b_minus(w.best()));
  EXPECT_FALSE(u.in_b_plus(w.best()));
  const Scale& v = u.scale();
  for (std::size_t a = 0; a < u.size(); a += 7) {
    for (std::size_t b = 0; b < u.size(); b += 5) {
      for (const auto& [l, m] : all_weight_pairs(v)) {
        EXPECT_EQ(u.mix(l, a, m, b), *u.index_of(mixture(v.at(l), u.member(a), v.at(m), u.member(b))));
      }
    }
  }
}

TEST(InducedRelation, TinyBinaryCase) {
  const auto xs = LabelSet::make({"top", "bottom"}, "outcome");
  const auto o = OutcomeSet::strict(xs);
  const Scale v = Scale::from_labels({"0", "1"}, "V");
  const BasicUtilityAssessment a(o, v, {BinaryUtility::make(v.top(), v.bottom()), BinaryUtility::make(v.bottom(), v.top())});
  const auto u = LotteryUniverse::make(o, v);
  ASSERT_EQ(u->size(), 3u);
  const auto r = induced_relation(u, BinaryMethod{a});
  const std::size_t top = u->point_mass(0), mid = u->standard(1, 1), bottom = u->point_mass(1);
  EXPECT_TRUE(r.strictly(top, mid));
  EXPECT_TRUE(r.strictly(mid, bottom));
  EXPECT_TRUE(r.strictly(top, bottom));
}

TEST(InducedRelation, WorkedPreferenceAndReflexivity) {
  const Worked w;
  const std::size_t p1 = *w.universe->index_of(w.ex.pi1), p2 = *w.universe->index_of(w.ex.pi2);
  for (const UtilityMethod& m : {UtilityMethod{PessimisticMethod{w.ex.config}}, UtilityMethod{BinaryMethod{w.ex.assessment}}}) {
    const auto r = induced_relation(w.universe, m);
    EXPECT_TRUE(r.holds(p1, p2));
    EXPECT_FALSE(r.holds(p2, p1));
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_TRUE(r.holds(i, i));
  }
  const auto other = LotteryUniverse::make(w.ex.outcomes, Scale::from_labels({"0", ".5", ".7", "1"}));
  EXPECT_THROW(induced_relation(other, BinaryMethod{w.ex.assessment}), ScaleMismatch);
}

TEST(TotalPreorder, DetectsEachFailureKind) {
  const Worked w;
  const auto r = induced_relation(w.universe, PessimisticMethod{w.ex.config});
  EXPECT_TRUE(check_total_preorder(r).satisfied);

  const auto none = empty_relation(w.universe);
  const auto rep = check_total_preorder(none);
  ASSERT_FALSE(rep.satisfied);
  EXPECT_EQ(rep.witness->property, "reflexivity");
  EXPECT_EQ(rep.witness->members, std::vector<std::size_t>{0});

  const auto small = LotteryUniverse::make(OutcomeSet::strict(LabelSet::make({"a", "b"})), Scale::from_labels({"0", "1"}));
  PreferenceRelation cyc(small);
  for (std::size_t i = 0; i < 3; ++i) cyc.set(i, i, true);
  cyc.set(0, 1, true);
  cyc.set(1, 2, true);
  cyc.set(2, 0, true);
  const auto t = check_total_preorder(cyc);
  ASSERT_FALSE(t.satisfied);
  EXPECT_EQ(t.witness->property, "transitivity");
  expect_replays(cyc, t);

  PreferenceRelation gap(small);
  for (std::size_t i = 0; i < 3; ++i) gap.set(i, i, true);
  const auto c = check_total_preorder(gap);
  EXPECT_EQ(c.witness->property, "completeness");
  expect_replays(gap, c);
}

TEST(Attitude, WorkedRelations) {
  const Worked w;
  EXPECT_TRUE(check_uncertainty_attitude(induced_relation(w.universe, PessimisticMethod{w.ex.config}), Attitude::aversion).satisfied);
  EXPECT_TRUE(check_uncertainty_attitude(induced_relation(w.universe, OptimisticMethod{w.ex.config}), Attitude::attraction).satisfied);

  const auto r = induced_relation(w.universe, BinaryMethod{w.ex.assessment});
  const auto averse = check_uncertainty_attitude(r, Attitude::aversion);
  expect_replays(r, averse);
  EXPECT_TRUE(attitude_violation(r, w.worst(), w.ignorance(), Attitude::aversion));
  expect_replays(r, check_uncertainty_attitude(r, Attitude::attraction));
}

TEST(Substitutability, InducedRelationsPassAndPerturbationFails) {
  const Worked w;
  const auto weights = all_weight_pairs(w.ex.v);
  EXPECT_EQ(weights.size(), 7u);
  for (const UtilityMethod& m : {UtilityMethod{PessimisticMethod{w.ex.config}}, UtilityMethod{OptimisticMethod{w.ex.config}},
                                 UtilityMethod{BinaryMethod{w.ex.assessment}}}) {
    EXPECT_TRUE(check_substitutability(induced_relation(w.universe, m), weights).satisfied);
  }
  // Equate the two anchors; mixing each with x̲ at (1, 1) keeps them apart.
  auto r = induced_relation(w.universe, BinaryMethod{w.ex.assessment});
  r.set(w.worst(), w.best(), true);
  const auto rep = check_substitutability(r, weights);
  EXPECT_EQ(rep.witness->property, "substitutability");
  expect_replays(r, rep);
  EXPECT_THROW(check_substitutability(r, {{1, 2}}), ValidationError);
}

TEST(Continuity, VariantsOnWorkedRelations) {
  const Worked w;
  const auto minus = induced_relation(w.universe, PessimisticMethod{w.ex.config});
  EXPECT_TRUE(check_continuity(minus, Continuity::A4_minus).satisfied);
  const auto plus = induced_relation(w.universe, OptimisticMethod{w.ex.config});
  EXPECT_TRUE(check_continuity(plus, Continuity::A4_plus).satisfied);

  const auto mixed = induced_relation(w.universe, BinaryMethod{w.ex.assessment});
  EXPECT_TRUE(check_continuity(mixed, Continuity::B4).satisfied);
  expect_replays(mixed, check_continuity(mixed, Continuity::B4_minus));
  expect_replays(mixed, check_continuity(mixed, Continuity::B4_plus));

  const auto pess = induced_relation(w.universe, BinaryMethod{w.ex.pessimistic_assessment});
  EXPECT_TRUE(check_continuity(pess, Continuity::B4_minus).satisfied);
  EXPECT_TRUE(check_continuity(pess, Continuity::A4_minus).satisfied);
}

TEST(Monotonicity, BinaryPassesAndInvertedPairFails) {
  const Worked w;
  auto r = induced_relation(w.universe, BinaryMethod{w.ex.assessment});
  EXPECT_TRUE(check_qualitative_monotonicity(r).satisfied);
  // (1/x̄,1/x̲) strictly above (1/x̄,0/x̲)
  r.set(w.ignorance(), w.best(), true);
  r.set(w.best(), w.ignorance(), false);
  const auto rep = check_qualitative_monotonicity(r);
  expect_replays(r, rep);
}

TEST(Monotonicity, PessimisticAndOptimisticRelationsTieDistinctStandardLotteries) {
  // QU⁻ gives both (0/x̄,1/x̲) and (1/x̄,1/x̲) the value nh(1) = 0, while the
  // qualitative order ranks (1/x̄,1/x̲) strictly higher. Only the "if" half holds.
  const Worked w;
  const std::size_t top = w.ex.v.size() - 1;
  const auto minus = induced_relation(w.universe, PessimisticMethod{w.ex.config});
  EXPECT_TRUE(minus.indifferent(w.worst(), w.ignorance()));
  EXPECT_TRUE(check_qualitative_monotonicity(minus, MonotonicityMode::sufficiency).satisfied);
  const auto rep = check_qualitative_monotonicity(minus);
  EXPECT_EQ(rep.witness->property, "necessity");
  expect_replays(minus, rep);

  const auto plus = induced_relation(w.universe, OptimisticMethod{w.ex.config});
  EXPECT_TRUE(plus.indifferent(w.best(), w.ignorance()));
  EXPECT_TRUE(check_qualitative_monotonicity(plus, MonotonicityMode::sufficiency).satisfied);
  expect_replays(plus, check_qualitative_monotonicity(plus));
  EXPECT_TRUE(qualitative_order(top, top, 0, top, top));
  EXPECT_FALSE(qualitative_order(0, top, top, top, top));
}

TEST(HalfDecomposition, DecompositionOnStandardLotteries) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const Scale v = standard_scale(n, "V");
    const auto o = OutcomeSet::strict(LabelSet::make({"hi", "lo"}, "outcome"));
    const BasicUtilityAssessment a(o, v, {BinaryUtility::make(v.top(), v.bottom()), BinaryUtility::make(v.bottom(), v.top())});
    const auto u = LotteryUniverse::make(o, v);
    auto r = induced_relation(u, BinaryMethod{a});
    EXPECT_TRUE(check_lemma3_decomposition(r).satisfied) << n;
    if (n == 2) {
      EXPECT_EQ(u->standard_members().size(), 3u);
    }
    // Put a B⁺ member above a B⁻ member.
    const std::size_t minus_only = u->standard(n - 1, 0), plus_only = u->standard(0, n - 1);
    r.set(plus_only, minus_only, true);
    const auto rep = check_lemma3_decomposition(r);
    EXPECT_EQ(rep.witness->property, "cross-half");
    expect_replays(r, rep);
  }
}

TEST(StandardEquivalent, UniqueStandardEquivalent) {
  const Worked w;
  const auto r = induced_relation(w.universe, BinaryMethod{w.ex.assessment});
  EXPECT_TRUE(check_unique_standard_equivalent(r, w.ex.assessment).satisfied);
  // Under QU⁻ the two lower standard lotteries tie, so uniqueness fails.
  const auto minus = induced_relation(w.universe, PessimisticMethod{w.ex.config});
  expect_replays(minus, check_unique_standard_equivalent(minus, w.ex.assessment));
}

TEST(Witness, FormatsMembersAndWeights) {
  const Worked w;
  auto r = induced_relation(w.universe, BinaryMethod{w.ex.assessment});
  r.set(w.worst(), w.best(), true);
  const auto rep = check_substitutability(r, all_weight_pairs(w.ex.v));
  const std::string text = format_witness(*w.universe, *rep.witness);
  EXPECT_NE(text.find("substitutability["), std::string::npos);
  EXPECT_NE(text.find("weights=("), std::string::npos);
}
