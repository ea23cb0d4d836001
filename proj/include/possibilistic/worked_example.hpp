#pragma once

#include <string>
#include <vector>

#include "possibilistic/lottery.hpp"
#include "possibilistic/scale.hpp"
#include "possibilistic/utility.hpp"

namespace possibilistic {

/// The four-prize comparison x1 ≻ x2 ≻ x3 ≻ x4 with V = {0,.5,.7,1},
/// U = {0,.3,.5,1} and the lotteries π₁ = (.7, 1, .5, .5), π₂ = (1, .7, 0, 1).
struct WorkedExample {
  LabelSet labels;
  OutcomeSet outcomes;
  Scale v;
  Scale u;
  Involution n;
  ScaleMap h;
  PessOptConfig config;
  /// B⁻ assessment with u(x4) = ⟨1,1⟩, the form whose intermediate
  /// tables are printed by `paper-example`.
  BasicUtilityAssessment pessimistic_assessment;
  /// The same prize ranking with standard anchors, u(x4) = ⟨0,1⟩.
  BasicUtilityAssessment assessment;
  PossibilityDistribution pi1;
  PossibilityDistribution pi2;
};

inline WorkedExample make_worked_example() {
  LabelSet labels = LabelSet::make({"x1", "x2", "x3", "x4"}, "outcome");
  OutcomeSet outcomes = OutcomeSet::strict(labels);
  Scale v = Scale::from_labels({"0", ".5", ".7", "1"}, "V");
  Scale u = Scale::from_labels({"0", ".3", ".5", "1"}, "U");
  Involution n = Involution::from_labels(u, {{"1", "0"}, {".5", ".3"}, {".3", ".5"}, {"0", "1"}});
  ScaleMap h = ScaleMap::from_labels(v, u, {{"1", "1"}, {".7", ".5"}, {".5", ".3"}, {"0", "0"}});
  PessOptConfig config(outcomes, v, u, {u.parse("1"), u.parse(".5"), u.parse(".3"), u.parse("0")}, n, h);

  auto bu = [&](const char* l, const char* m) { return BinaryUtility::make(v.parse(l), v.parse(m)); };
  BasicUtilityAssessment pessimistic(outcomes, v, {bu("1", "0"), bu("1", ".5"), bu("1", ".7"), bu("1", "1")},
                                     Anchoring::pessimistic);
  BasicUtilityAssessment standard(outcomes, v, {bu("1", "0"), bu("1", ".5"), bu("1", ".7"), bu("0", "1")});

  auto pi1 = make_distribution(labels, v, {{"x1", ".7"}, {"x2", "1"}, {"x3", ".5"}, {"x4", ".5"}});
  auto pi2 = make_distribution(labels, v, {{"x1", "1"}, {"x2", ".7"}, {"x3", "0"}, {"x4", "1"}});
  return WorkedExample{labels, outcomes, v, u, n, h, config, pessimistic, standard, pi1, pi2};
}

}  // namespace possibilistic
