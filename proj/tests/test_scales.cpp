#include <gtest/gtest.h>

#include "oracle.hpp"
#include "possibilistic/entailment.hpp"
#include "possibilistic/scale.hpp"

using namespace possibilistic;

namespace {

Scale v4() { return Scale::from_labels({"0", ".5", ".7", "1"}, "V"); }

BinaryUtility bu(const Scale& s, const char* l, const char* m) { return BinaryUtility::make(s.parse(l), s.parse(m)); }

}  // namespace

TEST(Rational, ParsesDecimalAndFractionForms) {
  EXPECT_EQ(*parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(*parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(*parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(*parse_rational("1"), Rational(1));
  EXPECT_FALSE(parse_rational("abc"));
  EXPECT_FALSE(parse_rational(""));
  EXPECT_FALSE(parse_rational("1/0"));
}

TEST(Rational, FormatsWithoutLeadingZero) {
  EXPECT_EQ(format_rational(Rational(1, 2)), ".5");
  EXPECT_EQ(format_rational(Rational(1, 4)), ".25");
  EXPECT_EQ(format_rational(Rational(0)), "0");
  EXPECT_EQ(format_rational(Rational(1)), "1");
  EXPECT_EQ(format_rational(Rational(1, 3)), "1/3");
}

TEST(Scale, RejectsMalformedDeclarations) {
  EXPECT_THROW(Scale::from_labels({"0"}), ValidationError);
  EXPECT_THROW(Scale::from_labels({".1", "1"}), ValidationError);
  EXPECT_THROW(Scale::from_labels({"0", ".5"}), ValidationError);
  EXPECT_THROW(Scale::from_labels({"0", ".7", ".5", "1"}), ValidationError);
  EXPECT_THROW(Scale::from_labels({"0", ".5", ".5", "1"}), ValidationError);
  EXPECT_THROW(Scale::from_labels({"0", "x", "1"}), Error);
}

TEST(Scale, LevelsCompareByIndexAndRejectOtherScales) {
  const Scale v = v4();
  EXPECT_EQ(level_min(v.parse(".7"), v.parse(".5")), v.parse(".5"));
  for (const Level& x : v.levels()) {
    EXPECT_EQ(level_max(x, v.bottom()), x);
    EXPECT_EQ(level_min(x, x), x);
  }
  const Scale other = v4();
  EXPECT_THROW((void)(v.top() < other.top()), ScaleMismatch);
  EXPECT_THROW(level_min(v.top(), other.bottom()), ScaleMismatch);
  EXPECT_THROW(v.label(other.top()), ScaleMismatch);
}

TEST(BinaryUtility, OrderMatchesWorkedComparisons) {
  const Scale v = v4();
  EXPECT_TRUE(compare_binary(bu(v, "1", "0"), bu(v, "0", "1")) > 0);
  EXPECT_TRUE(compare_binary(bu(v, "1", ".5"), bu(v, "1", "1")) > 0);
  EXPECT_TRUE(compare_binary(bu(v, "1", ".7"), bu(v, ".7", "1")) > 0);
  EXPECT_TRUE(compare_binary(bu(v, ".5", "1"), bu(v, ".7", "1")) < 0);
  EXPECT_THROW(bu(v, ".5", ".7"), ValidationError);
}

TEST(BinaryUtility, OrderAgreesWithChainPositionOnEveryScale) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const Scale v = standard_scale(n, "V");
    const auto all = standard_lotteries(v);
    ASSERT_EQ(all.size(), 2 * n - 1);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const auto x = BinaryUtility::make(a.lambda(), a.mu());
        const auto y = BinaryUtility::make(b.lambda(), b.mu());
        const int expected = oracle::compare({v.value(a.lambda()), v.value(a.mu())}, {v.value(b.lambda()), v.value(b.mu())});
        const auto got = compare_binary(x, y);
        EXPECT_EQ(got < 0 ? -1 : (got > 0 ? 1 : 0), expected);
        EXPECT_EQ(binary_key(x) < binary_key(y), expected < 0);
      }
    }
  }
}

TEST(BinaryUtility, ExtendedMinAndMax) {
  const Scale v = v4();
  auto p = [&](const char* a, const char* b) { return UtilityPair(v.parse(a), v.parse(b)); };
  EXPECT_EQ(ext_min(v.parse(".5"), p("1", ".7")), p(".5", ".5"));
  EXPECT_EQ(ext_min(v.top(), p("1", ".5")), p("1", ".5"));
  EXPECT_EQ(ext_min(v.bottom(), p("1", "1")), p("0", "0"));
  EXPECT_EQ(ext_max(p(".7", "0"), p("0", ".5")), p(".7", ".5"));
  EXPECT_EQ(ext_max(p(".7", ".5"), p(".7", ".5")), p(".7", ".5"));
  UtilityPair acc = p("0", "0");
  for (const auto& q : {p(".7", "0"), p("1", ".5"), p(".5", ".5"), p(".5", ".5")}) acc = ext_max(acc, q);
  EXPECT_EQ(acc, p("1", ".5"));
  EXPECT_EQ(format_pair(v, acc), "⟨1,.5⟩");
}

TEST(Involution, ValidatesAnchorsInvolutionAndReversal) {
  const Scale u = Scale::from_labels({"0", ".3", ".5", "1"}, "U");
  EXPECT_FALSE(validate_involution(Involution::from_labels(u, {{"1", "0"}, {".5", ".3"}, {".3", ".5"}, {"0", "1"}})));
  const Scale two = Scale::from_labels({"0", "1"});
  EXPECT_FALSE(validate_involution(Involution::from_labels(two, {{"1", "0"}, {"0", "1"}})));

  const auto bad = validate_involution(Involution::from_labels(u, {{"1", "0"}, {".5", ".5"}, {".3", ".3"}, {"0", "1"}}));
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->property, "antitonicity");

  const auto anchors = validate_involution(Involution::from_labels(u, {{"1", "1"}, {".5", ".3"}, {".3", ".5"}, {"0", "0"}}));
  ASSERT_TRUE(anchors);
  EXPECT_EQ(anchors->property, "anchor");
  EXPECT_THROW(Involution::from_labels(u, {{"1", "0"}, {"0", "1"}}), ValidationError);
}

TEST(ScaleMap, ValidatesMonotonicityAndSurjectivity) {
  const Scale v = v4();
  const Scale u = Scale::from_labels({"0", ".3", ".5", "1"}, "U");
  EXPECT_FALSE(validate_scale_map(ScaleMap::from_labels(v, u, {{"1", "1"}, {".7", ".5"}, {".5", ".3"}, {"0", "0"}})));
  EXPECT_FALSE(validate_scale_map(ScaleMap::identity(v)));

  const Scale u3 = Scale::from_labels({"0", ".3", "1"}, "U3");
  const auto onto = validate_scale_map(ScaleMap::from_labels(v, u3, {{"1", "1"}, {".7", "1"}, {".5", "0"}, {"0", "0"}}));
  ASSERT_TRUE(onto);
  EXPECT_EQ(onto->property, "surjectivity");

  const auto mono = validate_scale_map(ScaleMap::from_labels(v, u, {{"1", "1"}, {".7", ".3"}, {".5", ".5"}, {"0", "0"}}));
  ASSERT_TRUE(mono);
  EXPECT_EQ(mono->property, "monotonicity");
}
