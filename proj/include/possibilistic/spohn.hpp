#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "possibilistic/errors.hpp"
#include "possibilistic/lottery.hpp"
#include "possibilistic/rational.hpp"
#include "possibilistic/scale.hpp"

namespace possibilistic {

/// A Spohn rank; nullopt stands for "infinity" (impossible).
using DisbeliefRank = std::optional<std::uint64_t>;

/// δ : S → ℕ ∪ {∞} with min δ = 0.
class DisbeliefFunction {
 public:
  static DisbeliefFunction make(const LabelSet& domain, std::vector<DisbeliefRank> values) {
    if (values.size() != domain.size()) {
      throw ValidationError("disbelief function has " + std::to_string(values.size()) + " values for " +
                            std::to_string(domain.size()) + " labels");
    }
    const bool normalized = std::any_of(values.begin(), values.end(),
                                        [](const DisbeliefRank& r) { return r && *r == 0; });
    if (!normalized) throw ValidationError("disbelief function not normalized: no value equals 0");
    return DisbeliefFunction(domain, std::move(values));
  }

  const LabelSet& domain() const noexcept { return domain_; }
  const std::vector<DisbeliefRank>& values() const noexcept { return values_; }

  friend bool operator==(const DisbeliefFunction& a, const DisbeliefFunction& b) {
    return a.domain_ == b.domain_ && a.values_ == b.values_;
  }

 private:
  DisbeliefFunction(LabelSet domain, std::vector<DisbeliefRank> values)
      : domain_(std::move(domain)), values_(std::move(values)) {}
  LabelSet domain_;
  std::vector<DisbeliefRank> values_;
};

inline std::string format_rank(const DisbeliefRank& r) { return r ? std::to_string(*r) : std::string("infinity"); }

/// A distribution together with the scale synthesized for it.
struct SynthesizedDistribution {
  Scale scale;
  PossibilityDistribution distribution;
};

namespace detail {

inline void require_base(const Rational& c) {
  if (!(c > 1)) throw ValidationError("conversion base must be greater than 1, got " + format_rational(c));
}

inline Rational power(const Rational& base, std::uint64_t exp) {
  Rational out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace detail

/// π(s) = c^(−δ(s)), with ∞ ↦ 0, on a fresh scale holding the image plus 0 and 1.
inline SynthesizedDistribution from_disbelief(const DisbeliefFunction& delta, const Rational& c) {
  detail::require_base(c);
  std::vector<Rational> image;
  image.reserve(delta.values().size());
  for (const auto& r : delta.values()) image.push_back(r ? 1 / detail::power(c, *r) : Rational(0));

  std::vector<Rational> levels = image;
  levels.push_back(0);
  levels.push_back(1);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  Scale scale = Scale::from_values(std::move(levels), "V");

  std::vector<Level> values;
  for (const auto& v : image) values.push_back(*scale.find_value(v));
  return {scale, PossibilityDistribution::make(delta.domain(), scale, std::move(values))};
}

/// δ(s) = floor(−log_c π(s)), computed exactly; π(s) = 0 ↦ ∞.
inline DisbeliefFunction to_disbelief(const PossibilityDistribution& pi, const Rational& c) {
  detail::require_base(c);
  std::vector<DisbeliefRank> out;
  out.reserve(pi.size());
  for (const Level& level : pi.values()) {
    const Rational& p = pi.scale().value(level);
    if (p == 0) {
      out.emplace_back(std::nullopt);
      continue;
    }
    // largest k with p·c^k ≤ 1
    std::uint64_t k = 0;
    Rational scaled = p * c;
    while (scaled <= 1) {
      ++k;
      scaled *= c;
    }
    out.emplace_back(k);
  }
  return DisbeliefFunction::make(pi.domain(), std::move(out));
}

}  // namespace possibilistic
