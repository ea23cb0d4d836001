#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "possibilistic/errors.hpp"
#include "possibilistic/lottery.hpp"
#include "possibilistic/scale.hpp"
#include "possibilistic/utility.hpp"

namespace possibilistic {

/// Every normalized lottery over (X, V), indexed. Members are addressed by
/// index; mixtures of members are resolved back to indices through a code
/// table (code = Σ index(π(x))·|V|^x).
class LotteryUniverse {
 public:
  static std::shared_ptr<const LotteryUniverse> make(const OutcomeSet& outcomes, const Scale& scale,
                                                     const EnumerationBounds& bounds = {}) {
    return std::shared_ptr<const LotteryUniverse>(new LotteryUniverse(outcomes, scale, bounds));
  }

  const OutcomeSet& outcomes() const noexcept { return outcomes_; }
  const Scale& scale() const noexcept { return scale_; }
  std::size_t size() const noexcept { return members_.size(); }
  const PossibilityDistribution& member(std::size_t i) const { return members_.at(i); }
  const std::vector<PossibilityDistribution>& members() const noexcept { return members_; }

  /// Level index of π_i(x).
  std::size_t level(std::size_t i, std::size_t x) const { return digits_[i * width_ + x]; }

  std::size_t index_of_digits(std::span<const std::size_t> digits) const {
    std::size_t code = 0;
    for (std::size_t x = digits.size(); x-- > 0;) code = code * scale_.size() + digits[x];
    const auto idx = by_code_.at(code);
    if (idx < 0) throw ValidationError("digits do not describe a normalized distribution");
    return static_cast<std::size_t>(idx);
  }

  std::optional<std::size_t> index_of(const PossibilityDistribution& pi) const {
    if (!(pi.domain() == outcomes_.labels()) || !(pi.scale() == scale_)) return std::nullopt;
    std::vector<std::size_t> digits;
    for (const auto& l : pi.values()) digits.push_back(l.index());
    return index_of_digits(digits);
  }

  std::size_t point_mass(std::size_t outcome) const {
    std::vector<std::size_t> digits(width_, 0);
    digits.at(outcome) = scale_.size() - 1;
    return index_of_digits(digits);
  }

  /// Index of (λ/x̄, μ/x̲) given level indices.
  std::size_t standard(std::size_t lambda, std::size_t mu) const {
    std::vector<std::size_t> digits(width_, 0);
    digits[outcomes_.best()] = lambda;
    digits[outcomes_.worst()] = mu;
    return index_of_digits(digits);
  }

  /// B in ascending order, (0/x̄,1/x̲) first.
  const std::vector<std::size_t>& standard_members() const noexcept { return standard_; }

  bool is_standard(std::size_t i) const {
    for (std::size_t x = 0; x < width_; ++x) {
      if (x != outcomes_.best() && x != outcomes_.worst() && level(i, x) != 0) return false;
    }
    return true;
  }
  bool in_b_minus(std::size_t i) const { return is_standard(i) && level(i, outcomes_.best()) + 1 == scale_.size(); }
  bool in_b_plus(std::size_t i) const { return is_standard(i) && level(i, outcomes_.worst()) + 1 == scale_.size(); }

  /// Index of (λ/π_i, μ/π_k) for level indices λ, μ with max = top.
  std::size_t mix(std::size_t lambda, std::size_t i, std::size_t mu, std::size_t k) const {
    std::size_t code = 0;
    for (std::size_t x = width_; x-- > 0;) {
      const std::size_t a = std::min(lambda, level(i, x));
      const std::size_t b = std::min(mu, level(k, x));
      code = code * scale_.size() + std::max(a, b);
    }
    return static_cast<std::size_t>(by_code_[code]);
  }

  bool pointwise_le(std::size_t i, std::size_t j) const {
    for (std::size_t x = 0; x < width_; ++x) {
      if (level(i, x) > level(j, x)) return false;
    }
    return true;
  }

  std::string describe(std::size_t i) const { return format_distribution(member(i)); }

 private:
  LotteryUniverse(const OutcomeSet& outcomes, const Scale& scale, const EnumerationBounds& bounds)
      : outcomes_(outcomes),
        scale_(scale),
        members_(enumerate_distributions(outcomes.labels(), scale, bounds)),
        width_(outcomes.size()) {
    std::size_t codes = 1;
    for (std::size_t x = 0; x < width_; ++x) codes *= scale_.size();
    by_code_.assign(codes, -1);
    digits_.reserve(members_.size() * width_);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      std::size_t code = 0;
      for (std::size_t x = width_; x-- > 0;) code = code * scale_.size() + members_[i][x].index();
      for (std::size_t x = 0; x < width_; ++x) digits_.push_back(static_cast<std::uint8_t>(members_[i][x].index()));
      by_code_[code] = static_cast<std::int32_t>(i);
    }
    for (const auto& s : standard_lotteries(scale_)) standard_.push_back(standard(s.lambda().index(), s.mu().index()));
  }

  OutcomeSet outcomes_;
  Scale scale_;
  std::vector<PossibilityDistribution> members_;
  std::size_t width_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::int32_t> by_code_;
  std::vector<std::size_t> standard_;
};

/// Explicit relation ⪰ over a universe; holds(i, j) reads "member i ⪰ member j".
/// Stored as one bit row per member.
class PreferenceRelation {
 public:
  explicit PreferenceRelation(std::shared_ptr<const LotteryUniverse> universe)
      : universe_(std::move(universe)), n_(universe_->size()), words_((n_ + 63) / 64), bits_(n_ * words_, 0) {}

  const LotteryUniverse& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const LotteryUniverse>& universe_ptr() const noexcept { return universe_; }
  std::size_t size() const noexcept { return n_; }

  bool holds(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  bool strictly(std::size_t i, std::size_t j) const { return holds(i, j) && !holds(j, i); }
  bool indifferent(std::size_t i, std::size_t j) const { return holds(i, j) && holds(j, i); }

  void set(std::size_t i, std::size_t j, bool value) {
    std::uint64_t& word = bits_.at(i * words_ + j / 64);
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    word = value ? (word | mask) : (word & ~mask);
  }

  /// Row i as words; bits beyond size() are zero.
  std::span<const std::uint64_t> row(std::size_t i) const { return {bits_.data() + i * words_, words_}; }

 private:
  std::shared_ptr<const LotteryUniverse> universe_;
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// holds(i, j) iff utility(π_i) ≥ utility(π_j) under the method.
inline PreferenceRelation induced_relation(const std::shared_ptr<const LotteryUniverse>& universe,
                                           const UtilityMethod& method) {
  const OutcomeSet& outcomes = method_outcomes(method);
  if (!(method_v(method) == universe->scale())) {
    throw ScaleMismatch(scale_mismatch_message(method_v(method).id(), universe->scale().id()));
  }
  if (!(outcomes.labels() == universe->outcomes().labels()) || outcomes.best() != universe->outcomes().best() ||
      outcomes.worst() != universe->outcomes().worst()) {
    throw DomainMismatch("method and universe disagree on outcomes or anchors");
  }
  std::vector<UtilityValue> values;
  values.reserve(universe->size());
  for (const auto& pi : universe->members()) values.push_back(evaluate(method, pi));
  PreferenceRelation r(universe);
  for (std::size_t i = 0; i < universe->size(); ++i) {
    for (std::size_t j = 0; j < universe->size(); ++j) r.set(i, j, compare_utility(values[i], values[j]) >= 0);
  }
  return r;
}

}  // namespace possibilistic
