#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "possibilistic/errors.hpp"
#include "possibilistic/scale.hpp"

namespace possibilistic {

using DomainId = std::uint64_t;

/// An ordered set of distinct labels with an identity. Outcome sets and state
/// spaces are both built on it.
class LabelSet {
 public:
  static LabelSet make(std::vector<std::string> labels, std::string kind = "label") {
    if (labels.empty()) throw ValidationError(kind + " set must not be empty");
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
      if (l.empty()) throw ValidationError(kind + " labels must not be empty");
      if (!seen.insert(l).second) throw ValidationError("duplicate " + kind + " label '" + l + "'");
    }
    static std::atomic<DomainId> next_id{1};
    LabelSet out;
    out.rep_ = std::make_shared<const Rep>(Rep{next_id.fetch_add(1), std::move(kind), std::move(labels)});
    return out;
  }

  DomainId id() const noexcept { return rep_->id; }
  const std::string& kind() const noexcept { return rep_->kind; }
  std::size_t size() const noexcept { return rep_->labels.size(); }
  const std::vector<std::string>& labels() const noexcept { return rep_->labels; }
  const std::string& label(std::size_t i) const { return rep_->labels.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    const auto& ls = rep_->labels;
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it == ls.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ls.begin());
  }

  std::size_t require_index(std::string_view label) const {
    if (auto i = index_of(label)) return *i;
    throw ValidationError("unknown " + kind() + " label '" + std::string(label) + "'");
  }

  friend bool operator==(const LabelSet& a, const LabelSet& b) noexcept { return a.id() == b.id(); }

 private:
  struct Rep {
    DomainId id;
    std::string kind;
    std::vector<std::string> labels;
  };
  std::shared_ptr<const Rep> rep_;
};

/// Prizes X with anchors x̄, x̲ and a total preorder given as equivalence
/// classes, best class first.
class OutcomeSet {
 public:
  static OutcomeSet make(const LabelSet& labels, std::string_view best, std::string_view worst,
                         const std::vector<std::vector<std::string>>& classes) {
    if (labels.size() < 2) throw ValidationError("outcome set needs at least 2 outcomes");
    OutcomeSet out;
    out.labels_ = labels;
    out.best_ = labels.require_index(best);
    out.worst_ = labels.require_index(worst);
    if (out.best_ == out.worst_) throw ValidationError("best and worst outcome must differ");
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    out.rank_.assign(labels.size(), unset);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].empty()) throw ValidationError("preference class " + std::to_string(c) + " is empty");
      for (const auto& l : classes[c]) {
        const std::size_t i = labels.require_index(l);
        if (out.rank_[i] != unset) throw ValidationError("outcome '" + l + "' appears in two preference classes");
        out.rank_[i] = c;
      }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (out.rank_[i] == unset) {
        throw ValidationError("outcome '" + labels.label(i) + "' missing from the preference order");
      }
    }
    out.classes_ = classes.size();
    if (out.rank_[out.best_] != 0) {
      throw ValidationError("best outcome '" + std::string(best) + "' is not in the top preference class");
    }
    if (out.rank_[out.worst_] + 1 != out.classes_) {
      throw ValidationError("worst outcome '" + std::string(worst) + "' is not in the bottom preference class");
    }
    return out;
  }

  /// Strict order, best first: first label is x̄, last is x̲.
  static OutcomeSet strict(const LabelSet& labels) {
    std::vector<std::vector<std::string>> classes;
    for (const auto& l : labels.labels()) classes.push_back({l});
    return make(labels, labels.labels().front(), labels.labels().back(), classes);
  }

  /// Builds from per-outcome ranks (0 = best). Used by enumeration code.
  static OutcomeSet from_ranks(const LabelSet& labels, std::size_t best, std::size_t worst,
                               const std::vector<std::size_t>& ranks) {
    const std::size_t k = *std::max_element(ranks.begin(), ranks.end()) + 1;
    std::vector<std::vector<std::string>> classes(k);
    for (std::size_t i = 0; i < ranks.size(); ++i) classes[ranks[i]].push_back(labels.label(i));
    return make(labels, labels.label(best), labels.label(worst), classes);
  }

  const LabelSet& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t best() const noexcept { return best_; }
  std::size_t worst() const noexcept { return worst_; }
  std::size_t class_count() const noexcept { return classes_; }
  std::size_t rank(std::size_t outcome) const { return rank_.at(outcome); }

  /// x ⪰ y on prizes.
  bool weakly_prefers(std::size_t x, std::size_t y) const { return rank(x) <= rank(y); }

  std::vector<std::vector<std::string>> classes() const {
    std::vector<std::vector<std::string>> out(classes_);
    for (std::size_t i = 0; i < size(); ++i) out[rank_[i]].push_back(labels_.label(i));
    return out;
  }

 private:
  OutcomeSet() = default;
  LabelSet labels_;
  std::size_t best_ = 0;
  std::size_t worst_ = 0;
  std::size_t classes_ = 0;
  std::vector<std::size_t> rank_;
};

class StateSpace {
 public:
  explicit StateSpace(LabelSet labels) : labels_(std::move(labels)) {}
  static StateSpace make(std::vector<std::string> labels) {
    return StateSpace(LabelSet::make(std::move(labels), "state"));
  }
  const LabelSet& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  LabelSet labels_;
};

/// Normalized map from a label set to levels of V.
class PossibilityDistribution {
 public:
  static PossibilityDistribution make(const LabelSet& domain, const Scale& scale, std::vector<Level> values) {
    if (values.size() != domain.size()) {
      throw ValidationError("distribution has " + std::to_string(values.size()) + " values for " +
                            std::to_string(domain.size()) + " labels");
    }
    std::size_t max_index = 0;
    for (const auto& v : values) {
      scale.require(v);
      max_index = std::max(max_index, v.index());
    }
    if (max_index + 1 != scale.size()) {
      throw ValidationError("distribution not normalized: max level is " + scale.labels()[max_index] +
                            ", expected 1");
    }
    return PossibilityDistribution(domain, scale, std::move(values));
  }

  const LabelSet& domain() const noexcept { return domain_; }
  const Scale& scale() const noexcept { return scale_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Level>& values() const noexcept { return values_; }
  const Level& operator[](std::size_t i) const { return values_.at(i); }

  /// Pointwise order π ≤ π′.
  bool pointwise_le(const PossibilityDistribution& other) const {
    require_compatible(other);
    for (std::size_t i = 0; i < size(); ++i) {
      if (other.values_[i] < values_[i]) return false;
    }
    return true;
  }

  void require_compatible(const PossibilityDistribution& other) const {
    if (!(domain_ == other.domain_)) {
      throw DomainMismatch("distributions over different domains (#" + std::to_string(domain_.id()) +
                           " and #" + std::to_string(other.domain_.id()) + ")");
    }
    if (!(scale_ == other.scale_)) throw ScaleMismatch(scale_mismatch_message(scale_.id(), other.scale_.id()));
  }

  friend bool operator==(const PossibilityDistribution& a, const PossibilityDistribution& b) {
    return a.domain_ == b.domain_ && a.scale_ == b.scale_ && a.values_ == b.values_;
  }

 private:
  PossibilityDistribution(LabelSet domain, Scale scale, std::vector<Level> values)
      : domain_(std::move(domain)), scale_(std::move(scale)), values_(std::move(values)) {}

  LabelSet domain_;
  Scale scale_;
  std::vector<Level> values_;
};

/// Builds a distribution from (label, level label) pairs; every domain label
/// must be assigned exactly once.
inline PossibilityDistribution make_distribution(
    const LabelSet& domain, const Scale& scale,
    const std::vector<std::pair<std::string, std::string>>& assignments) {
  std::vector<std::optional<Level>> slots(domain.size());
  for (const auto& [label, level] : assignments) {
    const std::size_t i = domain.require_index(label);
    if (slots[i]) throw ValidationError(domain.kind() + " '" + label + "' assigned twice");
    slots[i] = scale.parse(level);
  }
  std::vector<Level> values;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ValidationError("missing " + domain.kind() + " '" + domain.label(i) + "'");
    values.push_back(*slots[i]);
  }
  return PossibilityDistribution::make(domain, scale, std::move(values));
}

inline PossibilityDistribution point_mass(const LabelSet& domain, const Scale& scale, std::size_t at) {
  std::vector<Level> values(domain.size(), scale.bottom());
  values.at(at) = scale.top();
  return PossibilityDistribution::make(domain, scale, std::move(values));
}

inline std::string format_distribution(const PossibilityDistribution& pi) {
  std::string out = "(";
  bool first = true;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i].is_bottom()) continue;
    if (!first) out += ", ";
    out += pi.scale().label(pi[i]) + "/" + pi.domain().label(i);
    first = false;
  }
  return out + ")";
}

struct MixtureTerm {
  Level weight;
  std::reference_wrapper<const PossibilityDistribution> dist;
};

/// Possibilistic mixture: x ↦ max_i min(weight_i, π_i(x)). Weights must
/// have max = 1.
inline PossibilityDistribution mixture(std::span<const MixtureTerm> terms) {
  if (terms.empty()) throw ValidationError("mixture needs at least one component");
  const PossibilityDistribution& head = terms.front().dist.get();
  bool normalized = false;
  for (const auto& t : terms) {
    head.require_compatible(t.dist.get());
    head.scale().require(t.weight);
    normalized = normalized || t.weight.is_top();
  }
  if (!normalized) throw ValidationError("mixture weights not normalized: no weight equals 1");
  std::vector<Level> out(head.size(), head.scale().bottom());
  for (const auto& t : terms) {
    const auto& pi = t.dist.get();
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = level_max(out[x], level_min(t.weight, pi[x]));
  }
  return PossibilityDistribution::make(head.domain(), head.scale(), std::move(out));
}

/// (λ/π₁, μ/π₂)
inline PossibilityDistribution mixture(const Level& lambda, const PossibilityDistribution& first,
                                       const Level& mu, const PossibilityDistribution& second) {
  const MixtureTerm terms[] = {{lambda, first}, {mu, second}};
  return mixture(terms);
}

/// π(A) = max over A; the empty event has possibility 0.
inline Level event_possibility(const PossibilityDistribution& pi, std::span<const std::size_t> members) {
  Level out = pi.scale().bottom();
  for (std::size_t i : members) {
    if (i >= pi.size()) throw ValidationError("event member index " + std::to_string(i) + " out of range");
    out = level_max(out, pi[i]);
  }
  return out;
}

inline Level event_possibility(const PossibilityDistribution& pi, const std::vector<std::string>& event) {
  std::vector<std::size_t> members;
  for (const auto& label : event) members.push_back(pi.domain().require_index(label));
  return event_possibility(pi, std::span<const std::size_t>(members));
}

/// A total map from states to outcomes.
class Decision {
 public:
  Decision(StateSpace states, LabelSet outcomes, std::vector<std::size_t> map)
      : states_(std::move(states)), outcomes_(std::move(outcomes)), map_(std::move(map)) {
    if (map_.size() != states_.size()) {
      throw ValidationError("decision maps " + std::to_string(map_.size()) + " of " +
                            std::to_string(states_.size()) + " states");
    }
    for (std::size_t x : map_) {
      if (x >= outcomes_.size()) throw ValidationError("decision maps to unknown outcome index " + std::to_string(x));
    }
  }

  static Decision from_labels(const StateSpace& states, const LabelSet& outcomes,
                              const std::vector<std::pair<std::string, std::string>>& entries) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> map(states.size(), unset);
    for (const auto& [s, x] : entries) {
      const std::size_t si = states.labels().require_index(s);
      if (map[si] != unset) throw ValidationError("state '" + s + "' mapped twice");
      map[si] = outcomes.require_index(x);
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] == unset) throw ValidationError("state '" + states.labels().label(i) + "' not mapped");
    }
    return Decision(states, outcomes, std::move(map));
  }

  const StateSpace& states() const noexcept { return states_; }
  const LabelSet& outcomes() const noexcept { return outcomes_; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }

 private:
  StateSpace states_;
  LabelSet outcomes_;
  std::vector<std::size_t> map_;
};

/// π_d(x) = π(d⁻¹(x)); outcomes with empty preimage get 0.
inline PossibilityDistribution induced_distribution(const PossibilityDistribution& pi_states, const Decision& d) {
  if (!(pi_states.domain() == d.states().labels())) {
    throw DomainMismatch("state distribution is not over the decision's state space");
  }
  std::vector<Level> out(d.outcomes().size(), pi_states.scale().bottom());
  for (std::size_t s = 0; s < d.map().size(); ++s) {
    Level& slot = out[d.map()[s]];
    slot = level_max(slot, pi_states[s]);
  }
  return PossibilityDistribution::make(d.outcomes(), pi_states.scale(), std::move(out));
}

/// (λ/x̄, μ/x̲) with max(λ, μ) = 1.
class StandardLottery {
 public:
  static StandardLottery make(Level lambda, Level mu) {
    require_same_scale(lambda, mu);
    if (!lambda.is_top() && !mu.is_top()) throw ValidationError("standard lottery needs max(λ, μ) = 1");
    return StandardLottery(lambda, mu);
  }

  Level lambda() const noexcept { return lambda_; }
  Level mu() const noexcept { return mu_; }
  /// Member of B⁻ = {(1/x̄, μ/x̲)}.
  bool in_pessimistic_half() const noexcept { return lambda_.is_top(); }
  /// Member of B⁺ = {(λ/x̄, 1/x̲)}.
  bool in_optimistic_half() const noexcept { return mu_.is_top(); }

  PossibilityDistribution to_distribution(const OutcomeSet& outcomes, const Scale& scale) const {
    std::vector<Level> values(outcomes.size(), scale.bottom());
    values[outcomes.best()] = lambda_;
    values[outcomes.worst()] = mu_;
    return PossibilityDistribution::make(outcomes.labels(), scale, std::move(values));
  }

  friend bool operator==(const StandardLottery&, const StandardLottery&) = default;

 private:
  StandardLottery(Level lambda, Level mu) : lambda_(lambda), mu_(mu) {}
  Level lambda_;
  Level mu_;
};

/// All standard lotteries over a scale, in ascending U_V order from
/// (0/x̄, 1/x̲) to (1/x̄, 0/x̲).
inline std::vector<StandardLottery> standard_lotteries(const Scale& scale) {
  std::vector<StandardLottery> out;
  for (const Level& l : scale.levels()) out.push_back(StandardLottery::make(l, scale.top()));
  for (std::size_t i = scale.size() - 1; i-- > 0;) out.push_back(StandardLottery::make(scale.top(), scale.at(i)));
  return out;
}

struct EnumerationBounds {
  std::size_t max_domain = 6;
  std::size_t max_levels = 6;
  std::uint64_t max_members = 4096;
};

/// |V|^n − (|V|−1)^n, or nullopt on overflow.
inline std::optional<std::uint64_t> normalized_distribution_count(std::size_t domain, std::size_t levels) {
  auto power = [](std::uint64_t base, std::size_t exp) -> std::optional<std::uint64_t> {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
      out *= base;
    }
    return out;
  };
  auto all = power(levels, domain);
  auto without_top = power(levels - 1, domain);
  if (!all || !without_top) return std::nullopt;
  return *all - *without_top;
}

/// Every normalized distribution over (domain, scale), in odometer order with
/// the first label varying fastest.
inline std::vector<PossibilityDistribution> enumerate_distributions(const LabelSet& domain, const Scale& scale,
                                                                    const EnumerationBounds& bounds = {}) {
  const auto count = normalized_distribution_count(domain.size(), scale.size());
  const std::uint64_t requested = count.value_or(std::numeric_limits<std::uint64_t>::max());
  if (domain.size() > bounds.max_domain || scale.size() > bounds.max_levels || requested > bounds.max_members) {
    throw BoundExceeded("enumeration over " + std::to_string(domain.size()) + " labels and " +
                            std::to_string(scale.size()) + " levels would generate " +
                            (count ? std::to_string(*count) : std::string("more than 2^64")) +
                            " distributions (limits: " + std::to_string(bounds.max_domain) + " labels, " +
                            std::to_string(bounds.max_levels) + " levels, " +
                            std::to_string(bounds.max_members) + " distributions)",
                        requested);
  }
  std::vector<PossibilityDistribution> out;
  out.reserve(static_cast<std::size_t>(requested));
  std::vector<std::size_t> digits(domain.size(), 0);
  const std::size_t top = scale.size() - 1;
  for (;;) {
    if (std::find(digits.begin(), digits.end(), top) != digits.end()) {
      std::vector<Level> values;
      values.reserve(digits.size());
      for (std::size_t d : digits) values.push_back(scale.at(d));
      out.push_back(PossibilityDistribution::make(domain, scale, std::move(values)));
    }
    std::size_t pos = 0;
    while (pos < digits.size() && digits[pos] == top) digits[pos++] = 0;
    if (pos == digits.size()) break;
    ++digits[pos];
  }
  return out;
}

}  // namespace possibilistic
