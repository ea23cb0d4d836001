#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "possibilistic/errors.hpp"
#include "possibilistic/lottery.hpp"
#include "possibilistic/scale.hpp"

namespace possibilistic {

/// Ingredients of the pessimistic and optimistic utilities: u : X → U,
/// an involution n on U and an onto map h : V → U. Validated on
/// construction, including consistency of u with the prize preorder.
class PessOptConfig {
 public:
  PessOptConfig(OutcomeSet outcomes, Scale v, Scale u_scale, std::vector<Level> utility, Involution n, ScaleMap h)
      : outcomes_(std::move(outcomes)),
        v_(std::move(v)),
        u_scale_(std::move(u_scale)),
        utility_(std::move(utility)),
        n_(std::move(n)),
        h_(std::move(h)) {
    if (utility_.size() != outcomes_.size()) {
      throw ValidationError("utility table covers " + std::to_string(utility_.size()) + " of " +
                            std::to_string(outcomes_.size()) + " outcomes");
    }
    for (const auto& l : utility_) u_scale_.require(l);
    if (!(n_.scale() == u_scale_)) throw ScaleMismatch("involution is not defined on the utility scale");
    if (!(h_.from() == v_) || !(h_.to() == u_scale_)) throw ScaleMismatch("scale map is not V → U");
    if (auto bad = validate_involution(n_)) throw ValidationError("involution n: " + bad->property + ": " + bad->detail);
    if (auto bad = validate_scale_map(h_)) throw ValidationError("scale map h: " + bad->property + ": " + bad->detail);

    const auto& names = outcomes_.labels();
    if (!utility_[outcomes_.best()].is_top()) {
      throw ValidationError("u(" + names.label(outcomes_.best()) + ") must be 1 for the best outcome");
    }
    if (!utility_[outcomes_.worst()].is_bottom()) {
      throw ValidationError("u(" + names.label(outcomes_.worst()) + ") must be 0 for the worst outcome");
    }
    for (std::size_t x = 0; x < outcomes_.size(); ++x) {
      for (std::size_t y = 0; y < outcomes_.size(); ++y) {
        if (outcomes_.weakly_prefers(x, y) != (utility_[x] >= utility_[y])) {
          throw ValidationError("u inconsistent with preference order at (" + names.label(x) + ", " +
                                names.label(y) + ")");
        }
      }
    }
    for (const Level& l : v_.levels()) nh_.push_back(n_(h_(l)));
  }

  const OutcomeSet& outcomes() const noexcept { return outcomes_; }
  const Scale& v() const noexcept { return v_; }
  const Scale& u_scale() const noexcept { return u_scale_; }
  const std::vector<Level>& utility() const noexcept { return utility_; }
  Level utility(std::size_t outcome) const { return utility_.at(outcome); }
  const Involution& n() const noexcept { return n_; }
  const ScaleMap& h() const noexcept { return h_; }

  Level nh(const Level& v) const {
    v_.require(v);
    return nh_[v.index()];
  }

  void require_distribution(const PossibilityDistribution& pi) const {
    v_.require(pi.scale().bottom());
    if (!(pi.domain() == outcomes_.labels())) throw DomainMismatch("distribution is not over the config's outcomes");
  }

 private:
  OutcomeSet outcomes_;
  Scale v_;
  Scale u_scale_;
  std::vector<Level> utility_;
  Involution n_;
  ScaleMap h_;
  std::vector<Level> nh_;
};

/// QU⁻(π) = min_x max(nh(π(x)), u(x)).
inline Level qu_minus(const PossibilityDistribution& pi, const PessOptConfig& cfg) {
  cfg.require_distribution(pi);
  Level out = cfg.u_scale().top();
  for (std::size_t x = 0; x < pi.size(); ++x) out = level_min(out, level_max(cfg.nh(pi[x]), cfg.utility(x)));
  return out;
}

/// QU⁻ of (λ/π₁, μ/π₂) computed from the parts, without forming the mixture.
inline Level qu_minus_via_decomposition(const Level& lambda, const PossibilityDistribution& first, const Level& mu,
                                        const PossibilityDistribution& second, const PessOptConfig& cfg) {
  cfg.v().require(lambda);
  cfg.v().require(mu);
  if (!lambda.is_top() && !mu.is_top()) throw ValidationError("mixture weights not normalized: no weight equals 1");
  return level_min(level_max(cfg.nh(lambda), qu_minus(first, cfg)), level_max(cfg.nh(mu), qu_minus(second, cfg)));
}

/// QU⁺(π) = max_x min(h(π(x)), u(x)).
inline Level qu_plus(const PossibilityDistribution& pi, const PessOptConfig& cfg) {
  cfg.require_distribution(pi);
  Level out = cfg.u_scale().bottom();
  for (std::size_t x = 0; x < pi.size(); ++x) out = level_max(out, level_min(cfg.h()(pi[x]), cfg.utility(x)));
  return out;
}

/// How the anchors of a basic utility assessment are placed.
///  - standard: u(x̄) = ⟨1,0⟩, u(x̲) = ⟨0,1⟩ (the consistent assessments).
///  - pessimistic: every u(x) in B⁻, u(x̄) = ⟨1,0⟩, u(x̲) = ⟨1,1⟩.
///  - optimistic: every u(x) in B⁺, u(x̄) = ⟨1,1⟩, u(x̲) = ⟨0,1⟩.
enum class Anchoring { standard, pessimistic, optimistic };

inline const char* to_string(Anchoring a) {
  switch (a) {
    case Anchoring::standard: return "standard";
    case Anchoring::pessimistic: return "pessimistic";
    case Anchoring::optimistic: return "optimistic";
  }
  return "?";
}

/// u : X → U_V, validated against its anchoring and the prize preorder.
class BasicUtilityAssessment {
 public:
  BasicUtilityAssessment(OutcomeSet outcomes, Scale v, std::vector<BinaryUtility> utility,
                         Anchoring anchoring = Anchoring::standard)
      : outcomes_(std::move(outcomes)), v_(std::move(v)), utility_(std::move(utility)), anchoring_(anchoring) {
    const auto& names = outcomes_.labels();
    if (utility_.size() != outcomes_.size()) {
      throw ValidationError("assessment covers " + std::to_string(utility_.size()) + " of " +
                            std::to_string(outcomes_.size()) + " outcomes");
    }
    for (const auto& u : utility_) v_.require(u.lambda());

    const Level one = v_.top(), zero = v_.bottom();
    const BinaryUtility expected_best = BinaryUtility::make(one, anchoring_ == Anchoring::optimistic ? one : zero);
    const BinaryUtility expected_worst = BinaryUtility::make(anchoring_ == Anchoring::pessimistic ? one : zero, one);
    if (utility_[outcomes_.best()] != expected_best) {
      throw ValidationError("u(" + names.label(outcomes_.best()) + ") must be " + format_binary(v_, expected_best) +
                            " for the best outcome under " + to_string(anchoring_) + " anchoring");
    }
    if (utility_[outcomes_.worst()] != expected_worst) {
      throw ValidationError("u(" + names.label(outcomes_.worst()) + ") must be " + format_binary(v_, expected_worst) +
                            " for the worst outcome under " + to_string(anchoring_) + " anchoring");
    }
    for (std::size_t x = 0; x < utility_.size(); ++x) {
      if (anchoring_ == Anchoring::pessimistic && !utility_[x].lambda().is_top()) {
        throw ValidationError("u(" + names.label(x) + ") is not in B⁻ under pessimistic anchoring");
      }
      if (anchoring_ == Anchoring::optimistic && !utility_[x].mu().is_top()) {
        throw ValidationError("u(" + names.label(x) + ") is not in B⁺ under optimistic anchoring");
      }
    }
    for (std::size_t x = 0; x < outcomes_.size(); ++x) {
      for (std::size_t y = 0; y < outcomes_.size(); ++y) {
        if (outcomes_.weakly_prefers(x, y) != (compare_binary(utility_[x], utility_[y]) >= 0)) {
          throw ValidationError("assessment inconsistent with preference order at (" + names.label(x) + ", " +
                                names.label(y) + ")");
        }
      }
    }
  }

  const OutcomeSet& outcomes() const noexcept { return outcomes_; }
  const Scale& v() const noexcept { return v_; }
  const std::vector<BinaryUtility>& utility() const noexcept { return utility_; }
  const BinaryUtility& utility(std::size_t outcome) const { return utility_.at(outcome); }
  Anchoring anchoring() const noexcept { return anchoring_; }

  void require_distribution(const PossibilityDistribution& pi) const {
    v_.require(pi.scale().bottom());
    if (!(pi.domain() == outcomes_.labels())) throw DomainMismatch("distribution is not over the assessment's outcomes");
  }

 private:
  OutcomeSet outcomes_;
  Scale v_;
  std::vector<BinaryUtility> utility_;
  Anchoring anchoring_;
};

/// Anchoring implied by the anchor values; throws if none fits.
inline Anchoring infer_anchoring(const OutcomeSet& outcomes, const std::vector<BinaryUtility>& utility) {
  const auto& best = utility.at(outcomes.best());
  const auto& worst = utility.at(outcomes.worst());
  if (best.mu().is_bottom() && worst.lambda().is_bottom()) return Anchoring::standard;
  if (best.mu().is_bottom() && worst.lambda().is_top() && worst.mu().is_top()) return Anchoring::pessimistic;
  if (best.lambda().is_top() && best.mu().is_top() && worst.lambda().is_bottom()) return Anchoring::optimistic;
  throw ValidationError("assessment anchors fit no anchoring: best must be ⟨1,0⟩ (or ⟨1,1⟩), worst ⟨0,1⟩ (or ⟨1,1⟩)");
}

/// QU(π) = max_x min(π(x), u(x)) with the extended min/max.
inline BinaryUtility qu_binary(const PossibilityDistribution& pi, const BasicUtilityAssessment& a) {
  a.require_distribution(pi);
  UtilityPair acc(a.v().bottom(), a.v().bottom());
  for (std::size_t x = 0; x < pi.size(); ++x) acc = ext_max(acc, ext_min(pi[x], a.utility(x).pair()));
  if (!acc.first.is_top() && !acc.second.is_top()) {
    throw std::logic_error("qu_binary left U_V; input distribution was not normalized");
  }
  return BinaryUtility::make(acc);
}

/// The standard lottery σ with π ∼ σ: mixes the standard lotteries u(x)
/// with weights π(x) and reads off the masses on x̄ and x̲.
inline StandardLottery reduce_to_standard(const PossibilityDistribution& pi, const BasicUtilityAssessment& a) {
  a.require_distribution(pi);
  const OutcomeSet& outcomes = a.outcomes();
  std::vector<PossibilityDistribution> sigmas;
  sigmas.reserve(pi.size());
  for (std::size_t x = 0; x < pi.size(); ++x) {
    const auto& u = a.utility(x);
    sigmas.push_back(StandardLottery::make(u.lambda(), u.mu()).to_distribution(outcomes, a.v()));
  }
  std::vector<MixtureTerm> terms;
  for (std::size_t x = 0; x < pi.size(); ++x) terms.push_back({pi[x], sigmas[x]});
  const PossibilityDistribution rho = mixture(terms);
  return StandardLottery::make(rho[outcomes.best()], rho[outcomes.worst()]);
}

struct PessimisticMethod {
  PessOptConfig config;
};
struct OptimisticMethod {
  PessOptConfig config;
};
struct BinaryMethod {
  BasicUtilityAssessment assessment;
};

using UtilityMethod = std::variant<PessimisticMethod, OptimisticMethod, BinaryMethod>;

/// A U-level for QU⁻/QU⁺ or an element of U_V for QU.
using UtilityValue = std::variant<Level, BinaryUtility>;

inline UtilityValue evaluate(const UtilityMethod& method, const PossibilityDistribution& pi) {
  return std::visit(
      [&](const auto& m) -> UtilityValue {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, PessimisticMethod>) return qu_minus(pi, m.config);
        else if constexpr (std::is_same_v<M, OptimisticMethod>) return qu_plus(pi, m.config);
        else return qu_binary(pi, m.assessment);
      },
      method);
}

inline std::strong_ordering compare_utility(const UtilityValue& a, const UtilityValue& b) {
  if (a.index() != b.index()) throw std::logic_error("comparing utilities of different kinds");
  if (const auto* la = std::get_if<Level>(&a)) return *la <=> std::get<Level>(b);
  return compare_binary(std::get<BinaryUtility>(a), std::get<BinaryUtility>(b));
}

inline const Scale& value_scale(const UtilityMethod& method) {
  return std::visit(
      [](const auto& m) -> const Scale& {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BinaryMethod>) return m.assessment.v();
        else return m.config.u_scale();
      },
      method);
}

/// Outcome set and uncertainty scale the method evaluates against.
inline const OutcomeSet& method_outcomes(const UtilityMethod& method) {
  return std::visit(
      [](const auto& m) -> const OutcomeSet& {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BinaryMethod>) return m.assessment.outcomes();
        else return m.config.outcomes();
      },
      method);
}

inline const Scale& method_v(const UtilityMethod& method) {
  return std::visit(
      [](const auto& m) -> const Scale& {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BinaryMethod>) return m.assessment.v();
        else return m.config.v();
      },
      method);
}

inline std::string format_utility(const UtilityMethod& method, const UtilityValue& value) {
  const Scale& s = value_scale(method);
  if (const auto* l = std::get_if<Level>(&value)) return s.label(*l);
  return format_binary(s, std::get<BinaryUtility>(value));
}

struct RankedClass {
  UtilityValue utility;
  std::vector<std::string> ids;
};

/// Equivalence classes of equal utility, best first.
struct RankedDecisions {
  std::vector<RankedClass> classes;
};

/// Groups items by exact utility equality and sorts the classes best-first.
/// Input order is kept within a class.
inline RankedDecisions rank_decisions(const std::vector<std::pair<std::string, PossibilityDistribution>>& items,
                                      const UtilityMethod& method) {
  for (const auto& [id, pi] : items) {
    const auto& head = items.front().second;
    if (!(pi.domain() == head.domain()) || !(pi.scale() == head.scale())) {
      throw DomainMismatch("cannot rank '" + id + "' with '" + items.front().first +
                           "': distributions over different outcomes or scales");
    }
  }
  std::vector<UtilityValue> values;
  values.reserve(items.size());
  for (const auto& item : items) values.push_back(evaluate(method, item.second));

  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return compare_utility(values[a], values[b]) > 0; });

  RankedDecisions out;
  for (std::size_t i : order) {
    if (out.classes.empty() || compare_utility(out.classes.back().utility, values[i]) != 0) {
      out.classes.push_back({values[i], {}});
    }
    out.classes.back().ids.push_back(items[i].first);
  }
  return out;
}

}  // namespace possibilistic
