#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "possibilistic/axioms.hpp"
#include "possibilistic/lottery.hpp"
#include "possibilistic/universe.hpp"
#include "possibilistic/utility.hpp"

namespace possibilistic {

/// Fixed label sets for generated scales of a given size.
inline Scale standard_scale(std::size_t size, std::string name) {
  static const std::map<std::size_t, std::vector<std::string>> table = {
      {2, {"0", "1"}},
      {3, {"0", ".5", "1"}},
      {4, {"0", ".5", ".7", "1"}},
      {5, {"0", ".3", ".5", ".7", "1"}},
      {6, {"0", ".2", ".4", ".6", ".8", "1"}},
      {7, {"0", ".1", ".3", ".5", ".7", ".9", "1"}},
  };
  if (auto it = table.find(size); it != table.end()) return Scale::from_labels(it->second, std::move(name));
  std::vector<Rational> values;
  for (std::size_t i = 0; i < size; ++i) values.emplace_back(Rational(i, size - 1));
  return Scale::from_values(std::move(values), std::move(name));
}

/// Labels x1..xn.
inline LabelSet outcome_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
  return LabelSet::make(std::move(labels), "outcome");
}

/// Every total preorder on the labels with at least two classes, `best` in
/// the top class and `worst` in the bottom one. Defaults: first and last label.
inline std::vector<OutcomeSet> enumerate_preorders(const LabelSet& labels, std::optional<std::size_t> best_at = {},
                                                   std::optional<std::size_t> worst_at = {}) {
  const std::size_t n = labels.size();
  const std::size_t best = best_at.value_or(0), worst = worst_at.value_or(n - 1);
  std::vector<OutcomeSet> out;
  std::vector<std::size_t> ranks(n, 0);
  for (;;) {
    const std::size_t k = *std::max_element(ranks.begin(), ranks.end()) + 1;
    bool contiguous = k >= 2 && ranks[best] == 0 && ranks[worst] == k - 1;
    for (std::size_t c = 0; contiguous && c < k; ++c) {
      contiguous = std::find(ranks.begin(), ranks.end(), c) != ranks.end();
    }
    if (contiguous) out.push_back(OutcomeSet::from_ranks(labels, best, worst, ranks));
    std::size_t pos = 0;
    while (pos < n && ranks[pos] == n - 1) ranks[pos++] = 0;
    if (pos == n) break;
    ++ranks[pos];
  }
  return out;
}

namespace detail {

/// U_V elements admissible as utilities under an anchoring, best first.
inline std::vector<BinaryUtility> anchored_candidates(const Scale& v, Anchoring anchoring) {
  std::vector<BinaryUtility> out;
  for (const auto& s : standard_lotteries(v)) {
    const bool ok = anchoring == Anchoring::standard || (anchoring == Anchoring::pessimistic && s.in_pessimistic_half()) ||
                    (anchoring == Anchoring::optimistic && s.in_optimistic_half());
    if (ok) out.push_back(BinaryUtility::make(s.lambda(), s.mu()));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline void for_each_combination(std::size_t n, std::size_t k, const auto& visit) {
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  if (k > n) return;
  for (;;) {
    visit(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

/// All assessments consistent with the preorder under the given anchoring.
inline std::vector<BasicUtilityAssessment> enumerate_assessments(const OutcomeSet& outcomes, const Scale& v,
                                                                 Anchoring anchoring = Anchoring::standard) {
  const auto candidates = detail::anchored_candidates(v, anchoring);  // candidates.front() is the best anchor
  const std::size_t k = outcomes.class_count();
  std::vector<BasicUtilityAssessment> out;
  if (candidates.size() < k) return out;
  const std::size_t inner = candidates.size() - 2;
  detail::for_each_combination(inner, k - 2, [&](const std::vector<std::size_t>& pick) {
    std::vector<BinaryUtility> by_class{candidates.front()};
    for (std::size_t p : pick) by_class.push_back(candidates[p + 1]);
    by_class.push_back(candidates.back());
    std::vector<BinaryUtility> utility;
    for (std::size_t x = 0; x < outcomes.size(); ++x) utility.push_back(by_class[outcomes.rank(x)]);
    out.emplace_back(outcomes, v, std::move(utility), anchoring);
  });
  return out;
}

/// Seeded generator of valid configurations. Uses mt19937_64 output directly
/// so that sequences are identical across standard library implementations.
class ConfigSampler {
 public:
  explicit ConfigSampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  /// k distinct sorted values from [lo, hi).
  std::vector<std::size_t> choose(std::size_t lo, std::size_t hi, std::size_t k) {
    std::vector<std::size_t> pool;
    for (std::size_t i = lo; i < hi; ++i) pool.push_back(i);
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(pool.size() - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  OutcomeSet preorder(const OutcomeSet& anchors, std::size_t max_classes) {
    std::vector<OutcomeSet> options;
    for (auto& o : enumerate_preorders(anchors.labels(), anchors.best(), anchors.worst())) {
      if (o.class_count() <= max_classes) options.push_back(std::move(o));
    }
    return options[below(options.size())];
  }

  /// A random valid (u, n, h) over a fresh utility scale U with |U| ≤ |V|.
  PessOptConfig pess_opt(const OutcomeSet& outcomes, const Scale& v) {
    const std::size_t k = outcomes.class_count();
    if (k > v.size()) throw ValidationError("preorder has more classes than V has levels");
    const std::size_t u_size = k + below(v.size() - k + 1);
    Scale u = standard_scale(u_size, "U");

    // h steps up by one level at each chosen gap of V.
    const auto steps = choose(1, v.size(), u_size - 1);
    std::vector<Level> h_images;
    for (std::size_t i = 0, level = 0; i < v.size(); ++i) {
      if (std::binary_search(steps.begin(), steps.end(), i)) ++level;
      h_images.push_back(u.at(level));
    }
    const auto inner = choose(1, u_size - 1, k - 2);
    std::vector<Level> by_class{u.top()};
    for (std::size_t c = inner.size(); c-- > 0;) by_class.push_back(u.at(inner[c]));
    by_class.push_back(u.bottom());
    std::vector<Level> utility;
    for (std::size_t x = 0; x < outcomes.size(); ++x) utility.push_back(by_class[outcomes.rank(x)]);
    return PessOptConfig(outcomes, v, u, std::move(utility), Involution::reversal(u), ScaleMap(v, u, std::move(h_images)));
  }

  BasicUtilityAssessment assessment(const OutcomeSet& outcomes, const Scale& v, Anchoring anchoring) {
    auto all = enumerate_assessments(outcomes, v, anchoring);
    if (all.empty()) throw ValidationError("no assessment fits this preorder and scale");
    return all[below(all.size())];
  }

 private:
  std::mt19937_64 rng_;
};

/// Whether a check is expected to pass or fail for its family.
enum class Expectation { holds, violated };

inline const char* to_string(Expectation e) { return e == Expectation::holds ? "holds" : "violated"; }

struct EntailmentRecord {
  std::string config;
  std::string part;
  AxiomReport report;
  Expectation expected;

  bool as_expected() const { return report.satisfied == (expected == Expectation::holds); }
};

struct EntailmentReport {
  std::shared_ptr<const LotteryUniverse> universe;
  std::vector<EntailmentRecord> records;
  /// Config id of the first standard assessment violating both A2⁻ and A2⁺.
  std::optional<std::string> mixed_witness;

  /// True when some check expected to hold was violated.
  bool any_expected_failure() const {
    return std::any_of(records.begin(), records.end(),
                       [](const auto& r) { return r.expected == Expectation::holds && !r.report.satisfied; });
  }
  bool all_as_expected() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.as_expected(); });
  }
  std::size_t unexpected_count() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.as_expected(); }));
  }
};

/// The configurations run through verify_entailments.
struct EntailmentFamilies {
  std::vector<PessOptConfig> pess_opt;
  std::vector<BasicUtilityAssessment> standard;     // consistent, mixed by construction
  std::vector<BasicUtilityAssessment> pessimistic;  // all in B⁻
  std::vector<BasicUtilityAssessment> optimistic;   // all in B⁺
};

/// Assessments over every preorder sharing the anchors of `anchors`: all of
/// them when |X| ≤ 3 and |V| ≤ 3, otherwise a seeded sample of `samples`.
/// (u, n, h) configurations are always sampled.
inline EntailmentFamilies make_families(const OutcomeSet& anchors, const Scale& v, std::uint64_t seed,
                                        std::size_t samples) {
  EntailmentFamilies f;
  ConfigSampler sampler(seed);
  const bool enumerate = anchors.size() <= 3 && v.size() <= 3;
  const auto preorders = enumerate_preorders(anchors.labels(), anchors.best(), anchors.worst());
  for (Anchoring a : {Anchoring::standard, Anchoring::pessimistic, Anchoring::optimistic}) {
    auto& family = a == Anchoring::standard ? f.standard : a == Anchoring::pessimistic ? f.pessimistic : f.optimistic;
    if (enumerate) {
      for (const auto& o : preorders) {
        for (auto& asg : enumerate_assessments(o, v, a)) family.push_back(std::move(asg));
      }
    } else {
      const std::size_t limit = a == Anchoring::standard ? 2 * v.size() - 1 : v.size();
      for (std::size_t i = 0; i < samples; ++i) family.push_back(sampler.assessment(sampler.preorder(anchors, limit), v, a));
    }
  }
  for (std::size_t i = 0; i < samples; ++i) f.pess_opt.push_back(sampler.pess_opt(sampler.preorder(anchors, v.size()), v));
  return f;
}

namespace detail {

struct BatteryItem {
  AxiomId id;
  Expectation expected;
};

inline AxiomReport run_check(const PreferenceRelation& r, AxiomId id, const std::vector<WeightPair>& weights,
                             const BasicUtilityAssessment* assessment) {
  auto relabel = [id](AxiomReport rep) {
    rep.axiom = id;
    return rep;
  };
  switch (id) {
    case AxiomId::A1_minus:
    case AxiomId::B1: return check_total_preorder(r, id);
    case AxiomId::A2_minus: return check_uncertainty_attitude(r, Attitude::aversion);
    case AxiomId::A2_plus: return check_uncertainty_attitude(r, Attitude::attraction);
    case AxiomId::A3_minus:
    case AxiomId::B3: return relabel(check_substitutability(r, weights, id));
    case AxiomId::A4_minus: return check_continuity(r, Continuity::A4_minus);
    case AxiomId::A4_plus: return check_continuity(r, Continuity::A4_plus);
    case AxiomId::B4: return check_continuity(r, Continuity::B4);
    case AxiomId::B4_minus: return check_continuity(r, Continuity::B4_minus);
    case AxiomId::B4_plus: return check_continuity(r, Continuity::B4_plus);
    case AxiomId::B2: return check_qualitative_monotonicity(r, MonotonicityMode::biconditional);
    case AxiomId::B2_sufficiency: return check_qualitative_monotonicity(r, MonotonicityMode::sufficiency);
    case AxiomId::half_decomposition: return check_lemma3_decomposition(r);
    case AxiomId::unique_standard_equivalent: return check_unique_standard_equivalent(r, *assessment);
  }
  return AxiomReport::ok(id);
}

}  // namespace detail

/// Runs the axiom batteries over each family:
///  i   pessimistic utilities: A1⁻–A4⁻ and B1, B3, B4, the "if" half of B2
///  ii  optimistic utilities: the S_O battery and the same B checks
///  thm2  standard assessments: B1–B4, unique standard equivalents, B decomposition
///  iii B⁻ assessments: A1⁻–A4⁻;  iv B⁺ assessments: the S_O battery
///  e   standard assessments violate A2⁻, A2⁺, B4⁻ and B4⁺
/// Pessimistic and optimistic utilities tie (0/x̄,1/x̲) with (1/x̄,1/x̲)
/// (resp. (1/x̄,0/x̲) with (1/x̄,1/x̲)), so the biconditional B2 is recorded
/// as expected to fail for parts i and ii; B⁻/B⁺ assessments collapse the
/// other half of B the same way.
/// `flip`, when set, toggles one entry of the first relation built (fault injection).
inline EntailmentReport verify_entailments(const std::shared_ptr<const LotteryUniverse>& universe,
                                           const EntailmentFamilies& families,
                                           std::optional<std::pair<std::size_t, std::size_t>> flip = {}) {
  using enum AxiomId;
  constexpr auto H = Expectation::holds;
  constexpr auto F = Expectation::violated;
  EntailmentReport report{universe, {}, std::nullopt};
  const auto weights = all_weight_pairs(universe->scale());

  auto run = [&](const std::string& config, const std::string& part, const UtilityMethod& method,
                 const std::vector<detail::BatteryItem>& battery, const BasicUtilityAssessment* assessment) {
    PreferenceRelation r = induced_relation(universe, method);
    if (flip) {
      r.set(flip->first, flip->second, !r.holds(flip->first, flip->second));
      flip.reset();
    }
    for (const auto& item : battery) {
      report.records.push_back({config, part, detail::run_check(r, item.id, weights, assessment), item.expected});
    }
  };

  for (std::size_t i = 0; i < families.pess_opt.size(); ++i) {
    const auto& cfg = families.pess_opt[i];
    const std::string id = "P" + std::to_string(i);
    run(id, "i", PessimisticMethod{cfg},
        {{A1_minus, H}, {A2_minus, H}, {A3_minus, H}, {A4_minus, H}, {B1, H}, {B2_sufficiency, H}, {B2, F}, {B3, H}, {B4, H}},
        nullptr);
    run(id, "ii", OptimisticMethod{cfg},
        {{A1_minus, H}, {A2_plus, H}, {A3_minus, H}, {A4_plus, H}, {B1, H}, {B2_sufficiency, H}, {B2, F}, {B3, H}, {B4, H}},
        nullptr);
  }
  for (std::size_t i = 0; i < families.standard.size(); ++i) {
    const auto& a = families.standard[i];
    const std::string id = "S" + std::to_string(i);
    run(id, "thm2", BinaryMethod{a},
        {{B1, H}, {B2, H}, {B3, H}, {B4, H}, {unique_standard_equivalent, H}, {half_decomposition, H}}, &a);
    const std::size_t before = report.records.size();
    run(id, "e", BinaryMethod{a}, {{A2_minus, F}, {A2_plus, F}, {B4_minus, F}, {B4_plus, F}}, &a);
    if (!report.mixed_witness && !report.records[before].report.satisfied && !report.records[before + 1].report.satisfied) {
      report.mixed_witness = id;
    }
  }
  for (std::size_t i = 0; i < families.pessimistic.size(); ++i) {
    const auto& a = families.pessimistic[i];
    run("N" + std::to_string(i), "iii", BinaryMethod{a},
        {{A1_minus, H}, {A2_minus, H}, {A3_minus, H}, {A4_minus, H}, {B4_minus, H}, {B2_sufficiency, H}, {B2, F}}, &a);
  }
  for (std::size_t i = 0; i < families.optimistic.size(); ++i) {
    const auto& a = families.optimistic[i];
    run("O" + std::to_string(i), "iv", BinaryMethod{a},
        {{A1_minus, H}, {A2_plus, H}, {A3_minus, H}, {A4_plus, H}, {B4_plus, H}, {B2_sufficiency, H}, {B2, F}}, &a);
  }
  return report;
}

/// One line per record: config, part, axiom, expectation, outcome, witness.
inline std::string format_record(const LotteryUniverse& universe, const EntailmentRecord& rec) {
  std::string line = "config=" + rec.config + " part=" + rec.part + " axiom=" + to_string(rec.report.axiom) +
                     " expected=" + to_string(rec.expected) + " satisfied=" + (rec.report.satisfied ? "true" : "false");
  if (rec.report.witness) line += " witness=" + format_witness(universe, *rec.report.witness);
  if (!rec.as_expected()) line += " UNEXPECTED";
  return line;
}

// ---------------------------------------------------------------------------

struct DominatedMixSweep {
  std::size_t premises_20 = 0;       // pairs·λ with QU⁻(π₁) ≥ QU⁻(π₂)
  std::size_t failures_20 = 0;
  std::size_t premises_dual = 0;     // pairs·μ with QU⁺(π₁) ≥ QU⁺(π₂)
  std::size_t failures_dual = 0;
  std::size_t premises_literal = 0;  // pairs·(λ,μ) with QU⁻(π₁) ≥ QU⁻(π₂)
  std::size_t holds_literal = 0;     // of those, QU⁺(λ/π₁, μ/π₂) = QU⁺(π₁)
  std::optional<std::pair<std::size_t, std::size_t>> literal_counterexample;
};

/// Sweeps every ordered pair of lotteries and every weight:
///  - QU⁻(π₁) ≥ QU⁻(π₂) ⇒ QU⁻(λ/π₁, 1/π₂) = QU⁻(π₂)
///  - QU⁺(π₁) ≥ QU⁺(π₂) ⇒ QU⁺(1/π₁, μ/π₂) = QU⁺(π₁)
///  - and counts how often QU⁻(π₁) ≥ QU⁻(π₂) ⇒ QU⁺(λ/π₁, μ/π₂) = QU⁺(π₁).
inline DominatedMixSweep dominated_mix_sweep(const LotteryUniverse& universe, const PessOptConfig& cfg) {
  DominatedMixSweep out;
  const Scale& v = universe.scale();
  std::vector<Level> minus, plus;
  for (const auto& pi : universe.members()) {
    minus.push_back(qu_minus(pi, cfg));
    plus.push_back(qu_plus(pi, cfg));
  }
  const auto weights = all_weight_pairs(v);
  for (std::size_t a = 0; a < universe.size(); ++a) {
    for (std::size_t b = 0; b < universe.size(); ++b) {
      const auto& p1 = universe.member(a);
      const auto& p2 = universe.member(b);
      if (minus[a] >= minus[b]) {
        for (const Level& lambda : v.levels()) {
          ++out.premises_20;
          if (qu_minus(mixture(lambda, p1, v.top(), p2), cfg) != minus[b]) ++out.failures_20;
        }
        for (const auto& [l, m] : weights) {
          ++out.premises_literal;
          if (qu_plus(mixture(v.at(l), p1, v.at(m), p2), cfg) == plus[a]) {
            ++out.holds_literal;
          } else if (!out.literal_counterexample) {
            out.literal_counterexample = std::pair{a, b};
          }
        }
      }
      if (plus[a] >= plus[b]) {
        for (const Level& mu : v.levels()) {
          ++out.premises_dual;
          if (qu_plus(mixture(v.top(), p1, mu, p2), cfg) != plus[a]) ++out.failures_dual;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Outcome of searching for two lotteries that agree on QU⁻ and QU⁺ but not on QU.
struct PairSearchResult {
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::size_t outcomes = 0;
  std::size_t levels = 0;
  std::size_t pairs_examined = 0;

  std::string describe(const LotteryUniverse& universe) const {
    if (witness) {
      return "witness " + universe.describe(witness->first) + " vs " + universe.describe(witness->second);
    }
    return "none found at scale (|X|=" + std::to_string(outcomes) + ", |V|=" + std::to_string(levels) + ")";
  }
};

inline PairSearchResult search_pair_counterexample(const LotteryUniverse& universe, const PessOptConfig& cfg,
                                                   const BasicUtilityAssessment& assessment) {
  PairSearchResult out{std::nullopt, universe.outcomes().size(), universe.scale().size(), 0};
  std::vector<Level> minus, plus;
  std::vector<BinaryUtility> binary;
  for (const auto& pi : universe.members()) {
    minus.push_back(qu_minus(pi, cfg));
    plus.push_back(qu_plus(pi, cfg));
    binary.push_back(qu_binary(pi, assessment));
  }
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = i + 1; j < universe.size(); ++j) {
      ++out.pairs_examined;
      if (minus[i] == minus[j] && plus[i] == plus[j] && compare_binary(binary[i], binary[j]) != 0) {
        out.witness = std::pair{i, j};
        return out;
      }
    }
  }
  return out;
}

}  // namespace possibilistic
