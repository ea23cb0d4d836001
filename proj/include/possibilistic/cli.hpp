#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "possibilistic/entailment.hpp"
#include "possibilistic/scenario.hpp"
#include "possibilistic/spohn.hpp"
#include "possibilistic/worked_example.hpp"

namespace possibilistic::cli {

enum ExitCode : int { ok = 0, invalid = 1, verification_failed = 2, bound_exceeded = 3 };

/// Hard caps for verification runs without --unsafe.
inline constexpr std::size_t max_outcomes_cap = 6;
inline constexpr std::size_t max_levels_cap = 6;

inline UtilityMethod method_for(const Scenario& s, const std::string& name) {
  if (name == "binary") {
    if (!s.assessment) throw ValidationError("method binary needs an 'assessment' in the scenario");
    return BinaryMethod{*s.assessment};
  }
  if (!s.pess_opt) throw ValidationError("method " + name + " needs a 'pessimistic_config' in the scenario");
  if (name == "pessimistic") return PessimisticMethod{*s.pess_opt};
  return OptimisticMethod{*s.pess_opt};
}

inline std::vector<std::pair<std::string, PossibilityDistribution>> select_targets(
    const Scenario& s, const std::vector<std::string>& names) {
  auto all = s.targets();
  if (all.empty()) throw ValidationError("scenario declares no decisions or lotteries");
  if (names.empty()) return all;
  std::vector<std::pair<std::string, PossibilityDistribution>> out;
  for (const auto& n : names) {
    auto it = std::find_if(all.begin(), all.end(), [&](const auto& t) { return t.first == n; });
    if (it == all.end()) throw ValidationError("unknown decision or lottery '" + n + "'");
    out.push_back(*it);
  }
  return out;
}

inline void cmd_evaluate(const Scenario& s, const std::string& method_name, const std::vector<std::string>& names,
                         std::ostream& out) {
  const UtilityMethod method = method_for(s, method_name);
  const auto targets = select_targets(s, names);
  std::size_t width = 0;
  for (const auto& t : targets) width = std::max(width, t.first.size());
  for (const auto& [name, pi] : targets) {
    out << std::left << std::setw(static_cast<int>(width)) << name << "  " << format_utility(method, evaluate(method, pi))
        << '\n';
  }
}

inline void cmd_rank(const Scenario& s, const std::string& method_name, std::ostream& out) {
  const UtilityMethod method = method_for(s, method_name);
  const auto ranked = rank_decisions(select_targets(s, {}), method);
  for (std::size_t c = 0; c < ranked.classes.size(); ++c) {
    const auto& cls = ranked.classes[c];
    out << c + 1 << ". ";
    for (std::size_t i = 0; i < cls.ids.size(); ++i) out << (i ? ", " : "") << cls.ids[i];
    out << "  " << format_utility(method, cls.utility) << '\n';
  }
}

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t max_outcomes = max_outcomes_cap;
  std::size_t max_levels = max_levels_cap;
  std::size_t samples = 0;
  bool unsafe = false;
  bool inject_fault = false;
};

/// Writes one record per line then a summary line; returns the exit code.
inline int cmd_verify(const Scenario& s, const VerifyOptions& opt, std::ostream& report, std::ostream& summary) {
  if (!opt.unsafe && (opt.max_outcomes > max_outcomes_cap || opt.max_levels > max_levels_cap)) {
    throw BoundExceeded("bounds above |X| ≤ 6, |V| ≤ 6 need --unsafe", std::max(opt.max_outcomes, opt.max_levels));
  }
  if (s.outcomes.size() > opt.max_outcomes) {
    throw BoundExceeded("scenario has " + std::to_string(s.outcomes.size()) + " outcomes, above --max-outcomes",
                        s.outcomes.size());
  }
  if (s.v.size() > opt.max_levels) {
    throw BoundExceeded("scenario scale V has " + std::to_string(s.v.size()) + " levels, above --max-levels",
                        s.v.size());
  }
  EnumerationBounds bounds;
  bounds.max_domain = opt.max_outcomes;
  bounds.max_levels = opt.max_levels;
  if (opt.unsafe) bounds.max_members = std::numeric_limits<std::size_t>::max();
  const auto universe = LotteryUniverse::make(s.outcomes, s.v, bounds);

  EntailmentFamilies families;
  if (opt.samples > 0) families = make_families(s.outcomes, s.v, opt.seed, opt.samples);
  if (s.pess_opt) families.pess_opt.insert(families.pess_opt.begin(), *s.pess_opt);
  if (s.assessment) {
    auto& target = s.assessment->anchoring() == Anchoring::standard      ? families.standard
                   : s.assessment->anchoring() == Anchoring::pessimistic ? families.pessimistic
                                                                         : families.optimistic;
    target.insert(target.begin(), *s.assessment);
  }
  std::optional<std::pair<std::size_t, std::size_t>> flip;
  if (opt.inject_fault) {
    flip = std::pair{universe->point_mass(s.outcomes.worst()), universe->point_mass(s.outcomes.best())};
  }
  const auto result = verify_entailments(universe, families, flip);
  for (const auto& rec : result.records) report << format_record(*universe, rec) << '\n';

  std::size_t expected_violations = 0;
  for (const auto& rec : result.records) expected_violations += rec.expected == Expectation::violated;
  const bool failed = result.any_expected_failure();
  summary << "verify: members=" << universe->size() << " records=" << result.records.size()
          << " expected-violations=" << expected_violations << " unexpected=" << result.unexpected_count()
          << " result=" << (failed ? "FAIL" : "PASS") << '\n';
  return failed ? verification_failed : ok;
}

inline DisbeliefRank parse_rank(const std::string& token) {
  if (token == "inf" || token == "infinity" || token == "∞") return std::nullopt;
  std::uint64_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoull(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty() || token[0] == '-') throw ParseError("not a disbelief rank: '" + token + "'");
  return value;
}

inline LabelSet state_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("s" + std::to_string(i));
  return LabelSet::make(std::move(labels), "state");
}

inline void cmd_convert_spohn(const std::vector<std::string>& values, const std::string& direction,
                              const std::string& base, std::ostream& out) {
  const auto c = parse_rational(base);
  if (!c) throw ParseError("not a base: '" + base + "'");
  if (values.empty()) throw ValidationError("no values given");
  const LabelSet states = state_labels(values.size());
  if (direction == "to-possibility") {
    std::vector<DisbeliefRank> ranks;
    for (const auto& v : values) ranks.push_back(parse_rank(v));
    const auto result = from_disbelief(DisbeliefFunction::make(states, std::move(ranks)), *c);
    out << "scale " << result.scale.name() << " = {";
    for (std::size_t i = 0; i < result.scale.size(); ++i) out << (i ? ", " : "") << result.scale.labels()[i];
    out << "}\nπ = (";
    for (std::size_t i = 0; i < result.distribution.size(); ++i) {
      out << (i ? ", " : "") << result.scale.label(result.distribution[i]);
    }
    out << ")\n";
    return;
  }
  std::vector<Rational> image;
  for (const auto& v : values) {
    auto r = parse_rational(v);
    if (!r || *r < 0 || *r > 1) throw ParseError("not a possibility degree in [0, 1]: '" + v + "'");
    image.push_back(*r);
  }
  std::vector<Rational> levels = image;
  levels.push_back(0);
  levels.push_back(1);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const Scale scale = Scale::from_values(levels, "V");
  std::vector<Level> dist;
  for (const auto& r : image) dist.push_back(*scale.find_value(r));
  const auto delta = to_disbelief(PossibilityDistribution::make(states, scale, std::move(dist)), *c);
  out << "δ = (";
  for (std::size_t i = 0; i < delta.values().size(); ++i) out << (i ? ", " : "") << format_rank(delta.values()[i]);
  out << ")\n";
}

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::string descending_levels(const Scale& s) {
  std::vector<std::string> parts(s.labels().rbegin(), s.labels().rend());
  return "{" + join(parts) + "}";
}

}  // namespace detail

/// The four-prize comparison with every intermediate argument list.
inline void cmd_paper_example(std::ostream& out) {
  using detail::join;
  const WorkedExample ex = make_worked_example();
  const auto& cfg = ex.config;
  const Scale& v = ex.v;
  const Scale& u = ex.u;
  const LabelSet& xs = ex.labels;

  std::vector<std::string> order;
  for (const auto& l : xs.labels()) order.push_back(l);
  out << "X = {" << join(order) << "}, " << join(order, " ≻ ") << '\n';
  out << "V = " << detail::descending_levels(v) << '\n';
  out << "U = " << detail::descending_levels(u) << '\n';

  std::vector<std::string> n_rows, h_rows, nh_rows, u_rows;
  for (std::size_t i = u.size(); i-- > 0;) n_rows.push_back("n(" + u.labels()[i] + ") = " + u.label(cfg.n()(u.at(i))));
  for (std::size_t i = v.size(); i-- > 0;) {
    h_rows.push_back("h(" + v.labels()[i] + ") = " + u.label(cfg.h()(v.at(i))));
    nh_rows.push_back("nh(" + v.labels()[i] + ") = " + u.label(cfg.nh(v.at(i))));
  }
  for (std::size_t x = 0; x < xs.size(); ++x) u_rows.push_back("u(" + xs.label(x) + ") = " + u.label(cfg.utility(x)));
  out << "n: " << join(n_rows) << '\n';
  out << "h: " << join(h_rows) << '\n';
  out << "nh: " << join(nh_rows) << '\n';
  out << "u: " << join(u_rows) << '\n';

  const std::vector<std::pair<std::string, const PossibilityDistribution*>> lotteries = {{"π1", &ex.pi1},
                                                                                          {"π2", &ex.pi2}};
  for (const auto& [name, pi] : lotteries) out << name << " = " << format_distribution(*pi) << '\n';

  out << '\n';
  std::vector<Level> minus;
  for (const auto& [name, pi] : lotteries) {
    std::vector<std::string> symbolic, numeric, folded;
    for (std::size_t x = 0; x < xs.size(); ++x) {
      const std::string ux = u.label(cfg.utility(x));
      const Level nh = cfg.nh((*pi)[x]);
      symbolic.push_back("max(nh(" + v.label((*pi)[x]) + "), " + ux + ")");
      numeric.push_back("max(" + u.label(nh) + ", " + ux + ")");
      folded.push_back(u.label(level_max(nh, cfg.utility(x))));
    }
    const Level result = qu_minus(*pi, cfg);
    minus.push_back(result);
    const std::string pad(std::string("QU⁻(" + name + ") ").size() - 2, ' ');
    out << "QU⁻(" << name << ") = min{" << join(symbolic) << "}\n";
    out << pad << "= min{" << join(numeric) << "}\n";
    out << pad << "= min{" << join(folded) << "} = " << u.label(result) << '\n';
  }
  out << "QU⁻: π1 " << (minus[0] > minus[1] ? "≻" : minus[0] == minus[1] ? "~" : "≺") << " π2\n";

  out << '\n';
  std::vector<std::string> uv;
  for (const auto& s : standard_lotteries(v)) uv.push_back(format_binary(v, BinaryUtility::make(s.lambda(), s.mu())));
  out << "U_V = {" << join(uv) << "}\n";
  const auto& a = ex.pessimistic_assessment;
  std::vector<std::string> a_rows;
  for (std::size_t x = 0; x < xs.size(); ++x) a_rows.push_back("u(" + xs.label(x) + ") = " + format_binary(v, a.utility(x)));
  out << "u: " << join(a_rows) << '\n';
  std::vector<BinaryUtility> binary;
  for (const auto& [name, pi] : lotteries) {
    std::vector<std::string> symbolic, folded;
    for (std::size_t x = 0; x < xs.size(); ++x) {
      symbolic.push_back("min(" + v.label((*pi)[x]) + ", " + format_binary(v, a.utility(x)) + ")");
      folded.push_back(format_pair(v, ext_min((*pi)[x], a.utility(x).pair())));
    }
    const BinaryUtility result = qu_binary(*pi, a);
    binary.push_back(result);
    const std::string pad(std::string("QU(" + name + ") ").size() - 2, ' ');
    out << "QU(" << name << ") = max{" << join(symbolic) << "}\n";
    out << pad << "= max{" << join(folded) << "}\n";
    out << pad << "= " << format_binary(v, result) << '\n';
  }
  const auto cmp = compare_binary(binary[0], binary[1]);
  out << "QU: π1 " << (cmp > 0 ? "≻" : cmp == 0 ? "~" : "≺") << " π2\n";

  const auto& std_a = ex.assessment;
  out << "with u(" << xs.label(ex.outcomes.worst()) << ") = "
      << format_binary(v, std_a.utility(ex.outcomes.worst())) << ": QU(π1) = " << format_binary(v, qu_binary(ex.pi1, std_a))
      << ", QU(π2) = " << format_binary(v, qu_binary(ex.pi2, std_a)) << '\n';

  out << '\n';
  out << "QU⁻(π1) = " << u.label(minus[0]) << '\n';
  out << "QU⁻(π2) = " << u.label(minus[1]) << '\n';
  out << "QU(π1) = " << format_binary(v, binary[0]) << '\n';
  out << "QU(π2) = " << format_binary(v, binary[1]) << '\n';
}

inline void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + path + "'");
  file << text;
}

/// Entry point shared by the executable and tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qualitative possibilistic decision engine", "possutil"};
  app.require_subcommand(1);

  std::string scenario_path, method = "binary", out_path, direction = "to-possibility", base = "2";
  std::vector<std::string> names, values;
  VerifyOptions vopt;

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Utility of each decision or lottery");
  auto* rank_cmd = app.add_subcommand("rank", "Order decisions and lotteries best first, ties on one line");
  auto* verify_cmd = app.add_subcommand("verify", "Check the axiom batteries on induced relations");
  auto* spohn_cmd = app.add_subcommand("convert-spohn", "Convert between disbelief ranks and possibility");
  auto* paper_cmd = app.add_subcommand("paper-example", "Print the four-prize worked comparison");

  const std::vector<std::string> methods = {"pessimistic", "optimistic", "binary"};
  for (auto* cmd : {evaluate_cmd, rank_cmd}) {
    cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--method", method, "pessimistic, optimistic or binary")->check(CLI::IsMember(methods));
    cmd->add_option("--out", out_path, "Write output to a file");
  }
  evaluate_cmd->add_option("targets", names, "Decision or lottery names (default: all)");

  verify_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  verify_cmd->add_option("--seed", vopt.seed, "Seed for sampled configurations");
  verify_cmd->add_option("--max-outcomes", vopt.max_outcomes, "Largest |X| accepted");
  verify_cmd->add_option("--max-levels", vopt.max_levels, "Largest |V| accepted");
  verify_cmd->add_option("--samples", vopt.samples, "Extra seeded configurations per family");
  verify_cmd->add_flag("--unsafe", vopt.unsafe, "Lift the hard caps");
  verify_cmd->add_flag("--inject-fault", vopt.inject_fault, "Flip one entry of the first relation");
  verify_cmd->add_option("--out", out_path, "Report file (default: standard output)");

  spohn_cmd->add_option("--direction", direction, "to-possibility or to-disbelief")
      ->check(CLI::IsMember({"to-possibility", "to-disbelief"}));
  spohn_cmd->add_option("--base", base, "Base c > 1");
  spohn_cmd->add_option("--out", out_path, "Write output to a file");
  spohn_cmd->add_option("values", values, "Ranks (integers or inf) or possibility degrees")->required();

  paper_cmd->add_option("--out", out_path, "Write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage, errors;
    const int code = app.exit(e, usage, errors);
    out << usage.str();
    err << errors.str();
    return code == 0 ? ok : invalid;
  }

  try {
    std::ostringstream buf;
    int code = ok;
    if (*evaluate_cmd) {
      cmd_evaluate(load_scenario(scenario_path), method, names, buf);
    } else if (*rank_cmd) {
      cmd_rank(load_scenario(scenario_path), method, buf);
    } else if (*verify_cmd) {
      std::ostringstream summary;
      code = cmd_verify(load_scenario(scenario_path), vopt, buf, summary);
      if (out_path.empty()) buf << summary.str();
      else out << summary.str();
    } else if (*spohn_cmd) {
      cmd_convert_spohn(values, direction, base, buf);
    } else {
      cmd_paper_example(buf);
    }
    write_or_print(out_path, buf.str(), out);
    return code;
  } catch (const BoundExceeded& e) {
    err << "error: " << e.what() << '\n';
    return bound_exceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return invalid;
  }
}

}  // namespace possibilistic::cli
