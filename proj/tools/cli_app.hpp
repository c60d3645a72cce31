#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gamedecomp/gamedecomp.hpp"
#include "json.hpp"

namespace gamedecomp::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kInputError = 3 };

struct Options {
  std::string command;
  std::string path;
  std::string format = "json";
  std::optional<unsigned> decimal;
  std::optional<std::string> shift;
  std::optional<std::string> space;
  std::optional<std::string> kind;
  bool raw_expression = false;
};

/// "n:k1,k2,..." → GameSpace.
inline GameSpace parse_space(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("space must look like n:k1,k2,...");
  auto to_count = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad number '" + s + "' in space '" + text + "'");
    return static_cast<std::size_t>(std::stoull(s));
  };
  const std::size_t n = to_count(text.substr(0, colon));
  std::vector<std::size_t> counts;
  std::stringstream ss(text.substr(colon + 1));
  for (std::string item; std::getline(ss, item, ',');) counts.push_back(to_count(item));
  if (counts.size() != n)
    throw std::invalid_argument("space '" + text + "' declares " + std::to_string(n) + " players but lists " +
                                std::to_string(counts.size()) + " strategy counts");
  return GameSpace(std::move(counts));
}

class Emitter {
 public:
  explicit Emitter(std::optional<unsigned> decimal) : decimal_(decimal) {}

  json value(const Rational& r) const {
    if (decimal_) return r.to_decimal(*decimal_);
    return rational_to_json(r);
  }

  json values(const std::vector<Rational>& v) const {
    json out = json::array();
    for (const auto& x : v) out.push_back(value(x));
    return out;
  }

  json game(const Game& g) const {
    json doc = game_to_json(g);
    if (decimal_) {
      json rows = json::array();
      for (const auto& row : g.payoff_rows()) rows.push_back(values(row));
      doc["payoffs"] = std::move(rows);
    }
    return doc;
  }

  /// Adds the exactness label shared by every document.
  void label(json& doc) const {
    if (decimal_) {
      doc["approximate"] = true;
      doc["decimal_digits"] = *decimal_;
    } else {
      doc["exact"] = true;
    }
  }

 private:
  std::optional<unsigned> decimal_;
};

inline Game load_game(const std::string& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  Game g = parse_game(buffer.str());
  for (std::size_t i = 1; i <= g.space().players(); ++i)
    if (g.space().strategies(i) == 1) err << "warning: player " << i << " has a single strategy\n";
  return g;
}

inline json profiles_json(const std::vector<StrategyProfile>& profiles) {
  json out = json::array();
  for (const auto& s : profiles) out.push_back(s.choices);
  return out;
}

inline int cmd_decompose(const Options& opt, std::ostream& out, std::ostream& err) {
  const Game g = load_game(opt.path, err);
  const Emitter emit(opt.decimal);
  const Decomposition d = decompose(g);
  const bool sums = d.sum() == g;
  json doc;
  doc["space"] = g.space().str();
  doc["pure_potential"] = emit.game(d.pure_potential);
  doc["nonstrategic"] = emit.game(d.nonstrategic);
  doc["pure_harmonic"] = emit.game(d.pure_harmonic);
  doc["sum_equals_input"] = sums;
  emit.label(doc);
  out << doc.dump(2) << "\n";
  if (!sums) {
    err << "error: components do not sum to the input game\n";
    return kCheckFailed;
  }
  return kOk;
}

/// Definition-level verdict for each subspace, computed without projections.
inline json definitional_verdicts(const Game& g) {
  json defs;
  defs["nonstrategic"] = check_nonstrategic_defn(g);
  defs["pure-harmonic"] = check_pure_harmonic_defn(g);
  defs["harmonic"] = check_harmonic_defn(g);
  const auto phi = solve_potential_equation(g);
  const bool potential = phi && check_potential_defn(g, *phi);
  defs["potential"] = potential;
  // Pure potential games are the potential games whose payoffs sum to zero
  // along every unilateral deviation line.
  bool normalized = true;
  for (std::size_t i = 1; i <= g.space().players() && normalized; ++i) {
    const auto& row = g.payoffs(i);
    detail::for_each_deviation_line(g.space(), i, [&](std::size_t base, std::size_t stride, std::size_t ki) {
      Rational total;
      for (std::size_t z = 0; z < ki; ++z) total += row[base + z * stride];
      if (!total.is_zero()) normalized = false;
    });
  }
  defs["pure-potential"] = potential && normalized;
  return defs;
}

inline int cmd_classify(const Options& opt, std::ostream& out, std::ostream& err) {
  const Game g = load_game(opt.path, err);
  json members, agreement;
  const json defs = definitional_verdicts(g);
  bool all_agree = true;
  for (auto kind : kAllSubspaceKinds) {
    const std::string name(to_string(kind));
    const bool m = is_member(g, kind);
    members[name] = m;
    const bool agrees = defs.at(name).get<bool>() == m;
    agreement[name] = agrees;
    all_agree = all_agree && agrees;
  }
  json doc;
  doc["space"] = g.space().str();
  doc["memberships"] = members;
  doc["definitional_checks"] = defs;
  doc["definitional_agreement"] = agreement;
  doc["all_agree"] = all_agree;
  doc["exact"] = true;
  out << doc.dump(2) << "\n";
  if (!all_agree) {
    err << "error: projection membership disagrees with the definitional checks\n";
    return kCheckFailed;
  }
  return kOk;
}

inline int cmd_potential(const Options& opt, std::ostream& out, std::ostream& err) {
  const Game g = load_game(opt.path, err);
  const Emitter emit(opt.decimal);
  Rational shift;
  if (opt.shift) shift = Rational::parse(*opt.shift);

  json doc;
  doc["space"] = g.space().str();
  const auto phi = potential_function(g);
  const auto phi_eq = solve_potential_equation(g);
  const bool routes_agree = phi.has_value() == phi_eq.has_value() && (!phi || phi->equal_up_to_constant(*phi_eq));
  doc["potential"] = phi.has_value();
  doc["routes_agree"] = routes_agree;
  if (phi) {
    doc["shift"] = shift.str();
    doc["values"] = emit.values(phi->shifted(shift).values);
    doc["equation_route_values"] = emit.values(phi_eq->values);
  } else {
    doc["verdict"] = "not potential";
  }
  if (opt.raw_expression) {
    json raw;
    raw["note"] = "experimental: first k entries are a potential only for potential games";
    raw["vector"] = emit.values(potential_expression(g));
    doc["experimental_raw_expression"] = std::move(raw);
  }
  emit.label(doc);
  out << doc.dump(2) << "\n";
  if (!routes_agree) {
    err << "error: projection and potential-equation routes disagree\n";
    return kCheckFailed;
  }
  return kOk;
}

inline int cmd_project(const Options& opt, std::ostream& out, std::ostream& err) {
  if (!opt.space || !opt.kind) {
    err << "error: project needs --space and --kind\n";
    return kUsage;
  }
  const GameSpace space = parse_space(*opt.space);
  const auto kind = subspace_from_string(*opt.kind);
  if (!kind) {
    err << "error: unknown kind '" << *opt.kind << "'\n";
    return kUsage;
  }
  if (space.has_degenerate_player()) err << "warning: a player has a single strategy\n";
  const auto ps = projectors_for(space);
  const Matrix identity = Matrix::identity(space.dimension());
  if (ps->pure_potential + ps->nonstrategic + ps->pure_harmonic != identity) {
    err << "error: projections do not sum to the identity\n";
    return kCheckFailed;
  }
  const Matrix& p = ps->projection(*kind);
  if (opt.format == "csv") {
    const unsigned digits = opt.decimal.value_or(6);
    for (std::size_t r = 0; r < p.rows(); ++r) {
      for (std::size_t c = 0; c < p.cols(); ++c) out << (c ? "," : "") << p(r, c).to_decimal(digits);
      out << "\n";
    }
    return kOk;
  }
  json rows = json::array();
  for (std::size_t r = 0; r < p.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < p.cols(); ++c)
      row.push_back(opt.decimal ? p(r, c).to_decimal(*opt.decimal) : p(r, c).str());
    rows.push_back(std::move(row));
  }
  out << rows.dump() << "\n";
  return kOk;
}

inline int cmd_nash(const Options& opt, std::ostream& out, std::ostream& err) {
  const Game g = load_game(opt.path, err);
  const NashReport report = nash_report(g);
  json doc;
  doc["pure_equilibria"] = profiles_json(report.pure_equilibria);
  doc["uniform_mixed_is_nash"] = report.uniform_mixed_is_nash;
  out << doc.dump(2) << "\n";
  return kOk;
}

/// Every cross-oracle check that applies to one game.
inline json verification_checks(const Game& g) {
  const GameSpace& space = g.space();
  const auto ps = projectors_for(space);
  json checks;

  const Decomposition d = decompose(g);
  checks["decomposition_sums_to_input"] = d.sum() == g;
  checks["pure_potential_component_in_subspace"] = is_member(d.pure_potential, SubspaceKind::PurePotential);
  checks["nonstrategic_component_in_subspace"] = is_member(d.nonstrategic, SubspaceKind::Nonstrategic);
  checks["pure_harmonic_component_in_subspace"] = is_member(d.pure_harmonic, SubspaceKind::PureHarmonic);
  checks["nonstrategic_component_definition"] = check_nonstrategic_defn(d.nonstrategic);
  checks["pure_harmonic_component_definition"] = check_pure_harmonic_defn(d.pure_harmonic);
  const auto phi_p = potential_function(d.pure_potential);
  checks["pure_potential_component_definition"] = phi_p && check_potential_defn(d.pure_potential, *phi_p);
  checks["nonstrategic_direct_formula"] = nonstrategic_component_direct(g) == d.nonstrategic;

  const json defs = definitional_verdicts(g);
  for (auto kind : kAllSubspaceKinds) {
    const std::string name(to_string(kind));
    checks["membership_matches_definition/" + name] = defs.at(name).get<bool>() == is_member(g, kind);
  }

  const Matrix bp = build_B_P(space);
  const Matrix bn = build_B_N(space);
  const Matrix pn = build_P_N(space);
  checks["potential_projection_equals_mp_oracle"] = ps->potential == bp * mp_inverse(bp);
  checks["nonstrategic_projection_equals_mp_oracle"] = ps->nonstrategic == bn * mp_inverse(bn);
  checks["pure_potential_projection_equals_mp_oracle"] = ps->pure_potential == pn * mp_inverse(pn);

  const Matrix x = ps->group_inverse;
  checks["group_inverse_matches_solve_route"] = group_inverse_via_solve(pure_potential_gram(space)) == x;
  if (space.players() <= 8) checks["group_inverse_matches_algorithm1"] = group_inverse_algorithm1(space) == x;

  const auto phi = potential_function(g);
  const auto phi_eq = solve_potential_equation(g);
  checks["potential_routes_agree"] =
      phi.has_value() == phi_eq.has_value() && (!phi || phi->equal_up_to_constant(*phi_eq));
  if (phi) checks["potential_satisfies_definition"] = check_potential_defn(g, *phi);
  if (is_member(g, SubspaceKind::Harmonic)) checks["harmonic_uniform_mixed_nash"] = uniform_mixed_nash_check(g);
  return checks;
}

inline int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const Game g = load_game(opt.path, err);
  const json checks = verification_checks(g);
  bool all = true;
  for (const auto& [name, ok] : checks.items()) all = all && ok.get<bool>();
  json doc;
  doc["space"] = g.space().str();
  doc["checks"] = checks;
  doc["all_passed"] = all;
  out << doc.dump(2) << "\n";
  if (!all) {
    err << "error: at least one verification check failed\n";
    return kCheckFailed;
  }
  return kOk;
}

/// Entry point shared by the executable and the tests.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact decomposition of finite normal-form games", "gamedecomp"};
  app.require_subcommand(1, 1);
  Options opt;
  unsigned decimal = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--decimal", decimal, "Emit approximate decimals with this many digits");
  };
  auto add_file_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", opt.path, "Game file (JSON)")->required();
    add_common(sub);
    return sub;
  };

  add_file_command("decompose", "Split a game into pure-potential, nonstrategic and pure-harmonic parts");
  add_file_command("classify", "Report membership in the five subspaces");
  CLI::App* potential = add_file_command("potential", "Compute a potential function");
  potential->add_option("--shift", opt.shift, "Constant added to the canonical potential (p/q)");
  potential->add_flag("--raw-expression", opt.raw_expression,
                      "Experimental: also print the raw potential expression, even for non-potential games");
  add_file_command("nash", "Pure Nash equilibria and the uniformly mixed profile");
  add_file_command("verify", "Run every cross-oracle check on a game");
  CLI::App* project = app.add_subcommand("project", "Print a projection matrix");
  project->add_option("--space", opt.space, "Signature n:k1,k2,...")->required();
  project->add_option("--kind", opt.kind, "pure-potential|nonstrategic|pure-harmonic|potential|harmonic")->required();
  add_common(project);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) opt.command = sub->get_name();
  for (CLI::App* sub : app.get_subcommands())
    if (sub->count("--decimal") > 0) opt.decimal = decimal;
  if (opt.format == "csv" && opt.command != "project") {
    err << "error: csv output is only available for project\n";
    return kUsage;
  }

  try {
    if (opt.command == "decompose") return cmd_decompose(opt, out, err);
    if (opt.command == "classify") return cmd_classify(opt, out, err);
    if (opt.command == "potential") return cmd_potential(opt, out, err);
    if (opt.command == "project") return cmd_project(opt, out, err);
    if (opt.command == "nash") return cmd_nash(opt, out, err);
    if (opt.command == "verify") return cmd_verify(opt, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace gamedecomp::cli
