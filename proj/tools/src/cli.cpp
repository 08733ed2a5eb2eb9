#include "medial/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "medial/medial.hpp"

namespace medial::cli {

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

constexpr int kMaxEnumerateRank = 11;

int verdict(bool yes) { return yes ? kYes : kNo; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string pos_text(const Position& p) { return p.is_root() ? "-" : p.str(); }

std::string ring_text(const GroupRingElement& r, const GroupSpec& g) {
  if (r.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : r.terms()) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) s += std::to_string(mag) + "*";
    s += g.name(e);
  }
  return s;
}

std::pair<Position, Position> parse_pair(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw InvalidArgument("--swap expects POS1,POS2");
  return {Position::parse(text.substr(0, comma)), Position::parse(text.substr(comma + 1))};
}

// Each subcommand fills in its flags and returns its handler.
struct Command {
  CLI::App* app;
  std::function<int()> handler;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Medial groupoid identities: membership, derivations, colors and spectra", "medial"};
  app.require_subcommand(1);
  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help) -> CLI::App* {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.push_back({sub, {}});
    return sub;
  };

  // check
  std::string check_identity, check_variety, check_group, check_k, check_method = "oracle";
  {
    CLI::App* c = add("check", "decide whether an identity holds");
    c->add_option("identity", check_identity)->required();
    auto* variety = c->add_option("--variety", check_variety)->check(CLI::IsMember({"sigma"}));
    c->add_option("--group", check_group, "m,n,a,a',b,b' (default Klein 4-group)")->needs(variety);
    auto* k = c->add_option("--k", check_k, "subset of 1..4, e.g. 2,4")->excludes(variety);
    c->add_option("--method", check_method)->check(CLI::IsMember({"oracle", "criterion"}))->needs(k);
    commands.back().handler = [&] {
      const Identity e = parse_identity(check_identity);
      bool yes;
      if (!check_k.empty()) {
        const OperationSelector ks = OperationSelector::parse(check_k);
        yes = check_method == "criterion" ? criterion_in_sigma_K(e, ks) : oracle_in_sigma_K(e, ks);
      } else if (!check_variety.empty()) {
        const GroupSpec g = check_group.empty() ? GroupSpec::klein() : GroupSpec::parse(check_group);
        yes = in_sigma(e, g);
      } else {
        throw InvalidArgument("check needs --variety sigma or --k LIST");
      }
      out << (yes ? "yes" : "no") << "\n";
      return verdict(yes);
    };
  }

  // color
  std::string color_term, color_group;
  {
    CLI::App* c = add("color", "leaf colors of a term");
    c->add_option("term", color_term)->required();
    c->add_option("--group", color_group);
    commands.back().handler = [&] {
      const Term t = parse_term(color_term);
      const GroupSpec g = color_group.empty() ? GroupSpec::klein() : GroupSpec::parse(color_group);
      for (const auto& [p, c] : leaf_colors(t, g))
        out << subterm_at(t, p).name() << "\t" << pos_text(p) << "\t" << g.name(c) << "\n";
      return kYes;
    };
  }

  // coeffs
  std::string coeffs_term, coeffs_group;
  {
    CLI::App* c = add("coeffs", "group-ring coefficient of each variable");
    c->add_option("term", coeffs_term)->required();
    c->add_option("--group", coeffs_group);
    commands.back().handler = [&] {
      const Term t = parse_term(coeffs_term);
      const GroupSpec g = coeffs_group.empty() ? GroupSpec::klein() : GroupSpec::parse(coeffs_group);
      for (const auto& [v, r] : coefficient_vector(t, g)) out << v << "\t" << ring_text(r, g) << "\n";
      return kYes;
    };
  }

  // derive
  std::string derive_term, derive_swap;
  {
    CLI::App* c = add("derive", "derive the interchange of two same-colored leaves from M1..M6");
    c->add_option("term", derive_term)->required();
    c->add_option("--swap", derive_swap, "POS1,POS2 over L/R")->required();
    commands.back().handler = [&] {
      const auto [a, b] = parse_pair(derive_swap);
      out << trace_to_string(derive_interchange({parse_term(derive_term), a, b})) << "\n";
      return kYes;
    };
  }

  // verify-trace
  std::string verify_file, verify_rules = "M";
  {
    CLI::App* c = add("verify-trace", "replay a trace JSON file step by step");
    c->add_option("file", verify_file)->required();
    c->add_option("--rules", verify_rules, "M or a table row such as B24")->capture_default_str();
    commands.back().handler = [&] {
      const IdentitySet& rules = builtin_rules(verify_rules);
      const VerifyResult v = verify_trace(parse_trace(read_file(verify_file)), rules);
      if (v.ok) {
        out << "ok\t" << to_string(v.final) << "\n";
        return kYes;
      }
      out << "failed at step " << (v.failed_step ? std::to_string(*v.failed_step) : "?") << ": " << v.message << "\n";
      return kNo;
    };
  }

  // search
  std::string search_identity, search_rules;
  std::size_t search_depth = 4, search_max_terms = SearchOptions{}.max_terms;
  {
    CLI::App* c = add("search", "breadth-first search for a derivation");
    c->add_option("identity", search_identity)->required();
    c->add_option("--rules", search_rules)->required();
    c->add_option("--depth", search_depth)->required()->check(CLI::Range(0, 64));
    c->add_option("--max-terms", search_max_terms)->capture_default_str()->check(CLI::PositiveNumber);
    commands.back().handler = [&] {
      const IdentitySet& rules = builtin_rules(search_rules);
      const auto tr = bounded_search(parse_identity(search_identity), rules, {search_depth, search_max_terms});
      if (!tr) {
        out << "no derivation within depth " << search_depth << "\n";
        return kNo;
      }
      out << trace_to_string(*tr) << "\n";
      return kYes;
    };
  }

  // compress
  std::string compress_word;
  {
    CLI::App* c = add("compress", "is a signature word compressed");
    c->add_option("word", compress_word)->required();
    commands.back().handler = [&] {
      const Signature s = Signature::parse(compress_word);
      const bool family = is_compressed(s);
      const bool factors = avoids_forbidden_factors(s);
      if (family != factors) throw Error("family membership and factor avoidance disagree on " + s.str());
      out << (family ? "compressed" : "not compressed") << "\n";
      return verdict(family);
    };
  }

  // sigma-term
  std::string sigma_word, sigma_var = "x";
  {
    CLI::App* c = add("sigma-term", "canonical term whose path to a variable has the given signature");
    c->add_option("word", sigma_word)->required();
    c->add_option("--var", sigma_var)->capture_default_str();
    commands.back().handler = [&] {
      if (!is_variable_name(sigma_var)) throw InvalidArgument("bad variable name '" + sigma_var + "'");
      out << to_string(build_sigma_term(Signature::parse(sigma_word), sigma_var)) << "\n";
      return kYes;
    };
  }

  // lambda
  std::string lambda_term;
  {
    CLI::App* c = add("lambda", "total color (a,b,c,d) of a term");
    c->add_option("term", lambda_term)->required();
    commands.back().handler = [&] {
      const TotalColorReport r = total_color(parse_term(lambda_term));
      out << r.color.str() << "\tphi1=" << r.phi1 << "\tphi2=" << r.phi2 << "\n";
      return kYes;
    };
  }

  // represent
  std::string represent_tuple;
  bool represent_witness = false;
  {
    CLI::App* c = add("represent", "is a tuple the total color of some tree");
    c->add_option("tuple", represent_tuple, "a,b,c,d")->required();
    c->add_flag("--witness", represent_witness, "print a tree with that total color");
    commands.back().handler = [&] {
      const TotalColor q = TotalColor::parse(represent_tuple);
      const bool yes = is_representable(q);
      out << (yes ? "yes" : "no") << "\n";
      if (yes && represent_witness) out << to_string(construct_tree(q)) << "\n";
      return verdict(yes);
    };
  }

  // quad-form
  std::string quad_term;
  {
    CLI::App* c = add("quad-form", "rewrite a four-colored linear term until ((xy)v)(zt) or (u(yx))(zt) appears");
    c->add_option("term", quad_term)->required();
    commands.back().handler = [&] {
      const QuadResult q = to_quad_form(parse_term(quad_term));
      nlohmann::json j{{"term", to_string(q.term)},
                       {"at", q.at.str()},
                       {"fallback", q.used_fallback},
                       {"trace", trace_to_json(q.trace)}};
      out << j.dump(2) << "\n";
      return kYes;
    };
  }

  // spectrum
  std::string spectrum_s, spectrum_row;
  {
    CLI::App* c = add("spectrum", "eigenvalues and determinant of a multicirculant");
    c->add_option("--s", spectrum_s, "s1,...,sk")->required();
    c->add_option("--row", spectrum_row, "top row, entries p or p/q")->required();
    commands.back().handler = [&] {
      out << to_json(eigenvalues(MulticirculantSpec::parse(spectrum_s, spectrum_row))).dump(2) << "\n";
      return kYes;
    };
  }

  // basis-status
  std::string basis_group;
  {
    CLI::App* c = add("basis-status", "do interchange laws alone form a basis for the group's identities");
    c->add_option("--group", basis_group)->required();
    commands.back().handler = [&] {
      const GroupSpec g = GroupSpec::parse(basis_group);
      const BasisDecision d = interchange_basis_decision(g);
      out << to_json(d, g).dump(2) << "\n";
      return verdict(d.verdict);
    };
  }

  // model-check
  std::string model_table, model_identity;
  {
    CLI::App* c = add("model-check", "check an identity in a finite groupoid");
    c->add_option("--table", model_table, "file: k, then k rows of k entries")->required();
    c->add_option("identity", model_identity)->required();
    commands.back().handler = [&] {
      const FiniteGroupoid m = FiniteGroupoid::parse(read_file(model_table));
      const bool yes = model_check(m, parse_identity(model_identity));
      out << (yes ? "holds" : "fails") << "\n";
      return verdict(yes);
    };
  }

  // enumerate
  int enum_rank = 0;
  std::string enum_report;
  {
    CLI::App* c = add("enumerate", "exhaustive sweeps over tree shapes");
    c->add_option("--rank", enum_rank)->check(CLI::Range(1, kMaxEnumerateRank));
    c->add_option("--report", enum_report)
        ->required()
        ->check(CLI::IsMember({"representability", "interchange", "closure"}));
    commands.back().handler = [&] {
      if (enum_report == "closure") {
        const ClosureCheck r = check_closure();
        out << to_json(r).dump(2) << "\n";
        return verdict(r.without_m1_closed && r.without_m2_closed && r.projection_satisfies && r.projection_refutes_m2);
      }
      if (enum_rank == 0) throw InvalidArgument("--rank is required for this report");
      if (enum_report == "representability") {
        const RepresentabilitySweep r = sweep_representability(enum_rank);
        out << to_json(r).dump(2) << "\n";
        return verdict(r.condition_failures == 0 && r.sets_equal && r.witness_failures == 0);
      }
      const InterchangeSweep r = sweep_interchange(enum_rank);
      out << to_json(r).dump(2) << "\n";
      return verdict(r.failures == 0 && r.quad_failures == 0);
    };
  }

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kYes;
  } catch (const CLI::ParseError& e) {
    // Subcommand help surfaces as CallForHelp from within the subcommand.
    if (e.get_exit_code() == 0) {
      for (const Command& c : commands)
        if (c.app->parsed()) {
          out << c.app->help();
          return kYes;
        }
      out << app.help();
      return kYes;
    }
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << "\n";
    return kError;
  }

  try {
    for (const Command& c : commands)
      if (c.app->parsed()) return c.handler();
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << "\n";
    return kError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  err << "error: no subcommand\n";
  return kError;
}

}  // namespace medial::cli
