#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cli_common.hpp"

namespace {

using cli::Json;

struct CatalogEntry {
  const char* id;
  const char* result;
  const char* subcommand;
};

// Results and the subcommand that reproduces each of them.
constexpr CatalogEntry kCatalog[] = {
    {"scale-strictness", "every inclusion of the Lorentz and Lorentz-Zygmund scales is strict", "witness"},
    {"ones-ratio-law", "||1_N|| ratios grow, vanish or converge with the sign of r1 - r2", "ones-ratio"},
    {"riemann-sum-limit", "sum k^alpha / N^(alpha+1) tends to 1/(alpha+1)", "polya"},
    {"lethargy-hilbert", "Hilbert elements realise any non-increasing error sequence", "prescribe"},
    {"linear-separation", "a linear scheme separates approximation spaces along a witness", "separate-linear"},
    {"shapiro-separation", "a uniform Shapiro gap separates A(s1) from A(s2) when the ones ratio diverges",
     "separate-teo2"},
    {"convex-doubling-separation", "a convex doubling error profile lies in A_q^r but not in A_p^r", "corbrud"},
    {"dilation-estimate", "dilation by C is bounded on l_{p,r} with an explicit constant", "dilate"},
    {"approximation-numbers", "a_n(T) equals the n-th singular value", "svd"},
    {"diagonal-sandwich", "diagonal operators realise 3 eps_[n/6] >= a_n >= eps_n / 9", "sandwich"},
    {"k-functional", "exact and bracketed K-functionals with monotonicity laws", "kfunc"},
    {"interpolation-norm", "discrete and continuous rho_{theta,q} agree up to explicit constants", "rho"},
    {"condition-a", "sup over the unit ball of K(x, t) stays above c for (C, C^1)", "cond-a"},
    {"k2-condition", "int_0^t K <= gamma K(t)", "k2"},
    {"abn-norm", "the A({b_n},{t_n}) norm and its witness chain", "abn"},
    {"barrier-witnesses", "unit elements with K(z_n, 1/phi(1/n)) >= c", "prop-witness"},
    {"membership", "membership verdicts from truncated norms", "membership"},
    {"rearrangement", "decreasing rearrangement a*", "rearrange"},
    {"lorentz-norm", "Lorentz and Lorentz-Zygmund quasi-norms", "norm"},
    {"lz-norm", "Lorentz-Zygmund quasi-norm with explicit exponents", "lz-norm"},
};

Json catalog_json() {
  Json arr = Json::array();
  for (const auto& e : kCatalog) arr.push_back({{"id", e.id}, {"result", e.result}, {"subcommand", e.subcommand}});
  return arr;
}

/// Appends "--key value" for every config key not given on the command line,
/// so that required options can come from the file.
void expand_config(CLI::App* sub, std::vector<std::string>& args, const std::string& path) {
  Json j;
  try {
    j = scalelab::io::read_json(path);
  } catch (const std::runtime_error& e) {
    throw cli::ConfigError(e.what());
  }
  if (!j.is_object()) throw cli::ConfigError("config must be a JSON object");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : scalelab::io::dump_json(v); };
  std::vector<std::string> extra;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (it.key() == "config") throw cli::ConfigError("config files cannot nest");
    if (!sub->get_option_no_throw(flag)) throw cli::ConfigError("unknown config key '" + it.key() + "'");
    if (given(flag)) continue;
    std::string value;
    if (it->is_array()) {
      for (const auto& v : *it) value += (value.empty() ? "" : ",") + text(v);
    } else {
      value = text(*it);
    }
    extra.push_back(flag);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

/// Finds the subcommand and its --config path in raw arguments.
void apply_config(CLI::App& app, std::vector<std::string>& args) {
  CLI::App* sub = nullptr;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!sub && args[i].rfind("-", 0) != 0) sub = app.get_subcommand_no_throw(args[i]);
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (sub && !path.empty()) expand_config(sub, args, path);
}

void emit(const cli::Command& cmd, const cli::Outcome& outcome) {
  Json doc{{"command", cmd.app->get_name()},
           {"seed", cmd.common->seed},
           {"holds", outcome.failures.empty()},
           {"failures", outcome.failures},
           {"result", outcome.result}};
  const std::string text = scalelab::io::dump_json(doc) + "\n";
  if (cmd.common->out.empty()) {
    std::cout << text;
  } else {
    std::filesystem::create_directories(cmd.common->out);
    const std::filesystem::path dir(cmd.common->out);
    scalelab::io::write_text((dir / "result.json").string(), text);
    if (outcome.profile) scalelab::io::write_text((dir / "profile.csv").string(), outcome.profile->str());
  }
  if (!outcome.failures.empty()) std::cerr << scalelab::io::dump_json({{"failures", outcome.failures}}) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximation-space and interpolation experiments"};
  app.name("scalelab");
  app.require_subcommand(1);

  std::vector<cli::Command> commands;
  cli::register_sequence_commands(app, commands);
  cli::register_approx_commands(app, commands);
  cli::register_interp_commands(app, commands);

  auto* list = app.add_subcommand("list", "Catalog of results and the subcommands that check them");
  std::string format = "text";
  list->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    apply_config(app, args);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list->parsed()) {
    if (format == "json") {
      std::cout << scalelab::io::dump_json(catalog_json()) << "\n";
    } else {
      for (const auto& e : kCatalog) std::cout << e.subcommand << "\t" << e.id << "\t" << e.result << "\n";
    }
    return 0;
  }

  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      const cli::Outcome outcome = cmd.run();
      emit(cmd, outcome);
      return outcome.failures.empty() ? 0 : 1;
    } catch (const CLI::ParseError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const cli::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << scalelab::io::dump_json({{"failures", {std::string(e.what())}}}) << "\n";
      return 1;
    }
  }
  return 2;
}
