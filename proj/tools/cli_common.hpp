#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalelab/approxspace.hpp"
#include "scalelab/interp.hpp"
#include "scalelab/io.hpp"

namespace cli {

using scalelab::io::Json;

/// Thrown for unusable input: bad specs, unreadable files, budget overruns.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json result = Json::object();
  std::optional<scalelab::io::CsvTable> profile;
  std::vector<std::string> failures;  ///< violated invariants; non-empty means exit 1
};

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
};

struct Command {
  CLI::App* app = nullptr;
  std::shared_ptr<Common> common;
  std::function<Outcome()> run;
};

/// Adds --config, --out and --seed to a subcommand.
std::shared_ptr<Common> add_common(CLI::App* sub);

/// Sequence from --x FILE, --values LIST or --family BETA,DELTA with --length.
struct SeqSource {
  std::string path;
  std::vector<double> values;
  std::vector<double> family;
  std::size_t length = 1024;

  void add_options(CLI::App* sub, const std::string& what);
  scalelab::FiniteSeq load() const;
  std::vector<double> load_raw() const;
};

scalelab::SpaceSpec spec_arg(const std::string& text);

Json to_json(const scalelab::SpaceSpec& s);
Json to_json(const scalelab::PowerLogFamily& f);
Json to_json(const scalelab::MembershipVerdict& v);
Json to_json(const scalelab::RatioProfile& p);
Json to_json(const scalelab::DoublingEstimate& d);
Json to_json(const scalelab::KBounds& b);
Json to_json(const scalelab::WitnessReport& w);

/// Partial norms on a log grid as CSV (index, norm).
scalelab::io::CsvTable partial_norm_table(const scalelab::MembershipVerdict& v);
scalelab::io::CsvTable ratio_table(const scalelab::RatioProfile& p);

std::string num(double v);
std::vector<double> to_vector(const scalelab::FiniteSeq& s);

void register_sequence_commands(CLI::App& app, std::vector<Command>& out);
void register_approx_commands(CLI::App& app, std::vector<Command>& out);
void register_interp_commands(CLI::App& app, std::vector<Command>& out);

}  // namespace cli
