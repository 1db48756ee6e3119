#include "cli_common.hpp"

#include <cmath>

namespace cli {

using namespace scalelab;

std::shared_ptr<Common> add_common(CLI::App* sub) {
  auto c = std::make_shared<Common>();
  sub->add_option("--config", c->config, "JSON file of option values; command-line flags win");
  sub->add_option("--out", c->out, "Directory for result.json and profile.csv (stdout if omitted)");
  sub->add_option("--seed", c->seed, "Seed for randomised inputs");
  return c;
}

void SeqSource::add_options(CLI::App* sub, const std::string& what) {
  sub->add_option("--x", path, what + " from a CSV or JSON file");
  sub->add_option("--values", values, what + " given inline")->delimiter(',');
  sub->add_option("--family", family, what + " as n^-beta (1+ln n)^-delta, given as BETA,DELTA")
      ->delimiter(',')
      ->expected(2);
  sub->add_option("--length", length, "Terms generated for --family");
}

std::vector<double> SeqSource::load_raw() const {
  const int given = !path.empty() + !values.empty() + !family.empty();
  if (given != 1) throw ConfigError("give exactly one of --x, --values, --family");
  if (!path.empty()) {
    try {
      return io::read_vector(path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  if (!values.empty()) return values;
  if (length == 0 || length > (std::size_t{1} << 24)) throw ConfigError("--length must be in [1, 2^24]");
  return PowerLogFamily{family[0], family[1]}.sequence(length).vector();
}

FiniteSeq SeqSource::load() const {
  try {
    return FiniteSeq(load_raw());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SpaceSpec spec_arg(const std::string& text) {
  try {
    return parse_spec(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string num(double v) { return io::format_double(v); }

std::vector<double> to_vector(const FiniteSeq& s) { return s.vector(); }

Json to_json(const SpaceSpec& s) {
  return {{"kind", s.kind == SpaceKind::Lorentz ? "l" : "lz"}, {"p", s.p}, {"r", s.r}, {"gamma", s.gamma},
          {"text", s.to_string()}};
}

Json to_json(const PowerLogFamily& f) {
  return {{"beta", f.beta}, {"delta", f.delta}, {"offset", f.offset}, {"log_base", f.log_base}};
}

Json to_json(const MembershipVerdict& v) {
  Json j{{"status", to_string(v.status)},
         {"final_norm", v.final_norm()},
         {"terms", v.partial_norms.size()},
         {"evidence",
          {{"relative_increment", v.evidence.relative_increment},
           {"block_exponent", v.evidence.block_exponent},
           {"block_trend", v.evidence.block_trend},
           {"loglog_slope", v.evidence.loglog_slope},
           {"blocks", v.evidence.blocks},
           {"rule", v.evidence.rule}}}};
  if (v.converged()) j["converged_by"] = v.converged_by;
  if (v.diverging()) j["rate"] = {{"model", to_string(v.rate.model)}, {"exponent", v.rate.exponent}};
  return j;
}

Json to_json(const RatioProfile& p) {
  return {{"verdict", to_string(p.verdict)},   {"fitted_rate", p.fitted_rate}, {"predicted_rate", p.predicted_rate},
          {"rule", p.rule},                     {"max_ratio", p.max_ratio()},  {"min_ratio", p.min_ratio()},
          {"points", p.Ns.size()},              {"N_max", p.Ns.empty() ? 0 : p.Ns.back()},
          {"final_ratio", p.ratios.empty() ? 0.0 : p.ratios.back()}};
}

Json to_json(const DoublingEstimate& d) {
  return {{"sup", d.sup}, {"head_sup", d.head_sup}, {"argmax", d.argmax}, {"bounded", d.bounded}};
}

Json to_json(const KBounds& b) { return {{"lower", b.lower}, {"upper", b.upper}, {"exact", b.exact()}}; }

Json to_json(const WitnessReport& w) {
  return {{"family", to_json(w.family)},
          {"in_space", to_json(w.in_space)},
          {"not_in_space", to_json(w.not_in_space)},
          {"oracle_in", to_string(w.oracle_in)},
          {"oracle_out", to_string(w.oracle_out)},
          {"numeric_in", to_json(w.numeric_in)},
          {"numeric_out", to_json(w.numeric_out)},
          {"length", w.length},
          {"certified", w.certified()}};
}

io::CsvTable partial_norm_table(const MembershipVerdict& v) {
  io::CsvTable t({"N", "norm"});
  if (v.partial_norms.empty()) return t;
  for (auto N : log_grid(1, v.partial_norms.size(), 16)) t.add_row({std::to_string(N), num(v.partial_norms[N - 1])});
  return t;
}

io::CsvTable ratio_table(const RatioProfile& p) {
  io::CsvTable t({"N", "ratio"});
  for (std::size_t i = 0; i < p.Ns.size(); ++i) t.add_row({std::to_string(p.Ns[i]), num(p.ratios[i])});
  return t;
}

}  // namespace cli
