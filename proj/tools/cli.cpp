#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "ssde/errors.hpp"
#include "ssde/lamperti.hpp"
#include "ssde/mc.hpp"
#include "ssde/params.hpp"
#include "ssde/sde.hpp"
#include "ssde/specfun.hpp"
#include "ssde/stable.hpp"

namespace ssde::cli {
namespace {

using nlohmann::ordered_json;

struct HelpRequested {
  std::string text;
};

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table{
      {"classify", Command::Classify},       {"simulate", Command::Simulate},
      {"xi", Command::Xi},                   {"extinction", Command::Extinction},
      {"laplace-check", Command::LaplaceCheck}, {"selfsim", Command::SelfSim},
      {"drift-check", Command::DriftCheck},  {"lamperti-check", Command::LampertiCheck},
      {"report", Command::Report},
  };
  return table;
}

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}
  void header(std::initializer_list<const char*> cols) {
    bool first = true;
    for (const char* c : cols) {
      if (!first) os_ << ',';
      os_ << c;
      first = false;
    }
    os_ << '\n';
  }
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << '\n';
  }

 private:
  static std::string cell(double x) { return format_real(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(std::string_view s) { return std::string(s); }
  std::ostream& os_;
};

void write_json(std::ostream& os, const ordered_json& j) { os << j.dump(2) << '\n'; }

SchemeConfig scheme_config(const RunConfig& cfg, const Parameters& p) {
  SchemeConfig s;
  s.horizon = cfg.horizon;
  s.grid_step = std::min(cfg.grid_step, cfg.horizon);
  s.jump_cutoff = cfg.cutoff.value_or(default_cutoff(p.alpha));
  s.gaussian_refinement = cfg.gaussian_refinement;
  s.validate();
  return s;
}

XiConfig xi_config(const RunConfig& cfg, const Parameters& p) {
  XiConfig x;
  x.cutoff = cfg.cutoff.value_or(default_cutoff(p.alpha));
  x.grid_step = cfg.grid_step;
  x.gaussian_refinement = cfg.gaussian_refinement;
  x.validate();
  return x;
}

McOptions mc_options(const RunConfig& cfg) { return {cfg.seed, cfg.workers}; }

void require_n(const RunConfig& cfg, std::size_t minimum) {
  if (cfg.n < minimum) throw ValidationError("n must be >= " + std::to_string(minimum));
}

std::string process_name(Process p) {
  switch (p) {
    case Process::Absorbed: return "absorbed";
    case Process::V: return "v";
    case Process::Extended: return "extended";
  }
  return "absorbed";
}

ordered_json params_json(const Parameters& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"theta", p.theta}};
}

// Keeps every k-th node, the last node and every node off the regular grid
// (jump and absorption times).
std::vector<std::size_t> kept_nodes(const std::vector<double>& times, std::size_t every, double step) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double k = times[i] / step;
    const bool on_grid = std::abs(k - std::round(k)) < 1e-9 * std::max(1.0, k);
    if (every <= 1 || i % every == 0 || i + 1 == times.size() || !on_grid) keep.push_back(i);
  }
  return keep;
}

void emit_path(std::ostream& os, const RunConfig& cfg, const std::vector<double>& times,
               const std::vector<double>& values, ordered_json meta) {
  const auto keep = kept_nodes(times, cfg.sample_every, cfg.grid_step);
  if (cfg.format == Format::Csv) {
    Csv csv(os);
    csv.header({"t", "value"});
    for (std::size_t i : keep) csv.row(times[i], values[i]);
    return;
  }
  ordered_json t = ordered_json::array();
  ordered_json v = ordered_json::array();
  for (std::size_t i : keep) {
    t.push_back(times[i]);
    v.push_back(values[i]);
  }
  meta["times"] = std::move(t);
  meta["values"] = std::move(v);
  write_json(os, meta);
}

ordered_json ks_json(const KsReport& r) {
  return {{"statistic", r.statistic},
          {"n1", r.n1},
          {"n2", r.n2},
          {"critical_value_1pct", r.critical_value_1pct},
          {"pass", r.pass}};
}

void emit_ks(std::ostream& os, const RunConfig& cfg, const KsReport& r, ordered_json meta) {
  if (cfg.format == Format::Csv) {
    Csv csv(os);
    csv.header({"statistic", "n1", "n2", "critical_value_1pct", "pass"});
    csv.row(r.statistic, r.n1, r.n2, r.critical_value_1pct, r.pass);
    return;
  }
  meta["ks"] = ks_json(r);
  write_json(os, meta);
}

ordered_json classify_json(const Parameters& p) {
  const Regime r = classify_regime(p);
  const ThresholdCheck tc = check_threshold_inequality(p.alpha, p.beta);
  ordered_json flags = ordered_json::array();
  for (BoundaryFlag f : r.flag_list()) flags.push_back(std::string(to_string(f)));
  ordered_json j = params_json(p);
  j["eta"] = p.eta;
  j["gamma_index"] = p.gamma_index;
  j["c_alpha"] = p.c_alpha;
  j["threshold_low"] = p.threshold_low;
  j["threshold_high"] = p.threshold_high;
  j["regime"] = std::string(to_string(r.tag));
  j["boundary_flags"] = std::move(flags);
  j["threshold_inequality_holds"] = tc.holds;
  j["threshold_marginal"] = tc.marginal;
  j["xi_mean_drift"] = xi_mean_drift(p.alpha, p.theta);
  j["cramer_condition"] = cramer_condition_check(p);
  return j;
}

void cmd_classify(std::ostream& os, const RunConfig& cfg, const Parameters& p) {
  if (cfg.format == Format::Json) {
    write_json(os, classify_json(p));
    return;
  }
  const Regime r = classify_regime(p);
  std::string flags;
  for (BoundaryFlag f : r.flag_list()) {
    if (!flags.empty()) flags += '|';
    flags += to_string(f);
  }
  Csv csv(os);
  csv.header({"alpha", "beta", "theta", "eta", "gamma_index", "c_alpha", "threshold_low", "threshold_high", "regime",
              "boundary_flags"});
  csv.row(p.alpha, p.beta, p.theta, p.eta, p.gamma_index, p.c_alpha, p.threshold_low, p.threshold_high,
          to_string(r.tag), flags);
}

void cmd_simulate(std::ostream& os, const RunConfig& cfg, const Parameters& p) {
  const SchemeConfig scheme = scheme_config(cfg, p);
  RngStream rng = derive_stream(cfg.seed, 0);
  SamplePath path;
  switch (cfg.process) {
    case Process::Absorbed: path = simulate_z_absorbed(p, cfg.z0, scheme, rng); break;
    case Process::V: path = simulate_v(p, std::pow(cfg.z0, 1.0 - p.eta), scheme, rng); break;
    case Process::Extended: path = simulate_z_extended(p, cfg.z0, scheme, rng); break;
  }
  ordered_json meta = params_json(p);
  meta["process"] = process_name(cfg.process);
  meta["z0"] = cfg.z0;
  meta["absorbed_at"] = path.absorbed_at ? ordered_json(*path.absorbed_at) : ordered_json(nullptr);
  emit_path(os, cfg, path.times, path.values, std::move(meta));
}

void cmd_xi(std::ostream& os, const RunConfig& cfg, const Parameters& p) {
  const XiScheme scheme(p, xi_config(cfg, p));
  RngStream rng = derive_stream(cfg.seed, 0);
  const LevyPathXi xi = scheme.simulate(cfg.horizon, rng);
  ordered_json meta = params_json(p);
  meta["drift_used"] = xi.drift_used;
  meta["cutoff_used"] = xi.cutoff_used;
  meta["compensator_rate"] = xi.compensator_rate;
  meta["slope"] = xi.slope;
  emit_path(os, cfg, xi.times, xi.values, std::move(meta));
}

void cmd_extinction(std::ostream& os, std::ostream& err, const RunConfig& cfg, const Parameters& p) {
  require_n(cfg, 100);
  const SchemeConfig scheme = scheme_config(cfg, p);
  const std::vector<double> thetas = cfg.thetas.empty() ? std::vector<double>{p.theta} : cfg.thetas;
  std::vector<std::pair<double, McSummary>> rows;
  for (double th : thetas) {
    const Parameters q = Parameters::derive(p.alpha, p.beta, th);
    const McSummary s = estimate_extinction_probability(q, cfg.z0, cfg.horizon, cfg.n, mc_options(cfg), scheme);
    err << "extinction theta=" << format_real(th) << " p_hat=" << format_real(s.mean) << '\n';
    rows.emplace_back(th, s);
  }
  if (cfg.format == Format::Csv) {
    Csv csv(os);
    csv.header({"theta", "p_hat", "se", "ci_low", "ci_high"});
    for (const auto& [th, s] : rows) csv.row(th, s.mean, s.std_error, s.ci95_low, s.ci95_high);
    return;
  }
  ordered_json j = {{"alpha", p.alpha}, {"beta", p.beta}, {"z0", cfg.z0}, {"horizon", cfg.horizon}, {"n", cfg.n}};
  ordered_json arr = ordered_json::array();
  for (const auto& [th, s] : rows) {
    arr.push_back({{"theta", th}, {"p_hat", s.mean}, {"se", s.std_error}, {"ci_low", s.ci95_low}, {"ci_high", s.ci95_high}});
  }
  j["rows"] = std::move(arr);
  write_json(os, j);
}

void cmd_laplace(std::ostream& os, std::ostream& err, const RunConfig& cfg, const Parameters& p) {
  require_n(cfg, 2);
  const XiConfig xc = xi_config(cfg, p);
  std::vector<LaplaceEstimate> rows;
  for (double l : cfg.lambdas) {
    rows.push_back(xi_laplace_check(p, l, cfg.n, mc_options(cfg), xc));
    err << "laplace-check lambda=" << format_real(l) << " z=" << format_real(rows.back().z_score()) << '\n';
  }
  if (cfg.format == Format::Csv) {
    Csv csv(os);
    csv.header({"lambda", "estimate", "std_error", "expected", "z_score", "within_3se"});
    for (const auto& e : rows) csv.row(e.lambda, e.estimate, e.std_error, e.expected, e.z_score(), e.within_se(3.0));
    return;
  }
  ordered_json j = params_json(p);
  j["n"] = cfg.n;
  ordered_json arr = ordered_json::array();
  for (const auto& e : rows) {
    arr.push_back({{"lambda", e.lambda},
                   {"estimate", e.estimate},
                   {"std_error", e.std_error},
                   {"expected", e.expected},
                   {"z_score", e.z_score()},
                   {"within_3se", e.within_se(3.0)}});
  }
  j["rows"] = std::move(arr);
  write_json(os, j);
}

void cmd_selfsim(std::ostream& os, const RunConfig& cfg, const Parameters& p) {
  require_n(cfg, 1000);
  SelfSimOptions ss;
  ss.index_override = cfg.index_override;
  if (cfg.process != Process::Absorbed) {
    if (!(p.theta > p.threshold_low)) throw RegimeError("the class-S extension needs theta > Gamma(alpha beta)/Gamma(eta)");
    ss.process = SelfSimProcess::ExtendedV;
  }
  const KsReport r = self_similarity_test(p, cfg.z0, cfg.scale, cfg.horizon, cfg.n, mc_options(cfg),
                                          scheme_config(cfg, p), ss);
  ordered_json meta = params_json(p);
  meta["process"] = process_name(cfg.process);
  meta["x0"] = cfg.z0;
  meta["c"] = cfg.scale;
  meta["t"] = cfg.horizon;
  emit_ks(os, cfg, r, std::move(meta));
}

void cmd_drift(std::ostream& os, const RunConfig& cfg, const Parameters& p) {
  require_n(cfg, 2);
  const double v0 = std::pow(cfg.z0, 1.0 - p.eta);
  const DriftCheck d = drift_identity_check(p, v0, cfg.horizon, cfg.n, mc_options(cfg), scheme_config(cfg, p));
  const bool ok = std::abs(d.difference.mean) <= 3.0 * d.difference.std_error;
  if (cfg.format == Format::Csv) {
    Csv csv(os);
    csv.header({"v0", "t", "predicted", "mean_difference", "std_error", "ci_low", "ci_high", "within_3se"});
    csv.row(v0, cfg.horizon, d.predicted, d.difference.mean, d.difference.std_error, d.difference.ci95_low,
            d.difference.ci95_high, ok);
    return;
  }
  ordered_json j = params_json(p);
  j["v0"] = v0;
  j["t"] = cfg.horizon;
  j["n"] = cfg.n;
  j["predicted"] = d.predicted;
  j["mean_difference"] = d.difference.mean;
  j["std_error"] = d.difference.std_error;
  j["ci_low"] = d.difference.ci95_low;
  j["ci_high"] = d.difference.ci95_high;
  j["within_3se"] = ok;
  write_json(os, j);
}

void cmd_lamperti(std::ostream& os, const RunConfig& cfg, const Parameters& p) {
  require_n(cfg, 1000);
  if (cfg.lamperti_theta) (void)Parameters::derive(p.alpha, p.beta, *cfg.lamperti_theta);
  const KsReport r = lamperti_vs_sde_test(p, cfg.z0, cfg.horizon, cfg.n, mc_options(cfg), scheme_config(cfg, p),
                                          xi_config(cfg, p), cfg.lamperti_theta);
  ordered_json meta = params_json(p);
  meta["x0"] = cfg.z0;
  meta["t"] = cfg.horizon;
  meta["lamperti_theta"] = cfg.lamperti_theta ? ordered_json(*cfg.lamperti_theta) : ordered_json(nullptr);
  emit_ks(os, cfg, r, std::move(meta));
}

std::ofstream open_file(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  return f;
}

void cmd_report(std::ostream& err, const RunConfig& cfg, const Parameters& p) {
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path("report") : std::filesystem::path(cfg.out);
  std::filesystem::create_directories(dir);

  {
    auto f = open_file(dir / "classify.json");
    write_json(f, classify_json(p));
  }
  {
    auto f = open_file(dir / "psi.csv");
    Csv csv(f);
    csv.header({"lambda", "psi"});
    const double top = p.eta > 0.0 ? 1.0 - p.eta : 0.995;
    constexpr int kPoints = 200;
    for (int i = 0; i <= kPoints; ++i) {
      const double l = top * i / kPoints;
      csv.row(l, laplace_exponent_xi(l, p.alpha, p.theta));
    }
  }
  {
    auto f = open_file(dir / "regimes.csv");
    Csv csv(f);
    csv.header({"theta", "regime", "xi_mean_drift", "v_drift"});
    for (int i = 0; i <= 200; ++i) {
      const Parameters q = p.with_theta(0.01 * i);
      csv.row(q.theta, to_string(classify_regime(q).tag), xi_mean_drift(q.alpha, q.theta), q.v_drift());
    }
  }
  {
    RunConfig sub = cfg;
    sub.format = Format::Csv;
    if (sub.thetas.empty()) sub.thetas = {0.0, 0.3, 0.6, 0.9, 1.2};
    auto f = open_file(dir / "extinction.csv");
    cmd_extinction(f, err, sub, p);
  }
  {
    RunConfig sub = cfg;
    sub.format = Format::Csv;
    sub.process = Process::Absorbed;
    auto f = open_file(dir / "path.csv");
    cmd_simulate(f, sub, p);
  }
  err << "report written to " << dir.string() << '\n';
}

void dispatch(std::ostream& os, std::ostream& err, const RunConfig& cfg) {
  const Parameters p = Parameters::derive(cfg.alpha, cfg.beta, cfg.theta);
  switch (cfg.command) {
    case Command::Classify: cmd_classify(os, cfg, p); break;
    case Command::Simulate: cmd_simulate(os, cfg, p); break;
    case Command::Xi: cmd_xi(os, cfg, p); break;
    case Command::Extinction: cmd_extinction(os, err, cfg, p); break;
    case Command::LaplaceCheck: cmd_laplace(os, err, cfg, p); break;
    case Command::SelfSim: cmd_selfsim(os, cfg, p); break;
    case Command::DriftCheck: cmd_drift(os, cfg, p); break;
    case Command::LampertiCheck: cmd_lamperti(os, cfg, p); break;
    case Command::Report: cmd_report(err, cfg, p); break;
  }
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_table()) {
    if (cmd == c) return name;
  }
  return "classify";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Simulation and Monte-Carlo checks for self-similar stable-driven SDEs", "ssde"};
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
  app.allow_config_extras(false);

  std::string command;
  std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
  std::map<std::string, Process> processes{
      {"absorbed", Process::Absorbed}, {"v", Process::V}, {"extended", Process::Extended}};

  app.add_option("command", command, "classify | simulate | xi | extinction | laplace-check | selfsim | "
                                     "drift-check | lamperti-check | report")
      ->required()
      ->transform(CLI::IsMember(command_table()));
  app.add_option("--alpha", cfg.alpha, "stability index in (1,2)");
  app.add_option("--beta", cfg.beta, "noise exponent in [1-1/alpha, 1)");
  app.add_option("--theta", cfg.theta, "drift coefficient >= 0");
  app.add_option("--z0", cfg.z0, "initial value (x0 for selfsim/lamperti-check)");
  app.add_option("--horizon", cfg.horizon, "time horizon (t for the marginal tests)");
  app.add_option("--grid-step", cfg.grid_step, "deterministic sub-step");
  app.add_option("--cutoff", cfg.cutoff, "jump cutoff eps");
  app.add_option("--gaussian", cfg.gaussian_refinement, "Gaussian small-jump refinement (true/false)");
  app.add_option("--process", cfg.process, "absorbed | v | extended")->transform(CLI::CheckedTransformer(processes));
  app.add_option("--n", cfg.n, "Monte-Carlo sample count");
  app.add_option("--seed", cfg.seed, "base seed")->envname("SSDE_SEED");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output file (directory for report)");
  auto* fmt = app.add_option("--format", cfg.format, "csv | json")->transform(CLI::CheckedTransformer(formats));
  app.add_option("--sample-every", cfg.sample_every, "keep every k-th grid node of a path")->check(CLI::PositiveNumber);
  app.add_option("--thetas", cfg.thetas, "theta list for extinction/report")->delimiter(',');
  app.add_option("--lambdas", cfg.lambdas, "lambda list for laplace-check")->delimiter(',');
  app.add_option("--scale", cfg.scale, "scaling constant c for selfsim");
  app.add_option("--index", cfg.index_override, "replace the self-similarity index in selfsim");
  app.add_option("--lamperti-theta", cfg.lamperti_theta, "theta used on the Lamperti side only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  }

  cfg.command = command_table().at(command);
  cfg.format_given = fmt->count() > 0;
  if (!cfg.format_given && cfg.command != Command::Simulate && cfg.command != Command::Xi &&
      cfg.command != Command::Extinction && cfg.command != Command::LaplaceCheck) {
    cfg.format = Format::Json;
  }

  (void)Parameters::derive(cfg.alpha, cfg.beta, cfg.theta);
  if (!(cfg.z0 > 0.0) || !std::isfinite(cfg.z0)) throw ValidationError("z0 must be > 0");
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) throw ValidationError("horizon must be > 0");
  if (!(cfg.grid_step > 0.0)) throw ValidationError("grid-step must be > 0");
  if (cfg.cutoff && !(*cfg.cutoff > 0.0)) throw ValidationError("cutoff must be > 0");
  if (!(cfg.scale > 0.0)) throw ValidationError("scale must be > 0");
  for (double l : cfg.lambdas) {
    if (!(l >= 0.0 && l < 1.0)) throw ValidationError("lambdas must lie in [0,1)");
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == Command::Report || cfg.out.empty()) {
      dispatch(out, err, cfg);
    } else {
      // buffer first so a failed run leaves no partial file
      std::ostringstream buffer;
      dispatch(buffer, err, cfg);
      auto f = open_file(cfg.out);
      f << buffer.str();
      if (!f.flush()) throw std::ios_base::failure("write to " + cfg.out + " failed");
    }
    return 0;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return run(cfg, out, err);
}

}  // namespace ssde::cli
