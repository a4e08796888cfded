// evlab: command-line front end for the exclusion-voter laboratory.
//
// Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "evlab/coloured.hpp"
#include "evlab/drift.hpp"
#include "evlab/experiments.hpp"
#include "evlab/io.hpp"
#include "evlab/lyapunov.hpp"
#include "evlab/render.hpp"

using namespace evlab;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string beta = "0";
  std::string p = "1/2";
  std::string s0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string spec_file;
};

// Opens --out, or stdout when empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Params float_params(const Common& c) {
  Params q{to_double(parse_rational(c.beta)), to_double(parse_rational(c.p))};
  validate(q);
  return q;
}

ExactParams exact_params(const Common& c) {
  ExactParams q{parse_rational(c.beta), parse_rational(c.p)};
  validate(q);
  return q;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_params(CLI::App* cmd, Common& c) {
  cmd->add_option("--beta", c.beta, "mixing parameter (decimal or fraction)")->capture_default_str();
  cmd->add_option("--p", c.p, "exclusion parameter (decimal or fraction)")->capture_default_str();
}

void add_run_options(CLI::App* cmd, Common& c) {
  add_params(cmd, c);
  cmd->add_option("--s0", c.s0, "initial configuration: blocks '8,3,4,1' or word '0010011' (default: ground state)");
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads (default: $EVLAB_THREADS or all cores)");
  cmd->add_option("--out", c.out, "output file (default: stdout)");
}

// ------------------------------------------------------------ drift-check

int drift_check_cmd(const Common& c, std::int64_t max_size, const std::vector<std::string>& names,
                    const std::string& expect_sign) {
  if (max_size > 16) throw UsageError("--max-size is capped at 16 for exhaustive enumeration");
  if (max_size < 1) throw UsageError("--max-size must be at least 1");
  const auto params = exact_params(c);
  std::vector<FunctionalSpec> specs;
  for (const auto& n : names) specs.push_back(FunctionalSpec::parse(n));

  const auto reports = drift_check(max_size, params, specs);
  Output out(c.out);
  write_drift_csv(out.stream(), reports);

  for (const auto& r : reports) {
    bool ok = r.pass;
    if (expect_sign == "nonpositive") ok = ok && r.formula_value <= 1e-15;
    if (expect_sign == "nonnegative") ok = ok && r.formula_value >= -1e-15;
    if (expect_sign == "zero") ok = ok && (r.exact ? r.formula == "0" : std::abs(r.formula_value) <= 1e-12);
    if (!ok) {
      std::cerr << "FAIL " << r.functional << " at (" << r.configuration << ") beta=" << r.beta << " p=" << r.p
                << ": formula " << r.formula << " oracle " << r.oracle << "\n";
      return kVerificationFailure;
    }
  }
  std::cerr << reports.size() << " drift reports, all pass\n";
  return kOk;
}

// ------------------------------------------------------------ audit

Configuration random_configuration(std::int64_t max_size, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::int64_t> length(2, max_size);
  std::bernoulli_distribution bit(0.5);
  const auto n = length(gen);
  std::string w = "0";
  for (std::int64_t i = 2; i < n; ++i) w.push_back(bit(gen) ? '1' : '0');
  w.push_back('1');
  return Configuration::from_string(w);
}

int audit_cmd(const Common& c, std::int64_t max_size, std::int64_t random_count, std::int64_t random_max) {
  Output out(c.out);
  if (!c.s0.empty()) {
    const auto report = inequality_audit(parse_configuration(c.s0));
    out.stream() << audit_json(report);
    return report.all_pass() ? kOk : kVerificationFailure;
  }
  if (max_size > 16) throw UsageError("--max-size is capped at 16 for exhaustive enumeration");
  std::int64_t checked = 0, failures = 0;
  auto check = [&](const Configuration& s) {
    ++checked;
    const auto report = inequality_audit(s);
    if (!report.all_pass()) {
      if (failures++ == 0) out.stream() << audit_json(report);
    }
  };
  for (const auto& s : enumerate_configurations(max_size)) check(s);
  std::mt19937_64 gen(c.seed);
  for (std::int64_t i = 0; i < random_count; ++i) check(random_configuration(random_max, gen));
  std::cerr << checked << " configurations audited, " << failures << " with violations\n";
  return failures == 0 ? kOk : kVerificationFailure;
}

// ------------------------------------------------------------ simulate

int simulate_cmd(const Common& c, std::int64_t horizon, const std::string& schedule, bool coloured) {
  const auto params = float_params(c);
  const auto s0 = parse_configuration(c.s0);
  Rng rng(c.seed);
  Output out(c.out);
  if (coloured) {
    auto x = initial_colouring(s0);
    std::vector<ColouredRow> rows{coloured_row(0, x)};
    for (std::int64_t t = 1; t <= horizon; ++t) {
      x = coloured_step(x, params, rng);
      if (!ordering_holds(x)) throw std::logic_error("colour ordering violated at t=" + std::to_string(t));
      rows.push_back(coloured_row(t, x));
      if (x.base().is_ground() && rows.back().obstruction) {
        throw std::logic_error("obstruction at the ground state, t=" + std::to_string(t));
      }
    }
    write_coloured_csv(out.stream(), rows);
    return kOk;
  }
  PathOptions opts;
  opts.horizon = horizon;
  if (schedule == "geometric") opts.schedule = SampleSchedule::kGeometric;
  const auto rec = sample_path(s0, params, opts, rng);
  write_trajectory_csv(out.stream(), rec);
  std::cerr << "final state (" << rec.final_state.blocks_csv() << ")";
  if (rec.tau) std::cerr << ", first return to ground at t=" << *rec.tau;
  std::cerr << "\n";
  return kOk;
}

// ------------------------------------------------------------ tau / growth

void apply_spec(Common& c, std::int64_t& horizon, std::int64_t& cap, std::int64_t& replicas) {
  if (c.spec_file.empty()) return;
  const auto spec = read_experiment_spec(read_file(c.spec_file));
  c.beta = std::to_string(spec.beta);
  c.p = std::to_string(spec.p);
  c.s0.clear();
  for (std::size_t i = 0; i < spec.s0_blocks.size(); ++i) c.s0 += (i ? "," : "") + std::to_string(spec.s0_blocks[i]);
  horizon = spec.horizon;
  cap = spec.cap;
  replicas = spec.replicas;
  c.seed = spec.seed;
}

int tau_cmd(Common c, std::int64_t cap, std::int64_t replicas) {
  std::int64_t horizon = 0;
  apply_spec(c, horizon, cap, replicas);
  const auto params = float_params(c);
  const auto s0 = c.s0.empty() ? Configuration::from_blocks({1, 1}) : parse_configuration(c.s0);
  const auto xs = tau_experiment(s0, params, cap, replicas, c.seed, resolve_threads(c.threads));
  Output out(c.out);
  write_tau_csv(out.stream(), xs);
  const auto s = summarize(xs);
  std::cerr << s.samples << " replicas, censored fraction " << s.censored_fraction << ", mean uncensored tau "
            << s.mean_uncensored << "\n";
  return kOk;
}

int growth_cmd(Common c, std::int64_t horizon, std::int64_t replicas) {
  std::int64_t cap = 0;
  apply_spec(c, horizon, cap, replicas);
  const auto params = float_params(c);
  const auto runs = growth_replicas(parse_configuration(c.s0), params, horizon, replicas, c.seed,
                                    resolve_threads(c.threads));
  Output out(c.out);
  write_growth_csv(out.stream(), runs);
  std::int64_t violations = 0;
  for (const auto& r : runs) violations += r.envelope_violations;
  std::cerr << runs.size() << " replicas, " << violations << " steps with f1 above f1(S0)+t\n";
  return kOk;
}

// ------------------------------------------------------------ render

int render_cmd(const Common& c, bool highlight) {
  RenderOptions opts;
  opts.highlight_rect = highlight;
  Output out(c.out);
  out.stream() << render_staircase_svg(parse_configuration(c.s0), opts);
  return kOk;
}

// ------------------------------------------------------------ probe

int probe_cmd(const Common& c, const std::string& kind, std::int64_t t, std::int64_t replicas, std::int64_t cap) {
  const auto params = float_params(c);
  const auto threads = resolve_threads(c.threads);
  Output out(c.out);
  auto& os = out.stream();
  if (kind == "envelope") {
    const auto probe = size_envelope_probe(params, parse_configuration(c.s0), t, replicas, c.seed, threads);
    os << "threshold,bound,vacuous,probability,sigma,replicas,pass\n"
       << probe.threshold << ',' << probe.bound << ',' << probe.vacuous << ',' << probe.probability << ','
       << probe.sigma << ',' << probe.replicas << ',' << probe.pass << '\n';
    if (probe.vacuous) std::cerr << "bound is vacuous (<= 0) at this t and S0\n";
    return probe.pass ? kOk : kVerificationFailure;
  }
  if (kind == "reflection") {
    std::vector<std::int64_t> marks;
    for (std::int64_t m = 1; m <= t; m *= 4) marks.push_back(m);
    os << "t,overlap_mean,overlap_se,reflected_mean,reflected_se,z\n";
    for (const auto& pt : reflection_comparison(params, marks, replicas, c.seed, threads)) {
      os << pt.t << ',' << pt.overlap_mean << ',' << pt.overlap_se << ',' << pt.reflected_mean << ','
         << pt.reflected_se << ',' << pt.z << '\n';
    }
    return kOk;
  }
  ExploratoryReport rep;
  if (kind == "recurrence") {
    rep = recurrence_probe(params, cap, replicas, c.seed, threads);
  } else if (kind == "moment-cutoff") {
    rep = moment_cutoff_probe(params, cap, replicas, c.seed, threads);
  } else if (kind == "size-growth") {
    rep = size_growth_probe(params.p, t, replicas, c.seed, threads);
  } else {
    throw UsageError("unknown probe kind '" + kind + "'");
  }
  os << exploratory_json(rep);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evlab: exclusion-voter simulation and verification laboratory"};
  app.require_subcommand(1);
  Common c;
  int code = kOk;

  auto* drift = app.add_subcommand("drift-check", "compare closed-form drifts with exact enumeration");
  std::int64_t max_size = 12;
  std::vector<std::string> functionals{"f1", "f2", "phi0", "phi1/2", "phi1", "phi2"};
  std::string expect_sign;
  add_params(drift, c);
  drift->add_option("--max-size", max_size, "enumerate all configurations with |S| <= max-size (<= 16)")
      ->capture_default_str();
  drift->add_option("--functional", functionals, "f1, f2 or phi<alpha>; repeatable")->delimiter(',');
  drift->add_option("--expect-sign", expect_sign, "additionally require every drift to be nonpositive, zero or nonnegative")
      ->check(CLI::IsMember({"nonpositive", "zero", "nonnegative"}));
  drift->add_option("--out", c.out, "CSV output (default: stdout)");

  auto* audit = app.add_subcommand("audit", "evaluate the inequality family on configurations");
  std::int64_t audit_max = 12, random_count = 0, random_max = 200;
  audit->add_option("--s0", c.s0, "audit one configuration and print its JSON report");
  audit->add_option("--max-size", audit_max, "exhaustive size bound (<= 16)")->capture_default_str();
  audit->add_option("--random", random_count, "additional random configurations")->capture_default_str();
  audit->add_option("--random-max-size", random_max, "size bound for random configurations")->capture_default_str();
  audit->add_option("--seed", c.seed, "seed for random configurations");
  audit->add_option("--out", c.out, "JSON output for the first failing configuration");

  auto* simulate = app.add_subcommand("simulate", "run one trajectory");
  std::int64_t horizon = 1000;
  std::string schedule = "every";
  bool coloured = false;
  add_run_options(simulate, c);
  simulate->add_option("--horizon", horizon, "steps")->capture_default_str();
  simulate->add_option("--schedule", schedule, "sampling schedule")->check(CLI::IsMember({"every", "geometric"}));
  simulate->add_flag("--coloured", coloured, "dump the coloured process (t, size, chi, zeta, obstruction)");

  auto* tau = app.add_subcommand("tau", "sample relaxation times");
  std::int64_t cap = 1000000, tau_replicas = 10000;
  add_run_options(tau, c);
  tau->add_option("--cap", cap, "censoring cap in steps")->capture_default_str();
  tau->add_option("--replicas", tau_replicas, "replica count")->capture_default_str();
  tau->add_option("--spec", c.spec_file, "JSON experiment spec (overrides flags)");

  auto* growth = app.add_subcommand("growth", "track hybrid-zone growth");
  std::int64_t growth_horizon = 1000000, growth_replicas_n = 32;
  add_run_options(growth, c);
  growth->add_option("--horizon", growth_horizon, "steps")->capture_default_str();
  growth->add_option("--replicas", growth_replicas_n, "replica count")->capture_default_str();
  growth->add_option("--spec", c.spec_file, "JSON experiment spec (overrides flags)");

  auto* render = app.add_subcommand("render", "draw a staircase as SVG");
  bool highlight = false;
  render->add_option("--s0", c.s0, "configuration (blocks or word)");
  render->add_flag("--highlight-rect", highlight, "shade the largest inscribed rectangle");
  render->add_option("--out", c.out, "SVG output (default: stdout)");

  auto* probe = app.add_subcommand("probe", "envelope, reflection, and exploratory probes");
  std::string kind = "envelope";
  std::int64_t probe_t = 10000, probe_replicas = 1000, probe_cap = 100000;
  add_run_options(probe, c);
  probe->add_option("--kind", kind, "envelope | reflection | recurrence | moment-cutoff | size-growth")
      ->capture_default_str();
  probe->add_option("--t", probe_t, "time horizon")->capture_default_str();
  probe->add_option("--replicas", probe_replicas, "replica count")->capture_default_str();
  probe->add_option("--cap", probe_cap, "tau cap for the recurrence probes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*drift) code = drift_check_cmd(c, max_size, functionals, expect_sign);
    else if (*audit) code = audit_cmd(c, audit_max, random_count, random_max);
    else if (*simulate) code = simulate_cmd(c, horizon, schedule, coloured);
    else if (*tau) code = tau_cmd(c, cap, tau_replicas);
    else if (*growth) code = growth_cmd(c, growth_horizon, growth_replicas_n);
    else if (*render) code = render_cmd(c, highlight);
    else if (*probe) code = probe_cmd(c, kind, probe_t, probe_replicas, probe_cap);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return code;
}
