#include "evlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace evlab {

using nlohmann::json;

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

Configuration parse_configuration(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ' && c != '(' && c != ')') text.push_back(c);
  }
  if (text.empty()) return {};
  const bool word = text.find(',') == std::string::npos &&
                    text.find_first_not_of("01") == std::string::npos && text.size() != 1;
  if (word) return Configuration::from_string(text);

  std::vector<std::int64_t> blocks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, comma - pos);
    if (item.empty() || item.find_first_not_of("0123456789-") != std::string::npos) {
      throw ParseError("invalid block '" + item + "' at position " + std::to_string(pos), pos);
    }
    try {
      blocks.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ParseError("invalid block '" + item + "' at position " + std::to_string(pos), pos);
    }
    pos = comma + 1;
  }
  return Configuration::from_blocks(blocks);
}

ExperimentSpec read_experiment_spec(const std::string& json_text) {
  const auto j = json::parse(json_text);
  ExperimentSpec spec;
  spec.beta = j.value("beta", spec.beta);
  spec.p = j.value("p", spec.p);
  spec.s0_blocks = j.value("s0_blocks", spec.s0_blocks);
  spec.horizon = j.value("horizon", spec.horizon);
  spec.cap = j.value("cap", spec.cap);
  spec.replicas = j.value("replicas", spec.replicas);
  spec.seed = j.value("seed", spec.seed);
  spec.mode = j.value("mode", spec.mode);
  validate(Params{spec.beta, spec.p});
  return spec;
}

std::string write_experiment_spec(const ExperimentSpec& spec) {
  json j = {{"beta", spec.beta},       {"p", spec.p},   {"s0_blocks", spec.s0_blocks},
            {"horizon", spec.horizon}, {"cap", spec.cap}, {"replicas", spec.replicas},
            {"seed", spec.seed},       {"mode", spec.mode}};
  return j.dump(2) + "\n";
}

void write_tau_csv(std::ostream& os, std::span<const TauSample> samples) {
  os << "replica,seed,tau,censored,tau_c\n";
  for (const auto& x : samples) {
    os << x.replica << ',' << x.seed << ',';
    if (x.tau) os << *x.tau;
    else if (x.absorbing_start) os << "undefined";
    os << ',' << (x.censored ? 1 : 0) << ',' << num(x.tau_c) << '\n';
  }
}

void write_growth_csv(std::ostream& os, std::span<const GrowthRun> runs) {
  os << "replica,t,max_size,max_blocks,f1,f2,rho2\n";
  for (const auto& run : runs) {
    for (const auto& s : run.record.samples) {
      os << run.replica << ',' << s.t << ',' << s.max_size << ',' << s.max_blocks << ',' << s.f1 << ','
         << num(s.f2) << ',' << s.rho2 << '\n';
    }
  }
}

void write_drift_csv(std::ostream& os, std::span<const DriftReport> reports) {
  os << "config_blocks,beta,p,functional,formula,oracle,gap\n";
  for (const auto& r : reports) {
    os << '"' << r.configuration << "\"," << r.beta << ',' << r.p << ',' << r.functional << ',' << r.formula << ','
       << r.oracle << ',' << num(r.gap) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record) {
  os << "t,size,blocks,f1,f2,rho2,max_size,max_blocks\n";
  for (const auto& s : record.samples) {
    os << s.t << ',' << s.size << ',' << s.blocks << ',' << s.f1 << ',' << num(s.f2) << ',' << s.rho2 << ','
       << s.max_size << ',' << s.max_blocks << '\n';
  }
}

ColouredRow coloured_row(std::int64_t t, const ColouredConfiguration& x) {
  ColouredRow row;
  row.t = t;
  row.size = x.base().size();
  row.chi = x.chi();
  const auto z = zeta(x);
  row.overlap = z.holding ? -1 : z.length();
  row.obstruction = ground_state_obstruction(x);
  return row;
}

void write_coloured_csv(std::ostream& os, std::span<const ColouredRow> rows) {
  os << "t,size,chi,zeta,obstruction\n";
  for (const auto& r : rows) {
    os << r.t << ',' << r.size << ',' << r.chi << ',' << r.overlap << ',' << (r.obstruction ? 1 : 0) << '\n';
  }
}

std::string audit_json(const AuditReport& report) {
  json clauses = json::array();
  for (const auto& c : report.clauses) {
    clauses.push_back({{"id", c.id},
                       {"statement", c.statement},
                       {"lhs", finite_or_null(c.lhs)},
                       {"rhs", finite_or_null(c.rhs)},
                       {"margin", finite_or_null(c.margin)},
                       {"pass", c.pass}});
  }
  json j = {{"configuration", report.configuration}, {"all_pass", report.all_pass()}, {"clauses", clauses}};
  return j.dump(2) + "\n";
}

std::string transition_law_json(const TransitionLaw<Rational>& law) {
  json entries = json::array();
  for (const auto& e : law.entries) {
    const auto b = e.successor.blocks();
    entries.push_back({{"successor_blocks", std::vector<std::int64_t>(b.begin(), b.end())},
                       {"prob_num", e.probability.get_num().get_str()},
                       {"prob_den", e.probability.get_den().get_str()}});
  }
  return entries.dump(2) + "\n";
}

std::string exploratory_json(const ExploratoryReport& report) {
  json metrics = json::object();
  for (const auto& [k, v] : report.metrics) metrics[k] = finite_or_null(v);
  json j = {{"id", report.id}, {"label", report.label}, {"description", report.description}, {"metrics", metrics}};
  return j.dump(2) + "\n";
}

}  // namespace evlab
