#include "evlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "evlab/coloured.hpp"
#include "evlab/lyapunov.hpp"

namespace evlab {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double standard_error = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.standard_error = std::sqrt(rss / (n - 2) / sxx);
  }
  return fit;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Sample snapshot(std::int64_t t, const Configuration& s, std::int64_t f1_value, std::int64_t max_size,
                std::int64_t max_blocks) {
  Sample sm;
  sm.t = t;
  sm.size = s.size();
  sm.blocks = s.block_pairs();
  sm.f1 = f1_value;
  sm.f2 = f2_value(s);
  sm.rho2 = rho2(s);
  sm.max_size = max_size;
  sm.max_blocks = max_blocks;
  return sm;
}

}  // namespace

unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("EVLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------- relaxation time

TauSample relaxation_time_sample(const Configuration& s0, const Params& params, std::int64_t cap, Rng& rng) {
  if (cap < 1) throw std::invalid_argument("cap must be at least 1");
  validate(params);
  TauSample out;
  out.seed = rng.seed();
  if (s0.is_ground() && (params.beta == 1.0 || params.p == 1.0)) {
    out.absorbing_start = true;
    return out;
  }
  Configuration s = s0;
  double clock = 0.0;
  for (std::int64_t t = 1; t <= cap; ++t) {
    clock += rng.exponential(static_cast<double>(s.pair_count()));
    step_in_place(s, params, rng);
    if (s.is_ground()) {
      out.tau = t;
      out.tau_c = clock;
      out.steps = t;
      return out;
    }
  }
  out.censored = true;
  out.tau_c = clock;
  out.steps = cap;
  return out;
}

std::vector<TauSample> tau_experiment(const Configuration& s0, const Params& params, std::int64_t cap,
                                      std::int64_t replicas, std::uint64_t seed, unsigned threads) {
  return run_replicas(replicas, seed, threads, [&](std::int64_t r, Rng& rng) {
    auto x = relaxation_time_sample(s0, params, cap, rng);
    x.replica = r;
    return x;
  });
}

double TauSummary::exceed_fraction(std::span<const TauSample> xs, std::int64_t t) const {
  if (xs.empty()) return 0.0;
  std::int64_t k = 0;
  for (const auto& x : xs) {
    if (x.censored || (x.tau && *x.tau > t)) ++k;
  }
  return static_cast<double>(k) / static_cast<double>(xs.size());
}

TauSummary summarize(std::span<const TauSample> xs) {
  TauSummary s;
  s.samples = static_cast<std::int64_t>(xs.size());
  double total = 0;
  std::int64_t finished = 0;
  for (const auto& x : xs) {
    if (x.censored || x.absorbing_start) {
      ++s.censored;
    } else if (x.tau) {
      total += static_cast<double>(*x.tau);
      ++finished;
    }
  }
  s.censored_fraction = s.samples ? static_cast<double>(s.censored) / static_cast<double>(s.samples) : 0.0;
  s.mean_uncensored = finished ? total / static_cast<double>(finished) : std::nan("");
  return s;
}

// ---------------------------------------------------------------- tail index

TailEstimate tail_index_estimate(std::span<const double> times, std::span<const bool> censored,
                                 const TailOptions& options) {
  if (times.size() != censored.size()) throw std::invalid_argument("times and censoring flags differ in length");
  TailEstimate est;
  est.samples = static_cast<std::int64_t>(times.size());
  std::vector<double> sorted;
  std::vector<double> finished;
  double first_censoring = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < times.size(); ++i) {
    sorted.push_back(times[i]);
    if (censored[i]) {
      first_censoring = std::min(first_censoring, times[i]);
    } else {
      finished.push_back(times[i]);
    }
  }
  est.uncensored = static_cast<std::int64_t>(finished.size());
  est.censored_fraction =
      est.samples ? static_cast<double>(est.samples - est.uncensored) / static_cast<double>(est.samples) : 0.0;
  if (est.uncensored < options.min_uncensored) {
    throw std::runtime_error("tail estimate needs at least " + std::to_string(options.min_uncensored) +
                             " uncensored samples, got " + std::to_string(est.uncensored));
  }
  std::sort(sorted.begin(), sorted.end());
  std::sort(finished.begin(), finished.end());
  const auto n = static_cast<double>(sorted.size());

  if (options.method == TailMethod::kHill) {
    auto k = options.hill_k > 0 ? options.hill_k : std::max<std::int64_t>(10, est.uncensored / 10);
    k = std::min<std::int64_t>(k, est.uncensored - 1);
    const double threshold = finished[finished.size() - static_cast<std::size_t>(k) - 1];
    if (threshold <= 0) throw std::runtime_error("Hill estimate needs positive order statistics");
    double acc = 0;
    for (std::int64_t i = 0; i < k; ++i) acc += std::log(finished[finished.size() - 1 - static_cast<std::size_t>(i)] / threshold);
    est.exponent = static_cast<double>(k) / acc;
    est.standard_error = est.exponent / std::sqrt(static_cast<double>(k));
    est.t_low = threshold;
    est.t_high = finished.back();
    return est;
  }

  auto survival = [&](double t) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    return static_cast<double>(above) / n;
  };
  const auto m = static_cast<std::size_t>(std::max<std::int64_t>(options.min_survivors, 2));
  if (sorted.size() <= m) throw std::runtime_error("tail estimate: too few samples for the survivor threshold");
  double t_high = sorted[sorted.size() - m - 1];
  if (t_high >= first_censoring) t_high = std::nextafter(first_censoring, 0.0);
  const double t_min = std::max(finished.front(), 1e-300);
  double t_low = std::max(t_high / std::pow(10.0, options.decades), t_min);
  if (!(t_high > t_low)) throw std::runtime_error("tail estimate: empty fitting window");

  const int points = std::max(4, static_cast<int>(std::ceil(options.points_per_decade * std::log10(t_high / t_low))));
  std::vector<double> lx, ly;
  for (int i = 0; i <= points; ++i) {
    const double t = t_low * std::pow(t_high / t_low, static_cast<double>(i) / points);
    const double s = survival(t);
    if (s <= 0) continue;
    lx.push_back(std::log(t));
    ly.push_back(std::log(s));
  }
  if (lx.size() < 4) throw std::runtime_error("tail estimate: too few usable survival points");
  const auto fit = least_squares(lx, ly);
  est.exponent = -fit.slope;
  est.standard_error = fit.standard_error;
  est.t_low = t_low;
  est.t_high = t_high;

  const auto half = lx.size() / 2;
  const auto lower = least_squares({lx.begin(), lx.begin() + static_cast<std::ptrdiff_t>(half + 1)},
                                   {ly.begin(), ly.begin() + static_cast<std::ptrdiff_t>(half + 1)});
  const auto upper = least_squares({lx.begin() + static_cast<std::ptrdiff_t>(half), lx.end()},
                                   {ly.begin() + static_cast<std::ptrdiff_t>(half), ly.end()});
  est.light_tail = -upper.slope > 2.0 * std::max(-lower.slope, 0.05);
  return est;
}

TailEstimate tail_index_estimate(std::span<const TauSample> samples, const TailOptions& options) {
  std::vector<double> times;
  std::vector<char> flags;
  for (const auto& x : samples) {
    if (x.absorbing_start) continue;
    times.push_back(x.tau ? static_cast<double>(*x.tau) : static_cast<double>(x.steps));
    flags.push_back(x.censored ? 1 : 0);
  }
  std::unique_ptr<bool[]> censored(new bool[flags.size()]);
  for (std::size_t i = 0; i < flags.size(); ++i) censored[i] = flags[i] != 0;
  return tail_index_estimate(times, std::span<const bool>(censored.get(), flags.size()), options);
}

// ---------------------------------------------------------------- growth

GrowthRun growth_experiment(const Configuration& s0, const Params& params, std::int64_t horizon, Rng& rng) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  validate(params);
  GrowthRun run;
  auto& rec = run.record;
  rec.params = params;
  rec.seed = rng.seed();

  Configuration s = s0;
  const std::int64_t area0 = f1(s);
  std::int64_t area = area0;
  std::int64_t max_size = s.size(), max_blocks = s.block_pairs();
  run.envelope_slack = std::numeric_limits<std::int64_t>::max();
  rec.samples.push_back(snapshot(0, s, area, max_size, max_blocks));
  std::int64_t next = next_geometric_time(0);

  for (std::int64_t t = 1; t <= horizon; ++t) {
    const auto out = step_in_place(s, params, rng);
    if (out.changed) {
      if (out.event.kind == MoveKind::kVoter) {
        area = f1(s);
      } else {
        area += out.event.pair.kind == PairKind::kTen ? 1 : -1;
      }
    }
    const std::int64_t slack = area0 + t - area;
    if (slack < 0) ++run.envelope_violations;
    run.envelope_slack = std::min(run.envelope_slack, slack);
    max_size = std::max(max_size, s.size());
    max_blocks = std::max(max_blocks, s.block_pairs());
    if (s.is_ground() && !rec.tau) rec.tau = t;
    if (t == next || t == horizon) {
      if (f1(s) != area) throw std::logic_error("tracked f1 drifted from the recomputed value at t=" + std::to_string(t));
      rec.samples.push_back(snapshot(t, s, area, max_size, max_blocks));
      next = next_geometric_time(t);
    }
  }
  rec.steps = horizon;
  rec.final_state = std::move(s);
  return run;
}

std::vector<GrowthRun> growth_replicas(const Configuration& s0, const Params& params, std::int64_t horizon,
                                       std::int64_t replicas, std::uint64_t seed, unsigned threads) {
  return run_replicas(replicas, seed, threads, [&](std::int64_t r, Rng& rng) {
    auto run = growth_experiment(s0, params, horizon, rng);
    run.replica = r;
    return run;
  });
}

GrowthFit growth_exponent(std::span<const double> t, std::span<const double> y, double decades) {
  if (t.size() != y.size()) throw std::invalid_argument("growth series lengths differ");
  double t_max = 0, t_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0 && y[i] > 0) {
      t_max = std::max(t_max, t[i]);
      t_min = std::min(t_min, t[i]);
    }
  }
  if (!(t_max > 0) || std::log10(t_max / t_min) < decades - 1e-9) {
    throw std::invalid_argument("growth series spans fewer than " + std::to_string(decades) + " decades");
  }
  const double start = t_max / std::pow(10.0, decades) * (1 - 1e-12);
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= start && t[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(t[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 10) throw std::invalid_argument("growth fit needs at least 10 points in the window");
  GrowthFit fit;
  fit.points = static_cast<std::int64_t>(lx.size());
  fit.degenerate = std::all_of(ly.begin(), ly.end(), [&](double v) { return v == ly.front(); });
  if (fit.degenerate) return fit;
  const auto line = least_squares(lx, ly);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.standard_error = line.standard_error;
  fit.band_low = fit.slope - 1.96 * fit.standard_error;
  fit.band_high = fit.slope + 1.96 * fit.standard_error;
  return fit;
}

GrowthFit growth_exponent(const TrajectoryRecord& record, GrowthObservable observable, double decades) {
  std::vector<double> t, y;
  for (const auto& s : record.samples) {
    if (s.t < 1) continue;
    t.push_back(static_cast<double>(s.t));
    switch (observable) {
      case GrowthObservable::kMaxSize: y.push_back(static_cast<double>(s.max_size)); break;
      case GrowthObservable::kMaxBlocks: y.push_back(static_cast<double>(s.max_blocks)); break;
      case GrowthObservable::kF1: y.push_back(static_cast<double>(s.f1)); break;
      case GrowthObservable::kSize: y.push_back(static_cast<double>(s.size)); break;
      case GrowthObservable::kRho2: y.push_back(static_cast<double>(s.rho2)); break;
    }
  }
  return growth_exponent(t, y, decades);
}

// ---------------------------------------------------------------- probes

EnvelopeProbe size_envelope_probe(const Params& params, const Configuration& s0, std::int64_t t,
                                  std::int64_t replicas, std::uint64_t seed, unsigned threads) {
  validate(params);
  if (params.p < 0.5) throw std::invalid_argument("the size envelope probe needs p >= 1/2");
  if (t < 1) throw std::invalid_argument("t must be positive");
  EnvelopeProbe probe;
  probe.threshold = 2.0 * std::sqrt(10.0) * std::sqrt(static_cast<double>(t));
  probe.bound = 0.95 - f2_value(s0) / (10.0 * static_cast<double>(t));
  probe.vacuous = probe.bound <= 0.0;
  probe.replicas = replicas;

  const auto inside = run_replicas(replicas, seed, threads, [&](std::int64_t, Rng& rng) {
    Configuration s = s0;
    if (static_cast<double>(s.size()) > probe.threshold) return 0;
    for (std::int64_t k = 0; k < t; ++k) {
      step_in_place(s, params, rng);
      if (static_cast<double>(s.size()) > probe.threshold) return 0;
    }
    return 1;
  });
  const double hits = std::accumulate(inside.begin(), inside.end(), 0.0);
  probe.probability = hits / static_cast<double>(replicas);
  probe.sigma = std::sqrt(probe.probability * (1 - probe.probability) / static_cast<double>(replicas));
  probe.pass = probe.probability >= probe.bound - 3.0 * probe.sigma;
  return probe;
}

std::vector<ReflectionPoint> reflection_comparison(const Params& params, std::span<const std::int64_t> checkpoints,
                                                   std::int64_t replicas, std::uint64_t seed, unsigned threads) {
  validate(params);
  if (checkpoints.empty()) return {};
  std::vector<std::int64_t> marks(checkpoints.begin(), checkpoints.end());
  std::sort(marks.begin(), marks.end());
  const auto horizon = marks.back();

  const auto overlap = run_replicas(replicas, seed, threads, [&](std::int64_t, Rng& rng) {
    std::vector<double> out;
    auto x = ColouredConfiguration::primed_ground_state();
    std::size_t next = 0;
    for (std::int64_t t = 0; t <= horizon; ++t) {
      if (t > 0) x = coloured_step(x, params, rng);
      while (next < marks.size() && marks[next] == t) {
        out.push_back(static_cast<double>(zeta(x).length()));
        ++next;
      }
    }
    return out;
  });
  const Params reflected{params.beta, 1.0 - params.p};
  const auto direct = run_replicas(replicas, Rng::mix(seed + 1), threads, [&](std::int64_t, Rng& rng) {
    std::vector<double> out;
    Configuration s;
    std::size_t next = 0;
    for (std::int64_t t = 0; t <= horizon; ++t) {
      if (t > 0) step_in_place(s, reflected, rng);
      while (next < marks.size() && marks[next] == t) {
        out.push_back(static_cast<double>(s.size()));
        ++next;
      }
    }
    return out;
  });

  auto moments = [&](const std::vector<std::vector<double>>& rows, std::size_t k) {
    double sum = 0, sq = 0;
    for (const auto& r : rows) {
      sum += r[k];
      sq += r[k] * r[k];
    }
    const auto n = static_cast<double>(rows.size());
    const double mean = sum / n;
    const double var = n > 1 ? (sq - n * mean * mean) / (n - 1) : 0.0;
    return std::make_pair(mean, std::sqrt(std::max(var, 0.0) / n));
  };

  std::vector<ReflectionPoint> out;
  for (std::size_t k = 0; k < marks.size(); ++k) {
    ReflectionPoint pt;
    pt.t = marks[k];
    std::tie(pt.overlap_mean, pt.overlap_se) = moments(overlap, k);
    std::tie(pt.reflected_mean, pt.reflected_se) = moments(direct, k);
    const double se = std::hypot(pt.overlap_se, pt.reflected_se);
    pt.z = se > 0 ? (pt.overlap_mean - pt.reflected_mean) / se : 0.0;
    out.push_back(pt);
  }
  return out;
}

ExploratoryReport recurrence_probe(const Params& params, std::int64_t cap, std::int64_t replicas, std::uint64_t seed,
                                   unsigned threads) {
  ExploratoryReport rep;
  rep.id = "recurrence";
  rep.description = "tau from (1,1) at small beta and p < 1/2: censoring and survival slope (exponent <= 1 hints at "
                    "an infinite mean)";
  const auto xs = tau_experiment(Configuration::from_blocks({1, 1}), params, cap, replicas, seed, threads);
  const auto summary = summarize(xs);
  rep.metrics["beta"] = params.beta;
  rep.metrics["p"] = params.p;
  rep.metrics["censored_fraction"] = summary.censored_fraction;
  rep.metrics["mean_uncensored"] = summary.mean_uncensored;
  try {
    const auto tail = tail_index_estimate(xs);
    rep.metrics["survival_exponent"] = tail.exponent;
    rep.metrics["survival_exponent_se"] = tail.standard_error;
  } catch (const std::runtime_error&) {
    rep.metrics["survival_exponent"] = std::nan("");
  }
  return rep;
}

ExploratoryReport moment_cutoff_probe(const Params& params, std::int64_t cap, std::int64_t replicas,
                                      std::uint64_t seed, unsigned threads) {
  ExploratoryReport rep;
  rep.id = "moment-cutoff";
  rep.description = "tau from (1,1) at p <= 1/2: survival exponent against the 3/2 cutoff";
  const auto xs = tau_experiment(Configuration::from_blocks({1, 1}), params, cap, replicas, seed, threads);
  rep.metrics["beta"] = params.beta;
  rep.metrics["p"] = params.p;
  rep.metrics["censored_fraction"] = summarize(xs).censored_fraction;
  try {
    const auto tail = tail_index_estimate(xs);
    rep.metrics["survival_exponent"] = tail.exponent;
    rep.metrics["survival_exponent_se"] = tail.standard_error;
  } catch (const std::runtime_error&) {
    rep.metrics["survival_exponent"] = std::nan("");
  }
  return rep;
}

ExploratoryReport size_growth_probe(double p, std::int64_t horizon, std::int64_t replicas, std::uint64_t seed,
                                    unsigned threads) {
  ExploratoryReport rep;
  rep.id = "size-growth";
  rep.description = "beta = 0: median log-log slope of |xi_t| over the final two decades";
  const auto runs = growth_replicas(Configuration{}, Params{0.0, p}, horizon, replicas, seed, threads);
  std::vector<double> slopes;
  for (const auto& run : runs) {
    try {
      slopes.push_back(growth_exponent(run.record, GrowthObservable::kSize).slope);
    } catch (const std::invalid_argument&) {
    }
  }
  rep.metrics["p"] = p;
  rep.metrics["median_slope"] = median(slopes);
  rep.metrics["fits"] = static_cast<double>(slopes.size());
  return rep;
}

}  // namespace evlab
