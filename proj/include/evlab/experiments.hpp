#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "evlab/config.hpp"
#include "evlab/kernel.hpp"
#include "evlab/params.hpp"
#include "evlab/random.hpp"
#include "evlab/trajectory.hpp"

namespace evlab {

// ---------------------------------------------------------------- replicas

/// Worker count: explicit value if positive, else EVLAB_THREADS, else hardware concurrency.
unsigned resolve_threads(int requested = 0);

/// Runs fn(replica, rng) for replica = 0..count-1 on a small pool. Replica r
/// always draws from Rng::for_replica(master_seed, r) and its result lands in
/// slot r, so the output does not depend on the thread count.
template <class Fn>
auto run_replicas(std::int64_t count, std::uint64_t master_seed, unsigned threads, Fn&& fn) {
  using Result = decltype(fn(std::int64_t{0}, std::declval<Rng&>()));
  if (count < 1) throw std::invalid_argument("replica count must be at least 1");
  std::vector<std::optional<Result>> slots(static_cast<std::size_t>(count));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::int64_t r; (r = next.fetch_add(1)) < count;) {
      try {
        Rng rng = Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        slots[static_cast<std::size_t>(r)].emplace(fn(r, rng));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };

  const auto n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Result> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------- relaxation time

struct TauSample {
  std::int64_t replica = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> tau;  // empty when censored or undefined
  bool censored = false;
  bool absorbing_start = false;     // ground start under an absorbing law; tau undefined
  double tau_c = 0.0;               // accumulated holding times up to tau (or the cap)
  std::int64_t steps = 0;
};

/// First t in 1..cap with the ground state, plus its continuous-time counterpart.
TauSample relaxation_time_sample(const Configuration& s0, const Params& params, std::int64_t cap, Rng& rng);

std::vector<TauSample> tau_experiment(const Configuration& s0, const Params& params, std::int64_t cap,
                                      std::int64_t replicas, std::uint64_t seed, unsigned threads);

struct TauSummary {
  std::int64_t samples = 0;
  std::int64_t censored = 0;
  double censored_fraction = 0.0;
  double mean_uncensored = 0.0;
  /// Fraction of all samples with tau > t (censored samples count as exceeding t < cap).
  double exceed_fraction(std::span<const TauSample> xs, std::int64_t t) const;
};
TauSummary summarize(std::span<const TauSample> xs);

// ---------------------------------------------------------------- tail index

enum class TailMethod : std::uint8_t { kSurvivalSlope, kHill };

struct TailOptions {
  TailMethod method = TailMethod::kSurvivalSlope;
  /// Upper end of the fit: the largest time with at least this many survivors.
  std::int64_t min_survivors = 50;
  /// Width of the fitting window below the upper end.
  double decades = 1.5;
  /// Log-spaced evaluation points per decade.
  int points_per_decade = 16;
  /// Hill: number of upper order statistics (0 = 10% of uncensored samples).
  std::int64_t hill_k = 0;
  std::int64_t min_uncensored = 100;
};

struct TailEstimate {
  double exponent = 0.0;
  double standard_error = 0.0;
  double censored_fraction = 0.0;
  std::int64_t samples = 0;
  std::int64_t uncensored = 0;
  double t_low = 0.0;
  double t_high = 0.0;
  /// Set when the log-log survival curve steepens markedly across the window,
  /// the signature of an exponential rather than polynomial tail.
  bool light_tail = false;
};

/// times[i] is the observed time; censored[i] means the true time exceeds it.
TailEstimate tail_index_estimate(std::span<const double> times, std::span<const bool> censored,
                                 const TailOptions& options = {});
TailEstimate tail_index_estimate(std::span<const TauSample> samples, const TailOptions& options = {});

// ---------------------------------------------------------------- growth

struct GrowthRun {
  TrajectoryRecord record;
  std::int64_t replica = 0;
  /// Steps at which f1 exceeded f1(S0) + t.
  std::int64_t envelope_violations = 0;
  /// Smallest f1(S0) + t - f1(xi_t) over all steps.
  std::int64_t envelope_slack = 0;
};

/// Runs horizon steps, sampling on the geometric grid. f1 is tracked move by
/// move and re-derived from scratch at every grid point.
GrowthRun growth_experiment(const Configuration& s0, const Params& params, std::int64_t horizon, Rng& rng);

std::vector<GrowthRun> growth_replicas(const Configuration& s0, const Params& params, std::int64_t horizon,
                                       std::int64_t replicas, std::uint64_t seed, unsigned threads);

enum class GrowthObservable : std::uint8_t { kMaxSize, kMaxBlocks, kF1, kSize, kRho2 };

struct GrowthFit {
  double slope = 0.0;
  double standard_error = 0.0;
  double band_low = 0.0;   // slope -/+ 1.96 standard errors
  double band_high = 0.0;
  double intercept = 0.0;  // log y at log t = 0
  std::int64_t points = 0;
  bool degenerate = false;
};

/// OLS of log y on log t over the final `decades` decades of t.
/// Throws std::invalid_argument with fewer than 10 points or less than 2 decades of data.
GrowthFit growth_exponent(std::span<const double> t, std::span<const double> y, double decades = 2.0);
GrowthFit growth_exponent(const TrajectoryRecord& record, GrowthObservable observable, double decades = 2.0);

// ---------------------------------------------------------------- probes

struct EnvelopeProbe {
  double threshold = 0.0;       // 2 sqrt(10) t^(1/2)
  double bound = 0.0;           // 0.95 - f2(S0)/(10 t)
  bool vacuous = false;         // bound <= 0
  double probability = 0.0;     // empirical P(max_{s<=t} |xi_s| <= threshold)
  double sigma = 0.0;           // binomial standard error
  std::int64_t replicas = 0;
  bool pass = false;            // probability >= bound - 3 sigma
};

/// Estimates P(max_{s<=t}|xi_s| <= 2 sqrt(10 t)) for p >= 1/2 against 0.95 - f2(S0)/(10t).
EnvelopeProbe size_envelope_probe(const Params& params, const Configuration& s0, std::int64_t t,
                                  std::int64_t replicas, std::uint64_t seed, unsigned threads);

struct ReflectionPoint {
  std::int64_t t = 0;
  double overlap_mean = 0.0;     // E|zeta_t| from the primed ground state under (beta, p)
  double overlap_se = 0.0;
  double reflected_mean = 0.0;   // E|xi_t| from the ground state under (beta, 1-p)
  double reflected_se = 0.0;
  double z = 0.0;
};

/// Compares |zeta_t| from the all-coloured anti-shock with |xi_t| under the reflected law.
std::vector<ReflectionPoint> reflection_comparison(const Params& params, std::span<const std::int64_t> checkpoints,
                                                   std::int64_t replicas, std::uint64_t seed, unsigned threads);

/// Output of an exploratory probe; never a pass/fail verdict.
struct ExploratoryReport {
  std::string id;
  std::string label = "EXPLORATORY";
  std::string description;
  std::map<std::string, double> metrics;
};

/// Small beta, p < 1/2: censoring fraction and tail estimate of tau from (1,1).
ExploratoryReport recurrence_probe(const Params& params, std::int64_t cap, std::int64_t replicas, std::uint64_t seed,
                                   unsigned threads);
/// p <= 1/2: survival-slope exponent of tau from (1,1), to set against 3/2.
ExploratoryReport moment_cutoff_probe(const Params& params, std::int64_t cap, std::int64_t replicas,
                                      std::uint64_t seed, unsigned threads);
/// beta = 0: log-log slope of |xi_t| itself (not its running maximum).
ExploratoryReport size_growth_probe(double p, std::int64_t horizon, std::int64_t replicas, std::uint64_t seed,
                                    unsigned threads);

}  // namespace evlab
