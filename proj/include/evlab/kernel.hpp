#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "evlab/config.hpp"
#include "evlab/params.hpp"
#include "evlab/random.hpp"
#include "evlab/rational.hpp"
#include "evlab/trajectory.hpp"

namespace evlab {

template <class Scalar>
struct LawEntry {
  Configuration successor;
  Scalar probability;
};

/// One-step law: distinct successors with strictly positive mass, sorted by successor.
template <class Scalar>
struct TransitionLaw {
  std::vector<LawEntry<Scalar>> entries;

  Scalar total() const {
    Scalar sum{};
    for (const auto& e : entries) sum += e.probability;
    return sum;
  }
  Scalar probability_of(const Configuration& s) const {
    for (const auto& e : entries) {
      if (e.successor == s) return e.probability;
    }
    return Scalar{};
  }
};

template <class Scalar>
TransitionLaw<Scalar> step_distribution(const Configuration& s, const BasicParams<Scalar>& params);

extern template TransitionLaw<double> step_distribution(const Configuration&, const BasicParams<double>&);
extern template TransitionLaw<Rational> step_distribution(const Configuration&, const BasicParams<Rational>&);

enum class MoveKind : std::uint8_t { kVoter, kExclusion };

/// The random choices of one discrete step: move type, pair, and a uniform coin
/// that decides the voter target or whether an exclusion proposal is accepted.
struct Event {
  MoveKind kind = MoveKind::kExclusion;
  PairIndex pair;
  double coin = 0.0;
};

Event draw_event(std::int64_t pair_count, const Params& params, Rng& rng);
inline VoterTarget voter_target(double coin) { return coin < 0.5 ? VoterTarget::kZeros : VoterTarget::kOnes; }
/// A 10 pair swaps with probability 1-p, a 01 pair with probability p.
inline bool exclusion_accepted(PairKind kind, double coin, const Params& params) {
  return kind == PairKind::kTen ? coin < 1.0 - params.p : coin < params.p;
}

struct StepOutcome {
  Event event;
  bool changed = false;
};

/// Advances s by one discrete step in place.
StepOutcome step_in_place(Configuration& s, const Params& params, Rng& rng);
Configuration sample_step(Configuration s, const Params& params, Rng& rng);

struct TimedStep {
  double holding_time = 0.0;
  Configuration next;
};

/// Continuous-time embedding: one unit-rate clock per unlike pair, so the
/// holding time is Exponential(2N+1) and the jump is one discrete step.
TimedStep continuous_time_step(Configuration s, const Params& params, Rng& rng);

using StepObserver = std::function<void(std::int64_t t, const Configuration&)>;

struct PathOptions {
  std::int64_t horizon = 0;
  bool stop_at_ground = false;
  SampleSchedule schedule = SampleSchedule::kEveryStep;
};

/// Runs horizon steps (or until the ground state, if requested), recording
/// observables on the schedule and calling every observer at t = 0 and after each step.
TrajectoryRecord sample_path(Configuration s0, const Params& params, const PathOptions& options, Rng& rng,
                             std::span<const StepObserver> observers = {});

enum class Reachability : std::uint8_t { kMutual, kForwardOnly, kBackwardOnly, kNeither, kUnknownAtCap };

struct CommunicationReport {
  Reachability verdict = Reachability::kUnknownAtCap;
  bool forward = false;   // target reached from source
  bool backward = false;  // source reached from target
  bool truncated = false; // some positive-probability move left the size window
};

struct ReachableSet {
  std::vector<Configuration> states;
  bool truncated = false;
};

/// Breadth-first search over positive-probability moves, never leaving |S| <= max_size.
ReachableSet reachable_from(const Configuration& start, const Params& params, std::int64_t max_size);

/// Both inputs must satisfy |S| <= size_cap; the search runs within size_cap + slack.
CommunicationReport communication_check(const Configuration& a, const Configuration& b, const Params& params,
                                        std::int64_t size_cap, std::int64_t slack = 2);

const char* to_string(Reachability r);

}  // namespace evlab
