#include "evlab/kernel.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "evlab/lyapunov.hpp"

namespace evlab {

namespace {

template <class Scalar>
void check_unit_interval(const Scalar& x, const char* name) {
  if (!(x >= 0 && x <= 1)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

Sample observe(std::int64_t t, const Configuration& s, const Sample* previous) {
  Sample out;
  out.t = t;
  out.size = s.size();
  out.blocks = s.block_pairs();
  out.f1 = f1(s);
  out.f2 = f2_value(s);
  out.rho2 = rho2(s);
  out.max_size = previous ? std::max(previous->max_size, out.size) : out.size;
  out.max_blocks = previous ? std::max(previous->max_blocks, out.blocks) : out.blocks;
  return out;
}

}  // namespace

void validate(const Params& params) {
  check_unit_interval(params.beta, "beta");
  check_unit_interval(params.p, "p");
}

void validate(const ExactParams& params) {
  check_unit_interval(params.beta, "beta");
  check_unit_interval(params.p, "p");
}

template <class Scalar>
TransitionLaw<Scalar> step_distribution(const Configuration& s, const BasicParams<Scalar>& params) {
  validate(params);
  const Scalar pairs = Scalar(s.pair_count());
  const Scalar voter_mass = params.beta / (2 * pairs);
  const Scalar one = Scalar(1);
  const Scalar ten_swap = (one - params.beta) * (one - params.p) / pairs;
  const Scalar oh_one_swap = (one - params.beta) * params.p / pairs;

  std::map<Configuration, Scalar> mass;
  auto add = [&mass](Configuration c, const Scalar& w) {
    if (w == 0) return;
    auto [it, inserted] = mass.try_emplace(std::move(c), w);
    if (!inserted) it->second += w;
  };

  for (std::int64_t k = 0; k < s.pair_count(); ++k) {
    const auto pair = PairIndex::from_flat(k);
    add(apply_voter(s, pair, VoterTarget::kZeros), voter_mass);
    add(apply_voter(s, pair, VoterTarget::kOnes), voter_mass);
    const Scalar& swap = pair.kind == PairKind::kTen ? ten_swap : oh_one_swap;
    add(apply_exclusion(s, pair), swap);
    add(s, (one - params.beta) / pairs - swap);
  }

  TransitionLaw<Scalar> law;
  law.entries.reserve(mass.size());
  for (auto& [c, w] : mass) {
    if (w != 0) law.entries.push_back({c, w});
  }
  return law;
}

template TransitionLaw<double> step_distribution(const Configuration&, const BasicParams<double>&);
template TransitionLaw<Rational> step_distribution(const Configuration&, const BasicParams<Rational>&);

Event draw_event(std::int64_t pair_count, const Params& params, Rng& rng) {
  Event e;
  e.kind = rng.uniform() < params.beta ? MoveKind::kVoter : MoveKind::kExclusion;
  e.pair = PairIndex::from_flat(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(pair_count))));
  e.coin = rng.uniform();
  return e;
}

StepOutcome step_in_place(Configuration& s, const Params& params, Rng& rng) {
  StepOutcome out;
  out.event = draw_event(s.pair_count(), params, rng);
  const auto& e = out.event;
  if (e.kind == MoveKind::kVoter) {
    auto next = apply_voter(s, e.pair, voter_target(e.coin));
    out.changed = !(next == s);
    s = std::move(next);
  } else if (exclusion_accepted(e.pair.kind, e.coin, params)) {
    s = apply_exclusion(std::move(s), e.pair);
    out.changed = true;
  }
  return out;
}

Configuration sample_step(Configuration s, const Params& params, Rng& rng) {
  step_in_place(s, params, rng);
  return s;
}

TimedStep continuous_time_step(Configuration s, const Params& params, Rng& rng) {
  TimedStep out;
  out.holding_time = rng.exponential(static_cast<double>(s.pair_count()));
  step_in_place(s, params, rng);
  out.next = std::move(s);
  return out;
}

std::int64_t next_geometric_time(std::int64_t t) {
  double v = 1.0;
  while (true) {
    const auto c = static_cast<std::int64_t>(std::ceil(v));
    if (c > t) return c;
    v *= 1.25;
  }
}

TrajectoryRecord sample_path(Configuration s0, const Params& params, const PathOptions& options, Rng& rng,
                             std::span<const StepObserver> observers) {
  if (options.horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  validate(params);
  TrajectoryRecord rec;
  rec.params = params;
  rec.seed = rng.seed();

  Configuration s = std::move(s0);
  std::int64_t max_size = s.size(), max_blocks = s.block_pairs();
  auto record = [&](std::int64_t t) {
    Sample sm = observe(t, s, nullptr);
    sm.max_size = max_size;
    sm.max_blocks = max_blocks;
    rec.samples.push_back(sm);
  };

  record(0);
  for (const auto& obs : observers) obs(0, s);
  std::int64_t next_record = options.schedule == SampleSchedule::kEveryStep ? 1 : next_geometric_time(0);
  std::int64_t t = 0;
  while (t < options.horizon) {
    step_in_place(s, params, rng);
    ++t;
    max_size = std::max(max_size, s.size());
    max_blocks = std::max(max_blocks, s.block_pairs());
    for (const auto& obs : observers) obs(t, s);
    const bool at_ground = s.is_ground();
    if (at_ground && !rec.tau) rec.tau = t;
    const bool stopping = at_ground && options.stop_at_ground;
    if (t == next_record || stopping || t == options.horizon) {
      record(t);
      if (t >= next_record) {
        next_record = options.schedule == SampleSchedule::kEveryStep ? t + 1 : next_geometric_time(t);
      }
    }
    if (stopping) break;
  }
  rec.steps = t;
  rec.final_state = std::move(s);
  return rec;
}

ReachableSet reachable_from(const Configuration& start, const Params& params, std::int64_t max_size) {
  ReachableSet out;
  std::unordered_set<Configuration, ConfigurationHash> seen{start};
  std::deque<Configuration> queue{start};
  while (!queue.empty()) {
    const auto s = std::move(queue.front());
    queue.pop_front();
    out.states.push_back(s);
    for (const auto& e : step_distribution(s, params).entries) {
      if (e.successor.size() > max_size) {
        out.truncated = true;
        continue;
      }
      if (seen.insert(e.successor).second) queue.push_back(e.successor);
    }
  }
  return out;
}

CommunicationReport communication_check(const Configuration& a, const Configuration& b, const Params& params,
                                        std::int64_t size_cap, std::int64_t slack) {
  if (a.size() > size_cap || b.size() > size_cap) {
    throw std::invalid_argument("communication_check: inputs exceed the size cap");
  }
  const auto limit = size_cap + slack;
  const auto from_a = reachable_from(a, params, limit);
  const auto from_b = reachable_from(b, params, limit);
  auto contains = [](const ReachableSet& r, const Configuration& s) {
    for (const auto& x : r.states) {
      if (x == s) return true;
    }
    return false;
  };

  CommunicationReport rep;
  rep.forward = contains(from_a, b);
  rep.backward = contains(from_b, a);
  rep.truncated = from_a.truncated || from_b.truncated;
  if (rep.forward && rep.backward) {
    rep.verdict = Reachability::kMutual;
  } else if (rep.forward && !from_b.truncated) {
    rep.verdict = Reachability::kForwardOnly;
  } else if (rep.backward && !from_a.truncated) {
    rep.verdict = Reachability::kBackwardOnly;
  } else if (!rep.forward && !rep.backward && !rep.truncated) {
    rep.verdict = Reachability::kNeither;
  } else {
    rep.verdict = Reachability::kUnknownAtCap;
  }
  return rep;
}

const char* to_string(Reachability r) {
  switch (r) {
    case Reachability::kMutual: return "mutual";
    case Reachability::kForwardOnly: return "forward-only";
    case Reachability::kBackwardOnly: return "backward-only";
    case Reachability::kNeither: return "neither";
    case Reachability::kUnknownAtCap: return "unknown-at-cap";
  }
  return "?";
}

}  // namespace evlab
