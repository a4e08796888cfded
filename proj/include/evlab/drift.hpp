#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "evlab/config.hpp"
#include "evlab/kernel.hpp"
#include "evlab/lyapunov.hpp"
#include "evlab/params.hpp"
#include "evlab/rational.hpp"

namespace evlab {

/// Exact one-step expected increment of `functional` from s, by enumerating the
/// transition law. Accepts the ground state.
template <class Scalar, class Functional>
Scalar drift_oracle(const Configuration& s, const BasicParams<Scalar>& params, Functional&& functional) {
  const Scalar here = functional(s);
  Scalar acc{};
  for (const auto& e : step_distribution(s, params).entries) {
    if (e.successor == s) continue;
    acc += e.probability * (functional(e.successor) - here);
  }
  return acc;
}

/// Memoizes a functional over configurations; useful when many laws share successors.
template <class Scalar>
class CachedFunctional {
 public:
  explicit CachedFunctional(std::function<Scalar(const Configuration&)> f) : f_(std::move(f)) {}
  const Scalar& operator()(const Configuration& s) {
    auto it = cache_.find(s);
    if (it == cache_.end()) it = cache_.emplace(s, f_(s)).first;
    return it->second;
  }

 private:
  std::function<Scalar(const Configuration&)> f_;
  std::unordered_map<Configuration, Scalar, ConfigurationHash> cache_;
};

namespace detail {
inline void require_not_ground(const Configuration& s, const char* what) {
  if (s.is_ground()) throw std::domain_error(std::string(what) + " is stated for configurations other than the ground state");
}
}  // namespace detail

template <class Scalar>
Scalar drift_f1_formula(const Configuration& s, const BasicParams<Scalar>& q) {
  detail::require_not_ground(s, "the f1 drift formula");
  const Scalar n = Scalar(s.block_pairs());
  const Scalar pairs = 2 * n + 1;
  const Scalar one = Scalar(1);
  return Scalar((one - q.beta) * (n * (one - 2 * q.p) + (one - q.p)) / pairs - q.beta * n / pairs);
}

template <class Scalar>
Scalar drift_f2_formula(const Configuration& s, const BasicParams<Scalar>& q) {
  detail::require_not_ground(s, "the f2 drift formula");
  const Scalar pairs = Scalar(2 * s.block_pairs() + 1);
  const Scalar one = Scalar(1);
  const Scalar half = one / 2;
  const Scalar corners = Scalar(corner_sum(s));
  return Scalar((one - q.beta) * (half + (half - q.p) / pairs - (2 * q.p - one) / pairs * corners));
}

/// Expected increment of phi_alpha in closed form. The voter part uses the
/// re-derived boundary term b_1(N) (see README).
double drift_phi_formula(const Configuration& s, const Params& q, double alpha);
Rational drift_phi_formula_exact(const Configuration& s, const ExactParams& q, int alpha);

template <class Scalar>
using JumpLaw = std::map<std::int64_t, Scalar>;

/// Law of f1(next) - f1(s) under pure exclusion (beta = 0).
template <class Scalar>
JumpLaw<Scalar> f1_jump_law(const Configuration& s, const Scalar& p) {
  const Scalar n = Scalar(s.block_pairs());
  const Scalar pairs = 2 * n + 1;
  JumpLaw<Scalar> law;
  law[-1] = p * n / pairs;
  law[0] = (n + p) / pairs;
  law[1] = (1 - p) * (n + 1) / pairs;
  std::erase_if(law, [](const auto& kv) { return kv.second == 0; });
  return law;
}

/// Law of |next| - |s| under pure exclusion (beta = 0).
template <class Scalar>
JumpLaw<Scalar> size_jump_law(const Configuration& s, const Scalar& p) {
  const Scalar one = Scalar(1);
  JumpLaw<Scalar> law;
  if (s.is_ground()) {
    law[2] = one - p;
    law[0] = p;
  } else if (s == Configuration::from_blocks({1, 1})) {
    law[-2] = p / 3;
    law[0] = (one + p) / 3;
    law[1] = 2 * (one - p) / 3;
  } else {
    const Scalar pairs = Scalar(s.pair_count());
    const int thin_ends = (s.n(1) == 1 ? 1 : 0) + (s.m(s.block_pairs()) == 1 ? 1 : 0);
    law[1] = 2 * (one - p) / pairs;
    law[-1] = p * thin_ends / pairs;
    law[0] = one - law[1] - law[-1];
  }
  std::erase_if(law, [](const auto& kv) { return kv.second == 0; });
  return law;
}

/// Induced law of delta(next) - delta(s) from the exact transition law.
template <class Scalar, class Observable>
JumpLaw<Scalar> increment_law(const Configuration& s, const BasicParams<Scalar>& params, Observable&& obs) {
  JumpLaw<Scalar> law;
  const auto here = obs(s);
  for (const auto& e : step_distribution(s, params).entries) law[obs(e.successor) - here] += e.probability;
  std::erase_if(law, [](const auto& kv) { return kv.second == 0; });
  return law;
}

/// Largest moment order guaranteed by the maximal-inequality moment criterion: 1/(1-gamma).
double moment_bound_predictor(double gamma);
Rational moment_bound_predictor(const Rational& gamma);

/// f2(apply_exclusion(s, pair)) - f2(s) in closed form.
std::int64_t f2_jump_under_exclusion(const Configuration& s, PairIndex pair);

enum class DriftFunctional : std::uint8_t { kF1, kF2, kPhi };

struct FunctionalSpec {
  DriftFunctional kind = DriftFunctional::kF1;
  double alpha = 0.0;  // phi only
  std::string name() const;
  /// "f1", "f2", "phi" + alpha (e.g. "phi1", "phi0.5").
  static FunctionalSpec parse(const std::string& text);
};

struct DriftReport {
  std::string functional;
  std::string configuration;
  std::string beta;
  std::string p;
  std::string formula;  // exact text when exact, otherwise %.17g
  std::string oracle;
  double formula_value = 0.0;
  double oracle_value = 0.0;
  double gap = 0.0;
  bool exact = false;
  bool pass = false;
};

/// Formula versus oracle for every configuration with 1 <= |S| <= max_size.
/// Exact (zero-gap) for f1, f2 and integer alpha; tolerance 1e-12 otherwise.
std::vector<DriftReport> drift_check(std::int64_t max_size, const ExactParams& params,
                                     const std::vector<FunctionalSpec>& functionals);

struct NegativeDriftFit {
  double constant = 0.0;  // min over S of -drift / f2^(1/6)
  std::string argmin;
  std::int64_t configurations = 0;
};

/// Empirical constant in drift_f2 <= -C f2^(1/6) over min_size <= |S| <= max_size.
NegativeDriftFit f2_negative_drift_constant(const Params& params, std::int64_t min_size, std::int64_t max_size);

}  // namespace evlab
