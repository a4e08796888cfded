#pragma once

#include "evlab/rational.hpp"

namespace evlab {

/// Mixing parameter beta (probability of a voter move) and exclusion parameter p.
template <class Scalar>
struct BasicParams {
  Scalar beta{};
  Scalar p{};
};

using Params = BasicParams<double>;
using ExactParams = BasicParams<Rational>;

/// Throws std::invalid_argument unless both parameters lie in [0, 1].
void validate(const Params& params);
void validate(const ExactParams& params);

inline Params to_float(const ExactParams& q) { return {q.beta.get_d(), q.p.get_d()}; }

}  // namespace evlab
