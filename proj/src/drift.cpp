#include "evlab/drift.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace evlab {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// The closed form, generic over the weight w(x) = x^-alpha.
template <class Scalar, class Weight>
Scalar phi_drift_closed_form(const Configuration& s, const BasicParams<Scalar>& q, Weight&& w) {
  const auto [R, T] = prefix_sums(s);
  const std::int64_t n = s.block_pairs();
  auto r = [&](std::int64_t j) { return j == 0 ? std::int64_t{0} : R[static_cast<std::size_t>(j - 1)]; };
  auto t = [&](std::int64_t j) { return j == n + 1 ? std::int64_t{0} : T[static_cast<std::size_t>(j - 1)]; };
  auto a = [&](int i, std::int64_t j) { return w(t(j) + r(j) + i); };
  auto b = [&](int i, std::int64_t j) { return w(t(j + 1) + r(j) + i); };

  Scalar shrink{}, grow{}, voter{};
  for (std::int64_t j = 1; j <= n; ++j) shrink += a(0, j);
  for (std::int64_t j = 0; j <= n; ++j) grow += b(2, j);
  for (std::int64_t j = 1; j <= n; ++j) voter += a(1, j) - b(1, j - 1);
  voter -= b(1, n);

  const Scalar one = Scalar(1);
  const Scalar pairs = Scalar(2 * n + 1);
  return Scalar((one - q.beta) / pairs * (grow * (one - q.p) - shrink * q.p) + q.beta * Scalar(n) / pairs * voter);
}

}  // namespace

double drift_phi_formula(const Configuration& s, const Params& q, double alpha) {
  detail::require_not_ground(s, "the phi drift formula");
  if (alpha < 0) throw std::domain_error("phi requires alpha >= 0");
  return phi_drift_closed_form(s, q, [alpha](std::int64_t x) { return std::pow(static_cast<double>(x), -alpha); });
}

Rational drift_phi_formula_exact(const Configuration& s, const ExactParams& q, int alpha) {
  detail::require_not_ground(s, "the phi drift formula");
  if (alpha < 0) throw std::domain_error("phi requires alpha >= 0");
  auto w = [alpha](std::int64_t x) {
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(alpha));
    return Rational(mpz_class(1), power);
  };
  Rational out = phi_drift_closed_form(s, q, w);
  out.canonicalize();
  return out;
}

double moment_bound_predictor(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::domain_error("moment bound needs 0 <= gamma < 1");
  return 1.0 / (1.0 - gamma);
}

Rational moment_bound_predictor(const Rational& gamma) {
  if (gamma < 0 || gamma >= 1) throw std::domain_error("moment bound needs 0 <= gamma < 1");
  Rational out = 1 / (1 - gamma);
  out.canonicalize();
  return out;
}

std::int64_t f2_jump_under_exclusion(const Configuration& s, PairIndex pair) {
  const std::int64_t n = s.block_pairs();
  const bool valid = pair.kind == PairKind::kTen ? (pair.j >= 0 && pair.j <= n) : (pair.j >= 1 && pair.j <= n);
  if (!valid) throw std::out_of_range("pair index out of range");
  const auto [R, T] = prefix_sums(s);
  auto r = [&](std::int64_t j) { return j == 0 ? std::int64_t{0} : R[static_cast<std::size_t>(j - 1)]; };
  auto t = [&](std::int64_t j) { return j == n + 1 ? std::int64_t{0} : T[static_cast<std::size_t>(j - 1)]; };
  if (pair.kind == PairKind::kTen) return 1 + r(pair.j) + t(pair.j + 1);
  return 1 - r(pair.j) - t(pair.j);
}

std::string FunctionalSpec::name() const {
  switch (kind) {
    case DriftFunctional::kF1: return "f1";
    case DriftFunctional::kF2: return "f2";
    case DriftFunctional::kPhi: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "phi%g", alpha);
      return buf;
    }
  }
  return "?";
}

FunctionalSpec FunctionalSpec::parse(const std::string& text) {
  if (text == "f1") return {DriftFunctional::kF1, 0.0};
  if (text == "f2") return {DriftFunctional::kF2, 0.0};
  if (text.rfind("phi", 0) == 0 && text.size() > 3) {
    const auto q = parse_rational(text.substr(3));
    if (q < 0) throw std::invalid_argument("phi exponent must be non-negative");
    return {DriftFunctional::kPhi, q.get_d()};
  }
  throw std::invalid_argument("unknown functional '" + text + "' (expected f1, f2 or phi<alpha>)");
}

std::vector<DriftReport> drift_check(std::int64_t max_size, const ExactParams& params,
                                     const std::vector<FunctionalSpec>& functionals) {
  validate(params);
  const auto configs = enumerate_configurations(max_size);
  const Params fparams = to_float(params);
  std::vector<DriftReport> out;

  for (const auto& spec : functionals) {
    const bool integer_alpha = spec.kind != DriftFunctional::kPhi || spec.alpha == std::floor(spec.alpha);
    CachedFunctional<Rational> exact_value([&](const Configuration& c) -> Rational {
      switch (spec.kind) {
        case DriftFunctional::kF1: return Rational(f1(c));
        case DriftFunctional::kF2: return f2(c);
        default: return phi_exact(c, static_cast<int>(spec.alpha));
      }
    });
    CachedFunctional<double> float_value([&](const Configuration& c) { return phi(c, spec.alpha); });

    for (const auto& s : configs) {
      if (s.is_ground()) continue;
      DriftReport rep;
      rep.functional = spec.name();
      rep.configuration = s.blocks_csv();
      rep.beta = to_string(params.beta);
      rep.p = to_string(params.p);
      if (integer_alpha) {
        Rational formula;
        switch (spec.kind) {
          case DriftFunctional::kF1: formula = drift_f1_formula(s, params); break;
          case DriftFunctional::kF2: formula = drift_f2_formula(s, params); break;
          default: formula = drift_phi_formula_exact(s, params, static_cast<int>(spec.alpha));
        }
        formula.canonicalize();
        Rational oracle = drift_oracle(s, params, exact_value);
        oracle.canonicalize();
        const Rational gap = abs(formula - oracle);
        rep.exact = true;
        rep.formula = formula.get_str();
        rep.oracle = oracle.get_str();
        rep.formula_value = formula.get_d();
        rep.oracle_value = oracle.get_d();
        rep.gap = gap.get_d();
        rep.pass = gap == 0;
      } else {
        const double formula = drift_phi_formula(s, fparams, spec.alpha);
        const double oracle = drift_oracle(s, fparams, float_value);
        rep.formula = format_double(formula);
        rep.oracle = format_double(oracle);
        rep.formula_value = formula;
        rep.oracle_value = oracle;
        rep.gap = std::abs(formula - oracle);
        rep.pass = rep.gap <= 1e-12;
      }
      out.push_back(std::move(rep));
    }
  }
  return out;
}

NegativeDriftFit f2_negative_drift_constant(const Params& params, std::int64_t min_size, std::int64_t max_size) {
  NegativeDriftFit fit;
  fit.constant = std::numeric_limits<double>::infinity();
  for (const auto& s : enumerate_configurations(max_size)) {
    if (s.size() < min_size || s.is_ground()) continue;
    const double c = -drift_f2_formula(s, params) / std::pow(f2_value(s), 1.0 / 6.0);
    ++fit.configurations;
    if (c < fit.constant) {
      fit.constant = c;
      fit.argmin = s.blocks_csv();
    }
  }
  return fit;
}

}  // namespace evlab
