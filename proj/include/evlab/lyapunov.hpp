#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evlab/config.hpp"
#include "evlab/rational.hpp"

namespace evlab {

/// Staircase area: sum m_i R_i, which equals sum n_i T_i.
std::int64_t f1(const Configuration& s);
/// Both defining sums of f1; they must agree.
std::pair<std::int64_t, std::int64_t> f1_both_forms(const Configuration& s);

/// 2 f2(S) = sum m_i R_i^2 + sum n_i T_i^2, kept integral.
std::int64_t f2_twice(const Configuration& s);
Rational f2(const Configuration& s);
inline double f2_value(const Configuration& s) { return static_cast<double>(f2_twice(s)) / 2.0; }

/// Largest rectangle under the staircase, with the least maximizing block index.
struct RectWitness {
  std::int64_t K = 0;
  std::int64_t X = 0;
  std::int64_t Y = 0;
  std::int64_t g = 0;
};
RectWitness g_rect(const Configuration& s);

/// phi_alpha(S): the weight (j+k)^-alpha summed over the staircase cells (j, k).
/// Evaluated column-wise and row-wise; throws std::logic_error if the two
/// differ by more than 1e-12 relative.
double phi(const Configuration& s, double alpha);
std::pair<double, double> phi_both_forms(const Configuration& s, double alpha);
/// Exact phi for a non-negative integer exponent.
Rational phi_exact(const Configuration& s, int alpha);

/// sum m_i^2 + sum n_i^2
std::int64_t rho2(const Configuration& s);

/// Sum over i of (R_i + T_i).
std::int64_t corner_sum(const Configuration& s);

struct AuditClause {
  std::string id;
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs for "lhs <= rhs"
  bool pass = false;
};

struct AuditReport {
  std::string configuration;
  std::vector<AuditClause> clauses;
  bool all_pass() const {
    for (const auto& c : clauses) {
      if (!c.pass) return false;
    }
    return true;
  }
};

/// Evaluates the f1/f2/g/phi1/rho2 inequality family on one configuration,
/// exactly where the quantities are rational.
AuditReport inequality_audit(const Configuration& s);

}  // namespace evlab
