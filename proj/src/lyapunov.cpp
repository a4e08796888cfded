#include "evlab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evlab {

namespace {

using Wide = __int128;

std::vector<double> weight_table(std::int64_t max_index, double alpha) {
  std::vector<double> w(static_cast<std::size_t>(max_index + 1), 0.0);
  for (std::int64_t s = 1; s <= max_index; ++s) w[static_cast<std::size_t>(s)] = std::pow(static_cast<double>(s), -alpha);
  return w;
}

// Number of staircase cells (j, k) with j + k = s, for every s.
std::vector<std::int64_t> diagonal_counts(const Configuration& s) {
  const auto [R, T] = prefix_sums(s);
  std::vector<std::int64_t> diff(static_cast<std::size_t>(s.size() + 3), 0);
  std::int64_t left = 0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (std::int64_t j = left + 1; j <= R[i]; ++j) {
      diff[static_cast<std::size_t>(j + 1)] += 1;
      diff[static_cast<std::size_t>(j + T[i] + 1)] -= 1;
    }
    left = R[i];
  }
  std::vector<std::int64_t> counts(diff.size(), 0);
  std::int64_t running = 0;
  for (std::size_t k = 0; k < diff.size(); ++k) counts[k] = running += diff[k];
  return counts;
}

AuditClause clause(std::string id, std::string statement, double lhs, double rhs, bool pass) {
  return {std::move(id), std::move(statement), lhs, rhs, rhs - lhs, pass};
}

AuditClause exact_le(std::string id, std::string statement, Wide lhs_scaled, Wide rhs_scaled, double lhs,
                     double rhs) {
  return clause(std::move(id), std::move(statement), lhs, rhs, lhs_scaled <= rhs_scaled);
}

// (sum x)^3 <= 6 (sum x^2)(sum i x_i) for one block family.
AuditClause block_sum_clause(std::string id, std::string name, const std::vector<std::int64_t>& x) {
  Wide total = 0, squares = 0, weighted = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += x[i];
    squares += Wide(x[i]) * x[i];
    weighted += Wide(i + 1) * x[i];
  }
  const double lhs = static_cast<double>(total);
  const double rhs = std::cbrt(6.0 * static_cast<double>(squares) * static_cast<double>(weighted));
  return exact_le(std::move(id), "sum " + name + " <= (6 sum " + name + "^2 * sum i " + name + ")^(1/3)",
                  total * total * total, 6 * squares * weighted, lhs, rhs);
}

}  // namespace

std::pair<std::int64_t, std::int64_t> f1_both_forms(const Configuration& s) {
  const auto [R, T] = prefix_sums(s);
  std::int64_t by_rows = 0, by_columns = 0;
  for (std::int64_t i = 1; i <= s.block_pairs(); ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    by_rows += s.m(i) * R[k];
    by_columns += s.n(i) * T[k];
  }
  return {by_rows, by_columns};
}

std::int64_t f1(const Configuration& s) {
  const auto [a, b] = f1_both_forms(s);
  if (a != b) throw std::logic_error("f1 forms disagree on " + s.render());
  return a;
}

std::int64_t f2_twice(const Configuration& s) {
  const auto [R, T] = prefix_sums(s);
  std::int64_t acc = 0;
  for (std::int64_t i = 1; i <= s.block_pairs(); ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    acc += s.m(i) * R[k] * R[k] + s.n(i) * T[k] * T[k];
  }
  return acc;
}

Rational f2(const Configuration& s) {
  Rational q(f2_twice(s), 2);
  q.canonicalize();
  return q;
}

RectWitness g_rect(const Configuration& s) {
  RectWitness best;
  const auto [R, T] = prefix_sums(s);
  for (std::size_t k = 0; k < R.size(); ++k) {
    const auto area = R[k] * T[k];
    if (area > best.g) best = {static_cast<std::int64_t>(k + 1), R[k], T[k], area};
  }
  return best;
}

std::pair<double, double> phi_both_forms(const Configuration& s, double alpha) {
  if (alpha < 0) throw std::domain_error("phi requires alpha >= 0");
  if (s.is_ground()) return {0.0, 0.0};
  const auto [R, T] = prefix_sums(s);
  const auto n = R.size();
  const auto w = weight_table(s.size(), alpha);

  double columns = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t lo = i == 0 ? 0 : R[i - 1];
    for (std::int64_t j = lo + 1; j <= R[i]; ++j) {
      for (std::int64_t k = 1; k <= T[i]; ++k) columns += w[static_cast<std::size_t>(j + k)];
    }
  }
  double rows = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t lo = i + 1 < n ? T[i + 1] : 0;
    for (std::int64_t j = lo + 1; j <= T[i]; ++j) {
      for (std::int64_t k = 1; k <= R[i]; ++k) rows += w[static_cast<std::size_t>(j + k)];
    }
  }
  return {columns, rows};
}

double phi(const Configuration& s, double alpha) {
  const auto [columns, rows] = phi_both_forms(s, alpha);
  if (std::abs(columns - rows) > 1e-12 * std::max(1.0, std::abs(columns))) {
    throw std::logic_error("phi forms disagree on " + s.render());
  }
  return columns;
}

Rational phi_exact(const Configuration& s, int alpha) {
  if (alpha < 0) throw std::domain_error("phi requires alpha >= 0");
  const auto counts = diagonal_counts(s);
  Rational acc = 0;
  for (std::size_t d = 2; d < counts.size(); ++d) {
    if (counts[d] == 0) continue;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), d, static_cast<unsigned long>(alpha));
    acc += Rational(mpz_class(counts[d]), power);
  }
  acc.canonicalize();
  return acc;
}

std::int64_t rho2(const Configuration& s) {
  std::int64_t acc = 0;
  for (auto b : s.blocks()) acc += b * b;
  return acc;
}

std::int64_t corner_sum(const Configuration& s) {
  const auto [R, T] = prefix_sums(s);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < R.size(); ++i) acc += R[i] + T[i];
  return acc;
}

AuditReport inequality_audit(const Configuration& s) {
  AuditReport report;
  report.configuration = s.blocks_csv();
  auto& out = report.clauses;

  const Wide size = s.size();
  const Wide area = f1(s);
  const Wide f2x2 = f2_twice(s);
  const Wide blocks = s.block_pairs();
  const Wide rho = rho2(s);
  const auto rect = g_rect(s);
  const double sz = static_cast<double>(size);
  const double a = static_cast<double>(area);
  const double f2v = static_cast<double>(f2x2) / 2.0;

  out.push_back(exact_le("f1_lower", "|S|/2 <= f1", size, 2 * area, sz / 2, a));
  out.push_back(exact_le("f1_upper", "f1 <= |S|^2/4", 4 * area, size * size, a, sz * sz / 4));
  out.push_back(exact_le("f2_lower", "|S|^2/4 <= f2", size * size, 2 * f2x2, sz * sz / 4, f2v));
  out.push_back(exact_le("f2_upper", "f2 <= |S|^3/8", 4 * f2x2, size * size * size, f2v, sz * sz * sz / 8));
  out.push_back(exact_le("f2_size_f1", "f2 <= |S| f1", f2x2, 2 * size * area, f2v, sz * a));
  out.push_back(exact_le("size_f1_square", "|S| f1 <= 2 f1^2", size * area, 2 * area * area, sz * a, 2 * a * a));
  out.push_back(exact_le("rect_below_area", "g <= f1", rect.g, area, static_cast<double>(rect.g), a));
  out.push_back(exact_le("rho2_upper", "rho2 <= |S|^2", rho, size * size, static_cast<double>(rho), sz * sz));
  out.push_back(exact_le("f1_blocks", "N^2/2 <= f1", blocks * blocks, 2 * area,
                         static_cast<double>(blocks * blocks) / 2, a));
  out.push_back(exact_le("f2_blocks", "N^3/3 <= f2", 2 * blocks * blocks * blocks, 3 * f2x2,
                         static_cast<double>(blocks * blocks * blocks) / 3, f2v));
  out.push_back(exact_le("size_cube_root", "|S| <= 4 (f1 rho2)^(1/3)", size * size * size, 64 * area * rho, sz,
                         4 * std::cbrt(a * static_cast<double>(rho))));

  if (s.is_ground()) return report;

  const double nb = static_cast<double>(blocks);
  const Wide corners = corner_sum(s);
  const Wide widest = std::max(size, blocks * blocks);
  out.push_back(clause("rect_log_lower", "f1/(1+log f1) <= g", a / (1 + std::log(a)), static_cast<double>(rect.g),
                       a / (1 + std::log(a)) <= static_cast<double>(rect.g)));
  const double phi1 = phi(s, 1.0);
  out.push_back(clause("phi1_log_lower", "log(|S|/4) <= phi1", std::log(sz / 4), phi1, std::log(sz / 4) <= phi1));
  out.push_back(exact_le("size_rho2_first", "|S| <= |S|^2/(2N)", 2 * blocks, size, sz, sz * sz / (2 * nb)));
  out.push_back(exact_le("size_rho2_second", "|S|^2/(2N) <= rho2", size * size, 2 * blocks * rho,
                         sz * sz / (2 * nb), static_cast<double>(rho)));
  out.push_back(exact_le("corner_sum", "max(|S|, N^2) <= sum (R_i + T_i)", widest, corners,
                         static_cast<double>(widest), static_cast<double>(corners)));
  out.push_back(exact_le("corner_sum_root", "N |S|^(1/2) <= max(|S|, N^2)", blocks * blocks * size,
                         widest * widest, nb * std::sqrt(sz), static_cast<double>(widest)));

  std::vector<std::int64_t> zeros, ones;
  for (std::int64_t i = 1; i <= s.block_pairs(); ++i) {
    zeros.push_back(s.n(i));
    ones.push_back(s.m(i));
  }
  out.push_back(block_sum_clause("zero_block_sum", "n_i", zeros));
  out.push_back(block_sum_clause("one_block_sum", "m_i", ones));
  return report;
}

}  // namespace evlab
