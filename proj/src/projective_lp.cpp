#include "amenlab/projective_lp.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace amenlab {

namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr double kViolationTolerance = 1e-12;
constexpr std::size_t kFullEnumerationBudget = 14;
constexpr std::size_t kColumnGenerationPivots = 100000;

struct SignPair {
  Eigen::VectorXd s;
  Eigen::VectorXd t;
};

Eigen::VectorXd signs_from_mask(std::uint64_t mask, Eigen::Index n) {
  Eigen::VectorXd s(n);
  s[0] = 1.0;
  for (Eigen::Index i = 1; i < n; ++i) s[i] = (mask >> (i - 1)) & 1U ? -1.0 : 1.0;
  return s;
}

Eigen::VectorXd sign_of(const Eigen::VectorXd& v) {
  Eigen::VectorXd s(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) s[i] = v[i] < 0.0 ? -1.0 : 1.0;
  return s;
}

// Most violated sign pair for M: enumerates the smaller side and picks the
// best response on the other.
std::pair<double, SignPair> most_violated(const RealMatrix& m) {
  const bool rows_first = m.rows() <= m.cols();
  const Eigen::Index side = rows_first ? m.rows() : m.cols();
  const std::uint64_t count = std::uint64_t{1} << (side - 1);
  double best = -1.0;
  SignPair pair;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Eigen::VectorXd s = signs_from_mask(mask, side);
    const Eigen::VectorXd v = rows_first ? Eigen::VectorXd(m.transpose() * s) : Eigen::VectorXd(m * s);
    const double value = v.cwiseAbs().sum();
    if (value > best) {
      best = value;
      pair = rows_first ? SignPair{s, sign_of(v)} : SignPair{sign_of(v), s};
    }
  }
  return {best, pair};
}

// Constraint row on x = (M+, M-) for sign * s^T M t <= 1.
Eigen::VectorXd sign_row(const SignPair& p, double sign) {
  const Eigen::Index m = p.s.size();
  const Eigen::Index n = p.t.size();
  Eigen::VectorXd row(2 * m * n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = sign * p.s[i] * p.t[j];
      row[i * n + j] = v;
      row[m * n + i * n + j] = -v;
    }
  return row;
}

RealMatrix real_coefficients(const DecomposedTensor& u) {
  if (u.left_algebra()->field() != ScalarField::kReal || u.right_algebra()->field() != ScalarField::kReal)
    throw UnsupportedInstance("norm_exact_lp needs real scalar mode");
  if (!u.left_algebra()->is_sup() || !u.right_algebra()->is_sup())
    throw UnsupportedInstance("norm_exact_lp needs sup-algebra factors, got " + u.left_algebra()->descriptor() +
                              " (x) " + u.right_algebra()->descriptor());
  if (u.left_algebra()->dim() + u.right_algebra()->dim() > kLpDimensionBudget)
    throw UnsupportedInstance("norm_exact_lp: m + n exceeds the enumeration budget of " +
                              std::to_string(kLpDimensionBudget));
  const Matrix c = u.coefficient_tensor();
  if (!c.imag().isZero(0.0)) throw UnsupportedInstance("norm_exact_lp needs real coefficients");
  return c.real();
}

struct ColumnGenerationResult {
  RealMatrix form;
  double primal = 0.0;
  std::size_t pivots = 0;
};

// Revised simplex on the decomposition side of the LP,
//   min sum_k lambda_k  s.t.  sum_k lambda_k sigma_k s_k t_k^T = u,  lambda >= 0,
// starting from the coordinate decomposition sum_ij |u_ij| sign(u_ij) e_i e_j^T.
// Entering columns come from the most violated sign pair of the current dual
// form M = B^-T 1, so optimality is exactly |s^T M t| <= 1 for every pair.
ColumnGenerationResult column_generation(const RealMatrix& coeffs, std::size_t max_pivots) {
  const Eigen::Index m = coeffs.rows();
  const Eigen::Index n = coeffs.cols();
  const Eigen::Index dim = m * n;
  Eigen::VectorXd target(dim);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) target[i * n + j] = coeffs(i, j);

  RealMatrix basis = RealMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) basis(k, k) = target[k] < 0.0 ? -1.0 : 1.0;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(dim);

  ColumnGenerationResult out;
  for (;;) {
    const Eigen::PartialPivLU<RealMatrix> lu(basis);
    const Eigen::VectorXd y = lu.transpose().solve(ones);
    out.form = RealMatrix(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) out.form(i, j) = y[i * n + j];
    Eigen::VectorXd x = lu.solve(target);
    out.primal = x.sum();

    const auto [violation, pair] = most_violated(out.form);
    if (violation <= 1.0 + kViolationTolerance) break;
    if (++out.pivots > max_pivots) throw NumericalFailure("column generation: pivot budget exhausted");

    const double sigma = pair.s.dot(out.form * pair.t) < 0.0 ? -1.0 : 1.0;
    Eigen::VectorXd column(dim);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) column[i * n + j] = sigma * pair.s[i] * pair.t[j];
    const Eigen::VectorXd d = lu.solve(column);

    // Ratio test; among near-ties the largest pivot element is kept.
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (d[r] <= kPivotTolerance) continue;
      const double ratio = std::max(0.0, x[r]) / d[r];
      if (ratio < best_ratio - kPivotTolerance ||
          (leave >= 0 && ratio <= best_ratio + kPivotTolerance && d[r] > d[leave])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = r;
      }
    }
    if (leave < 0) throw NumericalFailure("column generation: unbounded ratio test");
    basis.col(leave) = column;
  }
  return out;
}

}  // namespace

DenseSimplex::Result DenseSimplex::maximize(const RealMatrix& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                            std::size_t max_pivots) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index vars = a.cols();
  if (b.size() != rows || c.size() != vars) throw InvalidArgument("simplex: inconsistent problem shape");
  if ((b.array() < 0.0).any()) throw InvalidArgument("simplex: right-hand side must be nonnegative");

  // Tableau [A I | b] with the objective row -c underneath.
  const Eigen::Index width = vars + rows + 1;
  RealMatrix t = RealMatrix::Zero(rows + 1, width);
  t.topLeftCorner(rows, vars) = a;
  t.block(0, vars, rows, rows).setIdentity();
  t.col(width - 1).head(rows) = b;
  t.row(rows).head(vars) = -c.transpose();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index r = 0; r < rows; ++r) basis[static_cast<std::size_t>(r)] = vars + r;

  Result result;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < width - 1; ++j)
      if (t(rows, j) < -kPivotTolerance) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double coef = t(r, enter);
      if (coef <= kPivotTolerance) continue;
      const double ratio = t(r, width - 1) / coef;
      if (ratio < best_ratio - kPivotTolerance ||
          (ratio <= best_ratio + kPivotTolerance && leave >= 0 &&
           basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = r;
      }
    }
    if (leave < 0) throw UnsupportedInstance("simplex: objective is unbounded");

    if (++result.pivots > max_pivots) throw NumericalFailure("simplex: pivot budget exhausted");
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      const double f = t(r, enter);
      if (f != 0.0) t.row(r) -= f * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  result.x = Eigen::VectorXd::Zero(vars);
  for (Eigen::Index r = 0; r < rows; ++r)
    if (basis[static_cast<std::size_t>(r)] < vars) result.x[basis[static_cast<std::size_t>(r)]] = t(r, width - 1);
  result.objective = c.dot(result.x);
  return result;
}

double sign_form_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  return most_violated(m).first;
}

LpNormResult norm_exact_lp_detailed(const DecomposedTensor& u, LpStrategy strategy) {
  const RealMatrix coeffs = real_coefficients(u);
  const Eigen::Index m = coeffs.rows();
  const Eigen::Index n = coeffs.cols();
  const Eigen::Index vars = 2 * m * n;

  LpNormResult out;
  out.witness = RealMatrix::Zero(m, n);
  if (coeffs.isZero(0.0)) return out;

  Eigen::VectorXd objective(vars);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      objective[i * n + j] = coeffs(i, j);
      objective[m * n + i * n + j] = -coeffs(i, j);
    }

  RealMatrix form;
  double relaxation = 0.0;
  if (strategy == LpStrategy::kFullEnumeration) {
    if (static_cast<std::size_t>(m + n) > kFullEnumerationBudget)
      throw UnsupportedInstance("full sign enumeration is limited to m + n <= " +
                                std::to_string(kFullEnumerationBudget));
    std::vector<Eigen::VectorXd> rows;
    const std::uint64_t s_count = std::uint64_t{1} << (m - 1);
    const std::uint64_t t_count = std::uint64_t{1} << n;
    for (std::uint64_t sm = 0; sm < s_count; ++sm)
      for (std::uint64_t tm = 0; tm < t_count; ++tm) {
        SignPair p{signs_from_mask(sm, m), Eigen::VectorXd(n)};
        for (Eigen::Index j = 0; j < n; ++j) p.t[j] = (tm >> j) & 1U ? -1.0 : 1.0;
        rows.push_back(sign_row(p, 1.0));
        rows.push_back(sign_row(p, -1.0));
      }
    RealMatrix a(static_cast<Eigen::Index>(rows.size()), vars);
    for (std::size_t r = 0; r < rows.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    const auto solved = DenseSimplex::maximize(a, Eigen::VectorXd::Ones(a.rows()), objective);
    out.lp_solves = 1;
    relaxation = solved.objective;
    form = RealMatrix(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) form(i, j) = solved.x[i * n + j] - solved.x[m * n + i * n + j];
  } else {
    const auto solved = column_generation(coeffs, kColumnGenerationPivots);
    out.lp_solves = solved.pivots + 1;
    relaxation = solved.primal;
    form = solved.form;
  }

  const double scale = std::max(1.0, sign_form_norm(form));
  out.witness = form / scale;
  out.value = (out.witness.array() * coeffs.array()).sum();
  out.relaxation_value = relaxation;
  return out;
}

double norm_exact_lp(const DecomposedTensor& u, LpStrategy strategy) {
  return norm_exact_lp_detailed(u, strategy).value;
}

}  // namespace amenlab
