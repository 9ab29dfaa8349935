#include "mlrf/lp.hpp"

#include "mlrf/errors.hpp"

namespace mlrf {

LinearProgram::LinearProgram(std::size_t num_vars)
    : nonneg_(num_vars, false), objective_(zeros(num_vars)),
      objective_constant_(0) {}

std::size_t LinearProgram::add_variable(bool nonnegative) {
  nonneg_.push_back(nonnegative);
  objective_.conservativeResize(Eigen::Index(nonneg_.size()));
  objective_[Eigen::Index(nonneg_.size() - 1)] = 0;
  return nonneg_.size() - 1;
}

std::size_t LinearProgram::add_variables(std::size_t count, bool nonnegative) {
  std::size_t first = nonneg_.size();
  for (std::size_t i = 0; i < count; ++i)
    add_variable(nonnegative);
  return first;
}

void LinearProgram::set_nonnegative(std::size_t var, bool nonnegative) {
  nonneg_.at(var) = nonnegative;
}

void LinearProgram::add_row(const RatVec &coeffs, RowSense sense,
                            const Rational &rhs) {
  if (std::size_t(coeffs.size()) > num_vars())
    throw DimensionError("LP row wider than the variable count");
  Row row{{}, sense, rhs};
  for (Eigen::Index j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0)
      row.terms.emplace_back(std::size_t(j), coeffs[j]);
  rows_.push_back(std::move(row));
}

void LinearProgram::add_row(
    const std::vector<std::pair<std::size_t, Rational>> &terms, RowSense sense,
    const Rational &rhs) {
  Row row{{}, sense, rhs};
  for (const auto &[var, coeff] : terms) {
    if (var >= num_vars())
      throw DimensionError("LP row references an unknown variable");
    if (coeff != 0)
      row.terms.emplace_back(var, coeff);
  }
  rows_.push_back(std::move(row));
}

void LinearProgram::set_objective(const RatVec &c, const Rational &c0) {
  if (std::size_t(c.size()) > num_vars())
    throw DimensionError("LP objective wider than the variable count");
  objective_ = zeros(num_vars());
  objective_.head(c.size()) = c;
  objective_constant_ = c0;
}

LpResult LinearProgram::minimize() const {
  return solve(objective_, objective_constant_);
}

LpResult LinearProgram::maximize() const {
  LpResult r = solve(-objective_, -objective_constant_);
  r.value = -r.value;
  return r;
}

LpResult LinearProgram::feasible_point() const {
  return solve(zeros(num_vars()), Rational(0));
}

namespace {

/// Dense simplex tableau in equality standard form: T x = rhs, x >= 0.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(RowMajorMatrix<Rational>::Zero(Eigen::Index(rows),
                                          Eigen::Index(cols + 1))),
        basis_(rows, 0), allowed_(cols, true) {}

  Rational &at(std::size_t i, std::size_t j) {
    return t_(Eigen::Index(i), Eigen::Index(j));
  }
  const Rational &at(std::size_t i, std::size_t j) const {
    return t_(Eigen::Index(i), Eigen::Index(j));
  }
  Rational &rhs(std::size_t i) { return at(i, cols()); }
  std::size_t rows() const { return std::size_t(t_.rows()); }
  std::size_t cols() const { return std::size_t(t_.cols()) - 1; }
  std::vector<std::size_t> &basis() { return basis_; }
  std::vector<bool> &allowed() { return allowed_; }

  /// Loads reduced costs for `cost` given the current basis.
  void price(const std::vector<Rational> &cost) {
    reduced_.assign(cols() + 1, Rational(0));
    for (std::size_t j = 0; j < cols(); ++j)
      reduced_[j] = cost[j];
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational &cb = cost[basis_[i]];
      if (cb == 0)
        continue;
      for (std::size_t j = 0; j <= cols(); ++j)
        if (at(i, j) != 0)
          reduced_[j] -= cb * at(i, j);
    }
  }

  /// Objective value of the current basic solution.
  Rational objective() const { return -reduced_[cols()]; }

  void pivot(std::size_t r, std::size_t e) {
    const Rational p = at(r, e);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols(); ++j) {
      if (at(r, j) != 0) {
        at(r, j) /= p;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || at(i, e) == 0)
        continue;
      const Rational f = at(i, e);
      for (std::size_t j : nz)
        at(i, j) -= f * at(r, j);
    }
    if (!reduced_.empty() && reduced_[e] != 0) {
      const Rational f = reduced_[e];
      for (std::size_t j : nz)
        reduced_[j] -= f * at(r, j);
    }
    basis_[r] = e;
  }

  enum class Outcome { Optimal, Unbounded };

  /// Bland's rule iterations. On Unbounded, `entering` holds the column.
  Outcome iterate(std::size_t &entering) {
    for (;;) {
      std::size_t e = cols();
      for (std::size_t j = 0; j < cols(); ++j) {
        if (allowed_[j] && reduced_[j] < 0) {
          e = j;
          break;
        }
      }
      if (e == cols())
        return Outcome::Optimal;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (at(i, e) <= 0)
          continue;
        Rational ratio = at(i, cols()) / at(i, e);
        if (leave == rows() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) {
        entering = e;
        return Outcome::Unbounded;
      }
      pivot(leave, e);
    }
  }

  void drop_row(std::size_t r) {
    const auto n = Eigen::Index(rows());
    if (Eigen::Index(r) + 1 < n)
      t_.block(Eigen::Index(r), 0, n - Eigen::Index(r) - 1, t_.cols()) =
          t_.block(Eigen::Index(r) + 1, 0, n - Eigen::Index(r) - 1, t_.cols())
              .eval();
    t_.conservativeResize(n - 1, t_.cols());
    basis_.erase(basis_.begin() + std::ptrdiff_t(r));
  }

private:
  RowMajorMatrix<Rational> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<Rational> reduced_;
};

} // namespace

LpResult LinearProgram::solve(const RatVec &cost, const Rational &c0) const {
  const std::size_t n = num_vars();
  const std::size_t m = rows_.size();

  // Column layout: positive parts, negative parts of free variables, slacks,
  // artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, std::size_t(-1));
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j)
    pos_col[j] = cols++;
  for (std::size_t j = 0; j < n; ++j)
    if (!nonneg_[j])
      neg_col[j] = cols++;
  std::vector<std::size_t> slack_col(m, std::size_t(-1));
  for (std::size_t i = 0; i < m; ++i)
    if (rows_[i].sense != RowSense::Equal)
      slack_col[i] = cols++;
  const std::size_t first_artificial = cols;

  // Decide per row whether the slack can start basic.
  std::vector<Rational> sign(m, Rational(1));
  std::vector<bool> needs_artificial(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    const Row &row = rows_[i];
    if (row.rhs < 0)
      sign[i] = -1;
    Rational slack_coeff = row.sense == RowSense::LessEq    ? Rational(1)
                           : row.sense == RowSense::GreaterEq ? Rational(-1)
                                                              : Rational(0);
    if (slack_coeff * sign[i] == 1)
      needs_artificial[i] = false;
  }
  std::vector<std::size_t> art_col(m, std::size_t(-1));
  for (std::size_t i = 0; i < m; ++i)
    if (needs_artificial[i])
      art_col[i] = cols++;

  Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const Row &row = rows_[i];
    for (const auto &[var, coeff] : row.terms) {
      tab.at(i, pos_col[var]) += sign[i] * coeff;
      if (neg_col[var] != std::size_t(-1))
        tab.at(i, neg_col[var]) -= sign[i] * coeff;
    }
    if (slack_col[i] != std::size_t(-1))
      tab.at(i, slack_col[i]) =
          sign[i] * (row.sense == RowSense::LessEq ? Rational(1) : Rational(-1));
    tab.rhs(i) = sign[i] * row.rhs;
    if (needs_artificial[i]) {
      tab.at(i, art_col[i]) = 1;
      tab.basis()[i] = art_col[i];
    } else {
      tab.basis()[i] = slack_col[i];
    }
  }

  std::size_t entering = 0;
  // Phase 1.
  if (cols > first_artificial) {
    std::vector<Rational> phase1(cols, Rational(0));
    for (std::size_t j = first_artificial; j < cols; ++j)
      phase1[j] = 1;
    tab.price(phase1);
    if (tab.iterate(entering) != Tableau::Outcome::Optimal)
      throw InternalError("phase-1 simplex reported unboundedness");
    if (tab.objective() > 0)
      return LpResult{LpStatus::Infeasible, Rational(0), RatVec(), RatVec()};
    // Drive zero-valued artificials out of the basis.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (tab.at(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col == first_artificial) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j)
      tab.allowed()[j] = false;
  }

  // Phase 2.
  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    phase2[pos_col[j]] = cost[Eigen::Index(j)];
    if (neg_col[j] != std::size_t(-1))
      phase2[neg_col[j]] = -cost[Eigen::Index(j)];
  }
  tab.price(phase2);
  auto outcome = tab.iterate(entering);

  std::vector<Rational> value(cols, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i)
    value[tab.basis()[i]] = tab.rhs(i);
  auto to_vars = [&](const std::vector<Rational> &v) {
    RatVec x = zeros(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[Eigen::Index(j)] = v[pos_col[j]];
      if (neg_col[j] != std::size_t(-1))
        x[Eigen::Index(j)] -= v[neg_col[j]];
    }
    return x;
  };

  LpResult result;
  result.point = to_vars(value);
  result.value = c0;
  for (std::size_t j = 0; j < n; ++j)
    result.value += cost[Eigen::Index(j)] * result.point[Eigen::Index(j)];
  if (outcome == Tableau::Outcome::Optimal) {
    result.status = LpStatus::Optimal;
    return result;
  }
  std::vector<Rational> dir(cols, Rational(0));
  dir[entering] = 1;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    dir[tab.basis()[i]] = -tab.at(i, entering);
  result.status = LpStatus::Unbounded;
  result.ray = to_vars(dir);
  return result;
}

} // namespace mlrf
