#pragma once

#include <cstddef>
#include <vector>

#include "mlrf/rational.hpp"

namespace mlrf {

enum class RowSense { LessEq, GreaterEq, Equal };
enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  /// Objective value at `point` (including the objective constant).
  Rational value;
  /// Optimal point, or a feasible point from which `ray` improves forever.
  RatVec point;
  /// Improving recession direction when Unbounded.
  RatVec ray;
};

/// Exact linear program over the rationals, solved by the two-phase primal
/// simplex method with Bland's rule (no cycling, deterministic output).
///
/// Variables are free unless marked nonnegative. Rows are sparse-free dense
/// vectors over the current variable count; adding a variable later pads
/// earlier rows with zeros.
class LinearProgram {
public:
  explicit LinearProgram(std::size_t num_vars = 0);

  std::size_t num_vars() const { return nonneg_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  /// Appends a variable and returns its index.
  std::size_t add_variable(bool nonnegative);
  /// Appends `count` variables, returns the index of the first.
  std::size_t add_variables(std::size_t count, bool nonnegative);
  void set_nonnegative(std::size_t var, bool nonnegative = true);

  /// coeffs . x (sense) rhs. `coeffs` may be shorter than num_vars().
  void add_row(const RatVec &coeffs, RowSense sense, const Rational &rhs);
  /// Sparse form of add_row.
  void add_row(const std::vector<std::pair<std::size_t, Rational>> &terms,
               RowSense sense, const Rational &rhs);

  /// Objective c . x + c0; minimized by minimize(), maximized by maximize().
  void set_objective(const RatVec &c, const Rational &c0 = Rational(0));

  LpResult minimize() const;
  LpResult maximize() const;
  /// Any feasible point (objective ignored).
  LpResult feasible_point() const;

private:
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    RowSense sense;
    Rational rhs;
  };

  LpResult solve(const RatVec &cost, const Rational &c0) const;

  std::vector<bool> nonneg_;
  std::vector<Row> rows_;
  RatVec objective_;
  Rational objective_constant_;
};

} // namespace mlrf
