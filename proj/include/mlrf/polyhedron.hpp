#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mlrf/affine.hpp"
#include "mlrf/lp.hpp"
#include "mlrf/rational.hpp"

namespace mlrf {

enum class Relation { LessEq, Less, Equal };

/// coeffs . x (relation) rhs.
struct Constraint {
  RatVec coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;

  std::size_t dim() const { return std::size_t(coeffs.size()); }
  /// Slack rhs - coeffs . x as an affine function; nonnegative when satisfied.
  AffineFunc slack() const { return {-coeffs, rhs}; }
  bool satisfied_by(const RatVec &x) const;
};

/// Constraint f(x) >= 0, i.e. -f.coeffs . x <= f.constant.
Constraint nonneg_constraint(const AffineFunc &f);
/// Constraint f(x) <= 0.
Constraint nonpos_constraint(const AffineFunc &f);
/// Constraint f(x) < 0.
Constraint negative_constraint(const AffineFunc &f);
/// Constraint f(x) > 0.
Constraint positive_constraint(const AffineFunc &f);

/// Convex polyhedron { x in Q^dim | A x <= b, strict rows strictly }.
///
/// Equality constraints are stored as two opposite `<=` rows, so every row is
/// either LessEq or Less.
class Polyhedron {
public:
  explicit Polyhedron(std::size_t dim = 0) : dim_(dim) {}

  static Polyhedron universe(std::size_t dim) { return Polyhedron(dim); }
  /// The empty set, as the single row 0 <= -1.
  static Polyhedron empty(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<Constraint> &rows() const { return rows_; }
  const Constraint &row(std::size_t i) const { return rows_.at(i); }

  Polyhedron &add(Constraint c);
  Polyhedron &add(const std::vector<Constraint> &cs);
  Polyhedron &add_nonneg(const AffineFunc &f) {
    return add(nonneg_constraint(f));
  }
  Polyhedron &add_nonpos(const AffineFunc &f) {
    return add(nonpos_constraint(f));
  }

  /// Copy with extra constraints (expression-friendly intersection).
  Polyhedron with(Constraint c) const {
    Polyhedron p(*this);
    p.add(std::move(c));
    return p;
  }
  Polyhedron intersect(const Polyhedron &other) const;

  bool has_strict_rows() const;
  bool contains(const RatVec &x) const;

  /// One row per line: "c1*v1 + c2*v2 <= r".
  std::string dump(const std::vector<std::string> &names = {}) const;

private:
  std::size_t dim_;
  std::vector<Constraint> rows_;
};

/// Vertices and rays: P = conv(vertices) + cone(rays). Lines appear as a pair
/// of opposite rays.
struct GeneratorRep {
  std::vector<RatVec> vertices;
  std::vector<RatVec> rays;
};

/// Nonnegative multipliers, one per row of the source polyhedron, proving
/// f(x) = sum_i multipliers_i * (rhs_i - row_i . x) + slack with slack >= 0.
///
/// When `vacuous` is set the polyhedron is empty and the multipliers instead
/// satisfy sum_i multipliers_i * row_i = 0, sum_i multipliers_i * rhs_i < 0.
struct FarkasCert {
  RatVec multipliers;
  Rational slack;
  bool vacuous = false;
};

/// Coefficients mu_1..mu_{k-1} of a conic combination
/// mu_1 f_1 + ... + mu_{k-1} f_{k-1} + f_k certified nonnegative.
struct MuWitness {
  std::vector<Rational> mus;
  /// Certificate for the combined function.
  FarkasCert cert;
};

struct Feasibility {
  bool feasible = false;
  RatVec witness;
  explicit operator bool() const { return feasible; }
};

enum class OptimizeSense { Min, Max };

struct OptimizeResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RatVec point;
  RatVec ray;
};

struct NonnegResult {
  bool holds = false;
  FarkasCert cert;
  RatVec counterexample;
  explicit operator bool() const { return holds; }
};

// --- LP-backed queries ------------------------------------------------------

/// Exact feasibility. Strict rows are decided by maximizing a common slack t
/// (strict slack >= t, t <= 1); feasible iff the optimum is positive.
Feasibility is_feasible(const Polyhedron &p);

/// Exact optimum of an affine objective. Requires no strict rows.
OptimizeResult optimize(const Polyhedron &p, const AffineFunc &objective,
                        OptimizeSense sense);

/// Decides f >= 0 over P with a certificate or a counterexample point.
/// Requires no strict rows. Empty P yields a vacuous certificate.
NonnegResult implies_nonneg(const Polyhedron &p, const AffineFunc &f);

/// Exact recombination check of a certificate.
bool verify_certificate(const Polyhedron &p, const AffineFunc &f,
                        const FarkasCert &cert);

/// Multipliers mu >= 0 with sum mu_j fs_j + fk >= 0 over P, if any exist.
/// P must be nonempty. The result is re-verified before it is returned.
std::optional<MuWitness> motzkin_combine_strict(const Polyhedron &p,
                                                const std::vector<AffineFunc> &fs,
                                                const AffineFunc &fk);

/// Same system for the non-strict disjunction f_1 >= 0 or ... or f_k >= 0:
/// multipliers for fs[0..k-2] with the last function's coefficient fixed to 1.
std::optional<MuWitness> conic_combine_nonneg(const Polyhedron &p,
                                              const std::vector<AffineFunc> &fs);

/// Running totals of certificate re-verifications in this process, witness
/// points included.
struct CertificateStats {
  std::size_t verified = 0;
  std::size_t failed = 0;
};
CertificateStats certificate_stats();

// --- Parametric Farkas encoding ---------------------------------------------

/// Affine function over `dim` variables whose coefficients are themselves
/// affine in LP unknowns: coefficient j (j == dim is the constant term) equals
/// sum_k terms[j][k] * u_k + offset[j].
class ParametricAffine {
public:
  explicit ParametricAffine(std::size_t dim)
      : terms_(dim + 1), offset_(zeros(dim + 1)) {}

  std::size_t dim() const { return terms_.size() - 1; }
  /// Adds factor * u to coefficient `j` (j == dim() addresses the constant).
  void add_unknown(std::size_t j, std::size_t unknown, const Rational &factor);
  /// Adds a fixed affine function.
  void add_fixed(const AffineFunc &f);
  /// Adds factor * u * f for a fixed f and scalar unknown u.
  void add_scaled(const AffineFunc &f, std::size_t unknown);

  const std::vector<std::vector<std::pair<std::size_t, Rational>>> &terms()
      const {
    return terms_;
  }
  const RatVec &offset() const { return offset_; }

private:
  std::vector<std::vector<std::pair<std::size_t, Rational>>> terms_;
  RatVec offset_;
};

/// Adds Farkas multipliers lambda >= 0 (one per row of P) and the rows
/// forcing g(u) = sum lambda_i (rhs_i - row_i . x) + kappa with kappa >= 0.
/// Returns the LP index of the first multiplier. P must have no strict rows.
std::size_t add_farkas_condition(LinearProgram &lp, const Polyhedron &p,
                                 const ParametricAffine &g);

/// Reads a certificate back from an LP solution.
FarkasCert extract_certificate(const Polyhedron &p, const AffineFunc &g,
                               const RatVec &solution, std::size_t first);

// --- Representation conversion ----------------------------------------------

/// Vertices and rays by incremental double description (rows inserted in
/// order). Requires no strict rows. Empty P gives empty lists.
GeneratorRep generators(const Polyhedron &p);

/// Constraint form of conv(vertices) + cone(rays). No vertices means empty.
Polyhedron from_generators(std::size_t dim, const GeneratorRep &g);

/// Indices of rows that hold with equality on all of P (P nonempty).
std::vector<std::size_t> implicit_equalities(const Polyhedron &p);

/// Same set with redundant rows removed (rows implied by the others).
/// Requires no strict rows.
Polyhedron remove_redundant(const Polyhedron &p);

/// outer ⊇ inner, decided row by row with implies_nonneg.
bool includes(const Polyhedron &outer, const Polyhedron &inner);
bool same_set(const Polyhedron &a, const Polyhedron &b);

// --- Integer hull -------------------------------------------------------------

struct HullOptions {
  std::size_t max_cuts = 10000;
};

struct HullInfo {
  std::size_t cuts_added = 0;
  std::size_t rounds = 0;
};

/// conv(P ∩ Z^dim). Implicit equalities are solved over the integer lattice
/// (Hermite normal form), the lineality space is split off, and the remaining
/// pointed polyhedron is closed under Chvatal-Gomory cuts read from simplex
/// bases at fractional vertices. Requires no strict rows.
Polyhedron integer_hull(const Polyhedron &p, const HullOptions &options = {},
                        HullInfo *info = nullptr);

/// Same integer points, no strict rows: a . x < b becomes a . x <= ceil(b) - 1
/// once a is scaled to a primitive integer vector.
Polyhedron tighten_for_integers(const Polyhedron &p);

/// Rows of `hull` (after redundancy removal) not implied by `original`.
std::vector<Constraint> added_constraints(const Polyhedron &original,
                                          const Polyhedron &hull);

} // namespace mlrf
