#include "mlrf/polyhedron.hpp"

#include <atomic>

#include "mlrf/errors.hpp"

namespace mlrf {

namespace {

std::atomic<std::size_t> g_verified{0};
std::atomic<std::size_t> g_failed{0};

/// Witness points are checked by exact evaluation, like certificates.
void record_witness(bool ok, const char *what) {
  if (!ok) {
    ++g_failed;
    throw InternalError(std::string(what) + ": witness point failed exact evaluation");
  }
  ++g_verified;
}

Rational dot(const RatVec &a, const RatVec &b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0)
      s += a[i] * b[i];
  return s;
}

void require_dim(const Polyhedron &p, std::size_t dim, const char *what) {
  if (p.dim() != dim)
    throw DimensionError(std::string(what) + ": function of dimension " +
                         std::to_string(dim) + " over a polyhedron of dimension " +
                         std::to_string(p.dim()));
}

void require_non_strict(const Polyhedron &p, const char *what) {
  if (p.has_strict_rows())
    throw PreconditionError(std::string(what) +
                            " does not accept strict constraints");
}

/// LP over x in Q^dim with the rows of P (non-strict only).
LinearProgram lp_of(const Polyhedron &p) {
  LinearProgram lp(p.dim());
  for (const auto &row : p.rows())
    lp.add_row(row.coeffs, RowSense::LessEq, row.rhs);
  return lp;
}

} // namespace

bool Constraint::satisfied_by(const RatVec &x) const {
  if (std::size_t(x.size()) != dim())
    throw DimensionError("point dimension does not match constraint");
  Rational lhs = dot(coeffs, x);
  switch (relation) {
  case Relation::LessEq:
    return lhs <= rhs;
  case Relation::Less:
    return lhs < rhs;
  case Relation::Equal:
    return lhs == rhs;
  }
  return false;
}

Constraint nonneg_constraint(const AffineFunc &f) {
  return {-f.coeffs, Relation::LessEq, f.constant};
}
Constraint nonpos_constraint(const AffineFunc &f) {
  return {f.coeffs, Relation::LessEq, -f.constant};
}
Constraint negative_constraint(const AffineFunc &f) {
  return {f.coeffs, Relation::Less, -f.constant};
}
Constraint positive_constraint(const AffineFunc &f) {
  return {-f.coeffs, Relation::Less, f.constant};
}

Polyhedron Polyhedron::empty(std::size_t dim) {
  Polyhedron p(dim);
  p.add(Constraint{zeros(dim), Relation::LessEq, Rational(-1)});
  return p;
}

Polyhedron &Polyhedron::add(Constraint c) {
  if (c.dim() != dim_)
    throw DimensionError("constraint of dimension " + std::to_string(c.dim()) +
                         " added to a polyhedron of dimension " +
                         std::to_string(dim_));
  if (c.relation == Relation::Equal) {
    rows_.push_back({c.coeffs, Relation::LessEq, c.rhs});
    rows_.push_back({-c.coeffs, Relation::LessEq, -c.rhs});
  } else {
    rows_.push_back(std::move(c));
  }
  return *this;
}

Polyhedron &Polyhedron::add(const std::vector<Constraint> &cs) {
  for (const auto &c : cs)
    add(c);
  return *this;
}

Polyhedron Polyhedron::intersect(const Polyhedron &other) const {
  if (other.dim_ != dim_)
    throw DimensionError("intersecting polyhedra of different dimension");
  Polyhedron p(*this);
  for (const auto &row : other.rows_)
    p.rows_.push_back(row);
  return p;
}

bool Polyhedron::has_strict_rows() const {
  for (const auto &row : rows_)
    if (row.relation == Relation::Less)
      return true;
  return false;
}

bool Polyhedron::contains(const RatVec &x) const {
  for (const auto &row : rows_)
    if (!row.satisfied_by(x))
      return false;
  return true;
}

std::string Polyhedron::dump(const std::vector<std::string> &names) const {
  std::vector<std::string> vars = names;
  if (vars.empty())
    for (std::size_t i = 0; i < dim_; ++i)
      vars.push_back("v" + std::to_string(i + 1));
  std::string out;
  for (const auto &row : rows_) {
    std::string lhs;
    for (std::size_t j = 0; j < dim_; ++j) {
      const Rational &c = row.coeffs[Eigen::Index(j)];
      if (c == 0)
        continue;
      if (!lhs.empty())
        lhs += c < 0 ? " - " : " + ";
      else if (c < 0)
        lhs += "-";
      lhs += to_string(abs(c)) + "*" + vars.at(j);
    }
    if (lhs.empty())
      lhs = "0";
    out += lhs + (row.relation == Relation::Less ? " < " : " <= ") +
           to_string(row.rhs) + "\n";
  }
  return out;
}

// --- LP-backed queries ------------------------------------------------------

Feasibility is_feasible(const Polyhedron &p) {
  if (!p.has_strict_rows()) {
    LpResult r = lp_of(p).feasible_point();
    if (r.status == LpStatus::Infeasible)
      return {};
    record_witness(p.contains(r.point), "is_feasible");
    return {true, r.point};
  }
  // Maximize a common slack t on the strict rows, capped at 1.
  LinearProgram lp(p.dim() + 1);
  const std::size_t t = p.dim();
  for (const auto &row : p.rows()) {
    RatVec coeffs = zeros(p.dim() + 1);
    coeffs.head(Eigen::Index(p.dim())) = row.coeffs;
    if (row.relation == Relation::Less)
      coeffs[Eigen::Index(t)] = 1;
    lp.add_row(coeffs, RowSense::LessEq, row.rhs);
  }
  lp.add_row(std::vector<std::pair<std::size_t, Rational>>{{t, Rational(1)}},
             RowSense::LessEq, Rational(1));
  RatVec objective = zeros(p.dim() + 1);
  objective[Eigen::Index(t)] = 1;
  lp.set_objective(objective);
  LpResult r = lp.maximize();
  if (r.status != LpStatus::Optimal || r.value <= 0)
    return {};
  RatVec x = r.point.head(Eigen::Index(p.dim()));
  record_witness(p.contains(x), "is_feasible");
  return {true, x};
}

OptimizeResult optimize(const Polyhedron &p, const AffineFunc &objective,
                        OptimizeSense sense) {
  require_dim(p, objective.dim(), "optimize");
  require_non_strict(p, "optimize");
  LinearProgram lp = lp_of(p);
  lp.set_objective(objective.coeffs, objective.constant);
  LpResult r = sense == OptimizeSense::Min ? lp.minimize() : lp.maximize();
  return {r.status, r.value, r.point, r.ray};
}

void ParametricAffine::add_unknown(std::size_t j, std::size_t unknown,
                                   const Rational &factor) {
  if (factor == 0)
    return;
  for (auto &[u, c] : terms_.at(j)) {
    if (u == unknown) {
      c += factor;
      return;
    }
  }
  terms_[j].emplace_back(unknown, factor);
}

void ParametricAffine::add_fixed(const AffineFunc &f) {
  if (f.dim() != dim())
    throw DimensionError("parametric template dimension mismatch");
  offset_.head(Eigen::Index(dim())) += f.coeffs;
  offset_[Eigen::Index(dim())] += f.constant;
}

void ParametricAffine::add_scaled(const AffineFunc &f, std::size_t unknown) {
  if (f.dim() != dim())
    throw DimensionError("parametric template dimension mismatch");
  for (std::size_t j = 0; j < dim(); ++j)
    add_unknown(j, unknown, f.coeffs[Eigen::Index(j)]);
  add_unknown(dim(), unknown, f.constant);
}

std::size_t add_farkas_condition(LinearProgram &lp, const Polyhedron &p,
                                 const ParametricAffine &g) {
  require_dim(p, g.dim(), "Farkas encoding");
  require_non_strict(p, "Farkas encoding");
  const std::size_t m = p.num_rows();
  const std::size_t first = lp.add_variables(m, true);
  // Coefficients: g_j(u) + sum_i lambda_i a_ij = 0.
  for (std::size_t j = 0; j < p.dim(); ++j) {
    std::vector<std::pair<std::size_t, Rational>> terms = g.terms()[j];
    for (std::size_t i = 0; i < m; ++i) {
      const Rational &a = p.row(i).coeffs[Eigen::Index(j)];
      if (a != 0)
        terms.emplace_back(first + i, a);
    }
    lp.add_row(terms, RowSense::Equal, -g.offset()[Eigen::Index(j)]);
  }
  // Constant: g_0(u) - sum_i lambda_i b_i >= 0.
  std::vector<std::pair<std::size_t, Rational>> terms = g.terms()[p.dim()];
  for (std::size_t i = 0; i < m; ++i)
    if (p.row(i).rhs != 0)
      terms.emplace_back(first + i, -p.row(i).rhs);
  lp.add_row(terms, RowSense::GreaterEq, -g.offset()[Eigen::Index(p.dim())]);
  return first;
}

FarkasCert extract_certificate(const Polyhedron &p, const AffineFunc &g,
                               const RatVec &solution, std::size_t first) {
  FarkasCert cert;
  cert.multipliers = zeros(p.num_rows());
  Rational combined_rhs = 0;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    cert.multipliers[Eigen::Index(i)] = solution[Eigen::Index(first + i)];
    combined_rhs += cert.multipliers[Eigen::Index(i)] * p.row(i).rhs;
  }
  cert.slack = g.constant - combined_rhs;
  return cert;
}

bool verify_certificate(const Polyhedron &p, const AffineFunc &f,
                        const FarkasCert &cert) {
  if (std::size_t(cert.multipliers.size()) != p.num_rows() ||
      f.dim() != p.dim() || p.has_strict_rows())
    return false;
  RatVec combined = zeros(p.dim());
  Rational combined_rhs = 0;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    const Rational &lambda = cert.multipliers[Eigen::Index(i)];
    if (lambda < 0)
      return false;
    if (lambda == 0)
      continue;
    combined += lambda * p.row(i).coeffs;
    combined_rhs += lambda * p.row(i).rhs;
  }
  if (cert.vacuous)
    return is_zero(combined) && combined_rhs < 0;
  // f = sum lambda_i (b_i - a_i x) + slack.
  return combined == -f.coeffs && cert.slack == f.constant - combined_rhs &&
         cert.slack >= 0;
}

namespace {

void record_verification(const Polyhedron &p, const AffineFunc &f,
                         const FarkasCert &cert, const char *what) {
  if (!verify_certificate(p, f, cert)) {
    ++g_failed;
    throw InternalError(std::string(what) +
                        ": certificate failed exact recombination");
  }
  ++g_verified;
}

FarkasCert infeasibility_certificate(const Polyhedron &p) {
  // lambda >= 0, sum lambda_i a_i = 0, sum lambda_i b_i <= -1.
  LinearProgram lp(0);
  const std::size_t m = p.num_rows();
  lp.add_variables(m, true);
  for (std::size_t j = 0; j < p.dim(); ++j) {
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (std::size_t i = 0; i < m; ++i)
      terms.emplace_back(i, p.row(i).coeffs[Eigen::Index(j)]);
    lp.add_row(terms, RowSense::Equal, Rational(0));
  }
  std::vector<std::pair<std::size_t, Rational>> terms;
  for (std::size_t i = 0; i < m; ++i)
    terms.emplace_back(i, p.row(i).rhs);
  lp.add_row(terms, RowSense::LessEq, Rational(-1));
  LpResult r = lp.feasible_point();
  if (r.status != LpStatus::Optimal)
    throw InternalError("empty polyhedron without an infeasibility certificate");
  FarkasCert cert;
  cert.multipliers = r.point;
  cert.slack = 0;
  cert.vacuous = true;
  return cert;
}

} // namespace

NonnegResult implies_nonneg(const Polyhedron &p, const AffineFunc &f) {
  require_dim(p, f.dim(), "implies_nonneg");
  require_non_strict(p, "implies_nonneg");

  if (!is_feasible(p)) {
    NonnegResult out;
    out.holds = true;
    out.cert = infeasibility_certificate(p);
    record_verification(p, f, out.cert, "implies_nonneg");
    return out;
  }

  LinearProgram farkas(0);
  ParametricAffine g(p.dim());
  g.add_fixed(f);
  std::size_t first = add_farkas_condition(farkas, p, g);
  LpResult r = farkas.feasible_point();
  if (r.status == LpStatus::Optimal) {
    NonnegResult out;
    out.holds = true;
    out.cert = extract_certificate(p, f, r.point, first);
    record_verification(p, f, out.cert, "implies_nonneg");
    return out;
  }

  LinearProgram lp = lp_of(p);
  lp.set_objective(f.coeffs, f.constant);
  LpResult m = lp.minimize();
  NonnegResult out;
  switch (m.status) {
  case LpStatus::Infeasible:
    throw InternalError("feasible polyhedron reported infeasible");
  case LpStatus::Optimal:
    if (m.value >= 0)
      throw InternalError("Farkas system infeasible but minimum is nonnegative");
    out.counterexample = m.point;
    record_witness(p.contains(out.counterexample) && eval_affine(f, out.counterexample) < 0,
                   "implies_nonneg");
    return out;
  case LpStatus::Unbounded: {
    Rational at_point = eval_affine(f, m.point);
    Rational slope = 0;
    for (Eigen::Index j = 0; j < m.ray.size(); ++j)
      slope += f.coeffs[j] * m.ray[j];
    // f(point + s ray) = -1.
    Rational s = at_point < 0 ? Rational(0) : (at_point + 1) / -slope;
    out.counterexample = m.point + s * m.ray;
    record_witness(p.contains(out.counterexample) && eval_affine(f, out.counterexample) < 0,
                   "implies_nonneg");
    return out;
  }
  }
  return out;
}

namespace {

std::optional<MuWitness> combine(const Polyhedron &p,
                                 const std::vector<AffineFunc> &fs,
                                 const AffineFunc &fk, const char *what) {
  require_dim(p, fk.dim(), what);
  for (const auto &f : fs)
    require_dim(p, f.dim(), what);
  require_non_strict(p, what);
  if (!is_feasible(p))
    throw PreconditionError(std::string(what) + " requires a nonempty polyhedron");

  LinearProgram lp(0);
  const std::size_t first_mu = lp.add_variables(fs.size(), true);
  ParametricAffine g(p.dim());
  g.add_fixed(fk);
  for (std::size_t j = 0; j < fs.size(); ++j)
    g.add_scaled(fs[j], first_mu + j);
  add_farkas_condition(lp, p, g);
  LpResult r = lp.feasible_point();
  if (r.status != LpStatus::Optimal)
    return std::nullopt;

  MuWitness w;
  AffineFunc combined = fk;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    w.mus.push_back(r.point[Eigen::Index(first_mu + j)]);
    combined = combined + w.mus.back() * fs[j];
  }
  NonnegResult check = implies_nonneg(p, combined);
  if (!check.holds)
    throw InternalError(std::string(what) +
                        ": multiplier witness does not re-verify");
  w.cert = check.cert;
  return w;
}

} // namespace

std::optional<MuWitness> motzkin_combine_strict(const Polyhedron &p,
                                                const std::vector<AffineFunc> &fs,
                                                const AffineFunc &fk) {
  return combine(p, fs, fk, "motzkin_combine_strict");
}

std::optional<MuWitness> conic_combine_nonneg(const Polyhedron &p,
                                              const std::vector<AffineFunc> &fs) {
  if (fs.empty())
    throw PreconditionError("conic_combine_nonneg needs at least one function");
  std::vector<AffineFunc> head(fs.begin(), fs.end() - 1);
  return combine(p, head, fs.back(), "conic_combine_nonneg");
}

CertificateStats certificate_stats() { return {g_verified.load(), g_failed.load()}; }

// --- set relations ------------------------------------------------------------

bool includes(const Polyhedron &outer, const Polyhedron &inner) {
  if (outer.dim() != inner.dim())
    throw DimensionError("comparing polyhedra of different dimension");
  for (const auto &row : outer.rows()) {
    // Points of `inner` violating `row`.
    Constraint negation{-row.coeffs,
                        row.relation == Relation::Less ? Relation::LessEq
                                                       : Relation::Less,
                        -row.rhs};
    if (is_feasible(inner.with(negation)))
      return false;
  }
  return true;
}

bool same_set(const Polyhedron &a, const Polyhedron &b) {
  return includes(a, b) && includes(b, a);
}

std::vector<std::size_t> implicit_equalities(const Polyhedron &p) {
  require_non_strict(p, "implicit_equalities");
  std::vector<std::size_t> out;
  if (!is_feasible(p))
    return out;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    const auto &row = p.row(i);
    // row . x >= rhs over P?
    AffineFunc reverse{row.coeffs, -row.rhs};
    if (implies_nonneg(p, reverse).holds)
      out.push_back(i);
  }
  return out;
}

Polyhedron remove_redundant(const Polyhedron &p) {
  require_non_strict(p, "remove_redundant");
  if (!is_feasible(p))
    return Polyhedron::empty(p.dim());
  std::vector<bool> keep(p.num_rows(), true);
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    Polyhedron others(p.dim());
    for (std::size_t j = 0; j < p.num_rows(); ++j)
      if (j != i && keep[j])
        others.add(p.row(j));
    if (implies_nonneg(others, p.row(i).slack()).holds)
      keep[i] = false;
  }
  Polyhedron out(p.dim());
  for (std::size_t i = 0; i < p.num_rows(); ++i)
    if (keep[i])
      out.add(p.row(i));
  return out;
}

std::vector<Constraint> added_constraints(const Polyhedron &original,
                                          const Polyhedron &hull) {
  std::vector<Constraint> out;
  Polyhedron reduced = remove_redundant(hull);
  for (const auto &row : reduced.rows())
    if (!implies_nonneg(original, row.slack()).holds)
      out.push_back(row);
  return out;
}

} // namespace mlrf
