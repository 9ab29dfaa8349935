#include "linalg.hpp"

#include "mlrf/errors.hpp"

namespace mlrf::detail {

namespace {

Rational dot(const RatVec &a, const RatVec &b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0)
      s += a[i] * b[i];
  return s;
}

struct Ray {
  RatVec v;
  /// zero[c] is true when inserted constraint c is tight on v.
  std::vector<bool> zero;
};

} // namespace

ConeGenerators cone_generators(const std::vector<RatVec> &rows,
                               std::size_t dim) {
  std::vector<RatVec> lines;
  for (std::size_t i = 0; i < dim; ++i) {
    RatVec e = zeros(dim);
    e[Eigen::Index(i)] = 1;
    lines.push_back(e);
  }
  std::vector<Ray> rays;
  std::size_t inserted = 0;

  for (const RatVec &h : rows) {
    if (std::size_t(h.size()) != dim)
      throw DimensionError("cone constraint has the wrong dimension");
    if (is_zero(h))
      continue;

    std::size_t pick = lines.size();
    Rational hl;
    for (std::size_t k = 0; k < lines.size(); ++k) {
      hl = dot(h, lines[k]);
      if (hl != 0) {
        pick = k;
        break;
      }
    }

    if (pick < lines.size()) {
      // Split off one line; every generator becomes tight on h.
      RatVec l = lines[pick];
      lines.erase(lines.begin() + std::ptrdiff_t(pick));
      for (auto &other : lines) {
        Rational s = dot(h, other);
        if (s != 0)
          other -= (s / hl) * l;
      }
      for (auto &r : rays) {
        Rational s = dot(h, r.v);
        if (s != 0) {
          r.v -= (s / hl) * l;
          make_primitive(r.v);
        }
        r.zero.push_back(true);
      }
      Ray fresh{hl > 0 ? RatVec(-l) : l, std::vector<bool>(inserted, true)};
      make_primitive(fresh.v);
      fresh.zero.push_back(false);
      rays.push_back(std::move(fresh));
      ++inserted;
      continue;
    }

    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s[k] = dot(h, rays[k].v);
      if (s[k] > 0)
        pos.push_back(k);
      else if (s[k] < 0)
        neg.push_back(k);
    }
    if (pos.empty()) {
      for (std::size_t k = 0; k < rays.size(); ++k)
        rays[k].zero.push_back(s[k] == 0);
      ++inserted;
      continue;
    }

    // Minimum number of common tight constraints for adjacency.
    const std::size_t need =
        dim >= lines.size() + 2 ? dim - lines.size() - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (s[k] <= 0) {
        Ray r = rays[k];
        r.zero.push_back(s[k] == 0);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        std::vector<bool> common(inserted);
        std::size_t count = 0;
        for (std::size_t c = 0; c < inserted; ++c) {
          common[c] = rays[p].zero[c] && rays[n].zero[c];
          count += common[c];
        }
        if (count < need)
          continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n)
            continue;
          bool covers = true;
          for (std::size_t c = 0; c < inserted && covers; ++c)
            if (common[c] && !rays[k].zero[c])
              covers = false;
          if (covers)
            adjacent = false;
        }
        if (!adjacent)
          continue;
        Ray r{s[p] * rays[n].v - s[n] * rays[p].v, common};
        make_primitive(r.v);
        r.zero.push_back(true);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    ++inserted;
  }

  ConeGenerators out;
  out.lines = std::move(lines);
  for (auto &l : out.lines)
    make_primitive(l);
  for (auto &r : rays)
    out.rays.push_back(std::move(r.v));
  return out;
}

RatMat inverse(const RatMat &m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n)
    throw DimensionError("inverse of a non-square matrix");
  RatMat a = m;
  RatMat inv = RatMat::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c) == 0)
      ++p;
    if (p == n)
      throw InternalError("inverse of a singular matrix");
    if (p != c) {
      a.row(p).swap(a.row(c));
      inv.row(p).swap(inv.row(c));
    }
    Rational piv = a(c, c);
    a.row(c) /= piv;
    inv.row(c) /= piv;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0)
        continue;
      Rational f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  return inv;
}

std::vector<std::size_t> independent_prefix(const std::vector<RatVec> &vs,
                                            std::size_t limit) {
  std::vector<std::size_t> chosen;
  std::vector<RatVec> basis;
  std::vector<Eigen::Index> lead;
  for (std::size_t i = 0; i < vs.size() && chosen.size() < limit; ++i) {
    RatVec v = vs[i];
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (v[lead[k]] != 0)
        v -= v[lead[k]] * basis[k];
    Eigen::Index l = 0;
    while (l < v.size() && v[l] == 0)
      ++l;
    if (l == v.size())
      continue;
    v /= v[l];
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (basis[k][l] != 0)
        basis[k] -= basis[k][l] * v;
    basis.push_back(v);
    lead.push_back(l);
    chosen.push_back(i);
  }
  return chosen;
}

ColumnEchelon column_echelon(const RatMat &a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  ColumnEchelon e;
  e.L = a;
  e.U = RatMat::Identity(cols, cols);
  e.U_inv = RatMat::Identity(cols, cols);
  e.pivot.assign(std::size_t(rows), std::nullopt);

  auto swap_cols = [&](Eigen::Index j, Eigen::Index k) {
    if (j == k)
      return;
    e.L.col(j).swap(e.L.col(k));
    e.U.col(j).swap(e.U.col(k));
    e.U_inv.row(j).swap(e.U_inv.row(k));
  };
  // col_j -= q col_r
  auto sub_col = [&](Eigen::Index j, Eigen::Index r, const Rational &q) {
    e.L.col(j) -= q * e.L.col(r);
    e.U.col(j) -= q * e.U.col(r);
    e.U_inv.row(r) += q * e.U_inv.row(j);
  };
  auto negate_col = [&](Eigen::Index r) {
    e.L.col(r) = -e.L.col(r);
    e.U.col(r) = -e.U.col(r);
    e.U_inv.row(r) = -e.U_inv.row(r);
  };

  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < rows && rank < cols; ++i) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index j = rank; j < cols; ++j)
        if (e.L(i, j) != 0 && (best < 0 || abs(e.L(i, j)) < abs(e.L(i, best))))
          best = j;
      if (best < 0)
        break;
      swap_cols(rank, best);
      bool done = true;
      for (Eigen::Index j = rank + 1; j < cols; ++j) {
        if (e.L(i, j) == 0)
          continue;
        Rational q(floor(e.L(i, j) / e.L(i, rank)));
        sub_col(j, rank, q);
        if (e.L(i, j) != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (e.L(i, rank) == 0)
      continue;
    if (e.L(i, rank) < 0)
      negate_col(rank);
    e.pivot[std::size_t(i)] = std::size_t(rank);
    ++rank;
  }
  e.rank = std::size_t(rank);
  return e;
}

void normalize_integer_row(RatVec &row, Rational &rhs) {
  Rational factor = make_primitive(row);
  rhs *= factor;
}

} // namespace mlrf::detail
