#include "polychrome/linalg.hpp"

#include <cmath>

#include "polychrome/error.hpp"

namespace polychrome {

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw PreconditionError("dot: dimension mismatch");
  Scalar sum;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_rational() && a[i].as_rational().is_zero()) continue;
    sum += a[i] * b[i];
  }
  return sum;
}

Scalar squared_norm(std::span<const Scalar> a) { return dot(a, a); }

Vector add(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw PreconditionError("add: dimension mismatch");
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Vector subtract(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw PreconditionError("subtract: dimension mismatch");
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(std::span<const Scalar> a, const Scalar& factor) {
  Vector r(a.begin(), a.end());
  for (auto& x : r) x *= factor;
  return r;
}

bool is_zero_vector(std::span<const Scalar> a) {
  for (const auto& x : a) {
    if (!x.is_zero()) return false;
  }
  return true;
}

namespace {

bool any_float(const Matrix& m) {
  for (const auto& row : m) {
    for (const auto& x : row) {
      if (x.is_float()) return true;
    }
  }
  return false;
}

}  // namespace

RowEchelon reduced_row_echelon(Matrix m) {
  RowEchelon out;
  const std::size_t rows = m.size();
  if (rows == 0) return out;
  const std::size_t cols = m.front().size();
  const bool floating = any_float(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    if (floating) {
      double best = 0.0;
      for (std::size_t i = r; i < rows; ++i) {
        const double v = std::fabs(m[i][c].to_double());
        if (!m[i][c].is_zero() && v > best) {
          best = v;
          pivot = i;
        }
      }
    } else {
      for (std::size_t i = r; i < rows; ++i) {
        if (!m[i][c].is_zero()) {
          pivot = i;
          break;
        }
      }
    }
    if (pivot == rows) {
      if (floating) {
        for (std::size_t i = r; i < rows; ++i) m[i][c] = Scalar::from_double(0.0);
      }
      continue;
    }
    std::swap(m[r], m[pivot]);
    const Scalar inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Scalar factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (m[r][j].is_zero()) continue;
        m[i][j] -= factor * m[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return reduced_row_echelon(m).pivots.size(); }

Matrix nullspace(const Matrix& m, std::size_t columns) {
  Matrix basis;
  if (m.empty()) {
    for (std::size_t f = 0; f < columns; ++f) {
      Vector v(columns, Scalar(0));
      v[f] = Scalar(1);
      basis.push_back(std::move(v));
    }
    return basis;
  }
  const RowEchelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    Vector v(columns, Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar determinant(Matrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw PreconditionError("determinant: matrix is not square");
  }
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t i = c; i < n; ++i) {
      if (!m[i][c].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) return m.empty() ? Scalar(1) : m[0][0] * Scalar(0);
    if (pivot != c) {
      std::swap(m[c], m[pivot]);
      det = -det;
    }
    det *= m[c][c];
    const Scalar inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const Scalar factor = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= factor * m[c][j];
    }
  }
  return det;
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
  if (m.size() != rhs.size()) throw PreconditionError("solve: row count mismatch");
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  Matrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
  const RowEchelon e = reduced_row_echelon(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  Vector x(cols, Scalar(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rows[i][cols];
  return x;
}

Vector orthogonal_residual(std::span<const Scalar> v, const Matrix& orthogonal_basis) {
  Vector r(v.begin(), v.end());
  for (const auto& b : orthogonal_basis) {
    const Scalar coeff = dot(r, b) / squared_norm(b);
    if (coeff.is_zero()) continue;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= coeff * b[i];
  }
  return r;
}

Matrix gram_schmidt(const Matrix& vectors) {
  Matrix basis;
  for (const auto& v : vectors) {
    Vector r = orthogonal_residual(v, basis);
    if (!is_zero_vector(r)) basis.push_back(std::move(r));
  }
  return basis;
}

}  // namespace polychrome
