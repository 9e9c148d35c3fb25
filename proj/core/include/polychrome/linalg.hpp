#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polychrome/exactnum.hpp"

namespace polychrome {

using Vector = std::vector<Scalar>;
using Matrix = std::vector<Vector>;

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
Scalar squared_norm(std::span<const Scalar> a);
Vector add(std::span<const Scalar> a, std::span<const Scalar> b);
Vector subtract(std::span<const Scalar> a, std::span<const Scalar> b);
Vector scale(std::span<const Scalar> a, const Scalar& factor);
bool is_zero_vector(std::span<const Scalar> a);

struct RowEchelon {
  Matrix rows;                       // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. Exact backends pivot on the first nonzero
/// entry; Float64 matrices use partial pivoting with float_epsilon().
RowEchelon reduced_row_echelon(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column (free entry = 1).
Matrix nullspace(const Matrix& m, std::size_t columns);

Scalar determinant(Matrix m);

/// Some solution of m x = rhs, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);

/// Pairwise-orthogonal (not normalized) basis of span(vectors), dropping
/// dependent inputs; stays inside the exact field.
Matrix gram_schmidt(const Matrix& vectors);

/// Component of v orthogonal to the span of an orthogonal basis.
Vector orthogonal_residual(std::span<const Scalar> v, const Matrix& orthogonal_basis);

}  // namespace polychrome
