#pragma once

#include "easyqg/rational.hpp"

namespace easyqg {

/// Exact inverse of a square integer matrix. Inverts modulo word-size primes,
/// lifts by CRT and rational reconstruction, and returns the candidate only
/// once W * A = I has been checked exactly. If a prime divides the
/// determinant the fraction-free Gauss-Jordan (Bareiss) path decides.
/// Throws SingularMatrixError when the determinant vanishes.
Matrix<Rational> invert_exact(const Matrix<Integer>& a);

/// Determinant by Bareiss elimination; 0 for singular input.
Integer determinant(const Matrix<Integer>& a);

Matrix<Rational> multiply(const Matrix<Rational>& a, const Matrix<Integer>& b);

}  // namespace easyqg
