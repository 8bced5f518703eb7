#pragma once
// Small exact integer linear algebra used by the Bratteli-diagram and
// dimension-group machinery: products, rank, characteristic polynomial,
// and structural tests (primitivity, unipotent-triangularity).

#include <cstddef>
#include <vector>

#include "endspace/numbers.hpp"

namespace endspace {

using Vec = std::vector<Int>;
using Mat = std::vector<std::vector<Int>>;  // row-major, rows() x cols()

std::size_t rows(const Mat& m);
std::size_t cols(const Mat& m);
Mat identity(std::size_t n);
bool is_zero(const Vec& v);
bool is_nonneg(const Vec& v);

Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& v);
bool mat_eq(const Mat& a, const Mat& b);

// rank over Q, via fraction-free Gaussian elimination
std::size_t mat_rank(const Mat& m);

// Characteristic polynomial coefficients c_0..c_n of det(lambda*I - A),
// leading coefficient c_n = 1, by the Faddeev-LeVerrier recurrence.
std::vector<Rat> charpoly(const Mat& a);

// Matrix coefficients M_0..M_{n-1} of adj(lambda*I - A) =
// sum_k M_k lambda^{n-1-k}, from the same recurrence.
std::vector<std::vector<std::vector<Rat>>> adjugate_poly(const Mat& a);

// A nonnegative square matrix is primitive iff some power is entrywise
// positive; Wielandt's bound (n-1)^2 + 1 caps the exponent searched.
bool is_primitive(const Mat& a);

// True when the diagonal is all ones and the digraph of off-diagonal
// nonzero entries is acyclic (so A = I + N with N nilpotent up to a
// simultaneous reordering).
bool is_unipotent_triangular(const Mat& a);

// Smallest k >= 1 with rank(A^k) == rank(A^{k+1}), and that stable rank.
struct StablePower {
  std::size_t exponent;
  std::size_t rank;
};
StablePower stable_power(const Mat& a);

}  // namespace endspace
