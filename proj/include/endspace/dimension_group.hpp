#pragma once
// The dimension group of an eventually periodic Bratteli diagram: the
// direct limit Z -> Z^{m_1} -> Z^{m_2} -> ... along the A_i with the
// coordinatewise cone and order unit [1]. Element equality, exact
// positivity decisions with certificates, rank, and the Perron embedding
// into the reals.

#include <cstddef>
#include <vector>

#include "endspace/bratteli.hpp"
#include "endspace/linalg.hpp"
#include "endspace/numbers.hpp"

namespace endspace {

struct DimensionGroupPresentation {
  BratteliDiagram diagram;  // must be eventually periodic
};
DimensionGroupPresentation make_presentation(const BratteliDiagram& d);

struct DimensionGroupElement {
  std::size_t level = 0;
  Vec vector;
  bool operator==(const DimensionGroupElement&) const = default;
};
DimensionGroupElement order_unit();  // (0, [1])

// Same limit element, represented at a deeper level.
DimensionGroupElement push(const DimensionGroupPresentation& p, const DimensionGroupElement& el,
                           std::size_t to_level);

// Exact equality in the limit: push both to a common level past the
// prefix and test the difference against the stabilized kernel of the
// period matrix (integer kernels ascend and stabilize).
bool equals(const DimensionGroupPresentation& p, const DimensionGroupElement& a,
            const DimensionGroupElement& b);

// Rational rank of the limit group = stable rank of the period matrix.
std::size_t rank(const DimensionGroupPresentation& p);

enum class Positivity { Positive, NotPositive, Unknown };
enum class PositivityCertificate {
  NonnegativeVector,   // a pushforward with all coordinates >= 0 (Positive)
  PerronFunctional,    // primitive period matrix, l·v < 0 (NotPositive)
  PerronBoundary,      // l·v = 0 but v is not eventually zero (NotPositive)
  UnipotentClosedForm, // unipotent-triangular iteration stays negative (NotPositive)
  DominatedNegative,   // pushforward <= 0, nonzero, not eventually zero (NotPositive)
  SearchExhausted      // Unknown: bounded scan only
};
struct PositivityVerdict {
  Positivity status;
  PositivityCertificate certificate;
  std::size_t witness_level = 0;  // Positive: level of the nonnegative pushforward
  std::size_t bound = 0;          // Unknown: the exhausted bound
};
// Decides membership in the positive cone. The scan of pushforwards is
// guaranteed to terminate whenever the period matrix is primitive (Perron
// sign analysis) or unipotent-triangular (closed form); otherwise the
// element is scanned `bound` levels and Unknown is an honest outcome.
PositivityVerdict is_positive(const DimensionGroupPresentation& p,
                              const DimensionGroupElement& el, std::size_t bound = 64);

// Exact Perron data of the period matrix Q (which must be primitive):
// eigenvalue lambda, left eigenvector l normalized to last entry 1, and
// the anchor scale making the order unit land on the values reported in
// the source examples (1 for rational lambda, lambda^{-ceil(p/c)} for
// quadratic lambda). When lambda has degree >= 3 the data is carried as
// certified rational intervals instead (exact = false).
struct PFEmbedding {
  std::size_t base_level = 0;  // first level of the periodic part
  std::size_t period = 1;
  Mat period_matrix;
  bool exact = false;
  Quad lambda;
  std::vector<Quad> ell;
  Quad anchor;
  RatInterval lambda_iv;
  std::vector<RatInterval> ell_iv;
};
PFEmbedding pf_embedding(const DimensionGroupPresentation& p);

// Value of the element under the embedding:
// anchor * lambda^{-j} * (l · pushforward at level base+j*period).
// Exact flavor requires emb.exact; the interval flavor always works but
// may straddle zero.
Quad pf_evaluate(const PFEmbedding& emb, const DimensionGroupPresentation& p,
                 const DimensionGroupElement& el);
RatInterval pf_evaluate_interval(const PFEmbedding& emb, const DimensionGroupPresentation& p,
                                 const DimensionGroupElement& el);

}  // namespace endspace
