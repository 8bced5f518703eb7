#pragma once
// Higman-Thompson groups G_{n,1} as prefix maps (bijections between two
// complete prefix codes over {0..n-1}), their classification into F / T /
// V, germs of their action on the n-ary end space, and the faithful
// representation g -> sum S_{v_i} S_{u_i}* in the exact *-algebra of
// Cuntz partial-isometry terms with Gaussian rational coefficients.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "endspace/groupoid.hpp"
#include "endspace/linalg.hpp"
#include "endspace/numbers.hpp"

namespace endspace {

// Words are digit strings over {0..n-1}, n <= 10.
struct PrefixMap {
  int n = 2;
  // (domain word, range word), sorted by domain; reduced canonical form
  std::vector<std::pair<std::string, std::string>> pairs;
  bool operator==(const PrefixMap&) const = default;
};

// Validates both codes (complete prefix codes of equal size) and returns
// the reduced canonical form: every full sibling family u0..u(n-1) ->
// v0..v(n-1) collapses to u -> v, repeatedly; pairs sorted by domain.
PrefixMap make_prefix_map(int n, std::vector<std::pair<std::string, std::string>> pairs);
PrefixMap identity_map(int n);
bool is_identity(const PrefixMap& g);

PrefixMap compose(const PrefixMap& g, const PrefixMap& h);  // g after h
PrefixMap invert(const PrefixMap& g);

enum class ThompsonClass { F, T, V };
// F iff the pairing is order preserving between the sorted codes, T iff a
// cyclic rotation of it, else V.
ThompsonClass classify(const PrefixMap& g);

// Action on eventually periodic points of the n-ary end space.
EndPoint apply_endpoint(const PrefixMap& g, const EndPoint& x);
// Germ at x: the pair (domain word prefixing x -> its range word);
// germ_shift gives the similarity modulus exponent |u| - |v|.
Germ germ_at(const PrefixMap& g, const EndPoint& x);

// Uniformly random reduced element: the two codes are grown by the same
// number of leaf splits (words kept within max_depth) and paired by a
// random permutation. Deterministic for a given generator state.
PrefixMap random_prefix_map(std::mt19937_64& gen, int n, std::size_t max_depth);

// ---- exact Cuntz-algebra terms ----
struct CuntzAlgebraElement {
  int n = 2;
  // (u, v) -> coefficient of S_u S_v*; zero coefficients never stored
  std::map<std::pair<std::string, std::string>, GaussQ> terms;
};

CuntzAlgebraElement make_element(int n,
                                 std::vector<std::tuple<std::string, std::string, GaussQ>> terms);
CuntzAlgebraElement unit_element(int n);  // S_eps S_eps*

CuntzAlgebraElement mul(const CuntzAlgebraElement& a, const CuntzAlgebraElement& b);
CuntzAlgebraElement star(const CuntzAlgebraElement& a);
CuntzAlgebraElement add(const CuntzAlgebraElement& a, const CuntzAlgebraElement& b);
// Exact equality: terms are expanded to uniform depth within each weight
// class |u| - |v| (S_u S_v* = sum_a S_{ua} S_{va}*) and compared.
bool equals(const CuntzAlgebraElement& a, const CuntzAlgebraElement& b);
std::string format_element(const CuntzAlgebraElement& a);

// The action on basis words of the given length (>= every |v| in a):
// S_u S_v* e_w = e_{u w'} when w = v w', else 0. Returns w -> image
// vector. Independent of the expansion used by equals; tests validate
// equals against this action.
std::map<std::string, std::map<std::string, GaussQ>> act_on_words(const CuntzAlgebraElement& a,
                                                                  std::size_t length);

// rho(g) = sum_i S_{v_i} S_{u_i}*: the characteristic functions of the
// graph bisections; a faithful unitary representation.
CuntzAlgebraElement rho(const PrefixMap& g);

struct RepresentationReport {
  bool homomorphism;     // rho(g h) = rho(g) rho(h)
  bool star_compatible;  // rho(g)* = rho(g^{-1}), both arguments
  bool unitary;          // a* a = 1 = a a*, both arguments
  bool faithful;         // rho = unit exactly for identity maps, both arguments
  bool ok() const { return homomorphism && star_compatible && unitary && faithful; }
};
RepresentationReport verify_representation(const PrefixMap& g, const PrefixMap& h);

// Permutation matrix of the pair-groupoid representation of S_n on the
// n-point space: column i carries e_i to e_{perm[i]}.
Mat finite_pair_representation(int n, const std::vector<std::size_t>& perm);

// ---- stock elements (n = 2) ----
PrefixMap thompson_x0();   // F generator {00->0, 01->10, 1->11}
PrefixMap thompson_x1();   // F generator {0->0, 100->10, 101->110, 11->111}
PrefixMap thompson_c();    // T rotation {0->10, 10->11, 11->0}, order 3
PrefixMap thompson_pi0();  // V transposition {00->00, 01->10, 10->01, 11->11}

}  // namespace endspace
