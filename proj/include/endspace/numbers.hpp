#pragma once
// Exact scalar types: arbitrary-precision integers/rationals, Gaussian
// rationals, real quadratic field elements, and rational intervals.
// No floating point anywhere: every comparison below is exact.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace endspace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when an operation's domain requirements are not met (bad input,
// unsupported configuration). The CLI maps these to exit status 1.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "p/q" or "p". Throws domain_error on malformed input or q == 0.
Rat parse_rational(const std::string& s);
std::string format_rational(const Rat& r);

int sign_of(const Rat& r);
int sign_of(const Int& n);

// floor(sqrt(n)) for n >= 0
Int int_sqrt(const Int& n);
bool is_perfect_square(const Int& n, Int& root);

// Gaussian rational a + b*i
struct GaussQ {
  Rat re, im;

  GaussQ() = default;
  GaussQ(Rat r) : re(std::move(r)), im(0) {}
  GaussQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  static GaussQ one() { return GaussQ(Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussQ conj() const { return GaussQ(re, -im); }

  GaussQ operator+(const GaussQ& o) const { return {re + o.re, im + o.im}; }
  GaussQ operator-(const GaussQ& o) const { return {re - o.re, im - o.im}; }
  GaussQ operator-() const { return {-re, -im}; }
  GaussQ operator*(const GaussQ& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
  bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
};
std::string format_gaussq(const GaussQ& z);

// a + b*sqrt(d) with a, b rational and d a nonnegative integer.
// Canonical form: if the sqrt part vanishes (b == 0 or d is a perfect
// square) it is folded into a and d becomes 0. Mixing two different
// irrational d's is a domain_error.
struct Quad {
  Rat a, b;
  Int d;

  Quad() : a(0), b(0), d(0) {}
  Quad(Rat r) : a(std::move(r)), b(0), d(0) {}
  Quad(Rat a_, Rat b_, Int d_);

  bool is_rational() const { return d == 0; }
  Rat rational() const;  // throws if not rational

  Quad operator+(const Quad& o) const;
  Quad operator-(const Quad& o) const;
  Quad operator-() const;
  Quad operator*(const Quad& o) const;
  Quad operator/(const Quad& o) const;
  bool operator==(const Quad& o) const;
  Quad conj() const { return Quad(a, -b, d); }  // a - b*sqrt(d)
  Rat norm() const { return a * a - b * b * Rat(d); }

  // exact sign of a + b*sqrt(d)
  int sgn() const;
  bool operator<(const Quad& o) const { return (*this - o).sgn() < 0; }
  bool operator>(const Quad& o) const { return (*this - o).sgn() > 0; }

  Quad pow(long e) const;  // integer exponent, negative allowed (nonzero base)
};
std::string format_quad(const Quad& q);

// Closed interval with rational endpoints; basic outward arithmetic.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat v) : lo(v), hi(std::move(v)) {}
  RatInterval(Rat l, Rat h);

  Rat width() const { return hi - lo; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  // +1 / -1 when the sign is certified, 0 when the interval straddles zero
  int certified_sign() const;

  RatInterval operator+(const RatInterval& o) const;
  RatInterval operator-(const RatInterval& o) const;
  RatInterval operator*(const RatInterval& o) const;
  RatInterval operator/(const RatInterval& o) const;  // o must exclude zero
};

}  // namespace endspace
