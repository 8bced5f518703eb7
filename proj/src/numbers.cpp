#include "endspace/numbers.hpp"

#include <utility>

namespace endspace {

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw domain_error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw domain_error("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw domain_error("malformed rational literal: " + s);
  }
}

std::string format_rational(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

int sign_of(const Rat& r) { return r.sign(); }
int sign_of(const Int& n) { return n.sign(); }

Int int_sqrt(const Int& n) {
  if (n < 0) throw domain_error("int_sqrt of negative");
  return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  root = int_sqrt(n);
  return root * root == n;
}

std::string format_gaussq(const GaussQ& z) {
  if (z.im == 0) return format_rational(z.re);
  std::string out = format_rational(z.re);
  out += (z.im > 0) ? "+" : "-";
  Rat mag = abs(z.im);
  if (mag != 1) out += format_rational(mag) + "*";
  out += "i";
  return out;
}

Quad::Quad(Rat a_, Rat b_, Int d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
  if (d < 0) throw domain_error("Quad requires nonnegative radicand");
  if (b == 0 || d == 0) {
    b = 0;
    d = 0;
    return;
  }
  // Pull square factors out of the radicand so equal values share one
  // representation: prime factors of the square part up to 2^16, then a
  // perfect-square check catches what remains.
  for (Int f = 2; f <= 65536; ++f) {
    Int ff = f * f;
    if (ff > d) break;
    while (d % ff == 0) {
      d /= ff;
      b *= Rat(f);
    }
  }
  Int root;
  if (is_perfect_square(d, root)) {
    a += b * Rat(root);
    b = 0;
    d = 0;
  }
}

Rat Quad::rational() const {
  if (d != 0) throw domain_error("Quad value is irrational");
  return a;
}

// Require a common radicand, treating rational values (d == 0) as belonging
// to every field. Returns the shared d.
static Int common_d(const Quad& x, const Quad& y) {
  if (x.d == 0) return y.d;
  if (y.d == 0 || x.d == y.d) return x.d;
  throw domain_error("Quad arithmetic across different radicands");
}

Quad Quad::operator+(const Quad& o) const {
  return Quad(a + o.a, b + o.b, common_d(*this, o));
}

Quad Quad::operator-(const Quad& o) const {
  return Quad(a - o.a, b - o.b, common_d(*this, o));
}

Quad Quad::operator-() const { return Quad(-a, -b, d); }

Quad Quad::operator*(const Quad& o) const {
  Int dd = common_d(*this, o);
  // (a + b√d)(a' + b'√d) = aa' + bb'd + (ab' + a'b)√d
  return Quad(a * o.a + b * o.b * Rat(dd), a * o.b + o.a * b, dd);
}

Quad Quad::operator/(const Quad& o) const {
  if (o.a == 0 && o.b == 0) throw domain_error("Quad division by zero");
  Int dd = common_d(*this, o);
  Rat n = o.a * o.a - o.b * o.b * Rat(dd);  // field norm of divisor
  Quad oc(o.a, -o.b, dd);
  Quad prod = *this * oc;
  return Quad(prod.a / n, prod.b / n, dd);
}

bool Quad::operator==(const Quad& o) const {
  // canonical form makes this a component comparison once radicands agree
  if (a != o.a || b != o.b) return false;
  return b == 0 || d == o.d;
}

int Quad::sgn() const {
  if (b == 0) return a.sign();
  if (a == 0) return b.sign();
  // a and b both nonzero; compare |a| with |b|*sqrt(d) exactly via squares.
  int sa = a.sign(), sb = b.sign();
  if (sa == sb) return sa;
  // opposite signs: sign is that of the term with larger absolute value
  Rat a2 = a * a, b2d = b * b * Rat(d);
  if (a2 == b2d) return 0;  // cannot happen in canonical form (d non-square)
  return (a2 > b2d) ? sa : sb;
}

Quad Quad::pow(long e) const {
  Quad base = *this;
  if (e < 0) {
    base = Quad(Rat(1)) / base;
    e = -e;
  }
  Quad acc{Rat(1)};
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string format_quad(const Quad& q) {
  if (q.d == 0) return format_rational(q.a);
  const bool neg = q.b < 0;
  std::string out;
  if (q.a != 0)
    out = format_rational(q.a) + (neg ? " - " : " + ");
  else if (neg)
    out = "-";
  Rat mag = abs(q.b);
  if (mag != 1) out += format_rational(mag) + "*";
  out += "sqrt(" + q.d.str() + ")";
  return out;
}

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw domain_error("interval endpoints out of order");
}

int RatInterval::certified_sign() const {
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  return 0;
}

RatInterval RatInterval::operator+(const RatInterval& o) const {
  return {lo + o.lo, hi + o.hi};
}

RatInterval RatInterval::operator-(const RatInterval& o) const {
  return {lo - o.hi, hi - o.lo};
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rat c[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
  Rat mn = c[0], mx = c[0];
  for (int i = 1; i < 4; ++i) {
    if (c[i] < mn) mn = c[i];
    if (c[i] > mx) mx = c[i];
  }
  return {mn, mx};
}

RatInterval RatInterval::operator/(const RatInterval& o) const {
  if (o.contains_zero()) throw domain_error("interval division by interval containing zero");
  RatInterval inv{Rat(1) / o.hi, Rat(1) / o.lo};
  return *this * inv;
}

}  // namespace endspace
