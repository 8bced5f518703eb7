#include "endspace/dimension_group.hpp"

#include <algorithm>
#include <vector>

namespace endspace {

namespace {

// Product of one full period of step matrices starting at `level`
// (level >= prefix size, so the product is square).
Mat period_map(const BratteliDiagram& d, std::size_t level) {
  Mat q = identity(level_size(d, level));
  for (std::size_t i = 0; i < d.cycle.size(); ++i) q = mat_mul(step_matrix(d, level + i), q);
  return q;
}

// Does the vector die (become zero) under repeated pushes? Kernels of the
// iterated period map ascend and stabilize within dim steps.
bool dies(const BratteliDiagram& d, Vec v, std::size_t level) {
  const std::size_t m = v.size();
  for (std::size_t k = 0; k <= m; ++k) {
    if (is_zero(v)) return true;
    if (k == m) break;
    for (std::size_t i = 0; i < d.cycle.size(); ++i) {
      v = mat_apply(step_matrix(d, level), v);
      ++level;
    }
  }
  return false;
}

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x) {
  Rat acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

// Certified nested enclosure of the Perron root of a primitive matrix
// via the Collatz-Wielandt ratios of the power iterates of the all-ones
// vector: min_i (Qv)_i/v_i is nondecreasing, max_i nonincreasing, and
// both converge to lambda.
RatInterval perron_enclosure(const Mat& q, const Rat& eps) {
  Vec v(rows(q), 1);
  RatInterval enc(Rat(0), Rat(Int(1) << 256));
  for (int iter = 0; iter < 100000; ++iter) {
    Vec w = mat_apply(q, v);
    Rat lo = Rat(w[0]) / Rat(v[0]), hi = lo;
    for (std::size_t i = 1; i < w.size(); ++i) {
      Rat r = Rat(w[i]) / Rat(v[i]);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    enc = RatInterval(std::max(enc.lo, lo), std::min(enc.hi, hi));
    if (enc.width() <= eps) return enc;
    v = std::move(w);
  }
  throw domain_error("perron enclosure did not converge");
}

// sqrt(d) enclosed to ~15 decimal digits
RatInterval enclose_sqrt(const Int& d) {
  static const Int scale = []{ Int s = 1; for (int i = 0; i < 15; ++i) s *= 10; return s; }();
  const Int r = int_sqrt(d * scale * scale);
  return RatInterval(Rat(r, scale), Rat(r + 1, scale));
}

RatInterval enclose_quad(const Quad& q) {
  if (q.d == 0) return RatInterval(q.a);
  return RatInterval(q.a) + RatInterval(q.b) * enclose_sqrt(q.d);
}

RatInterval iv_pow(const RatInterval& base, long e) {
  RatInterval b = base;
  if (e < 0) {
    b = RatInterval(Rat(1)) / b;
    e = -e;
  }
  RatInterval acc{Rat(1)};
  for (long k = 0; k < e; ++k) acc = acc * b;
  return acc;
}

struct PerronData {
  bool exact = false;
  Quad lambda;
  std::vector<Quad> ell;
  RatInterval lambda_iv;
  std::vector<RatInterval> ell_iv;
};

// Exact-if-possible Perron data of a primitive matrix: the eigenvalue is
// recognized exactly when its minimal polynomial has degree <= 2 (monic
// integer rational roots are integers; quadratic factors have integer
// coefficients dividing into the characteristic polynomial).
PerronData perron_data(const Mat& q) {
  PerronData pd;
  const std::size_t n = rows(q);
  const auto cp = charpoly(q);  // ascending, monic

  // lambda != 0, so x-factors of the characteristic polynomial are noise
  std::vector<Rat> poly(cp.begin(), cp.end());
  while (!poly.empty() && poly.front() == 0) poly.erase(poly.begin());

  static const Rat kEps = Rat(1, Int(1) << 64);
  const RatInterval enc = perron_enclosure(q, kEps);
  pd.lambda_iv = enc;

  // degree-1 factor: integer root inside the enclosure
  const Int lo_floor = static_cast<Int>(boost::multiprecision::numerator(enc.lo) /
                                        boost::multiprecision::denominator(enc.lo));
  for (Int k = lo_floor; k <= lo_floor + 2; ++k) {
    if (Rat(k) < enc.lo || Rat(k) > enc.hi) continue;
    if (poly_eval(poly, Rat(k)) == 0) {
      pd.exact = true;
      pd.lambda = Quad(Rat(k));
      break;
    }
  }

  // degree-2 factor x^2 + bx + c with c | constant term
  if (!pd.exact && poly.size() >= 3) {
    const Rat c0r = poly.front();
    const Int c0 = boost::multiprecision::numerator(c0r);  // integral by construction
    Int babs_max = boost::multiprecision::numerator(enc.hi) /
                       boost::multiprecision::denominator(enc.hi) * 2 +
                   2;
    std::vector<Int> cdivs;
    for (Int c = 1; c * c <= abs(c0); ++c)
      if (abs(c0) % c == 0) {
        cdivs.push_back(c);
        if (c * c != abs(c0)) cdivs.push_back(abs(c0) / c);
      }
    for (const Int& cd : cdivs) {
      for (int cs : {1, -1}) {
        const Int c = cd * cs;
        for (Int b = -babs_max; b <= babs_max && !pd.exact; ++b) {
          // synthetic division of poly by x^2 + bx + c
          std::vector<Rat> r = poly;
          for (std::size_t i = r.size(); i-- > 2;) {
            const Rat t = r[i];
            r[i - 1] -= t * Rat(b);
            r[i - 2] -= t * Rat(c);
          }
          if (r[0] != 0 || r[1] != 0) continue;
          const Int disc = b * b - 4 * c;
          Int root;
          if (disc <= 0 || is_perfect_square(disc, root)) continue;
          const Quad cand(Rat(-b, 2), Rat(1, 2), disc);
          if (cand > Quad(enc.lo) && cand < Quad(enc.hi)) {
            pd.exact = true;
            pd.lambda = cand;
          }
        }
        if (pd.exact) break;
      }
      if (pd.exact) break;
    }
  }

  // left eigenvector = row 0 of adj(lambda I - Q), normalized to last
  // entry 1 (entrywise positive for a primitive matrix)
  const auto adj = adjugate_poly(q);
  if (pd.exact) {
    std::vector<Quad> raw(n, Quad(Rat(0)));
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const Quad scale = pd.lambda.pow(static_cast<long>(n - 1 - k));
      for (std::size_t j = 0; j < n; ++j) raw[j] = raw[j] + scale * Quad(adj[k][0][j]);
    }
    pd.ell.resize(n);
    for (std::size_t j = 0; j < n; ++j) pd.ell[j] = raw[j] / raw[n - 1];
    pd.lambda_iv = enclose_quad(pd.lambda);
    pd.ell_iv.resize(n);
    for (std::size_t j = 0; j < n; ++j) pd.ell_iv[j] = enclose_quad(pd.ell[j]);
  } else {
    std::vector<RatInterval> raw(n, RatInterval(Rat(0)));
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const RatInterval scale = iv_pow(pd.lambda_iv, static_cast<long>(n - 1 - k));
      for (std::size_t j = 0; j < n; ++j)
        raw[j] = raw[j] + scale * RatInterval(adj[k][0][j]);
    }
    pd.ell_iv.resize(n);
    for (std::size_t j = 0; j < n; ++j) pd.ell_iv[j] = raw[j] / raw[n - 1];
  }
  return pd;
}

}  // namespace

DimensionGroupPresentation make_presentation(const BratteliDiagram& d) {
  require_valid_diagram(d);
  if (!d.eventually_periodic())
    throw domain_error("dimension groups need an eventually periodic diagram");
  return {d};
}

DimensionGroupElement order_unit() { return {0, {1}}; }

DimensionGroupElement push(const DimensionGroupPresentation& p, const DimensionGroupElement& el,
                           std::size_t to_level) {
  if (el.vector.size() != level_size(p.diagram, el.level))
    throw domain_error("element width does not match its level");
  if (to_level < el.level) throw domain_error("cannot push an element to an earlier level");
  DimensionGroupElement out = el;
  while (out.level < to_level) {
    out.vector = mat_apply(step_matrix(p.diagram, out.level), out.vector);
    ++out.level;
  }
  return out;
}

bool equals(const DimensionGroupPresentation& p, const DimensionGroupElement& a,
            const DimensionGroupElement& b) {
  const std::size_t L = std::max({a.level, b.level, p.diagram.prefix.size()});
  const Vec va = push(p, a, L).vector, vb = push(p, b, L).vector;
  Vec delta(va.size());
  for (std::size_t i = 0; i < va.size(); ++i) delta[i] = va[i] - vb[i];
  return dies(p.diagram, delta, L);
}

std::size_t rank(const DimensionGroupPresentation& p) {
  return stable_power(period_map(p.diagram, p.diagram.prefix.size())).rank;
}

PositivityVerdict is_positive(const DimensionGroupPresentation& p, const DimensionGroupElement& el,
                              std::size_t bound) {
  const BratteliDiagram& d = p.diagram;
  const std::size_t pre = d.prefix.size(), c = d.cycle.size();
  DimensionGroupElement cur = push(p, el, el.level);  // validates the width
  enum class Mode { Undecided, GuaranteedPositive, Fallback } mode = Mode::Undecided;
  std::size_t scanned = 0;
  for (;;) {
    if (is_nonneg(cur.vector))
      return {Positivity::Positive, PositivityCertificate::NonnegativeVector, cur.level, 0};

    if (mode == Mode::Undecided && cur.level >= pre && (cur.level - pre) % c == 0) {
      const Mat q = period_map(d, cur.level);
      if (is_primitive(q)) {
        const PerronData pd = perron_data(q);
        int s;
        if (pd.exact) {
          Quad dot{Rat(0)};
          for (std::size_t i = 0; i < cur.vector.size(); ++i)
            dot = dot + pd.ell[i] * Quad(Rat(cur.vector[i]));
          s = dot.sgn();
        } else {
          RatInterval dot{Rat(0)};
          for (std::size_t i = 0; i < cur.vector.size(); ++i)
            dot = dot + pd.ell_iv[i] * RatInterval(Rat(cur.vector[i]));
          s = dot.certified_sign();
          if (s == 0 && dot.width() != 0 && !dies(d, cur.vector, cur.level)) {
            // sign not certified; fall back to the bounded scan
            mode = Mode::Fallback;
          }
        }
        if (mode == Mode::Undecided) {
          if (s < 0)
            return {Positivity::NotPositive, PositivityCertificate::PerronFunctional, 0, 0};
          if (s > 0) {
            mode = Mode::GuaranteedPositive;
          } else if (dies(d, cur.vector, cur.level)) {
            mode = Mode::GuaranteedPositive;
          } else {
            return {Positivity::NotPositive, PositivityCertificate::PerronBoundary, 0, 0};
          }
        }
      } else if (is_unipotent_triangular(q)) {
        // Q = I + N with N nilpotent: the pushforward after k periods is
        // sum_j C(k,j) N^j v, so each coordinate is eventually dominated
        // by its highest nonvanishing term.
        const std::size_t m = rows(q);
        Mat nil = q;
        for (std::size_t i = 0; i < m; ++i) nil[i][i] -= 1;
        std::vector<Vec> powers{cur.vector};
        while (!is_zero(powers.back()) && powers.size() <= m)
          powers.push_back(mat_apply(nil, powers.back()));
        bool eventually_nonneg = true;
        for (std::size_t i = 0; i < m && eventually_nonneg; ++i) {
          Int lead = 0;
          for (const Vec& w : powers)
            if (w[i] != 0) lead = w[i];
          eventually_nonneg = lead >= 0;
        }
        if (!eventually_nonneg)
          return {Positivity::NotPositive, PositivityCertificate::UnipotentClosedForm, 0, 0};
        mode = Mode::GuaranteedPositive;
      } else {
        mode = Mode::Fallback;
      }
    }

    if (mode == Mode::Fallback) {
      bool all_nonpos = true;
      for (const Int& x : cur.vector) all_nonpos = all_nonpos && x <= 0;
      if (all_nonpos && !is_zero(cur.vector) && !dies(d, cur.vector, cur.level))
        return {Positivity::NotPositive, PositivityCertificate::DominatedNegative, 0, 0};
      if (scanned >= bound)
        return {Positivity::Unknown, PositivityCertificate::SearchExhausted, 0, bound};
    }

    cur.vector = mat_apply(step_matrix(d, cur.level), cur.vector);
    ++cur.level;
    ++scanned;
  }
}

PFEmbedding pf_embedding(const DimensionGroupPresentation& p) {
  const BratteliDiagram& d = p.diagram;
  PFEmbedding emb;
  emb.base_level = d.prefix.size();
  emb.period = d.cycle.size();
  emb.period_matrix = period_map(d, emb.base_level);
  if (!is_primitive(emb.period_matrix))
    throw domain_error("period matrix is not primitive; no Perron embedding");
  PerronData pd = perron_data(emb.period_matrix);
  emb.exact = pd.exact;
  emb.lambda = pd.lambda;
  emb.ell = std::move(pd.ell);
  emb.lambda_iv = pd.lambda_iv;
  emb.ell_iv = std::move(pd.ell_iv);
  if (emb.exact) {
    const long shift =
        static_cast<long>((emb.base_level + emb.period - 1) / emb.period);
    emb.anchor = emb.lambda.is_rational() ? Quad(Rat(1)) : emb.lambda.pow(-shift);
  }
  return emb;
}

namespace {

// level of the embedding grid holding the element, and its index j
std::pair<std::size_t, long> grid_slot(const PFEmbedding& emb, std::size_t level) {
  if (level <= emb.base_level) return {emb.base_level, 0};
  const std::size_t j = (level - emb.base_level + emb.period - 1) / emb.period;
  return {emb.base_level + j * emb.period, static_cast<long>(j)};
}

}  // namespace

Quad pf_evaluate(const PFEmbedding& emb, const DimensionGroupPresentation& p,
                 const DimensionGroupElement& el) {
  if (!emb.exact) throw domain_error("Perron data is not exact; use the interval evaluation");
  const auto [g, j] = grid_slot(emb, el.level);
  const Vec v = push(p, el, g).vector;
  Quad dot{Rat(0)};
  for (std::size_t i = 0; i < v.size(); ++i) dot = dot + emb.ell[i] * Quad(Rat(v[i]));
  return emb.anchor * emb.lambda.pow(-j) * dot;
}

RatInterval pf_evaluate_interval(const PFEmbedding& emb, const DimensionGroupPresentation& p,
                                 const DimensionGroupElement& el) {
  const auto [g, j] = grid_slot(emb, el.level);
  const Vec v = push(p, el, g).vector;
  RatInterval dot{Rat(0)};
  for (std::size_t i = 0; i < v.size(); ++i) dot = dot + emb.ell_iv[i] * RatInterval(Rat(v[i]));
  const long shift = static_cast<long>((emb.base_level + emb.period - 1) / emb.period);
  const RatInterval anchor =
      emb.exact ? enclose_quad(emb.anchor) : iv_pow(emb.lambda_iv, -shift);
  return anchor * iv_pow(emb.lambda_iv, -j) * dot;
}

}  // namespace endspace
