#include "endspace/linalg.hpp"

namespace endspace {

std::size_t rows(const Mat& m) { return m.size(); }
std::size_t cols(const Mat& m) { return m.empty() ? 0 : m[0].size(); }

Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_nonneg(const Vec& v) {
  for (const auto& x : v)
    if (x < 0) return false;
  return true;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (cols(a) != rows(b)) throw domain_error("matrix product shape mismatch");
  Mat out(rows(a), Vec(cols(b), 0));
  for (std::size_t i = 0; i < rows(a); ++i)
    for (std::size_t k = 0; k < cols(a); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols(b); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Vec mat_apply(const Mat& a, const Vec& v) {
  if (cols(a) != v.size()) throw domain_error("matrix-vector shape mismatch");
  Vec out(rows(a), 0);
  for (std::size_t i = 0; i < rows(a); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

bool mat_eq(const Mat& a, const Mat& b) { return a == b; }

std::size_t mat_rank(const Mat& m) {
  if (m.empty()) return 0;
  Mat w = m;
  std::size_t r = rows(w), c = cols(w);
  std::size_t rank = 0;
  Int prev_pivot = 1;  // Bareiss fraction-free elimination
  for (std::size_t col = 0; col < c && rank < r; ++col) {
    std::size_t piv = rank;
    while (piv < r && w[piv][col] == 0) ++piv;
    if (piv == r) continue;
    std::swap(w[rank], w[piv]);
    for (std::size_t i = rank + 1; i < r; ++i) {
      for (std::size_t j = col + 1; j < c; ++j)
        w[i][j] = (w[rank][col] * w[i][j] - w[i][col] * w[rank][j]) / prev_pivot;
      w[i][col] = 0;
    }
    prev_pivot = w[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<Rat> charpoly(const Mat& a) {
  std::size_t n = rows(a);
  if (n != cols(a)) throw domain_error("charpoly requires a square matrix");
  // Faddeev–LeVerrier: M_0 = I, A_k = A*M_{k-1}, c_k = -tr(A_k)/k,
  // M_k = A_k + c_k*I; char poly = lambda^n + c_1 lambda^{n-1} + ... + c_n.
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  std::vector<Rat> coeffs(n + 1, Rat(0));
  coeffs[n] = 1;  // coefficient of lambda^n
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rat>> am(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] += Rat(a[i][l]) * m[l][j];
      }
    Rat trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
    Rat ck = -trace / Rat(Int(k));
    coeffs[n - k] = ck;
    m = am;
    for (std::size_t i = 0; i < n; ++i) m[i][i] += ck;
  }
  return coeffs;
}

std::vector<std::vector<std::vector<Rat>>> adjugate_poly(const Mat& a) {
  std::size_t n = rows(a);
  if (n != cols(a)) throw domain_error("adjugate_poly requires a square matrix");
  if (n == 0) throw domain_error("adjugate_poly of empty matrix");
  std::vector<std::vector<std::vector<Rat>>> out;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  out.push_back(m);  // M_0 = I
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::vector<Rat>> am(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] += Rat(a[i][l]) * m[l][j];
      }
    Rat trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
    Rat ck = -trace / Rat(Int(k));
    m = am;
    for (std::size_t i = 0; i < n; ++i) m[i][i] += ck;
    out.push_back(m);  // M_k
  }
  return out;
}

bool is_primitive(const Mat& a) {
  std::size_t n = rows(a);
  if (n != cols(a)) throw domain_error("is_primitive requires a square matrix");
  if (n == 0) return false;
  for (const auto& row : a)
    for (const auto& x : row)
      if (x < 0) throw domain_error("is_primitive requires a nonnegative matrix");
  // boolean powers up to Wielandt's bound
  std::vector<std::vector<bool>> b(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = a[i][j] > 0;
  std::size_t bound = (n - 1) * (n - 1) + 1;
  auto all_pos = [&](const std::vector<std::vector<bool>>& x) {
    for (const auto& row : x)
      for (bool v : row)
        if (!v) return false;
    return true;
  };
  std::vector<std::vector<bool>> p = b;
  for (std::size_t e = 1; e <= bound; ++e) {
    if (all_pos(p)) return true;
    std::vector<std::vector<bool>> q(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (!p[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) q[i][j] = true;
      }
    p = std::move(q);
  }
  return false;
}

bool is_unipotent_triangular(const Mat& a) {
  std::size_t n = rows(a);
  if (n != cols(a)) throw domain_error("is_unipotent_triangular requires a square matrix");
  for (std::size_t i = 0; i < n; ++i)
    if (a[i][i] != 1) return false;
  // off-diagonal support must be acyclic: DFS cycle detection
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s] != 0) continue;
    stack.push_back(s);
    std::vector<std::size_t> next(n, 0);
    state[s] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      bool advanced = false;
      for (std::size_t& j = next[u]; j < n; ++j) {
        if (j == u || a[u][j] == 0) continue;
        if (state[j] == 1) return false;
        if (state[j] == 0) {
          state[j] = 1;
          stack.push_back(j);
          ++j;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        state[u] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

StablePower stable_power(const Mat& a) {
  if (rows(a) != cols(a)) throw domain_error("stable_power requires a square matrix");
  Mat p = a;
  std::size_t r = mat_rank(p);
  for (std::size_t k = 1;; ++k) {
    Mat q = mat_mul(p, a);
    std::size_t r2 = mat_rank(q);
    if (r2 == r) return {k, r};
    p = std::move(q);
    r = r2;
  }
}

}  // namespace endspace
