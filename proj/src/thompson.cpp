// Prefix-map groups over complete prefix codes: canonical reduction,
// composition by common refinement, F/T/V classification, the end-space
// action and its germs, and exact Cuntz-term arithmetic realizing the
// representation g -> sum S_{v_i} S_{u_i}*.

#include "endspace/thompson.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace endspace {

namespace {

using Pair = std::pair<std::string, std::string>;

void check_arity(int n, const char* what) {
  if (n < 2 || n > 10) throw domain_error(std::string(what) + " requires 2 <= n <= 10");
}

void check_digits(int n, const std::string& w) {
  for (char ch : w)
    if (ch < '0' || ch >= static_cast<char>('0' + n))
      throw domain_error("word digit out of range for the alphabet");
}

// A finite word set is a complete prefix code iff it is prefix-free and
// its Kraft sum equals one.  In lexicographic order a prefix violation
// always shows up between adjacent words.
void check_complete_code(int n, std::vector<std::string> words, const char* side) {
  std::sort(words.begin(), words.end());
  Rat kraft(0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i + 1 < words.size() && words[i + 1].compare(0, words[i].size(), words[i]) == 0)
      throw domain_error(std::string(side) + " code is not prefix-free");
    Int denom = 1;
    for (std::size_t k = 0; k < words[i].size(); ++k) denom *= n;
    kraft += Rat(Int(1), denom);
  }
  if (kraft != 1) throw domain_error(std::string(side) + " code is not complete");
}

// Collapse full sibling families (u0..u(n-1) -> v0..v(n-1)) to (u -> v)
// until none remain.
std::vector<Pair> reduce_pairs(int n, const std::vector<Pair>& pairs) {
  std::set<Pair> s(pairs.begin(), pairs.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [u, v] : s) {
      if (u.empty() || v.empty() || u.back() != '0' || v.back() != '0') continue;
      const std::string us(u, 0, u.size() - 1), vs(v, 0, v.size() - 1);
      bool family = true;
      for (int d = 1; d < n && family; ++d) {
        const char c = static_cast<char>('0' + d);
        family = s.count({us + c, vs + c}) != 0;
      }
      if (!family) continue;
      for (int d = 0; d < n; ++d) {
        const char c = static_cast<char>('0' + d);
        s.erase({us + c, vs + c});
      }
      s.insert({us, vs});
      changed = true;
      break;  // the set was edited; restart the scan
    }
  }
  return {s.begin(), s.end()};
}

// The unique domain pair whose word prefixes the endpoint.
const Pair& matching_pair(const PrefixMap& g, const EndPoint& x) {
  for (const auto& p : g.pairs) {
    bool hit = true;
    for (std::size_t i = 0; i < p.first.size() && hit; ++i)
      hit = position_at(x, i) == p.first[i] - '0';
    if (hit) return p;
  }
  throw domain_error("endpoint positions leave the map's alphabet");
}

// Endpoint with the first k positions dropped.
EndPoint drop_positions(const EndPoint& x, std::size_t k) {
  EndPoint y;
  if (k < x.pre.size()) {
    y.pre.assign(x.pre.begin() + static_cast<long>(k), x.pre.end());
    y.cyc = x.cyc;
  } else {
    const std::size_t r = (k - x.pre.size()) % x.cyc.size();
    y.cyc.assign(x.cyc.begin() + static_cast<long>(r), x.cyc.end());
    y.cyc.insert(y.cyc.end(), x.cyc.begin(), x.cyc.begin() + static_cast<long>(r));
  }
  return y;
}

void accumulate_term(CuntzAlgebraElement& a, Pair key, const GaussQ& z) {
  if (z.is_zero()) return;
  auto [it, fresh] = a.terms.emplace(std::move(key), z);
  if (!fresh) {
    it->second += z;
    if (it->second.is_zero()) a.terms.erase(it);
  }
}

long term_weight(const Pair& key) {
  return static_cast<long>(key.first.size()) - static_cast<long>(key.second.size());
}

std::vector<std::string> all_words(int n, std::size_t length) {
  std::vector<std::string> words{""};
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<std::string> next;
    next.reserve(words.size() * static_cast<std::size_t>(n));
    for (const auto& w : words)
      for (int d = 0; d < n; ++d) next.push_back(w + static_cast<char>('0' + d));
    words = std::move(next);
  }
  return words;
}

}  // namespace

PrefixMap make_prefix_map(int n, std::vector<std::pair<std::string, std::string>> pairs) {
  check_arity(n, "a prefix map");
  if (pairs.empty()) throw domain_error("a prefix map needs at least one pair");
  std::vector<std::string> dom, ran;
  for (const auto& [u, v] : pairs) {
    check_digits(n, u);
    check_digits(n, v);
    dom.push_back(u);
    ran.push_back(v);
  }
  check_complete_code(n, std::move(dom), "domain");
  check_complete_code(n, std::move(ran), "range");
  PrefixMap g;
  g.n = n;
  g.pairs = reduce_pairs(n, pairs);
  return g;
}

PrefixMap identity_map(int n) {
  check_arity(n, "a prefix map");
  PrefixMap g;
  g.n = n;
  g.pairs = {{"", ""}};
  return g;
}

bool is_identity(const PrefixMap& g) { return g.pairs.size() == 1 && g.pairs.front() == Pair(); }

PrefixMap compose(const PrefixMap& g, const PrefixMap& h) {
  if (g.n != h.n) throw domain_error("compose requires equal arities");
  std::vector<Pair> pairs;
  for (const auto& [a, b] : h.pairs)
    for (const auto& [u, v] : g.pairs) {
      if (b.size() >= u.size() && b.compare(0, u.size(), u) == 0)
        pairs.emplace_back(a, v + b.substr(u.size()));  // g maps all of [b]
      else if (u.size() > b.size() && u.compare(0, b.size(), b) == 0)
        pairs.emplace_back(a + u.substr(b.size()), v);  // [u] sits inside [b]
    }
  return make_prefix_map(g.n, std::move(pairs));
}

PrefixMap invert(const PrefixMap& g) {
  std::vector<Pair> pairs;
  pairs.reserve(g.pairs.size());
  for (const auto& [u, v] : g.pairs) pairs.emplace_back(v, u);
  return make_prefix_map(g.n, std::move(pairs));
}

ThompsonClass classify(const PrefixMap& g) {
  // pairs are domain-sorted; rank each range word within the sorted range
  // code and look for i -> i + r (mod m)
  std::vector<std::string> ran;
  ran.reserve(g.pairs.size());
  for (const auto& [u, v] : g.pairs) ran.push_back(v);
  std::vector<std::string> sorted = ran;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = ran.size();
  std::vector<std::size_t> rank(m);
  for (std::size_t i = 0; i < m; ++i)
    rank[i] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), ran[i]) - sorted.begin());
  for (std::size_t r = 0; r < m; ++r) {
    bool rotation = true;
    for (std::size_t i = 0; i < m && rotation; ++i) rotation = rank[i] == (i + r) % m;
    if (rotation) return r == 0 ? ThompsonClass::F : ThompsonClass::T;
  }
  return ThompsonClass::V;
}

EndPoint apply_endpoint(const PrefixMap& g, const EndPoint& x) {
  if (x.cyc.empty()) throw domain_error("endpoint has an empty cycle part");
  const auto& [u, v] = matching_pair(g, x);
  EndPoint tail = drop_positions(x, u.size());
  EndPoint y;
  y.pre.reserve(v.size() + tail.pre.size());
  for (char ch : v) y.pre.push_back(ch - '0');
  y.pre.insert(y.pre.end(), tail.pre.begin(), tail.pre.end());
  y.cyc = std::move(tail.cyc);
  return y;
}

Germ germ_at(const PrefixMap& g, const EndPoint& x) {
  if (x.cyc.empty()) throw domain_error("endpoint has an empty cycle part");
  const auto& [u, v] = matching_pair(g, x);
  Germ germ;
  for (char ch : u) germ.source.positions.push_back(ch - '0');
  for (char ch : v) germ.target.positions.push_back(ch - '0');
  return germ;
}

PrefixMap random_prefix_map(std::mt19937_64& gen, int n, std::size_t max_depth) {
  check_arity(n, "a prefix map");
  // a full n-ary tree of depth d absorbs 1 + n + ... + n^(d-1) leaf splits
  std::size_t capacity = 0, layer = 1;
  for (std::size_t d = 0; d < max_depth; ++d) {
    capacity += layer;
    layer *= static_cast<std::size_t>(n);
  }
  if (capacity == 0) return identity_map(n);
  const std::size_t bound = std::min(capacity, 2 * max_depth + 1);
  const std::size_t splits = gen() % (bound + 1);
  auto grow = [&] {
    std::vector<std::string> leaves{""};
    for (std::size_t s = 0; s < splits; ++s) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < leaves.size(); ++i)
        if (leaves[i].size() < max_depth) open.push_back(i);
      const std::size_t at = open[gen() % open.size()];
      const std::string stem = leaves[at];
      leaves.erase(leaves.begin() + static_cast<long>(at));
      for (int d = 0; d < n; ++d) leaves.push_back(stem + static_cast<char>('0' + d));
    }
    std::sort(leaves.begin(), leaves.end());
    return leaves;
  };
  const std::vector<std::string> dom = grow(), ran = grow();
  std::vector<std::size_t> perm(dom.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[gen() % i]);
  std::vector<Pair> pairs;
  pairs.reserve(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) pairs.emplace_back(dom[i], ran[perm[i]]);
  return make_prefix_map(n, std::move(pairs));
}

CuntzAlgebraElement make_element(
    int n, std::vector<std::tuple<std::string, std::string, GaussQ>> terms) {
  check_arity(n, "a Cuntz term");
  CuntzAlgebraElement a;
  a.n = n;
  for (auto& [u, v, z] : terms) {
    check_digits(n, u);
    check_digits(n, v);
    accumulate_term(a, {std::move(u), std::move(v)}, z);
  }
  return a;
}

CuntzAlgebraElement unit_element(int n) { return make_element(n, {{"", "", GaussQ::one()}}); }

CuntzAlgebraElement mul(const CuntzAlgebraElement& a, const CuntzAlgebraElement& b) {
  if (a.n != b.n) throw domain_error("Cuntz terms of different arity");
  CuntzAlgebraElement out;
  out.n = a.n;
  // (S_u S_v*)(S_p S_q*) survives only when one of v, p prefixes the other
  for (const auto& [uv, alpha] : a.terms)
    for (const auto& [pq, beta] : b.terms) {
      const auto& [u, v] = uv;
      const auto& [p, q] = pq;
      if (p.size() >= v.size() && p.compare(0, v.size(), v) == 0)
        accumulate_term(out, {u + p.substr(v.size()), q}, alpha * beta);
      else if (v.compare(0, p.size(), p) == 0)
        accumulate_term(out, {u, q + v.substr(p.size())}, alpha * beta);
    }
  return out;
}

CuntzAlgebraElement star(const CuntzAlgebraElement& a) {
  CuntzAlgebraElement out;
  out.n = a.n;
  for (const auto& [uv, z] : a.terms)
    out.terms.emplace(std::make_pair(uv.second, uv.first), z.conj());
  return out;
}

CuntzAlgebraElement add(const CuntzAlgebraElement& a, const CuntzAlgebraElement& b) {
  if (a.n != b.n) throw domain_error("Cuntz terms of different arity");
  CuntzAlgebraElement out = a;
  for (const auto& [key, z] : b.terms) accumulate_term(out, key, z);
  return out;
}

bool equals(const CuntzAlgebraElement& a, const CuntzAlgebraElement& b) {
  if (a.n != b.n) throw domain_error("Cuntz terms of different arity");
  // uniform expansion depth (of |v|) per weight class |u| - |v|
  std::map<long, std::size_t> depth;
  for (const auto* e : {&a, &b})
    for (const auto& [key, z] : e->terms) {
      auto [it, fresh] = depth.emplace(term_weight(key), key.second.size());
      if (!fresh) it->second = std::max(it->second, key.second.size());
    }
  auto expanded = [&](const CuntzAlgebraElement& e) {
    std::map<Pair, GaussQ> out;
    for (const auto& [key, z] : e.terms)
      for (const auto& s : all_words(e.n, depth.at(term_weight(key)) - key.second.size())) {
        auto [it, fresh] = out.emplace(Pair(key.first + s, key.second + s), z);
        if (!fresh) it->second += z;
      }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  };
  return expanded(a) == expanded(b);
}

std::string format_element(const CuntzAlgebraElement& a) {
  if (a.terms.empty()) return "0";
  std::string out;
  for (const auto& [key, z] : a.terms) {
    if (!out.empty()) out += " + ";
    std::string ops;
    if (!key.first.empty()) ops = "S_" + key.first;
    if (!key.second.empty()) ops += (ops.empty() ? "S_" : " S_") + key.second + "*";
    if (ops.empty())
      out += format_gaussq(z);
    else if (z == GaussQ::one())
      out += ops;
    else
      out += "(" + format_gaussq(z) + ") " + ops;
  }
  return out;
}

std::map<std::string, std::map<std::string, GaussQ>> act_on_words(const CuntzAlgebraElement& a,
                                                                  std::size_t length) {
  for (const auto& [key, z] : a.terms)
    if (key.second.size() > length)
      throw domain_error("basis words shorter than a term's range word");
  std::map<std::string, std::map<std::string, GaussQ>> out;
  for (const auto& w : all_words(a.n, length)) {
    auto& image = out[w];
    for (const auto& [key, z] : a.terms) {
      const auto& [u, v] = key;
      if (w.compare(0, v.size(), v) == 0) {
        auto [it, fresh] = image.emplace(u + w.substr(v.size()), z);
        if (!fresh) it->second += z;
      }
    }
    for (auto it = image.begin(); it != image.end();)
      it = it->second.is_zero() ? image.erase(it) : std::next(it);
  }
  return out;
}

CuntzAlgebraElement rho(const PrefixMap& g) {
  CuntzAlgebraElement out;
  out.n = g.n;
  for (const auto& [u, v] : g.pairs) accumulate_term(out, {v, u}, GaussQ::one());
  return out;
}

RepresentationReport verify_representation(const PrefixMap& g, const PrefixMap& h) {
  const CuntzAlgebraElement rg = rho(g), rh = rho(h);
  const CuntzAlgebraElement unit = unit_element(g.n);
  auto unitary = [&](const CuntzAlgebraElement& x) {
    return equals(mul(star(x), x), unit) && equals(mul(x, star(x)), unit);
  };
  RepresentationReport rep;
  rep.homomorphism = equals(rho(compose(g, h)), mul(rg, rh));
  rep.star_compatible = equals(star(rg), rho(invert(g))) && equals(star(rh), rho(invert(h)));
  rep.unitary = unitary(rg) && unitary(rh);
  rep.faithful = (equals(rg, unit) == is_identity(g)) && (equals(rh, unit) == is_identity(h));
  return rep;
}

Mat finite_pair_representation(int n, const std::vector<std::size_t>& perm) {
  if (n <= 0) throw domain_error("the point space must be nonempty");
  if (perm.size() != static_cast<std::size_t>(n))
    throw domain_error("permutation length differs from the point count");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t i : perm) {
    if (i >= static_cast<std::size_t>(n) || seen[i])
      throw domain_error("not a permutation of the point space");
    seen[i] = true;
  }
  Mat m(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), Int(0)));
  for (std::size_t i = 0; i < perm.size(); ++i) m[perm[i]][i] = 1;
  return m;
}

PrefixMap thompson_x0() { return make_prefix_map(2, {{"00", "0"}, {"01", "10"}, {"1", "11"}}); }

PrefixMap thompson_x1() {
  return make_prefix_map(2, {{"0", "0"}, {"100", "10"}, {"101", "110"}, {"11", "111"}});
}

PrefixMap thompson_c() { return make_prefix_map(2, {{"0", "10"}, {"10", "11"}, {"11", "0"}}); }

PrefixMap thompson_pi0() {
  return make_prefix_map(2, {{"00", "00"}, {"01", "10"}, {"10", "01"}, {"11", "11"}});
}

}  // namespace endspace
