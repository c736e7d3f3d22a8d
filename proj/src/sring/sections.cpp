#include <algorithm>
#include <numeric>
#include <set>

#include "wlh/numeric.hpp"
#include "wlh/sring.hpp"

namespace wlh::sring {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // The smaller root wins so labels are least members.
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool divides(int a, int b) { return a != 0 && b % a == 0; }

}  // namespace

bool is_a_set(const SRing& a, const std::vector<int>& x) {
  std::vector<char> in(a.n, 0);
  for (int v : x) in[num::mod(v, a.n)] = 1;
  std::vector<int> hits(a.rank(), 0);
  for (int v = 0; v < a.n; ++v)
    if (in[v]) ++hits[a.class_of[v]];
  for (int c = 0; c < a.rank(); ++c)
    if (hits[c] != 0 && hits[c] != static_cast<int>(a.classes[c].size())) return false;
  return true;
}

bool is_a_subgroup(const SRing& a, int d) {
  if (d < 1 || a.n % d != 0) return false;
  const int step = a.n / d;
  for (int v = 0; v < a.n; v += step)
    for (int y : a.basic_set_of(v))
      if (y % step != 0) return false;
  return true;
}

std::vector<int> a_subgroups(const SRing& a) {
  std::vector<int> out;
  for (auto d : num::divisors(a.n))
    if (is_a_subgroup(a, static_cast<int>(d))) out.push_back(static_cast<int>(d));
  return out;
}

int generated_order(int n, const std::vector<int>& x) {
  num::i64 g = n;
  for (int v : x) g = num::gcd(g, num::mod(v, n));
  return static_cast<int>(n / g);
}

int radical_order(int n, const std::vector<int>& x) {
  if (x.empty()) return n;
  std::vector<char> in(n, 0);
  for (int v : x) in[num::mod(v, n)] = 1;
  // Stabilizing subgroups are closed under joins, so the largest one is the radical.
  auto ds = num::divisors(n);
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
    const int step = static_cast<int>(n / *it);
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i)
      if (!in[(num::mod(x[i], n) + step) % n]) ok = false;
    if (ok) return static_cast<int>(*it);
  }
  return 1;
}

bool is_coset(int n, const std::vector<int>& x) {
  return !x.empty() && radical_order(n, x) == static_cast<int>(x.size());
}

Section parse_section(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) fail(ErrorKind::ParseError, "section literal needs U/L: " + text);
  try {
    std::size_t used = 0;
    Section s;
    s.U = std::stoi(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("U");
    const std::string rest = text.substr(slash + 1);
    s.L = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("L");
    if (s.U < 1 || s.L < 1 || s.U % s.L != 0) fail(ErrorKind::ParseError, "L must divide U in " + text);
    return s;
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "bad section literal " + text);
  }
}

bool is_subsection(const Section& s, const Section& t) { return divides(s.U, t.U) && divides(t.L, s.L); }

bool is_multiple(const Section& t, const Section& s) {
  return num::gcd(s.U, t.L) == s.L && num::lcm(s.U, t.L) == t.U;
}

int project(int n, const Section& s, int x) {
  const int step = n / s.U;
  x = static_cast<int>(num::mod(x, n));
  if (x % step != 0) fail(ErrorKind::NotASection, std::to_string(x) + " is outside the subgroup of order " + std::to_string(s.U));
  return (x / step) % s.order();
}

std::vector<int> preimage(int n, const Section& s, const std::vector<int>& ys) {
  const int step = n / s.U, q = s.order();
  std::vector<char> want(q, 0);
  for (int y : ys) want[num::mod(y, q)] = 1;
  std::vector<int> out;
  for (int t = 0; t < s.U; ++t)
    if (want[t % q]) out.push_back(t * step);
  return out;
}

Section principal_section(const SRing& a, const std::vector<int>& basic_set) {
  std::vector<int> x = basic_set;
  for (int& v : x) v = static_cast<int>(num::mod(v, a.n));
  std::sort(x.begin(), x.end());
  if (x.empty() || a.basic_set_of(x[0]) != x) fail(ErrorKind::NotABasicSet, "not a basic set of the ring");
  return Section{generated_order(a.n, x), radical_order(a.n, x)};
}

SRing restrict_sring(const SRing& a, const Section& s) {
  if (!divides(s.U, a.n) || !divides(s.L, s.U) || !is_a_subgroup(a, s.U) || !is_a_subgroup(a, s.L))
    fail(ErrorKind::NotASection, s.str() + " is not a section of the ring over Z_" + std::to_string(a.n));
  const int step = a.n / s.U, q = s.order();
  // Residues mod q are merged when they are projections of one class.
  UnionFind uf(q);
  std::vector<int> first(a.rank(), -1);
  for (int t = 0; t < s.U; ++t) {
    const int c = a.class_of[t * step];
    if (first[c] < 0) first[c] = t % q;
    else uf.unite(first[c], t % q);
  }
  std::vector<int> labels(q);
  for (int r = 0; r < q; ++r) labels[r] = uf.find(r);
  return sring_from_labels(q, labels);
}

SectionPoset sections(const SRing& a) {
  SectionPoset p;
  const auto subs = a_subgroups(a);
  for (int u : subs)
    for (int l : subs)
      if (u % l == 0) p.sections.push_back(Section{u, l});
  std::sort(p.sections.begin(), p.sections.end());
  const int k = static_cast<int>(p.sections.size());
  UnionFind uf(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && is_multiple(p.sections[j], p.sections[i])) uf.unite(i, j);
  p.equivalence_class.resize(k);
  for (int i = 0; i < k; ++i) p.equivalence_class[i] = uf.find(i);

  std::set<Section> pr;
  for (const auto& c : a.classes) pr.insert(principal_section(a, c));
  p.principal.assign(pr.begin(), pr.end());
  return p;
}

std::vector<Section> s0_sections(const SRing& a) { return s0_sections(a, sections(a)); }

std::vector<Section> s0_sections(const SRing&, const SectionPoset& poset) {
  const int k = static_cast<int>(poset.sections.size());
  std::set<int> marked;  // equivalence labels that contain a principal section
  for (const auto& s : poset.principal) {
    auto it = std::lower_bound(poset.sections.begin(), poset.sections.end(), s);
    if (it != poset.sections.end() && *it == s) marked.insert(poset.equivalence_class[it - poset.sections.begin()]);
  }
  std::vector<Section> out;
  for (int i = 0; i < k; ++i) {
    bool covered = false;
    for (int j = 0; j < k && !covered; ++j)
      covered = marked.count(poset.equivalence_class[j]) && is_subsection(poset.sections[i], poset.sections[j]);
    if (covered) out.push_back(poset.sections[i]);
  }
  return out;
}

}  // namespace wlh::sring
