#include <algorithm>
#include <map>

#include "wlh/numeric.hpp"
#include "wlh/sring.hpp"

namespace wlh::sring {

namespace {

std::string set_str(const std::vector<int>& x) {
  std::string s = "{";
  for (std::size_t i = 0; i < x.size() && i < 8; ++i) s += (i ? "," : "") + std::to_string(x[i]);
  if (x.size() > 8) s += ",...";
  return s + "}";
}

/// Sorted (class(x), class(d - x)) keys over all x.
void product_signature(const SRing& a, int d, std::vector<std::uint64_t>& keys) {
  const int n = a.n;
  const std::uint64_t R = static_cast<std::uint64_t>(a.rank());
  keys.resize(n);
  int y = d;
  for (int x = 0; x < n; ++x) {
    keys[x] = static_cast<std::uint64_t>(a.class_of[x]) * R + a.class_of[y];
    if (--y < 0) y += n;
  }
  std::sort(keys.begin(), keys.end());
}

/// Order-independent 64-bit fingerprint of the same key multiset, linear in n.
std::uint64_t signature_hash(const SRing& a, int d) {
  const int n = a.n;
  const std::uint64_t R = static_cast<std::uint64_t>(a.rank());
  std::uint64_t h = 0;
  int y = d;
  for (int x = 0; x < n; ++x) {
    std::uint64_t z = (static_cast<std::uint64_t>(a.class_of[x]) * R + a.class_of[y]) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h += z ^ (z >> 31);
    if (--y < 0) y += n;
  }
  return h;
}

}  // namespace

SRing sring_from_partition(int n, std::vector<std::vector<int>> classes) {
  if (n < 1) fail(ErrorKind::MalformedInput, "group order must be positive");
  SRing a;
  a.n = n;
  a.class_of.assign(n, -1);
  for (auto& c : classes) {
    if (c.empty()) fail(ErrorKind::MalformedInput, "empty class");
    for (int& x : c) {
      if (x < 0 || x >= n) x = static_cast<int>(num::mod(x, n));
    }
    std::sort(c.begin(), c.end());
  }
  std::sort(classes.begin(), classes.end());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (int x : classes[i]) {
      if (a.class_of[x] >= 0) fail(ErrorKind::MalformedInput, "residue " + std::to_string(x) + " lies in two classes");
      a.class_of[x] = static_cast<int>(i);
    }
  for (int x = 0; x < n; ++x)
    if (a.class_of[x] < 0) fail(ErrorKind::MalformedInput, "residue " + std::to_string(x) + " is in no class");
  a.classes = std::move(classes);

  // S1
  if (a.classes[0].size() != 1)
    fail(ErrorKind::AxiomViolation, "S1: the class of 0 is " + set_str(a.classes[0]));
  // S2
  for (const auto& c : a.classes) {
    int t = a.class_of[num::mod(-c[0], n)];
    for (int x : c)
      if (a.class_of[num::mod(-x, n)] != t || a.classes[t].size() != c.size())
        fail(ErrorKind::AxiomViolation, "S2: the negation of " + set_str(c) + " is not a class (witness " +
                                            std::to_string(x) + ")");
  }
  // S3: the multiset of (class(x), class(z - x)) is constant on each class.
  // Fingerprints screen the classes; the exact sorted comparison runs only on a mismatch.
  std::vector<std::uint64_t> ref, cur;
  for (const auto& c : a.classes) {
    if (c.size() == 1) continue;
    const std::uint64_t h0 = signature_hash(a, c[0]);
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (signature_hash(a, c[i]) == h0) continue;
      product_signature(a, c[0], ref);
      product_signature(a, c[i], cur);
      if (cur == ref) continue;
      std::size_t k = 0;
      while (ref[k] == cur[k]) ++k;
      const std::uint64_t R = static_cast<std::uint64_t>(a.rank());
      std::uint64_t key = std::min(ref[k], cur[k]);
      fail(ErrorKind::AxiomViolation, "S3: c[" + std::to_string(key / R) + "][" + std::to_string(key % R) + "] differs at " +
                                          std::to_string(c[0]) + " and " + std::to_string(c[i]) + " in class " +
                                          set_str(c));
    }
  }
  return a;
}

SRing sring_from_labels(int n, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != n) fail(ErrorKind::MalformedInput, "one label per residue expected");
  std::map<int, std::vector<int>> by;
  for (int x = 0; x < n; ++x) by[labels[x]].push_back(x);
  std::vector<std::vector<int>> classes;
  for (auto& [k, v] : by) classes.push_back(std::move(v));
  return sring_from_partition(n, std::move(classes));
}

SRing group_ring(int n) {
  std::vector<int> labels(n);
  for (int x = 0; x < n; ++x) labels[x] = x;
  return sring_from_labels(n, labels);
}

SRing trivial_sring(int n) {
  std::vector<int> labels(n, 1);
  labels[0] = 0;
  return sring_from_labels(n, labels);
}

cc::CoherentConfiguration cayley_scheme(const SRing& a) {
  return cc::make_config(cc::RelationPartition::from_residue_colors(a.n, a.class_of));
}

SRing sring_of_scheme(const cc::CoherentConfiguration& x) {
  if (!x.translation_invariant()) fail(ErrorKind::NotCayley, "some cell is not invariant under translations");
  std::vector<int> labels(x.size());
  for (int d = 0; d < x.size(); ++d) labels[d] = x.cell(0, d);
  return sring_from_labels(x.size(), labels);
}

SRing wl_closure_sets(int n, const std::vector<std::vector<int>>& sets) {
  std::vector<std::vector<std::int64_t>> gens;
  for (const auto& s : sets) gens.emplace_back(s.begin(), s.end());
  return sring_from_labels(n, cc::cayley_closure_colors(n, gens));
}

SRing wl_closure_set(int n, const std::vector<int>& x) { return wl_closure_sets(n, {x}); }

SRing cyclotomic(int n, const std::vector<std::int64_t>& m) {
  if (n == 1) return group_ring(1);
  const auto group = num::unit_subgroup(n, m.empty() ? std::vector<std::int64_t>{1} : m);
  std::vector<int> labels(n, -1);
  for (int x = 0; x < n; ++x) {
    if (labels[x] >= 0) continue;
    for (auto u : group) labels[num::mulmod(u, x, n)] = x;
  }
  return sring_from_labels(n, labels);
}

std::vector<int> sw_power(int n, const std::vector<int>& x, std::int64_t m) {
  if (num::gcd(num::mod(m, n), n) != 1)
    fail(ErrorKind::NotCoprime, std::to_string(m) + " is not coprime to " + std::to_string(n));
  std::vector<int> out;
  for (int v : x) out.push_back(static_cast<int>(num::mulmod(num::mod(m, n), v, n)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> sw_extract(int n, const std::vector<int>& x, int p) {
  if (p < 2 || !num::is_prime(p) || n % p != 0)
    fail(ErrorKind::NotADivisor, std::to_string(p) + " is not a prime divisor of " + std::to_string(n));
  std::vector<char> in(n, 0);
  for (int v : x) in[num::mod(v, n)] = 1;
  const int h = n / p;  // H = multiples of h
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (!in[v]) continue;
    int count = 0;
    for (int k = 0; k < p; ++k) count += in[(v + k * h) % n];
    if (count % p != 0) out.push_back(static_cast<int>(num::mulmod(p, v, n)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SRing tensor_sring(const SRing& a, const SRing& b) {
  const int n1 = a.n, n2 = b.n;
  if (num::gcd(n1, n2) != 1) fail(ErrorKind::NotCoprime, "tensor factors need coprime orders");
  const int n = n1 * n2;
  std::vector<int> labels(n);
  for (int x = 0; x < n; ++x) labels[x] = a.class_of[x % n1] * b.rank() + b.class_of[x % n2];
  return sring_from_labels(n, labels);
}

SRing wreath_sring(const SRing& a, const SRing& b) {
  const int n1 = a.n, n2 = b.n, n = n1 * n2;
  std::vector<int> labels(n);
  for (int x = 0; x < n; ++x) labels[x] = (x % n2 == 0) ? a.class_of[x / n2] : a.rank() + b.class_of[x % n2];
  return sring_from_labels(n, labels);
}

}  // namespace wlh::sring
