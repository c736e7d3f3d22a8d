#include <map>
#include <numeric>

#include "wlh/cc.hpp"

namespace wlh::cc {

namespace {

int find(std::vector<int>& uf, int x) {
  while (uf[x] != x) x = uf[x] = uf[uf[x]];
  return x;
}

}  // namespace

BinaryReport is_binary(const CoherentConfiguration& x, int m_max, std::uint64_t tuple_budget) {
  if (!x.is_scheme()) fail(ErrorKind::NotAScheme, "binary test needs a scheme");
  if (m_max < 1) fail(ErrorKind::BadParams, "m_max must be positive");
  const int n = x.size();
  std::uint64_t total = 1;
  for (int i = 0; i < m_max; ++i) {
    total *= static_cast<std::uint64_t>(n);
    if (total > tuple_budget)
      fail(ErrorKind::BudgetExceeded, std::to_string(n) + "^" + std::to_string(m_max) + " tuples exceed the budget");
  }
  const AutGroup aut = automorphism_group(x);
  BinaryReport rep;
  rep.m_max = m_max;
  for (int m = 1; m <= m_max; ++m) {
    std::size_t count = 1;
    for (int i = 0; i < m; ++i) count *= static_cast<std::size_t>(n);
    auto decode = [&](std::size_t code) {
      std::vector<int> t(m);
      for (int i = m - 1; i >= 0; --i) {
        t[i] = static_cast<int>(code % n);
        code /= n;
      }
      return t;
    };
    auto encode = [&](const std::vector<int>& t) {
      std::size_t code = 0;
      for (int v : t) code = code * n + v;
      return code;
    };
    // Orbits of Aut on m-tuples, from the generators.
    std::vector<int> uf(count);
    std::iota(uf.begin(), uf.end(), 0);
    for (const auto& f : aut.generators)
      for (std::size_t code = 0; code < count; ++code) {
        auto t = decode(code);
        for (int& v : t) v = f[v];
        int a = find(uf, static_cast<int>(code)), b = find(uf, static_cast<int>(encode(t)));
        if (a != b) uf[a] = b;
      }
    // Tuples sharing a cell array must share an orbit.
    std::map<std::vector<int>, int> first;
    std::vector<int> arr(static_cast<std::size_t>(m) * m);
    for (std::size_t code = 0; code < count; ++code) {
      auto t = decode(code);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) arr[static_cast<std::size_t>(i) * m + j] = x.cell(t[i], t[j]);
      ++rep.tuples_checked;
      auto [it, fresh] = first.emplace(arr, static_cast<int>(code));
      if (fresh) {
        ++rep.classes_checked;
        continue;
      }
      if (find(uf, it->second) != find(uf, static_cast<int>(code))) {
        rep.binary = false;
        rep.counterexample = std::make_pair(decode(static_cast<std::size_t>(it->second)), t);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace wlh::cc
