#include "wlh/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "wlh/common.hpp"

namespace wlh::num {

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }
i64 lcm(i64 a, i64 b) { return std::lcm(a, b); }

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

i64 powmod(i64 a, i64 e, i64 m) {
  if (m == 1) return 0;
  i64 r = 1, b = mod(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 g = m, x = 0, r = mod(a, m), y = 1;
  // Invariant: g = x*a (mod m), r = y*a (mod m).
  while (r != 0) {
    i64 q = g / r;
    g -= q * r;
    std::swap(g, r);
    x -= q * y;
    std::swap(x, y);
  }
  if (g != 1) fail(ErrorKind::NotAUnit, std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return mod(x, m);
}

i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  if (gcd(m1, m2) != 1) fail(ErrorKind::NotCoprime, "crt moduli " + std::to_string(m1) + ", " + std::to_string(m2));
  i64 m = m1 * m2;
  i64 t = mulmod(mod(r2 - r1, m2), invmod(mod(m1, m2), m2), m2);
  return mod(mod(r1, m1) + static_cast<i64>((static_cast<__int128>(m1) * t) % m), m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) n /= d, ++e;
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(i64 n) {
  for (auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<i64> units(i64 n) {
  std::vector<i64> out;
  if (n == 1) return {0};
  for (i64 x = 1; x < n; ++x)
    if (gcd(x, n) == 1) out.push_back(x);
  return out;
}

std::vector<i64> unit_subgroup(i64 n, const std::vector<i64>& gens) {
  std::set<i64> seen{mod(1, n)};
  std::vector<i64> frontier{mod(1, n)};
  for (i64 g : gens)
    if (gcd(mod(g, n), n) != 1 && n > 1) fail(ErrorKind::NotAUnit, std::to_string(g) + " mod " + std::to_string(n));
  while (!frontier.empty()) {
    i64 x = frontier.back();
    frontier.pop_back();
    for (i64 g : gens) {
      i64 y = mulmod(x, g, n);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<i64> square_roots_of_one(i64 n) {
  std::vector<i64> out;
  for (i64 x = 0; x < n; ++x)
    if (mulmod(x, x, n) == mod(1, n)) out.push_back(x);
  return out;
}

}  // namespace wlh::num
