#pragma once

#include <cstdint>
#include <vector>

namespace wlh::num {

using i64 = std::int64_t;
using u64 = std::uint64_t;

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
/// Least non-negative residue of a mod m (m > 0).
i64 mod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);
/// Inverse of a mod m; throws NotAUnit when gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);
/// Unique x mod m1*m2 with x = r1 (mod m1), x = r2 (mod m2); moduli coprime.
i64 crt(i64 r1, i64 m1, i64 r2, i64 m2);

bool is_prime(i64 n);
/// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<i64, int>> factorize(i64 n);
bool is_squarefree(i64 n);
/// All positive divisors in increasing order.
std::vector<i64> divisors(i64 n);
/// Residues x in [1, n) with gcd(x, n) = 1.
std::vector<i64> units(i64 n);
/// Closure of gens under multiplication mod n (gens must be units), sorted.
std::vector<i64> unit_subgroup(i64 n, const std::vector<i64>& gens);
/// Solutions of x^2 = 1 (mod n), sorted.
std::vector<i64> square_roots_of_one(i64 n);

}  // namespace wlh::num
