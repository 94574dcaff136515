#pragma once

// Square roots of structured cyclotomic numbers.
//
// Handles x = r * u * t^2 with r rational, u a root of unity and t one or two factors
// (1 - zeta^a)^(+-1 or +-2). sqrt(r) is assembled from quadratic Gauss sums, sqrt(u) from
// the doubled-order root of unity. Every candidate is squared and compared exactly.

#include <optional>
#include <utility>
#include <vector>

#include "modkit/cyclotomic.hpp"

namespace modkit {

namespace detail {

/// y = r * zeta_N^k with r rational, if possible.
inline std::optional<std::pair<Rational, long>> as_rational_root(const CycNum& y) {
  if (y.is_zero()) return std::nullopt;
  const unsigned n = y.conductor();
  const auto& f = field(n);
  const auto& c = y.coeffs();
  unsigned i0 = 0;
  while (sgn(c[i0]) == 0) ++i0;
  Rational r;
  for (unsigned k = 0; k < n; ++k) {
    const auto& p = f.powers[k];
    if (p[i0] == 0) continue;
    r = c[i0] / p[i0];
    bool ok = true;
    for (unsigned i = 0; i < f.degree && ok; ++i) ok = c[i] == r * p[i];
    if (ok) return std::make_pair(r, static_cast<long>(k));
  }
  return std::nullopt;
}

inline long legendre(long a, long p) {
  long result = 1, base = nt::mod(a, p), e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

/// Positive square root of a prime.
inline CycNum sqrt_prime(unsigned p) {
  if (p == 2) return root_of_unity(8, 1) + root_of_unity(8, 7);
  std::vector<Rational> buf(p);
  for (unsigned a = 1; a < p; ++a) buf[a] = legendre(a, p);
  CycNum g = CycNum::from_exponents(p, std::move(buf));
  // g^2 = p for p = 1 mod 4 and -p otherwise; the Gauss sum is sqrt(p) resp. i sqrt(p)
  return p % 4 == 1 ? g : -(root_of_unity(4, 1) * g);
}

/// Positive square root of a positive rational; odd-multiplicity primes above the cap are refused.
inline std::optional<CycNum> sqrt_positive_rational(const Rational& r, unsigned long prime_cap = 2000) {
  mpz_class m = r.get_num() * r.get_den();
  mpz_class outside = 1;
  CycNum root(1);
  for (unsigned long p = 2; m > 1; ++p) {
    if (p > 1000000) return std::nullopt;
    if (mpz_class(p) * p > m) {
      // what is left is a prime
      if (m > prime_cap) return std::nullopt;
      root *= sqrt_prime(static_cast<unsigned>(m.get_ui()));
      break;
    }
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) outside *= p;
    if (e % 2 == 1) {
      if (p > prime_cap) return std::nullopt;
      root *= sqrt_prime(static_cast<unsigned>(p));
    }
  }
  return root * CycNum(Rational(outside, r.get_den()));
}

/// sqrt(r * zeta_N^k) for nonzero rational r.
inline std::optional<CycNum> sqrt_rational_root(const Rational& r, long k, unsigned n) {
  CycNum unit_part = n % 2 == 1 ? root_of_unity(n, k * static_cast<long>((n + 1) / 2)) : root_of_unity(2 * n, k);
  Rational mag = r;
  if (sgn(mag) < 0) {
    mag = -mag;
    unit_part *= root_of_unity(4, 1);
  }
  auto s = sqrt_positive_rational(mag);
  if (!s) return std::nullopt;
  return unit_part * *s;
}

}  // namespace detail

/// Some y in a cyclotomic field with y^2 = x, for structured x; nullopt when no pattern matches.
inline std::optional<CycNum> sqrt_in_field(const CycNum& x) {
  if (x.is_zero()) return CycNum(0);
  const unsigned n = x.conductor();

  auto attempt = [&](const CycNum& t, const CycNum& x_over_t2) -> std::optional<CycNum> {
    auto rr = detail::as_rational_root(x_over_t2);
    if (!rr) return std::nullopt;
    auto s = detail::sqrt_rational_root(rr->first, rr->second, n);
    if (!s) return std::nullopt;
    CycNum y = t * *s;
    if (!(y * y == x)) return std::nullopt;
    return minimize_conductor(y);
  };

  if (auto y = attempt(CycNum(1), x)) return y;

  std::vector<CycNum> b, b_inv;
  for (unsigned a = 1; a < n; ++a) {
    b.push_back(CycNum(1) - root_of_unity(n, a));
    b_inv.push_back(inv(b.back()));
  }
  for (int e : {1, -1, 2, -2}) {
    for (std::size_t a = 0; a < b.size(); ++a) {
      const CycNum t = e > 0 ? pow(b[a], e) : pow(b_inv[a], -e);
      const CycNum w = e > 0 ? pow(b_inv[a], 2 * e) : pow(b[a], -2 * e);
      if (auto y = attempt(t, x * w)) return y;
    }
  }
  if (n > 60) return std::nullopt;
  for (int e1 : {1, -1})
    for (int e2 : {1, -1})
      for (std::size_t a = 0; a < b.size(); ++a)
        for (std::size_t c = a; c < b.size(); ++c) {
          const CycNum t = (e1 > 0 ? b[a] : b_inv[a]) * (e2 > 0 ? b[c] : b_inv[c]);
          const CycNum w = pow(e1 > 0 ? b_inv[a] : b[a], 2) * pow(e2 > 0 ? b_inv[c] : b[c], 2);
          if (auto y = attempt(t, x * w)) return y;
        }
  return std::nullopt;
}

}  // namespace modkit
