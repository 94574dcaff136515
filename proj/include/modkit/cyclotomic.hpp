#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element is stored in the power basis 1, z, ..., z^(phi(N)-1) of Q[x]/Phi_N(x),
// so two elements of the same conductor are equal iff their coefficient vectors are.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modkit/errors.hpp"

namespace modkit {

using Rational = mpq_class;

namespace nt {

inline long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

inline unsigned lcm(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

inline unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline int mobius(unsigned n) {
  int sign = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

inline std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Residues j in [1, n) coprime to n; {1} for n = 1.
inline std::vector<unsigned> units(unsigned n) {
  if (n == 1) return {1};
  std::vector<unsigned> out;
  for (unsigned j = 1; j < n; ++j)
    if (std::gcd(j, n) == 1) out.push_back(j);
  return out;
}

}  // namespace nt

namespace detail {

using IntPoly = std::vector<long>;

inline long checked_mul(long a, long b) {
  long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("cyclotomic polynomial coefficient overflow");
  return r;
}

inline IntPoly mul_xd_minus_1(const IntPoly& p, unsigned d) {
  IntPoly out(p.size() + d, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + d] += p[i];
    out[i] -= p[i];
  }
  return out;
}

inline IntPoly div_xd_minus_1(IntPoly p, unsigned d) {
  IntPoly q(p.size() - d, 0);
  for (std::size_t i = p.size() - 1; i >= d; --i) {
    q[i - d] = p[i];
    p[i - d] += p[i];
    p[i] = 0;
  }
  for (long c : p)
    if (c != 0) throw Error("inexact cyclotomic division");
  return q;
}

/// Phi_N as the Moebius product of (x^d - 1), low degree first.
inline IntPoly cyclotomic_polynomial(unsigned n) {
  IntPoly num{1};
  std::vector<unsigned> denominators;
  for (unsigned d : nt::divisors(n)) {
    int mu = nt::mobius(n / d);
    if (mu == 1) num = mul_xd_minus_1(num, d);
    if (mu == -1) denominators.push_back(d);
  }
  for (unsigned d : denominators) num = div_xd_minus_1(std::move(num), d);
  return num;
}

struct Field {
  unsigned conductor = 1;
  unsigned degree = 1;
  IntPoly modulus;              // Phi_N, monic, size degree + 1
  std::vector<IntPoly> powers;  // powers[e] = x^e mod Phi_N for e in [0, N)
};

inline std::unique_ptr<Field> build_field(unsigned n) {
  auto f = std::make_unique<Field>();
  f->conductor = n;
  f->modulus = cyclotomic_polynomial(n);
  f->degree = static_cast<unsigned>(f->modulus.size() - 1);
  const unsigned deg = f->degree;
  IntPoly cur(deg, 0);
  cur[0] = deg > 0 ? 1 : 0;
  f->powers.reserve(n);
  for (unsigned e = 0; e < n; ++e) {
    f->powers.push_back(cur);
    // multiply by x and fold the top coefficient back through the monic modulus
    long top = cur[deg - 1];
    for (unsigned i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (unsigned i = 0; i < deg; ++i) cur[i] -= checked_mul(top, f->modulus[i]);
  }
  return f;
}

inline const Field& field(unsigned n) {
  if (n == 0) throw Error("conductor must be positive");
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<Field>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_field(n)).first;
  return *it->second;
}

inline const Field* rational_field() {
  static const Field* f = &field(1);
  return f;
}

/// Reduces a length-N buffer indexed by exponents mod N into the power basis.
inline std::vector<Rational> reduce_redundant(const Field& f, std::vector<Rational>& buf) {
  std::vector<Rational> out(f.degree);
  Rational tmp;
  for (unsigned i = 0; i < f.degree; ++i) out[i] = buf[i];
  for (unsigned e = f.degree; e < f.conductor; ++e) {
    if (sgn(buf[e]) == 0) continue;
    const IntPoly& p = f.powers[e];
    for (unsigned i = 0; i < f.degree; ++i) {
      if (p[i] == 0) continue;
      tmp = buf[e] * p[i];
      out[i] += tmp;
    }
  }
  return out;
}

}  // namespace detail

class CycAccumulator;

/// Element of Q(zeta_N) in canonical power-basis form.
class CycNum {
 public:
  CycNum() : field_(detail::rational_field()), c_(1) {}
  CycNum(long v) : field_(detail::rational_field()), c_{Rational(v)} {}
  CycNum(int v) : CycNum(static_cast<long>(v)) {}
  CycNum(Rational r) : field_(detail::rational_field()), c_{std::move(r)} { c_[0].canonicalize(); }

  /// Power-basis coordinates; length must be phi(N).
  static CycNum from_coeffs(unsigned conductor, std::vector<Rational> coeffs) {
    const auto& f = detail::field(conductor);
    if (coeffs.size() != f.degree)
      throw Error("coefficient vector of length " + std::to_string(coeffs.size()) +
                  " does not match phi(" + std::to_string(conductor) + ") = " + std::to_string(f.degree));
    for (auto& c : coeffs) c.canonicalize();
    return CycNum(&f, std::move(coeffs));
  }

  /// Element sum_e buf[e] z^e with buf of length N (exponents taken mod N).
  static CycNum from_exponents(unsigned conductor, std::vector<Rational> buf) {
    const auto& f = detail::field(conductor);
    if (buf.size() != conductor) throw Error("exponent buffer must have length N");
    return CycNum(&f, detail::reduce_redundant(f, buf));
  }

  unsigned conductor() const { return field_->conductor; }
  unsigned degree() const { return field_->degree; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }
  bool is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }
  const Rational& rational_value() const {
    if (!is_rational()) throw Error("element is not rational: " + to_string());
    return c_[0];
  }

  /// Re-expresses the element in Q(zeta_M); requires N | M.
  CycNum lift(unsigned m) const {
    if (m == conductor()) return *this;
    if (m % conductor() != 0)
      throw Error("cannot lift conductor " + std::to_string(conductor()) + " to " + std::to_string(m));
    const auto& f = detail::field(m);
    const unsigned step = m / conductor();
    std::vector<Rational> buf(m);
    for (unsigned k = 0; k < degree(); ++k) buf[k * step] = c_[k];
    return CycNum(&f, detail::reduce_redundant(f, buf));
  }

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }

  friend CycNum operator+(const CycNum& a, const CycNum& b) {
    if (a.conductor() != b.conductor()) {
      unsigned m = nt::lcm(a.conductor(), b.conductor());
      return a.lift(m) + b.lift(m);
    }
    CycNum r = a;
    for (unsigned i = 0; i < r.degree(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend CycNum operator-(const CycNum& a, const CycNum& b) {
    if (a.conductor() != b.conductor()) {
      unsigned m = nt::lcm(a.conductor(), b.conductor());
      return a.lift(m) - b.lift(m);
    }
    CycNum r = a;
    for (unsigned i = 0; i < r.degree(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b);

  CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
  CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
  CycNum& operator*=(const CycNum& b);
  CycNum& operator/=(const CycNum& b);

  friend bool operator==(const CycNum& a, const CycNum& b) {
    if (a.conductor() == b.conductor()) return a.c_ == b.c_;
    unsigned m = nt::lcm(a.conductor(), b.conductor());
    return a.lift(m).c_ == b.lift(m).c_;
  }

  /// Human-readable form, e.g. "3/2 - z7^2 + 2*z7^3".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    const std::string z = "z" + std::to_string(conductor());
    for (unsigned k = 0; k < degree(); ++k) {
      const Rational& q = c_[k];
      if (sgn(q) == 0) continue;
      Rational mag = abs(q);
      if (first) {
        if (sgn(q) < 0) os << "-";
      } else {
        os << (sgn(q) < 0 ? " - " : " + ");
      }
      first = false;
      if (k == 0) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1) os << mag.get_str() << "*";
      os << z;
      if (k > 1) os << "^" << k;
    }
    return first ? "0" : os.str();
  }

 private:
  friend class CycAccumulator;
  CycNum(const detail::Field* f, std::vector<Rational> c) : field_(f), c_(std::move(c)) {}

  const detail::Field* field_;
  std::vector<Rational> c_;
};

/// Unreduced sum of products over one conductor, reduced once on take().
/// Used for inner products so that each entry is reduced modulo Phi_N only once.
class CycAccumulator {
 public:
  explicit CycAccumulator(unsigned conductor) : f_(&detail::field(conductor)), buf_(conductor) {}

  unsigned conductor() const { return f_->conductor; }

  void add_product(const CycNum& a, const CycNum& b) { fma(a, b, false); }
  void sub_product(const CycNum& a, const CycNum& b) { fma(a, b, true); }

  void add(const CycNum& a) {
    const CycNum& x = a.conductor() == conductor() ? a : lifted(a);
    for (unsigned i = 0; i < f_->degree; ++i) buf_[i] += x.c_[i];
  }

  CycNum take() {
    CycNum r(f_, detail::reduce_redundant(*f_, buf_));
    for (auto& q : buf_) q = 0;
    return r;
  }

 private:
  CycNum lifted(const CycNum& a) const { return a.lift(conductor()); }

  void fma(const CycNum& a0, const CycNum& b0, bool negate) {
    const CycNum& a = a0.conductor() == conductor() ? a0 : (tmp_a_ = lifted(a0));
    const CycNum& b = b0.conductor() == conductor() ? b0 : (tmp_b_ = lifted(b0));
    const unsigned n = f_->conductor;
    const unsigned deg = f_->degree;
    for (unsigned i = 0; i < deg; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (unsigned j = 0; j < deg; ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        unsigned e = i + j;
        if (e >= n) e -= n;
        mpq_mul(tmp_.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
        if (negate)
          mpq_sub(buf_[e].get_mpq_t(), buf_[e].get_mpq_t(), tmp_.get_mpq_t());
        else
          mpq_add(buf_[e].get_mpq_t(), buf_[e].get_mpq_t(), tmp_.get_mpq_t());
      }
    }
  }

  const detail::Field* f_;
  std::vector<Rational> buf_;
  Rational tmp_;
  CycNum tmp_a_, tmp_b_;
};

inline CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.degree() == 1 && b.degree() == 1 && a.conductor() == b.conductor()) {
    CycNum r = a;
    r.c_[0] *= b.c_[0];
    return r;
  }
  CycAccumulator acc(a.conductor() == b.conductor() ? a.conductor() : nt::lcm(a.conductor(), b.conductor()));
  acc.add_product(a, b);
  return acc.take();
}

inline CycNum& CycNum::operator*=(const CycNum& b) { return *this = *this * b; }

/// zeta_N^k in canonical form.
inline CycNum root_of_unity(unsigned n, long k) {
  const auto& f = detail::field(n);
  const auto& p = f.powers[static_cast<unsigned>(nt::mod(k, n))];
  std::vector<Rational> c(f.degree);
  for (unsigned i = 0; i < f.degree; ++i) c[i] = p[i];
  return CycNum::from_coeffs(n, std::move(c));
}

/// Image under zeta_N -> zeta_N^j; j must be a unit mod N.
inline CycNum galois_apply(const CycNum& a, long j) {
  const unsigned n = a.conductor();
  const long jr = nt::mod(j, n);
  if (std::gcd(static_cast<unsigned long>(jr), static_cast<unsigned long>(n)) != 1 && n != 1)
    throw NotCoprime("galois exponent " + std::to_string(j) + " is not coprime to conductor " +
                     std::to_string(n));
  std::vector<Rational> buf(n);
  for (unsigned k = 0; k < a.degree(); ++k) {
    if (sgn(a.coeffs()[k]) == 0) continue;
    buf[static_cast<unsigned>(nt::mod(static_cast<long>(k) * jr, n))] += a.coeffs()[k];
  }
  return CycNum::from_exponents(n, std::move(buf));
}

/// Complex conjugation, realized as zeta -> zeta^-1.
inline CycNum conj(const CycNum& a) { return a.conductor() <= 2 ? a : galois_apply(a, -1); }

inline CycNum inv(const CycNum& a) {
  if (a.is_zero()) throw DivisionByZero();
  if (a.is_rational()) return CycNum::from_coeffs(1, {Rational(1) / a.coeffs()[0]}).lift(a.conductor());
  // a^-1 = (product of the other conjugates) / norm(a)
  CycNum others(1);
  for (unsigned j : nt::units(a.conductor()))
    if (j != 1) others *= galois_apply(a, j);
  CycNum norm = a * others;
  Rational n = norm.rational_value();
  return others * CycNum(Rational(1) / n);
}

inline CycNum operator/(const CycNum& a, const CycNum& b) { return a * inv(b); }
inline CycNum& CycNum::operator/=(const CycNum& b) { return *this = *this / b; }

inline CycNum pow(const CycNum& a, long e) {
  if (e < 0) return pow(inv(a), -e);
  CycNum result = CycNum(1).lift(a.conductor());
  CycNum base = a;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// a = sign * zeta_N^exponent, with order the multiplicative order of a.
struct RootOfUnityWitness {
  unsigned conductor = 1;
  unsigned order = 1;
  long exponent = 0;
  int sign = 1;
};

inline std::optional<RootOfUnityWitness> is_root_of_unity(const CycNum& a) {
  const unsigned n = a.conductor();
  const auto& f = detail::field(n);
  auto matches = [&](unsigned k, int sign) {
    const auto& p = f.powers[k];
    for (unsigned i = 0; i < f.degree; ++i)
      if (a.coeffs()[i] != sign * p[i]) return false;
    return true;
  };
  for (int sign : {1, -1}) {
    for (unsigned k = 0; k < n; ++k) {
      if (!matches(k, sign)) continue;
      // as a power of zeta_2N: exponent 2k, shifted by N for the sign
      unsigned e = (2 * k + (sign < 0 ? n : 0)) % (2 * n);
      unsigned order = 2 * n / std::gcd(e == 0 ? 2 * n : e, 2 * n);
      return RootOfUnityWitness{n, order, static_cast<long>(k), sign};
    }
  }
  return std::nullopt;
}

/// Smallest conductor M | N with a in Q(zeta_M), and a expressed there.
/// Never needed for correctness; used to keep serialized values compact.
inline CycNum minimize_conductor(const CycNum& a) {
  const unsigned n = a.conductor();
  if (a.is_rational()) return CycNum(a.coeffs()[0]);
  for (unsigned m : nt::divisors(n)) {
    if (m == n) break;
    bool fixed = true;
    for (unsigned j : nt::units(n)) {
      if (j % m != 1 % m) continue;
      if (!(galois_apply(a, j) == a)) {
        fixed = false;
        break;
      }
    }
    if (!fixed) continue;
    // Solve sum_k x_k * lift(zeta_M^k) = a over Q.
    const auto& fm = detail::field(m);
    const auto& fn = detail::field(n);
    const unsigned rows = fn.degree, cols = fm.degree;
    std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(cols + 1));
    for (unsigned k = 0; k < cols; ++k) {
      const auto& p = fn.powers[k * (n / m)];
      for (unsigned r = 0; r < rows; ++r) aug[r][k] = p[r];
    }
    for (unsigned r = 0; r < rows; ++r) aug[r][cols] = a.coeffs()[r];
    unsigned pivot_row = 0;
    std::vector<unsigned> pivot_col_of_row;
    for (unsigned c = 0; c < cols && pivot_row < rows; ++c) {
      unsigned p = pivot_row;
      while (p < rows && sgn(aug[p][c]) == 0) ++p;
      if (p == rows) continue;
      std::swap(aug[p], aug[pivot_row]);
      Rational piv = aug[pivot_row][c];
      for (auto& v : aug[pivot_row]) v /= piv;
      for (unsigned r = 0; r < rows; ++r) {
        if (r == pivot_row || sgn(aug[r][c]) == 0) continue;
        Rational factor = aug[r][c];
        for (unsigned cc = 0; cc <= cols; ++cc) aug[r][cc] -= factor * aug[pivot_row][cc];
      }
      pivot_col_of_row.push_back(c);
      ++pivot_row;
    }
    std::vector<Rational> x(cols);
    for (unsigned r = 0; r < pivot_row; ++r) x[pivot_col_of_row[r]] = aug[r][cols];
    CycNum reduced = CycNum::from_coeffs(m, std::move(x));
    if (reduced == a) return reduced;
  }
  return a;
}

}  // namespace modkit
