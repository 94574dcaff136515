#pragma once

// Rigorous numeric enclosures of cyclotomic numbers under complex embeddings.
// Only used for analytic claims (total positivity) and numeric cross-checks;
// never for deciding exact identities.

#include <mpfr.h>

#include <complex>
#include <string>
#include <utility>

#include "modkit/cyclotomic.hpp"

namespace modkit {

/// RAII wrapper for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(long precision_bits) { mpfr_init2(v_, precision_bits); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

/// Real interval [mid - rad, mid + rad].
struct RealBall {
  Mpfr mid;
  Mpfr rad;

  explicit RealBall(long prec) : mid(prec), rad(prec) {}

  bool certainly_positive() const { return compare_edge(-1) > 0; }
  bool certainly_negative() const { return compare_edge(+1) < 0; }
  bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }

  bool contains(const Rational& q) const {
    Mpfr d(mpfr_get_prec(mid.get()) + 64);
    mpfr_set_q(d.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(d.get(), d.get(), mid.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    return mpfr_cmp(d.get(), rad.get()) <= 0;
  }

 private:
  // sign of mid + side * rad, rounded away from the decision
  int compare_edge(int side) const {
    Mpfr e(mpfr_get_prec(mid.get()) + 8);
    if (side < 0)
      mpfr_sub(e.get(), mid.get(), rad.get(), MPFR_RNDD);
    else
      mpfr_add(e.get(), mid.get(), rad.get(), MPFR_RNDU);
    return mpfr_sgn(e.get());
  }
};

struct ComplexBall {
  RealBall re;
  RealBall im;

  explicit ComplexBall(long prec) : re(prec), im(prec) {}

  std::complex<double> approx() const { return {re.mid.to_double(), im.mid.to_double()}; }
  bool contains(const Rational& real, const Rational& imag) const {
    return re.contains(real) && im.contains(imag);
  }
};

/// Enclosure of sigma_j(a) where sigma_j: zeta_N -> exp(2 pi i j / N).
///
/// Error model: every coefficient, angle, cos/sin and product is correctly rounded
/// at the working precision, so each term carries at most ~32 ulps relative to |c_k|
/// and each of the phi(N) additions at most one ulp of sum |c_k|. The radius is
/// twice that bound, accumulated with upward rounding.
inline ComplexBall embed_complex(const CycNum& a, long precision_bits, long galois_j = 1) {
  if (precision_bits < 16) throw Error("precision must be at least 16 bits");
  const long prec = precision_bits;
  const unsigned n = a.conductor();
  ComplexBall out(prec);
  Mpfr pi(prec), angle(prec), c(prec), s(prec), q(prec), term(prec), abs_sum(prec), absq(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_zero(abs_sum.get(), 1);
  for (unsigned k = 0; k < a.degree(); ++k) {
    const Rational& coeff = a.coeffs()[k];
    if (sgn(coeff) == 0) continue;
    long e = nt::mod(static_cast<long>(k) * galois_j, n);
    // angle = 2 pi e / N
    mpfr_mul_si(angle.get(), pi.get(), 2 * e, MPFR_RNDN);
    mpfr_div_ui(angle.get(), angle.get(), n, MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_set_q(q.get(), coeff.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.get(), q.get(), c.get(), MPFR_RNDN);
    mpfr_add(out.re.mid.get(), out.re.mid.get(), term.get(), MPFR_RNDN);
    mpfr_mul(term.get(), q.get(), s.get(), MPFR_RNDN);
    mpfr_add(out.im.mid.get(), out.im.mid.get(), term.get(), MPFR_RNDN);
    mpfr_set_q(absq.get(), coeff.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(absq.get(), absq.get(), MPFR_RNDU);
    mpfr_add(abs_sum.get(), abs_sum.get(), absq.get(), MPFR_RNDU);
  }
  // rad = 2 * (32 + phi) * 2^-prec * sum |c_k|
  Mpfr rad(prec);
  mpfr_mul_ui(rad.get(), abs_sum.get(), 2 * (32 + a.degree()), MPFR_RNDU);
  mpfr_div_2si(rad.get(), rad.get(), prec - 1, MPFR_RNDU);
  out.re.rad = rad;
  out.im.rad = rad;
  return out;
}

/// True iff every real embedding of a is provably positive.
/// Throws NotReal if conj(a) != a and InsufficientPrecision on an undecided embedding.
inline bool is_totally_positive(const CycNum& a, long precision_bits) {
  if (!(conj(a) == a)) throw NotReal("total positivity requires a real element, got " + a.to_string());
  if (a.is_rational()) return sgn(a.coeffs()[0]) > 0;
  bool positive = true;
  for (unsigned j : nt::units(a.conductor())) {
    if (2 * j > a.conductor()) continue;  // conjugate embeddings agree on real elements
    ComplexBall z = embed_complex(a, precision_bits, j);
    if (z.re.certainly_positive()) continue;
    if (z.re.certainly_negative()) {
      positive = false;
      continue;
    }
    throw InsufficientPrecision("embedding " + std::to_string(j) + " of " + a.to_string() +
                                " is not separated from 0 at " + std::to_string(precision_bits) + " bits");
  }
  return positive;
}

}  // namespace modkit
