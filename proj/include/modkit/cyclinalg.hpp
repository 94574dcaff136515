#pragma once

// Dense exact linear algebra over Q(zeta_N).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modkit/cyclotomic.hpp"

namespace modkit {

/// Row-major dense matrix whose entries all live in Q(zeta_N) for one ambient N.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols, unsigned conductor = 1)
      : rows_(rows), cols_(cols), conductor_(conductor), e_(rows * cols, CycNum(0).lift(conductor)) {}

  static CycMatrix identity(std::size_t n, unsigned conductor = 1) {
    CycMatrix m(n, n, conductor);
    CycNum one = CycNum(1).lift(conductor);
    for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = one;
    return m;
  }

  static CycMatrix diagonal(std::span<const CycNum> d) {
    CycMatrix m(d.size(), d.size(), common_conductor(d));
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  static CycMatrix from_rows(const std::vector<std::vector<CycNum>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    unsigned n = 1;
    for (const auto& row : rows) {
      if (row.size() != c) throw ShapeMismatch("ragged rows in matrix literal");
      n = nt::lcm(n, common_conductor(row));
    }
    CycMatrix m(r, c, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.e_[i * c + j] = rows[i][j].lift(n);
    return m;
  }

  static unsigned common_conductor(std::span<const CycNum> xs) {
    unsigned n = 1;
    for (const auto& x : xs) n = nt::lcm(n, x.conductor());
    return n;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  unsigned conductor() const { return conductor_; }

  const CycNum& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  /// Stores v, raising the ambient conductor of the whole matrix when needed.
  void set(std::size_t i, std::size_t j, const CycNum& v) {
    if (conductor_ % v.conductor() != 0) *this = lifted(nt::lcm(conductor_, v.conductor()));
    e_[i * cols_ + j] = v.lift(conductor_);
  }

  CycMatrix lifted(unsigned m) const {
    if (m == conductor_) return *this;
    CycMatrix out(rows_, cols_, m);
    for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k].lift(m);
    return out;
  }

  std::vector<CycNum> row(std::size_t i) const {
    return {e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  /// Submatrix on the given row and column index lists.
  CycMatrix restrict(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const {
    CycMatrix out(rs.size(), cs.size(), conductor_);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) out.e_[i * cs.size() + j] = (*this)(rs[i], cs[j]);
    return out;
  }

  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.e_.size(); ++k)
      if (!(a.e_[k] == b.e_[k])) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  unsigned conductor_ = 1;
  std::vector<CycNum> e_;
};

inline CycMatrix mat_mul(const CycMatrix& a0, const CycMatrix& b0) {
  if (a0.cols() != b0.rows())
    throw ShapeMismatch("mat_mul: " + std::to_string(a0.rows()) + "x" + std::to_string(a0.cols()) + " times " +
                        std::to_string(b0.rows()) + "x" + std::to_string(b0.cols()));
  const unsigned n = nt::lcm(a0.conductor(), b0.conductor());
  const CycMatrix a = a0.lifted(n);
  const CycMatrix b = b0.lifted(n);
  CycMatrix out(a.rows(), b.cols(), n);
  CycAccumulator acc(n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      for (std::size_t k = 0; k < a.cols(); ++k) acc.add_product(a(i, k), b(k, j));
      out.set(i, j, acc.take());
    }
  return out;
}

inline CycMatrix mat_scale(const CycNum& c, const CycMatrix& a) {
  CycMatrix out(a.rows(), a.cols(), nt::lcm(a.conductor(), c.conductor()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, c * a(i, j));
  return out;
}

inline CycMatrix mat_add(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("mat_add: shape mismatch");
  CycMatrix out(a.rows(), a.cols(), nt::lcm(a.conductor(), b.conductor()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j) + b(i, j));
  return out;
}

inline CycMatrix mat_sub(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("mat_sub: shape mismatch");
  CycMatrix out(a.rows(), a.cols(), nt::lcm(a.conductor(), b.conductor()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j) - b(i, j));
  return out;
}

inline CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) { return mat_mul(a, b); }
inline CycMatrix operator*(const CycNum& c, const CycMatrix& a) { return mat_scale(c, a); }
inline CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) { return mat_add(a, b); }
inline CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) { return mat_sub(a, b); }

inline CycMatrix transpose(const CycMatrix& a) {
  CycMatrix out(a.cols(), a.rows(), a.conductor());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(j, i, a(i, j));
  return out;
}

inline CycMatrix conj_transpose(const CycMatrix& a) {
  CycMatrix out(a.cols(), a.rows(), a.conductor());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(j, i, conj(a(i, j)));
  return out;
}

inline CycMatrix mat_pow(const CycMatrix& a, unsigned e) {
  if (!a.square()) throw ShapeMismatch("mat_pow: matrix must be square");
  CycMatrix result = CycMatrix::identity(a.rows(), a.conductor());
  CycMatrix base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// Rank over Q(zeta_N) by Gaussian elimination with first-nonzero pivoting.
inline std::size_t rank(const CycMatrix& a) {
  std::vector<std::vector<CycNum>> m(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) m[i] = a.row(i);
  std::size_t r = 0;
  CycAccumulator acc(a.conductor());
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && m[p][c].is_zero()) ++p;
    if (p == a.rows()) continue;
    std::swap(m[p], m[r]);
    const CycNum pivot_inv = inv(m[r][c]);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (m[i][c].is_zero()) continue;
      const CycNum factor = m[i][c] * pivot_inv;
      for (std::size_t j = c; j < a.cols(); ++j) {
        acc.add(m[i][j]);
        acc.sub_product(factor, m[r][j]);
        m[i][j] = acc.take();
      }
    }
    ++r;
  }
  return r;
}

/// Row i has its single nonzero entry signs[i] in column perm[i].
struct SignedPermutation {
  std::vector<std::size_t> perm;
  std::vector<int> signs;
};

inline std::optional<SignedPermutation> is_signed_permutation(const CycMatrix& a) {
  if (!a.square()) throw ShapeMismatch("is_signed_permutation: matrix must be square");
  const std::size_t n = a.rows();
  SignedPermutation w{std::vector<std::size_t>(n), std::vector<int>(n)};
  std::vector<bool> col_used(n, false);
  const CycNum one = CycNum(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_zero()) continue;
      if (hit) return std::nullopt;
      hit = j;
    }
    if (!hit || col_used[*hit]) return std::nullopt;
    const CycNum& v = a(i, *hit);
    if (v == one)
      w.signs[i] = 1;
    else if (v == -one)
      w.signs[i] = -1;
    else
      return std::nullopt;
    col_used[*hit] = true;
    w.perm[i] = *hit;
  }
  return w;
}

}  // namespace modkit
