#ifndef LIFTPROJ_RATIONAL_HPP_
#define LIFTPROJ_RATIONAL_HPP_

// Exact scalars, dense vectors and matrices over Q.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "liftproj/errors.hpp"

namespace liftproj {

/// Arbitrary-precision fraction. GMP keeps every result in lowest terms with
/// a positive denominator, so no explicit canonicalization is needed after
/// arithmetic; only values built from raw strings must be canonicalized.
using Rational = mpq_class;
using RVec = std::vector<Rational>;

/// Parses `p/q`, an integer `p`, or a finite decimal such as `-0.125`.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find('.', dot + 1) != std::string::npos)
      throw ParseError("malformed rational literal '" + std::string(text) + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-") throw ParseError("malformed rational literal '" + s + "'");
    std::string den = "1" + std::string(frac, '0');
    if (q.set_str(digits + "/" + den, 10) != 0)
      throw ParseError("malformed rational literal '" + std::string(text) + "'");
  } else if (q.set_str(s, 10) != 0) {
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

/// Text form `p/q`, or `p` when the denominator is one.
inline std::string render(const Rational& q) { return q.get_str(10); }

/// p/q in lowest terms (the two-argument mpq_class constructor does not
/// canonicalize).
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline RVec make_rvec(std::initializer_list<long> values) {
  RVec v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

inline Rational dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const RVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

/// Positive rescaling of a nonzero vector to the primitive integer vector on
/// the same ray: multiply by the lcm of denominators, divide by the gcd of
/// numerators. The zero vector is returned unchanged.
inline RVec primitive(const RVec& v) {
  mpz_class l = 1, g = 0;
  for (const auto& q : v) {
    if (sgn(q) == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  RVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * l;
    if (sgn(out[i]) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_num_mpz_t());
  }
  if (g == 0) return out;
  for (auto& q : out) q /= g;
  return out;
}

inline std::string render(const RVec& v, std::string_view sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << render(v[i]);
  }
  return os.str();
}

/// Dense row-major matrix of rationals.
class RMat {
 public:
  RMat() = default;
  RMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RMat(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("RMat: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RMat identity(std::size_t n) {
    RMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RMat diagonal(const RVec& d) {
    RMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static RMat outer(const RVec& u, const RVec& v) {
    RMat m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  RVec column(std::size_t j) const {
    RVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  RVec diag() const {
    RVec c(std::min(rows_, cols_));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (*this)(i, i);
    return c;
  }

  RMat transpose() const {
    RMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RVec operator*(const RVec& v) const {
    if (v.size() != cols_) throw DimensionError("RMat*RVec: dimension mismatch");
    RVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  RMat& operator+=(const RMat& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("RMat+=: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  RMat& operator-=(const RMat& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("RMat-=: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  RMat& operator*=(const Rational& s) {
    for (auto& q : data_) q *= s;
    return *this;
  }
  friend RMat operator+(RMat a, const RMat& b) { return a += b; }
  friend RMat operator-(RMat a, const RMat& b) { return a -= b; }
  friend RMat operator*(RMat a, const Rational& s) { return a *= s; }

  /// Trace inner product <A, B> = tr(A^T B).
  friend Rational frobenius(const RMat& a, const RMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("frobenius: mismatch");
    Rational s = 0;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (sgn(a.data_[k]) != 0 && sgn(b.data_[k]) != 0) s += a.data_[k] * b.data_[k];
    return s;
  }

  bool operator==(const RMat& o) const = default;

  /// u^T M u.
  Rational quadratic_form(const RVec& u) const { return dot(u, (*this) * u); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Matrix text format: a dimension line `n`, then n*n rationals row-major.
inline std::string write_matrix(const RMat& m) {
  if (!m.square()) throw DimensionError("write_matrix: matrix must be square");
  std::ostringstream os;
  os << m.rows() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << render(m(i, j));
    os << "\n";
  }
  return os.str();
}

/// Reads the format produced by write_matrix; `#` starts a comment.
inline RMat read_matrix(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) throw ParseError("matrix file: missing dimension");
  long n = 0;
  try {
    n = std::stol(tokens[0]);
  } catch (const std::exception&) {
    throw ParseError("matrix file: bad dimension '" + tokens[0] + "'");
  }
  if (n <= 0 || static_cast<std::size_t>(n * n + 1) != tokens.size())
    throw ParseError("matrix file: expected " + std::to_string(n * n) + " entries");
  RMat m(n, n);
  for (long k = 0; k < n * n; ++k) m(k / n, k % n) = parse_rational(tokens[k + 1]);
  return m;
}

}  // namespace liftproj

#endif  // LIFTPROJ_RATIONAL_HPP_
