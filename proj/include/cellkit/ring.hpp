#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cellkit {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& q);

int euler_phi(int n);
// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_poly(int n);

// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1).
class CycScalar {
 public:
  CycScalar() : n_(1), c_(1) {}
  CycScalar(long v) : n_(1), c_{Rational(v)} {}
  CycScalar(const Rational& q) : n_(1), c_{q} {}

  static CycScalar make(int conductor, std::vector<Rational> coords);
  static CycScalar zeta(int n, int k = 1);
  // 2cos(2 pi k/n) = z^k + z^-k
  static CycScalar two_cos(int n, int k = 1);
  static CycScalar golden();  // (1+sqrt5)/2
  static CycScalar sqrt_int(int d);  // d in {2,3,5}

  int conductor() const { return n_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const { return n_ == 1; }
  bool is_integer() const;
  const Rational& rational() const { return c_[0]; }  // valid if is_rational()

  CycScalar embed(int n) const;
  CycScalar conj() const;
  bool is_real() const { return conj() == *this; }
  CycScalar inverse() const;
  // Apply the Galois automorphism z -> z^k (gcd(k,n)=1).
  CycScalar galois(int k) const;
  double approx() const;

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator/=(const CycScalar& o) { return *this *= o.inverse(); }
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
  CycScalar operator-() const;
  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  // Symbolic rendering: rationals, p+q*alpha, p+q*sqrt2, p+q*sqrt3, else coordinates.
  std::string str() const;

 private:
  void normalize();
  int n_;
  std::vector<Rational> c_;
};

CycScalar cyc_make(int conductor, const std::vector<Rational>& coords);
// Exact sign of a real cyclotomic number.
int cyc_sign(const CycScalar& x);

// Writes x = p + q*sqrt(d) if possible.
bool cyc_as_quadratic(const CycScalar& x, int d, Rational& p, Rational& q);

// int64 with overflow detection, used for Z-valued Laurent coefficients.
class CheckedInt {
 public:
  constexpr CheckedInt(long long v = 0) : v_(v) {}
  long long value() const { return v_; }
  CheckedInt& operator+=(CheckedInt o);
  CheckedInt& operator-=(CheckedInt o);
  CheckedInt& operator*=(CheckedInt o);
  friend CheckedInt operator+(CheckedInt a, CheckedInt b) { return a += b; }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) { return a -= b; }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) { return a *= b; }
  CheckedInt operator-() const { return CheckedInt(0) - *this; }
  friend bool operator==(CheckedInt a, CheckedInt b) { return a.v_ == b.v_; }
  friend bool operator!=(CheckedInt a, CheckedInt b) { return a.v_ != b.v_; }
  friend bool operator<(CheckedInt a, CheckedInt b) { return a.v_ < b.v_; }

 private:
  long long v_;
};

inline bool coeff_is_zero(const CycScalar& c) { return c.is_zero(); }
inline bool coeff_is_zero(const CheckedInt& c) { return c.value() == 0; }
inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }

// Sparse Laurent polynomial in eps; terms sorted by exponent, no zero coefficients.
template <class T>
class Laurent {
 public:
  using Term = std::pair<int, T>;

  Laurent() = default;
  Laurent(const T& c) {
    if (!coeff_is_zero(c)) t_.emplace_back(0, c);
  }
  Laurent(long c) : Laurent(T(c)) {}
  static Laurent monomial(const T& c, int e) {
    Laurent r;
    if (!coeff_is_zero(c)) r.t_.emplace_back(e, c);
    return r;
  }
  // Builds from arbitrary (exp, coeff) pairs, merging duplicates.
  static Laurent from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == T(1); }
  int min_exp() const { return t_.front().first; }
  int max_exp() const { return t_.back().first; }
  T coeff(int e) const;

  Laurent bar() const;
  Laurent shift(int e) const;
  // Parts with negative, zero and positive exponent.
  std::tuple<Laurent, Laurent, Laurent> split() const;
  Laurent negative_part() const;
  Laurent positive_part() const;
  T eval_one() const;  // value at eps = 1
  // Substitute eps -> eps^k.
  Laurent dilate(int k) const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) { return mul(a, b); }
  Laurent operator-() const;
  Laurent scaled(const T& c) const;
  // this += c * eps^e * f
  void add_scaled(const Laurent& f, const T& c, int e);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a.t_ == b.t_); }

  std::string str(const char* var = "e") const;

 private:
  static Laurent mul(const Laurent& a, const Laurent& b);
  std::vector<Term> t_;
};

using LaurentPolynomial = Laurent<CycScalar>;
using IntLaurent = Laurent<CheckedInt>;
using RatLaurent = Laurent<Rational>;

LaurentPolynomial to_cyc(const IntLaurent& f);
LaurentPolynomial to_cyc(const RatLaurent& f);

LaurentPolynomial lp_mul(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial lp_bar(const LaurentPolynomial& f);
std::tuple<LaurentPolynomial, LaurentPolynomial, LaurentPolynomial> lp_split(
    const LaurentPolynomial& f);

struct WeightFunction {
  std::vector<int> weights;
  int operator[](int s) const { return weights[s]; }
  int size() const { return static_cast<int>(weights.size()); }
  bool equal_parameters() const;
};

// Coxeter matrix entries: 0 encodes infinity.
WeightFunction weightfn_validate(const std::vector<std::vector<int>>& coxmat,
                                 const std::vector<int>& weights);

}  // namespace cellkit

#include "cellkit/laurent_impl.hpp"
