#include "cellkit/ring.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cellkit {

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

int euler_phi(int n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n < 1");
  int r = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

namespace {

std::mutex g_cyc_mutex;
std::map<int, std::unique_ptr<std::vector<long>>> g_cyc_cache;

std::vector<long> compute_cyclotomic(int n) {
  // x^n - 1 divided by Phi_d for proper divisors d
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<long>& den = cyclotomic_poly(d);
    int dn = static_cast<int>(den.size()) - 1;
    int dq = static_cast<int>(num.size()) - 1 - dn;
    std::vector<long> quo(dq + 1, 0);
    for (int k = dq; k >= 0; --k) {
      long c = num[k + dn];
      quo[k] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dn; ++j) num[k + j] -= c * den[j];
    }
    num = std::move(quo);
  }
  return num;
}

// Reduces a dense polynomial modulo Phi_n in place and truncates to phi(n) coefficients.
void reduce_mod(std::vector<Rational>& p, int n) {
  const std::vector<long>& f = cyclotomic_poly(n);
  int deg = static_cast<int>(f.size()) - 1;
  for (int k = static_cast<int>(p.size()) - 1; k >= deg; --k) {
    if (sgn(p[k]) == 0) continue;
    Rational c = p[k];
    for (int j = 0; j <= deg; ++j)
      if (f[j] != 0) p[k - deg + j] -= c * f[j];
  }
  p.resize(deg);
}

}  // namespace

const std::vector<long>& cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n < 1");
  {
    std::lock_guard<std::mutex> lk(g_cyc_mutex);
    auto it = g_cyc_cache.find(n);
    if (it != g_cyc_cache.end()) return *it->second;
  }
  std::vector<long> p = (n == 1) ? std::vector<long>{-1, 1} : compute_cyclotomic(n);
  std::lock_guard<std::mutex> lk(g_cyc_mutex);
  auto& slot = g_cyc_cache[n];
  if (!slot) slot = std::make_unique<std::vector<long>>(std::move(p));
  return *slot;
}

CycScalar CycScalar::make(int conductor, std::vector<Rational> coords) {
  if (conductor < 1) throw std::invalid_argument("cyc_make: conductor < 1");
  CycScalar r;
  r.n_ = conductor;
  if (coords.empty()) coords.emplace_back(0);
  reduce_mod(coords, conductor);
  r.c_ = std::move(coords);
  r.normalize();
  return r;
}

CycScalar cyc_make(int conductor, const std::vector<Rational>& coords) {
  if (conductor >= 1 && static_cast<int>(coords.size()) > euler_phi(conductor))
    throw std::invalid_argument("cyc_make: too many coordinates");
  return CycScalar::make(conductor, coords);
}

CycScalar CycScalar::zeta(int n, int k) {
  k = ((k % n) + n) % n;
  std::vector<Rational> p(k + 1, Rational(0));
  p[k] = 1;
  return make(n, std::move(p));
}

CycScalar CycScalar::two_cos(int n, int k) { return zeta(n, k) + zeta(n, -k); }

CycScalar CycScalar::golden() { return CycScalar(1) + two_cos(5, 1); }

CycScalar CycScalar::sqrt_int(int d) {
  switch (d) {
    case 2:
      return two_cos(8, 1);
    case 3:
      return two_cos(12, 1);
    case 5:
      return golden() * CycScalar(2) - CycScalar(1);
    default:
      throw std::invalid_argument("sqrt_int: unsupported radicand");
  }
}

void CycScalar::normalize() {
  if (n_ == 1) {
    c_.resize(1);
    return;
  }
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return;
  c_.resize(1);
  n_ = 1;
}

bool CycScalar::is_zero() const { return n_ == 1 && sgn(c_[0]) == 0; }

bool CycScalar::is_integer() const {
  return n_ == 1 && c_[0].get_den() == 1;
}

CycScalar CycScalar::embed(int n) const {
  if (n % n_ != 0) throw std::invalid_argument("embed: conductor does not divide target");
  if (n == n_) return *this;
  CycScalar r;
  r.n_ = n;
  if (n_ == 1) {
    r.c_.assign(euler_phi(n), Rational(0));
    r.c_[0] = c_[0];
    return r;
  }
  int f = n / n_;
  std::vector<Rational> p((c_.size() - 1) * f + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) p[i * f] = c_[i];
  reduce_mod(p, n);
  p.resize(euler_phi(n), Rational(0));
  r.c_ = std::move(p);
  return r;
}

namespace {
int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

// Raw coordinate vectors at a common conductor.
std::pair<std::vector<Rational>, std::vector<Rational>> common(const CycScalar& a,
                                                               const CycScalar& b, int& n) {
  n = lcm_int(a.conductor(), b.conductor());
  std::vector<Rational> x = a.embed(n).coords(), y = b.embed(n).coords();
  size_t m = euler_phi(n);
  x.resize(m, Rational(0));
  y.resize(m, Rational(0));
  return {std::move(x), std::move(y)};
}
}  // namespace

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  if (n_ == 1 && o.n_ == 1) {
    c_[0] += o.c_[0];
    return *this;
  }
  int n;
  auto [x, y] = common(*this, o, n);
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  n_ = n;
  c_ = std::move(x);
  normalize();
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  if (o.n_ == 1) {
    for (auto& c : c_) c *= o.c_[0];
    normalize();
    return *this;
  }
  if (n_ == 1) {
    Rational q = c_[0];
    *this = o;
    for (auto& c : c_) c *= q;
    normalize();
    return *this;
  }
  int n;
  auto [x, y] = common(*this, o, n);
  std::vector<Rational> p(x.size() + y.size() - 1, Rational(0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      if (sgn(y[j]) != 0) p[i + j] += x[i] * y[j];
  }
  reduce_mod(p, n);
  n_ = n;
  c_ = std::move(p);
  normalize();
  return *this;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.n_ == 1 && b.n_ == 1) return a.c_[0] == b.c_[0];
  int n;
  auto [x, y] = common(a, b, n);
  return x == y;
}

CycScalar CycScalar::galois(int k) const {
  if (n_ == 1) return *this;
  k = ((k % n_) + n_) % n_;
  if (std::gcd(k, n_) != 1) throw std::invalid_argument("galois: exponent not a unit");
  std::vector<Rational> p(n_, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) p[(i * k) % n_] += c_[i];
  return make(n_, std::move(p));
}

CycScalar CycScalar::conj() const { return galois(-1); }

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw std::domain_error("CycScalar: division by zero");
  if (n_ == 1) return CycScalar(Rational(1) / c_[0]);
  int m = static_cast<int>(c_.size());
  // columns: coordinates of x * z^j
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
  CycScalar z = zeta(n_, 1), cur = *this;
  for (int j = 0; j < m; ++j) {
    CycScalar e = cur.embed(n_);
    for (int i = 0; i < m; ++i) a[i][j] = e.c_[i];
    cur *= z;
  }
  a[0][m] = 1;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    while (piv < m && sgn(a[piv][col]) == 0) ++piv;
    if (piv == m) throw std::domain_error("CycScalar: singular multiplication matrix");
    std::swap(a[piv], a[col]);
    Rational inv = Rational(1) / a[col][col];
    for (int j = col; j <= m; ++j) a[col][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == col || sgn(a[i][col]) == 0) continue;
      Rational f = a[i][col];
      for (int j = col; j <= m; ++j) a[i][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> r(m);
  for (int i = 0; i < m; ++i) r[i] = a[i][m];
  return make(n_, std::move(r));
}

double CycScalar::approx() const {
  double s = 0;
  for (size_t i = 0; i < c_.size(); ++i)
    s += c_[i].get_d() * std::cos(2 * M_PI * static_cast<double>(i) / n_);
  return s;
}

int cyc_sign(const CycScalar& x) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.rational());
  if (!x.is_real()) throw std::invalid_argument("cyc_sign: value is not real");
  const auto& c = x.coords();
  int n = x.conductor();
  for (mpfr_prec_t prec = 64; prec <= (1 << 16); prec *= 2) {
    mpfr_t sum, term, ang, pi, abssum;
    mpfr_inits2(prec, sum, term, ang, pi, abssum, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(sum, 1);
    mpfr_set_zero(abssum, 1);
    mpfr_const_pi(pi, MPFR_RNDN);
    for (size_t i = 0; i < c.size(); ++i) {
      if (sgn(c[i]) == 0) continue;
      mpfr_mul_ui(ang, pi, 2 * i, MPFR_RNDN);
      mpfr_div_ui(ang, ang, n, MPFR_RNDN);
      mpfr_cos(ang, ang, MPFR_RNDN);
      mpfr_set_q(term, c[i].get_mpq_t(), MPFR_RNDN);
      mpfr_mul(ang, ang, term, MPFR_RNDN);
      mpfr_add(sum, sum, ang, MPFR_RNDN);
      mpfr_abs(term, term, MPFR_RNDN);
      mpfr_add(abssum, abssum, term, MPFR_RNDU);
    }
    // every step loses at most a few ulps relative to sum |c_i|; the angle error scales with n
    mpfr_mul_ui(abssum, abssum, 16UL * (n + c.size() + 4), MPFR_RNDU);
    mpfr_mul_2si(abssum, abssum, -static_cast<long>(prec), MPFR_RNDU);
    mpfr_abs(term, sum, MPFR_RNDN);
    int s = 0;
    if (mpfr_cmp(term, abssum) > 0) s = mpfr_sgn(sum);
    mpfr_clears(sum, term, ang, pi, abssum, static_cast<mpfr_ptr>(nullptr));
    if (s != 0) return s;
  }
  throw std::runtime_error("cyc_sign: precision limit reached");
}

bool cyc_as_quadratic(const CycScalar& x, int d, Rational& p, Rational& q) {
  if (x.is_rational()) {
    p = x.rational();
    q = 0;
    return true;
  }
  CycScalar r = CycScalar::sqrt_int(d);
  int n = lcm_int(x.conductor(), r.conductor());
  CycScalar xe = x.embed(n), re = r.embed(n);
  size_t i = 1;
  while (i < re.coords().size() && sgn(re.coords()[i]) == 0) ++i;
  if (i == re.coords().size()) return false;
  q = xe.coords()[i] / re.coords()[i];
  p = xe.coords()[0] - q * re.coords()[0];
  return CycScalar(p) + CycScalar(q) * r == x;
}

namespace {
std::string lin_text(const Rational& p, const Rational& q, const char* sym) {
  std::ostringstream os;
  bool has_p = sgn(p) != 0;
  if (has_p) os << p.get_str();
  if (sgn(q) != 0) {
    Rational aq = abs(q);
    if (has_p)
      os << (sgn(q) > 0 ? "+" : "-");
    else if (sgn(q) < 0)
      os << "-";
    if (aq != 1) os << aq.get_str() << "*";
    os << sym;
  }
  return os.str();
}
}  // namespace

std::string CycScalar::str() const {
  if (n_ == 1) return c_[0].get_str();
  Rational p, q;
  if (cyc_as_quadratic(*this, 5, p, q)) {
    // p + q sqrt5 = (p - q) + 2q alpha
    return lin_text(p - q, 2 * q, "α");
  }
  if (cyc_as_quadratic(*this, 2, p, q)) return lin_text(p, q, "√2");
  if (cyc_as_quadratic(*this, 3, p, q)) return lin_text(p, q, "√3");
  std::ostringstream os;
  os << "cyc(" << n_ << ";";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
  os << ")";
  return os.str();
}

CheckedInt& CheckedInt::operator+=(CheckedInt o) {
  if (__builtin_add_overflow(v_, o.v_, &v_)) throw std::overflow_error("integer overflow");
  return *this;
}
CheckedInt& CheckedInt::operator-=(CheckedInt o) {
  if (__builtin_sub_overflow(v_, o.v_, &v_)) throw std::overflow_error("integer overflow");
  return *this;
}
CheckedInt& CheckedInt::operator*=(CheckedInt o) {
  if (__builtin_mul_overflow(v_, o.v_, &v_)) throw std::overflow_error("integer overflow");
  return *this;
}

LaurentPolynomial to_cyc(const IntLaurent& f) {
  std::vector<LaurentPolynomial::Term> t;
  for (const auto& [e, c] : f.terms()) t.emplace_back(e, CycScalar(static_cast<long>(c.value())));
  return LaurentPolynomial::from_terms(std::move(t));
}

LaurentPolynomial to_cyc(const RatLaurent& f) {
  std::vector<LaurentPolynomial::Term> t;
  for (const auto& [e, c] : f.terms()) t.emplace_back(e, CycScalar(c));
  return LaurentPolynomial::from_terms(std::move(t));
}

LaurentPolynomial lp_mul(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  return f * g;
}
LaurentPolynomial lp_bar(const LaurentPolynomial& f) { return f.bar(); }
std::tuple<LaurentPolynomial, LaurentPolynomial, LaurentPolynomial> lp_split(
    const LaurentPolynomial& f) {
  return f.split();
}

bool WeightFunction::equal_parameters() const {
  for (int w : weights)
    if (w != 1) return false;
  return true;
}

WeightFunction weightfn_validate(const std::vector<std::vector<int>>& coxmat,
                                 const std::vector<int>& weights) {
  size_t n = coxmat.size();
  if (weights.size() != n)
    throw std::invalid_argument("weights: expected " + std::to_string(n) + " values");
  for (int w : weights)
    if (w < 0) throw std::invalid_argument("weights: negative weight");
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t) {
      int m = coxmat[s][t];
      if (s != t && m > 0 && m % 2 == 1 && weights[s] != weights[t])
        throw std::invalid_argument("weights: generators " + std::to_string(s) + " and " +
                                    std::to_string(t) + " are conjugate but have different weights");
    }
  return WeightFunction{weights};
}

}  // namespace cellkit
