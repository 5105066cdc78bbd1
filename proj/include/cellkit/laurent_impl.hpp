#pragma once

#include <algorithm>
#include <sstream>

namespace cellkit {

template <class T>
Laurent<T> Laurent<T>::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  Laurent r;
  for (auto& [e, c] : terms) {
    if (!r.t_.empty() && r.t_.back().first == e)
      r.t_.back().second += c;
    else {
      if (!r.t_.empty() && coeff_is_zero(r.t_.back().second)) r.t_.pop_back();
      r.t_.emplace_back(e, c);
    }
  }
  if (!r.t_.empty() && coeff_is_zero(r.t_.back().second)) r.t_.pop_back();
  return r;
}

template <class T>
T Laurent<T>::coeff(int e) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), e,
                             [](const Term& a, int x) { return a.first < x; });
  if (it != t_.end() && it->first == e) return it->second;
  return T(0);
}

template <class T>
Laurent<T> Laurent<T>::bar() const {
  Laurent r;
  r.t_.reserve(t_.size());
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) r.t_.emplace_back(-it->first, it->second);
  return r;
}

template <class T>
Laurent<T> Laurent<T>::shift(int e) const {
  Laurent r = *this;
  for (auto& t : r.t_) t.first += e;
  return r;
}

template <class T>
Laurent<T> Laurent<T>::dilate(int k) const {
  if (k == 0) return Laurent(eval_one());
  std::vector<Term> v = t_;
  for (auto& t : v) t.first *= k;
  return from_terms(std::move(v));
}

template <class T>
std::tuple<Laurent<T>, Laurent<T>, Laurent<T>> Laurent<T>::split() const {
  Laurent n, z, p;
  for (const auto& t : t_) {
    if (t.first < 0)
      n.t_.push_back(t);
    else if (t.first == 0)
      z.t_.push_back(t);
    else
      p.t_.push_back(t);
  }
  return {n, z, p};
}

template <class T>
Laurent<T> Laurent<T>::negative_part() const {
  Laurent r;
  for (const auto& t : t_)
    if (t.first < 0) r.t_.push_back(t);
  return r;
}

template <class T>
Laurent<T> Laurent<T>::positive_part() const {
  Laurent r;
  for (const auto& t : t_)
    if (t.first > 0) r.t_.push_back(t);
  return r;
}

template <class T>
T Laurent<T>::eval_one() const {
  T s(0);
  for (const auto& t : t_) s += t.second;
  return s;
}

template <class T>
Laurent<T>& Laurent<T>::operator+=(const Laurent& o) {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return *this = o;
  std::vector<Term> r;
  r.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
      r.push_back(std::move(t_[i++]));
    } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
      r.push_back(o.t_[j++]);
    } else {
      T c = t_[i].second + o.t_[j].second;
      if (!coeff_is_zero(c)) r.emplace_back(t_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  t_ = std::move(r);
  return *this;
}

template <class T>
Laurent<T>& Laurent<T>::operator-=(const Laurent& o) {
  return *this += -o;
}

template <class T>
Laurent<T> Laurent<T>::operator-() const {
  Laurent r = *this;
  for (auto& t : r.t_) t.second = -t.second;
  return r;
}

template <class T>
Laurent<T> Laurent<T>::scaled(const T& c) const {
  if (coeff_is_zero(c)) return Laurent();
  Laurent r = *this;
  for (auto& t : r.t_) t.second *= c;
  return r;
}

template <class T>
void Laurent<T>::add_scaled(const Laurent& f, const T& c, int e) {
  if (f.t_.empty() || coeff_is_zero(c)) return;
  Laurent g;
  g.t_.reserve(f.t_.size());
  for (const auto& t : f.t_) g.t_.emplace_back(t.first + e, t.second * c);
  *this += g;
}

template <class T>
Laurent<T> Laurent<T>::mul(const Laurent& a, const Laurent& b) {
  if (a.t_.empty() || b.t_.empty()) return Laurent();
  if (a.t_.size() == 1) return b.scaled(a.t_[0].second).shift(a.t_[0].first);
  if (b.t_.size() == 1) return a.scaled(b.t_[0].second).shift(b.t_[0].first);
  int lo = a.min_exp() + b.min_exp(), hi = a.max_exp() + b.max_exp();
  std::vector<T> dense(hi - lo + 1, T(0));
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) dense[x.first + y.first - lo] += x.second * y.second;
  Laurent r;
  for (int k = 0; k <= hi - lo; ++k)
    if (!coeff_is_zero(dense[k])) r.t_.emplace_back(k + lo, std::move(dense[k]));
  return r;
}

namespace detail {
inline std::string coeff_text(const CheckedInt& c) { return std::to_string(c.value()); }
inline std::string coeff_text(const CycScalar& c) { return c.str(); }
inline std::string coeff_text(const Rational& c) { return c.get_str(); }
}  // namespace detail

template <class T>
std::string Laurent<T>::str(const char* var) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    std::string c = detail::coeff_text(it->second);
    bool simple = c.find_first_of("+-", 1) == std::string::npos;
    if (!first) {
      if (simple && c[0] == '-') {
        os << " - ";
        c = c.substr(1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (it->first == 0) {
      os << (simple ? c : "(" + c + ")");
      continue;
    }
    if (c == "-1" && os.tellp() == 0) {
      os << "-";
    } else if (c != "1") {
      os << (simple ? c : "(" + c + ")") << "*";
    }
    os << var;
    if (it->first != 1) os << "^" << it->first;
  }
  return os.str();
}

}  // namespace cellkit
