#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace inctree {

// Truncated power series with coefficients 0..order.
template <class T>
class PowerSeries {
public:
  explicit PowerSeries(std::size_t order) : c_(order + 1, T(0)) {}
  PowerSeries(std::size_t order, std::vector<T> c) : c_(std::move(c)) { c_.resize(order + 1, T(0)); }

  static PowerSeries constant(std::size_t order, T v) {
    PowerSeries s(order);
    s.c_[0] = v;
    return s;
  }
  static PowerSeries x(std::size_t order) {
    PowerSeries s(order);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }
  // (1-x)^(-a) = sum_n binom(a+n-1, n) x^n
  static PowerSeries one_minus_x_pow_neg(std::size_t order, T a) {
    PowerSeries s(order);
    s.c_[0] = T(1);
    for (std::size_t n = 1; n <= order; ++n) s.c_[n] = s.c_[n - 1] * (a + T(n - 1)) / T(n);
    return s;
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }

  PowerSeries& operator+=(const PowerSeries& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  PowerSeries& operator*=(T s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, T s) { return a *= s; }
  friend PowerSeries operator*(T s, PowerSeries a) { return a *= s; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(a.order());
    for (std::size_t i = 0; i <= a.order(); ++i) {
      for (std::size_t j = 0; i + j <= a.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  PowerSeries inverse() const {
    if (c_[0] == T(0)) throw std::domain_error("power series with zero constant term is not invertible");
    PowerSeries r(order());
    r.c_[0] = T(1) / c_[0];
    for (std::size_t n = 1; n <= order(); ++n) {
      T acc(0);
      for (std::size_t k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
      r.c_[n] = -acc / c_[0];
    }
    return r;
  }
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return a * b.inverse(); }

  PowerSeries derivative() const {
    PowerSeries r(order());
    for (std::size_t k = 1; k <= order(); ++k) r.c_[k - 1] = c_[k] * T(k);
    return r;
  }
  // Antiderivative vanishing at 0; the top coefficient is dropped.
  PowerSeries integral() const {
    PowerSeries r(order());
    for (std::size_t k = 1; k <= order(); ++k) r.c_[k] = c_[k - 1] / T(k);
    return r;
  }

  // log requires a positive constant term; for exact types it must be 1.
  PowerSeries log() const {
    PowerSeries r = (derivative() / *this).integral();
    if constexpr (std::is_floating_point_v<T>) {
      r.c_[0] = std::log(c_[0]);
    } else if (c_[0] != T(1)) {
      throw std::domain_error("exact series log needs constant term 1");
    }
    return r;
  }
  // E' = E S'. For exact types the constant term must be 0.
  PowerSeries exp() const {
    PowerSeries r(order());
    if constexpr (std::is_floating_point_v<T>) {
      r.c_[0] = std::exp(c_[0]);
    } else if (c_[0] != T(0)) {
      throw std::domain_error("exact series exp needs constant term 0");
    } else {
      r.c_[0] = T(1);
    }
    for (std::size_t n = 1; n <= order(); ++n) {
      T acc(0);
      for (std::size_t k = 1; k <= n; ++k) acc += T(k) * c_[k] * r.c_[n - k];
      r.c_[n] = acc / T(n);
    }
    return r;
  }

private:
  std::vector<T> c_;
};

}  // namespace inctree
