#ifndef FRAMECURV_LINALG_HPP
#define FRAMECURV_LINALG_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "framecurv/dual.hpp"
#include "framecurv/errors.hpp"

namespace framecurv {

// Charts are at most 8-dimensional; everything lives on the stack so the
// whole pipeline can be instantiated with nested dual scalars.
inline constexpr int kMaxDim = 8;

template <class T>
class Vec {
 public:
  Vec() = default;
  explicit Vec(int n) : n_(n) {}
  int size() const { return n_; }
  T& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  const T& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

 private:
  int n_ = 0;
  std::array<T, kMaxDim> v_{};
};

template <class T>
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n) : n_(n) {}
  int size() const { return n_; }
  T& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i * n_ + j)];
  }
  const T& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i * n_ + j)];
  }

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  Vec<T> col(int j) const {
    Vec<T> c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
  }

 private:
  int n_ = 0;
  std::array<T, kMaxDim * kMaxDim> a_{};
};

template <class T>
Vec<T> operator*(const Mat<T>& m, const Vec<T>& v) {
  int n = m.size();
  Vec<T> r(n);
  for (int i = 0; i < n; ++i) {
    T s{};
    for (int j = 0; j < n; ++j) s = s + m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  int n = a.size();
  Mat<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T s{};
      for (int k = 0; k < n; ++k) s = s + a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

template <class T>
Vec<T> operator-(const Vec<T>& x, const Vec<T>& y) {
  Vec<T> r(x.size());
  for (int i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

/// Partial-pivot LU factorization; pivoting compares primal magnitudes so
/// the factorization works for nested dual scalars as well.
template <class T>
class LuFactorization {
 public:
  explicit LuFactorization(Mat<T> m) : lu_(m), n_(m.size()) {
    for (int k = 0; k < n_; ++k) perm_[static_cast<std::size_t>(k)] = k;
    for (int k = 0; k < n_; ++k) {
      int p = k;
      double best = std::abs(primal(lu_(k, k)));
      for (int i = k + 1; i < n_; ++i) {
        double m_ik = std::abs(primal(lu_(i, k)));
        if (m_ik > best) {
          best = m_ik;
          p = i;
        }
      }
      if (best == 0.0) {
        singular_ = true;
        return;
      }
      if (p != k) {
        for (int j = 0; j < n_; ++j) {
          T tmp = lu_(k, j);
          lu_(k, j) = lu_(p, j);
          lu_(p, j) = tmp;
        }
        std::swap(perm_[static_cast<std::size_t>(k)],
                  perm_[static_cast<std::size_t>(p)]);
        parity_ = -parity_;
      }
      for (int i = k + 1; i < n_; ++i) {
        lu_(i, k) = lu_(i, k) / lu_(k, k);
        for (int j = k + 1; j < n_; ++j)
          lu_(i, j) = lu_(i, j) - lu_(i, k) * lu_(k, j);
      }
    }
  }

  bool singular() const { return singular_; }

  T det() const {
    if (singular_) return T(0.0);
    T d(parity_);
    for (int k = 0; k < n_; ++k) d = d * lu_(k, k);
    return d;
  }

  Vec<T> solve(const Vec<T>& b) const {
    Vec<T> x(n_);
    for (int i = 0; i < n_; ++i)
      x[i] = b[perm_[static_cast<std::size_t>(i)]];
    for (int i = 1; i < n_; ++i)
      for (int j = 0; j < i; ++j) x[i] = x[i] - lu_(i, j) * x[j];
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j) x[i] = x[i] - lu_(i, j) * x[j];
      x[i] = x[i] / lu_(i, i);
    }
    return x;
  }

  Mat<T> inverse() const {
    Mat<T> inv(n_);
    for (int j = 0; j < n_; ++j) {
      Vec<T> e(n_);
      e[j] = T(1.0);
      Vec<T> x = solve(e);
      for (int i = 0; i < n_; ++i) inv(i, j) = x[i];
    }
    return inv;
  }

 private:
  Mat<T> lu_;
  int n_;
  std::array<int, kMaxDim> perm_{};
  double parity_ = 1.0;
  bool singular_ = false;
};

}  // namespace framecurv

#endif  // FRAMECURV_LINALG_HPP
