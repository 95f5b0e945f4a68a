#ifndef FRAMECURV_DUAL_HPP
#define FRAMECURV_DUAL_HPP

#include <cmath>

namespace framecurv {

/// Forward-mode dual number: value `a` plus directional-derivative
/// accumulator `b`. Nesting (Dual<Dual<double>>) yields second derivatives
/// exact to roundoff, which the coordinate curvature route relies on.
template <class T>
struct Dual {
  T a{};  // value
  T b{};  // tangent

  Dual() = default;
  Dual(double v) : a(v), b() {}  // NOLINT: implicit lift of constants
  Dual(T value, T tangent) : a(value), b(tangent) {}
};

inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& d) {
  return primal(d.a);
}

inline bool has_nonzero_tangent(double) { return false; }
template <class T>
bool has_nonzero_tangent(const Dual<T>& d);
inline bool nonzero_anywhere(double x) { return x != 0.0; }
template <class T>
bool nonzero_anywhere(const Dual<T>& d) {
  return nonzero_anywhere(d.a) || nonzero_anywhere(d.b);
}
template <class T>
bool has_nonzero_tangent(const Dual<T>& d) {
  return nonzero_anywhere(d.b) || has_nonzero_tangent(d.a);
}

template <class T>
Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.a + y.a, x.b + y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.a - y.a, x.b - y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x) {
  return {-x.a, -x.b};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.a * y.a, x.b * y.a + x.a * y.b};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  T q = x.a / y.a;
  return {q, (x.b - q * y.b) / y.a};
}

template <class T>
Dual<T> operator*(double s, const Dual<T>& x) {
  return Dual<T>(s) * x;
}
template <class T>
Dual<T> operator*(const Dual<T>& x, double s) {
  return x * Dual<T>(s);
}
template <class T>
Dual<T> operator+(const Dual<T>& x, double s) {
  return x + Dual<T>(s);
}
template <class T>
Dual<T> operator-(const Dual<T>& x, double s) {
  return x - Dual<T>(s);
}
template <class T>
Dual<T> operator/(const Dual<T>& x, double s) {
  return x / Dual<T>(s);
}

// Reciprocal trigonometric helpers for the plain-double base case.
inline double cot(double x) { return std::cos(x) / std::sin(x); }
inline double sec(double x) { return 1.0 / std::cos(x); }
inline double csc(double x) { return 1.0 / std::sin(x); }

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.a), x.b * cos(x.a)};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.a), -(x.b * sin(x.a))};
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
  using std::cos;
  using std::tan;
  T c = cos(x.a);
  return {tan(x.a), x.b / (c * c)};
}
template <class T>
Dual<T> cot(const Dual<T>& x) {
  using std::sin;
  T s = sin(x.a);
  return {cot(x.a), -(x.b / (s * s))};
}
template <class T>
Dual<T> sec(const Dual<T>& x) {
  T v = sec(x.a);
  using std::tan;
  return {v, x.b * v * tan(x.a)};
}
template <class T>
Dual<T> csc(const Dual<T>& x) {
  T v = csc(x.a);
  return {v, -(x.b * v * cot(x.a))};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.a);
  return {e, x.b * e};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.a), x.b / x.a};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.a);
  return {s, x.b / (s + s)};
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {sinh(x.a), x.b * cosh(x.a)};
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {cosh(x.a), x.b * sinh(x.a)};
}
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  using std::cosh;
  using std::tanh;
  T c = cosh(x.a);
  return {tanh(x.a), x.b / (c * c)};
}

}  // namespace framecurv

#endif  // FRAMECURV_DUAL_HPP
