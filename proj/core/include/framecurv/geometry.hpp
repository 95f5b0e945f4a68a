#ifndef FRAMECURV_GEOMETRY_HPP
#define FRAMECURV_GEOMETRY_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framecurv/expr.hpp"
#include "framecurv/linalg.hpp"

namespace framecurv {

struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const {
    return coords[static_cast<std::size_t>(i)];
  }
  std::span<const double> span() const { return coords; }
};

std::string format_point(const Point& p);

struct Interval {
  double lo;
  double hi;
};

/// Hard lower bound on |det| of the frame matrix; below it every
/// downstream solve is meaningless, so this is an error, not a warning.
inline constexpr double kFrameDetFloor = 1e-10;

/// A coordinate chart carrying an orthonormal frame field given by
/// expressions: entry (A, i) is the i-th coordinate component of the
/// frame vector e_A. Immutable after construction and safe to share.
class ChartManifold {
 public:
  ChartManifold(std::string name, std::vector<std::string> coord_names,
                const std::vector<std::vector<std::string>>& frame_rows,
                std::vector<Interval> sample_box,
                std::vector<std::string> frame_labels = {});

  ChartManifold(std::string name, std::vector<std::string> coord_names,
                std::vector<ExprPtr> frame_grid,
                std::vector<Interval> sample_box,
                std::vector<std::string> frame_labels = {});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& coord_names() const { return coord_names_; }
  const std::vector<Interval>& sample_box() const { return sample_box_; }
  const std::vector<std::string>& frame_labels() const { return frame_labels_; }

  /// Component expression i of frame vector A.
  const ExprPtr& frame_expr(int A, int i) const {
    return frame_[static_cast<std::size_t>(A * dim_ + i)];
  }
  const std::vector<ExprPtr>& frame_grid() const { return frame_; }

  /// Chart with the same coordinates and box but a replaced frame grid.
  ChartManifold with_frame(std::vector<ExprPtr> frame_grid,
                           std::string name) const;

  template <class T>
  Mat<T> frame_matrix_t(std::span<const T> x) const {
    Mat<T> e(dim_);
    for (int A = 0; A < dim_; ++A)
      for (int i = 0; i < dim_; ++i)
        e(i, A) = eval_expr<T>(*frame_expr(A, i), x);
    return e;
  }

 private:
  std::string name_;
  int dim_;
  std::vector<std::string> coord_names_;
  std::vector<ExprPtr> frame_;
  std::vector<Interval> sample_box_;
  std::vector<std::string> frame_labels_;
};

enum class DerivMode { ForwardDual, CentralFd };

/// First derivatives use `fd_step`, second-level (nested) derivatives use
/// `nested_step`; both must lie in (0, 1e-2). ForwardDual ignores the
/// steps and propagates dual numbers instead.
struct DerivativeEngine {
  DerivMode mode = DerivMode::ForwardDual;
  double fd_step = 1e-5;
  double nested_step = 1e-4;

  void validate() const;
  static DerivativeEngine forward_dual() { return {}; }
  static DerivativeEngine central_fd() {
    return {DerivMode::CentralFd, 1e-5, 1e-4};
  }
};

/// Columns are the coordinate components of the frame vectors. Throws
/// SingularFrameError when |det| <= 1e-10.
Mat<double> frame_matrix(const ChartManifold& m, const Point& p);

/// g = (E Eᵀ)⁻¹, the unique metric in which the frame is orthonormal.
Mat<double> metric_from_frame(const ChartManifold& m, const Point& p);

template <class T>
Mat<T> metric_from_frame_t(const ChartManifold& m, std::span<const T> x) {
  Mat<T> e = m.frame_matrix_t<T>(x);
  int n = m.dim();
  Mat<T> gram(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T s{};
      for (int k = 0; k < n; ++k) s = s + e(i, k) * e(j, k);
      gram(i, j) = s;
    }
  LuFactorization<T> lu(gram);
  if (lu.singular() || std::abs(primal(lu.det())) <= kFrameDetFloor * kFrameDetFloor)
    throw SingularFrameError("frame Gram matrix is numerically singular on chart '" +
                             m.name() + "'");
  Mat<T> g = lu.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      T avg = (g(i, j) + g(j, i)) * 0.5;
      g(i, j) = avg;
      g(j, i) = avg;
    }
  return g;
}

/// Entry (i, j) = ∂_j of coordinate component i of frame vector A.
Mat<double> jacobian(const ChartManifold& m, int frame_index, const Point& p,
                     const DerivativeEngine& engine = {});

template <class T>
Mat<T> jacobian_t(const ChartManifold& m, int frame_index,
                  std::span<const T> x) {
  int n = m.dim();
  Mat<T> jac(n);
  std::vector<Dual<T>> seeded(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k)
      seeded[static_cast<std::size_t>(k)] =
          Dual<T>(x[static_cast<std::size_t>(k)], T(k == j ? 1.0 : 0.0));
    for (int i = 0; i < n; ++i) {
      Dual<T> v = eval_expr<Dual<T>>(
          *m.frame_expr(frame_index, i),
          std::span<const Dual<T>>(seeded.data(), seeded.size()));
      jac(i, j) = v.b;
    }
  }
  return jac;
}

/// A scalar field with an optional exact forward-mode derivative hook
/// (present when the field is expression-backed).
struct ScalarField {
  std::function<double(std::span<const double>)> value;
  std::function<DualValue(std::span<const double>, std::span<const double>)>
      dual;  // may be empty

  static ScalarField from_expr(ExprPtr e);
};

/// d/dt|₀ field(point + t·direction). ForwardDual uses the field's dual
/// hook when present and falls back to central differences otherwise.
double directional_derivative(const DerivativeEngine& engine,
                              const ScalarField& field, const Point& p,
                              std::span<const double> direction);

}  // namespace framecurv

#endif  // FRAMECURV_GEOMETRY_HPP
