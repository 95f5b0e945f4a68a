#ifndef FRAMECURV_STRUCTURE_HPP
#define FRAMECURV_STRUCTURE_HPP

#include <vector>

#include "framecurv/geometry.hpp"

namespace framecurv {

// Index convention, fixed once for the whole project:
//   c[k][i][j] is the e_k-coefficient of the bracket [e_i, e_j],
// i.e. [e_i, e_j] = Σ_k c[k][i][j] e_k. Everything downstream (frame
// Christoffel symbols, connection and curvature forms, the collapse
// decomposition) is transcribed in this convention; see README for the
// full table.
template <class T>
class StructureTensorT {
 public:
  StructureTensorT() = default;
  explicit StructureTensorT(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n) {}

  int dim() const { return n_; }
  T& at(int k, int i, int j) {
    return v_[static_cast<std::size_t>((k * n_ + i) * n_ + j)];
  }
  const T& at(int k, int i, int j) const {
    return v_[static_cast<std::size_t>((k * n_ + i) * n_ + j)];
  }
  const std::vector<T>& flat() const { return v_; }

 private:
  int n_ = 0;
  std::vector<T> v_;
};

using StructureTensor = StructureTensorT<double>;

/// Coordinate components of [e_I, e_J] at x, computed as
/// Jac(e_J)·E_I − Jac(e_I)·E_J. Identically zero when I == J.
Vec<double> lie_bracket(const ChartManifold& m, int I, int J, const Point& p,
                        const DerivativeEngine& engine = {});

/// Solves E·c[·][I][J] = [e_I, e_J] for every index pair with a
/// partial-pivot factorization of the frame matrix. Antisymmetric in
/// (I, J) with exact zeros on the diagonal.
StructureTensor structure_tensor(const ChartManifold& m, const Point& p,
                                 const DerivativeEngine& engine = {});

/// Fully generic pipeline (frame, jacobians, brackets, solve) used for
/// nesting dual scalars through the extraction.
template <class T>
StructureTensorT<T> structure_tensor_t(const ChartManifold& m,
                                       std::span<const T> x) {
  int n = m.dim();
  Mat<T> e = m.frame_matrix_t<T>(x);
  LuFactorization<T> lu(e);
  if (lu.singular() || std::abs(primal(lu.det())) <= kFrameDetFloor)
    throw SingularFrameError("frame matrix singular on chart '" + m.name() +
                             "'");
  std::vector<Mat<T>> jac;
  jac.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) jac.push_back(jacobian_t<T>(m, a, x));

  StructureTensorT<T> c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Vec<T> bracket =
          jac[static_cast<std::size_t>(j)] * e.col(i) -
          jac[static_cast<std::size_t>(i)] * e.col(j);
      Vec<T> coeff = lu.solve(bracket);
      for (int k = 0; k < n; ++k) c.at(k, i, j) = coeff[k];
    }
  return c;
}

/// Structure tensor plus its derivatives along every frame direction:
/// d[k] holds e_k applied entrywise to x ↦ c(x), where the derivative is
/// taken along the straight line through x with direction E_k(x).
struct StructureJet {
  StructureTensor c;
  std::vector<StructureTensor> d;
};

StructureJet structure_jet(const ChartManifold& m, const Point& p,
                           const DerivativeEngine& engine = {});

/// e_K applied to the scalar field x ↦ c(x)[J][I][J2]; differentiates the
/// whole extraction pipeline rather than any closed form.
double structure_derivative(const ChartManifold& m, int K, int J, int I,
                            int J2, const Point& p,
                            const DerivativeEngine& engine = {});

}  // namespace framecurv

#endif  // FRAMECURV_STRUCTURE_HPP
