#ifndef FRAMECURV_CURVATURE_HPP
#define FRAMECURV_CURVATURE_HPP

#include <span>
#include <vector>

#include "framecurv/structure.hpp"

namespace framecurv {

/// Γ[k][i][j] = ½(c[k][i][j] − c[i][j][k] + c[j][k][i]), the coefficient of
/// e_k in ∇_{e_i} e_j for the Levi-Civita connection of the frame metric.
class FrameChristoffel {
 public:
  FrameChristoffel() = default;
  explicit FrameChristoffel(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n) {}
  int dim() const { return n_; }
  double& at(int k, int i, int j) {
    return v_[static_cast<std::size_t>((k * n_ + i) * n_ + j)];
  }
  double at(int k, int i, int j) const {
    return v_[static_cast<std::size_t>((k * n_ + i) * n_ + j)];
  }

 private:
  int n_ = 0;
  std::vector<double> v_;
};

FrameChristoffel frame_christoffel(const StructureTensor& c);

/// ω[j][i][p] is the e^p-coefficient of the connection 1-form ω^j_i,
/// i.e. ω[j][i][p] = Γ[j][p][i]; skew in (j, i) for an orthonormal frame.
class ConnectionForm {
 public:
  ConnectionForm() = default;
  explicit ConnectionForm(const FrameChristoffel& gamma);
  int dim() const { return n_; }
  double at(int j, int i, int p) const {
    return v_[static_cast<std::size_t>((j * n_ + i) * n_ + p)];
  }

 private:
  int n_ = 0;
  std::vector<double> v_;
};

/// Ω[k][j][m][p] = Ω^k_j(e_m, e_p); antisymmetric in (m, p) by
/// construction and skew in (k, j) up to derivative noise. The full
/// double trace Σ Ω[k][j][k][j] is the scalar curvature.
class CurvatureForm {
 public:
  CurvatureForm() = default;
  explicit CurvatureForm(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n * n) {}
  int dim() const { return n_; }
  double& at(int k, int j, int m, int p) {
    return v_[static_cast<std::size_t>(((k * n_ + j) * n_ + m) * n_ + p)];
  }
  double at(int k, int j, int m, int p) const {
    return v_[static_cast<std::size_t>(((k * n_ + j) * n_ + m) * n_ + p)];
  }
  double scalar() const;

 private:
  int n_ = 0;
  std::vector<double> v_;
};

CurvatureForm curvature_two_form(const ChartManifold& m, const Point& p,
                                 const DerivativeEngine& engine = {});

/// Scalar curvature restricted to a sub-list of frame indices:
///   S = Σ 2 e_k(c[j][k][j]) + Σ [ −c[k][i][k]·c[j][i][j]
///       − ½ c[i][k][j]·c[k][i][j] − ¼ c[i][k][j]² ]
/// with every index running over `idx`. The full index list gives the
/// scalar curvature of the frame metric.
double scalar_curvature_restricted(const StructureJet& jet,
                                   std::span<const int> idx);

/// Scalar curvature of the metric in which the chart frame is orthonormal.
double scalar_curvature_frame(const ChartManifold& m, const Point& p,
                              const DerivativeEngine& engine = {});

/// Derivative-free form for constant structure functions (Lie frames):
/// the quadratic sums of the frame formula only.
double scalar_curvature_lie(const StructureTensor& constants);

/// Independent verification route: coordinate Christoffel symbols from the
/// recovered metric, curvature tensor, Ricci contraction, metric trace.
/// Never touches the structure-function formula. In CentralFd mode a
/// step-halving estimate guards against precision loss (DegeneracyError
/// when the two estimates agree to fewer than four significant digits).
double scalar_curvature_coordinate(const ChartManifold& m, const Point& p,
                                   const DerivativeEngine& engine = {});

}  // namespace framecurv

#endif  // FRAMECURV_CURVATURE_HPP
