#include "framecurv/structure.hpp"

#include <cmath>

namespace framecurv {

namespace {

// FD-mode variant: jacobians by central differences, everything else as in
// the generic pipeline.
StructureTensor structure_tensor_fd(const ChartManifold& m, const Point& p,
                                    const DerivativeEngine& engine) {
  int n = m.dim();
  Mat<double> e = frame_matrix(m, p);
  LuFactorization<double> lu(e);
  std::vector<Mat<double>> jac;
  jac.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) jac.push_back(jacobian(m, a, p, engine));

  StructureTensor c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Vec<double> bracket = jac[static_cast<std::size_t>(j)] * e.col(i) -
                            jac[static_cast<std::size_t>(i)] * e.col(j);
      Vec<double> coeff = lu.solve(bracket);
      for (int k = 0; k < n; ++k) c.at(k, i, j) = coeff[k];
    }
  return c;
}

Point shifted(const Point& p, std::span<const double> dir, double t) {
  Point q = p;
  for (int i = 0; i < p.dim(); ++i)
    q.coords[static_cast<std::size_t>(i)] += t * dir[i];
  return q;
}

}  // namespace

Vec<double> lie_bracket(const ChartManifold& m, int I, int J, const Point& p,
                        const DerivativeEngine& engine) {
  int n = m.dim();
  if (I == J) return Vec<double>(n);
  Mat<double> e = frame_matrix(m, p);
  Mat<double> jac_i = jacobian(m, I, p, engine);
  Mat<double> jac_j = jacobian(m, J, p, engine);
  return jac_j * e.col(I) - jac_i * e.col(J);
}

StructureTensor structure_tensor(const ChartManifold& m, const Point& p,
                                 const DerivativeEngine& engine) {
  engine.validate();
  if (engine.mode == DerivMode::CentralFd)
    return structure_tensor_fd(m, p, engine);
  try {
    return structure_tensor_t<double>(m, p.span());
  } catch (const SingularFrameError&) {
    throw SingularFrameError("frame matrix singular at point " +
                             format_point(p) + " on chart '" + m.name() +
                             "'");
  }
}

StructureJet structure_jet(const ChartManifold& m, const Point& p,
                           const DerivativeEngine& engine) {
  engine.validate();
  int n = m.dim();
  StructureJet jet;
  jet.d.resize(static_cast<std::size_t>(n));

  Mat<double> e = frame_matrix(m, p);

  if (engine.mode == DerivMode::ForwardDual) {
    using D = Dual<double>;
    std::vector<D> coords(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i)
        coords[static_cast<std::size_t>(i)] = D(p[i], e(i, k));
      StructureTensorT<D> ct = structure_tensor_t<D>(
          m, std::span<const D>(coords.data(), coords.size()));
      StructureTensor dk(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) dk.at(a, b, c) = ct.at(a, b, c).b;
      jet.d[static_cast<std::size_t>(k)] = std::move(dk);
      if (k == 0) {
        StructureTensor c0(n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) c0.at(a, b, c) = ct.at(a, b, c).a;
        jet.c = std::move(c0);
      }
    }
    return jet;
  }

  jet.c = structure_tensor_fd(m, p, engine);
  double h = engine.nested_step;
  for (int k = 0; k < n; ++k) {
    std::vector<double> dir(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dir[static_cast<std::size_t>(i)] = e(i, k);
    StructureTensor cp = structure_tensor_fd(m, shifted(p, dir, h), engine);
    StructureTensor cm = structure_tensor_fd(m, shifted(p, dir, -h), engine);
    StructureTensor dk(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          dk.at(a, b, c) = (cp.at(a, b, c) - cm.at(a, b, c)) / (2.0 * h);
    jet.d[static_cast<std::size_t>(k)] = std::move(dk);
  }
  return jet;
}

double structure_derivative(const ChartManifold& m, int K, int J, int I,
                            int J2, const Point& p,
                            const DerivativeEngine& engine) {
  engine.validate();
  int n = m.dim();
  Mat<double> e = frame_matrix(m, p);

  if (engine.mode == DerivMode::ForwardDual) {
    using D = Dual<double>;
    std::vector<D> coords(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      coords[static_cast<std::size_t>(i)] = D(p[i], e(i, K));
    StructureTensorT<D> ct = structure_tensor_t<D>(
        m, std::span<const D>(coords.data(), coords.size()));
    return ct.at(J, I, J2).b;
  }

  std::vector<double> dir(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dir[static_cast<std::size_t>(i)] = e(i, K);
  double h = engine.nested_step;
  StructureTensor cp = structure_tensor_fd(m, shifted(p, dir, h), engine);
  StructureTensor cm = structure_tensor_fd(m, shifted(p, dir, -h), engine);
  return (cp.at(J, I, J2) - cm.at(J, I, J2)) / (2.0 * h);
}

}  // namespace framecurv
