#include "framecurv/curvature.hpp"

#include <cmath>

namespace framecurv {

FrameChristoffel frame_christoffel(const StructureTensor& c) {
  int n = c.dim();
  FrameChristoffel g(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g.at(k, i, j) =
            0.5 * (c.at(k, i, j) - c.at(i, j, k) + c.at(j, k, i));
  return g;
}

ConnectionForm::ConnectionForm(const FrameChristoffel& gamma)
    : n_(gamma.dim()),
      v_(static_cast<std::size_t>(n_) * n_ * n_) {
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i)
      for (int p = 0; p < n_; ++p)
        v_[static_cast<std::size_t>((j * n_ + i) * n_ + p)] =
            gamma.at(j, p, i);
}

double CurvatureForm::scalar() const {
  double s = 0.0;
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j) s += at(k, j, k, j);
  return s;
}

CurvatureForm curvature_two_form(const ChartManifold& m, const Point& p,
                                 const DerivativeEngine& engine) {
  StructureJet jet = structure_jet(m, p, engine);
  int n = m.dim();
  const StructureTensor& c = jet.c;
  FrameChristoffel gam = frame_christoffel(c);

  // e_q(Γ[k][i][j]) from the jet
  auto dgam = [&](int q, int k, int i, int j) {
    const StructureTensor& d = jet.d[static_cast<std::size_t>(q)];
    return 0.5 * (d.at(k, i, j) - d.at(i, j, k) + d.at(j, k, i));
  };

  CurvatureForm omega(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int mm = 0; mm < n; ++mm)
        for (int pp = 0; pp < n; ++pp) {
          double v = dgam(mm, k, pp, j) - dgam(pp, k, mm, j);
          for (int i = 0; i < n; ++i) v -= gam.at(k, i, j) * c.at(i, mm, pp);
          for (int l = 0; l < n; ++l)
            v += gam.at(k, mm, l) * gam.at(l, pp, j) -
                 gam.at(k, pp, l) * gam.at(l, mm, j);
          omega.at(k, j, mm, pp) = v;
        }
  return omega;
}

double scalar_curvature_restricted(const StructureJet& jet,
                                   std::span<const int> idx) {
  const StructureTensor& c = jet.c;
  double s = 0.0;
  for (int k : idx)
    for (int j : idx) s += 2.0 * jet.d[static_cast<std::size_t>(k)].at(j, k, j);
  for (int i : idx)
    for (int j : idx)
      for (int k : idx) {
        double cikj = c.at(i, k, j);
        s += -c.at(k, i, k) * c.at(j, i, j) - 0.5 * cikj * c.at(k, i, j) -
             0.25 * cikj * cikj;
      }
  return s;
}

double scalar_curvature_frame(const ChartManifold& m, const Point& p,
                              const DerivativeEngine& engine) {
  StructureJet jet = structure_jet(m, p, engine);
  std::vector<int> idx(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < m.dim(); ++i) idx[static_cast<std::size_t>(i)] = i;
  return scalar_curvature_restricted(jet, idx);
}

double scalar_curvature_lie(const StructureTensor& c) {
  int n = c.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double cikj = c.at(i, k, j);
        s += -c.at(k, i, k) * c.at(j, i, j) - 0.5 * cikj * c.at(k, i, j) -
             0.25 * cikj * cikj;
      }
  return s;
}

namespace {

template <class T>
struct Arr3 {
  explicit Arr3(int n) : n(n), v(static_cast<std::size_t>(n) * n * n) {}
  int n;
  std::vector<T> v;
  T& at(int k, int i, int j) {
    return v[static_cast<std::size_t>((k * n + i) * n + j)];
  }
  const T& at(int k, int i, int j) const {
    return v[static_cast<std::size_t>((k * n + i) * n + j)];
  }
};

// Coordinate Christoffel symbols Γ^k_{ij} of the recovered metric at a
// T-valued coordinate tuple. The metric derivative ∂g is taken with a
// nested dual pass in ForwardDual mode and with central differences of
// width fd_step otherwise.
template <class T>
Arr3<T> coord_christoffel(const ChartManifold& m, std::span<const T> x,
                          const DerivativeEngine& engine) {
  int n = m.dim();
  Mat<T> g(n);
  std::vector<Mat<T>> dg;
  dg.reserve(static_cast<std::size_t>(n));

  if (engine.mode == DerivMode::ForwardDual) {
    using D = Dual<T>;
    std::vector<D> seeded(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
      for (int k = 0; k < n; ++k)
        seeded[static_cast<std::size_t>(k)] =
            D(x[static_cast<std::size_t>(k)], T(k == l ? 1.0 : 0.0));
      Mat<D> gm = metric_from_frame_t<D>(
          m, std::span<const D>(seeded.data(), seeded.size()));
      Mat<T> dl(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          dl(i, j) = gm(i, j).b;
          if (l == 0) g(i, j) = gm(i, j).a;
        }
      dg.push_back(dl);
    }
  } else {
    double h = engine.fd_step;
    g = metric_from_frame_t<T>(m, x);
    std::vector<T> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    for (int l = 0; l < n; ++l) {
      xp[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)] + T(h);
      xm[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)] - T(h);
      Mat<T> gp = metric_from_frame_t<T>(m, std::span<const T>(xp));
      Mat<T> gm = metric_from_frame_t<T>(m, std::span<const T>(xm));
      Mat<T> dl(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dl(i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
      dg.push_back(dl);
      xp[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)];
      xm[static_cast<std::size_t>(l)] = x[static_cast<std::size_t>(l)];
    }
  }

  LuFactorization<T> lu(g);
  Mat<T> ginv = lu.inverse();
  Arr3<T> gam(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T s{};
        for (int l = 0; l < n; ++l)
          s = s + ginv(k, l) *
                      (dg[static_cast<std::size_t>(i)](l, j) +
                       dg[static_cast<std::size_t>(j)](l, i) -
                       dg[static_cast<std::size_t>(l)](i, j));
        gam.at(k, i, j) = s * 0.5;
      }
  return gam;
}

// One full coordinate-route evaluation with the given steps.
double coordinate_scalar_once(const ChartManifold& m, const Point& p,
                              const DerivativeEngine& engine) {
  int n = m.dim();
  Arr3<double> gam(n);
  std::vector<Arr3<double>> dgam;
  dgam.reserve(static_cast<std::size_t>(n));

  if (engine.mode == DerivMode::ForwardDual) {
    using D = Dual<double>;
    std::vector<D> coords(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      for (int k = 0; k < n; ++k)
        coords[static_cast<std::size_t>(k)] = D(p[k], k == d ? 1.0 : 0.0);
      Arr3<D> gd = coord_christoffel<D>(
          m, std::span<const D>(coords.data(), coords.size()), engine);
      Arr3<double> dd(n);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            dd.at(k, i, j) = gd.at(k, i, j).b;
            if (d == 0) gam.at(k, i, j) = gd.at(k, i, j).a;
          }
      dgam.push_back(std::move(dd));
    }
  } else {
    gam = coord_christoffel<double>(m, p.span(), engine);
    double h = engine.nested_step;
    for (int d = 0; d < n; ++d) {
      Point xp = p, xm = p;
      xp.coords[static_cast<std::size_t>(d)] += h;
      xm.coords[static_cast<std::size_t>(d)] -= h;
      Arr3<double> gp = coord_christoffel<double>(m, xp.span(), engine);
      Arr3<double> gm = coord_christoffel<double>(m, xm.span(), engine);
      Arr3<double> dd(n);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            dd.at(k, i, j) = (gp.at(k, i, j) - gm.at(k, i, j)) / (2.0 * h);
      dgam.push_back(std::move(dd));
    }
  }

  Mat<double> g = metric_from_frame_t<double>(m, p.span());
  Mat<double> ginv = LuFactorization<double>(g).inverse();

  // Ric_{jk} = Σ_i [ ∂_i Γ^i_{jk} − ∂_j Γ^i_{ik}
  //                  + Σ_m ( Γ^i_{im} Γ^m_{jk} − Γ^i_{jm} Γ^m_{ik} ) ]
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double ric = 0.0;
      for (int i = 0; i < n; ++i) {
        ric += dgam[static_cast<std::size_t>(i)].at(i, j, k) -
               dgam[static_cast<std::size_t>(j)].at(i, i, k);
        for (int mm = 0; mm < n; ++mm)
          ric += gam.at(i, i, mm) * gam.at(mm, j, k) -
                 gam.at(i, j, mm) * gam.at(mm, i, k);
      }
      s += ginv(j, k) * ric;
    }
  return s;
}

}  // namespace

double scalar_curvature_coordinate(const ChartManifold& m, const Point& p,
                                   const DerivativeEngine& engine) {
  engine.validate();
  double s = coordinate_scalar_once(m, p, engine);
  if (engine.mode == DerivMode::CentralFd) {
    DerivativeEngine halved = engine;
    halved.fd_step *= 0.5;
    halved.nested_step *= 0.5;
    double s2 = coordinate_scalar_once(m, p, halved);
    double scale = 1.0 + std::max(std::abs(s), std::abs(s2));
    if (std::abs(s - s2) > 1e-4 * scale)
      throw DegeneracyError(
          "nested finite differences disagree beyond four significant "
          "digits at point " +
          format_point(p) + " on chart '" + m.name() + "'");
  }
  if (!std::isfinite(s))
    throw DegeneracyError("coordinate curvature is non-finite at point " +
                          format_point(p));
  return s;
}

}  // namespace framecurv
