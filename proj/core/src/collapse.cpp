#include "framecurv/collapse.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "framecurv/sampling.hpp"

namespace framecurv {

std::vector<int> SplitSpec::x_indices() const {
  std::vector<int> v(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

std::vector<int> SplitSpec::y_indices() const {
  std::vector<int> v(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) v[static_cast<std::size_t>(i)] = r + i;
  return v;
}

std::vector<int> SplitSpec::all_indices() const {
  std::vector<int> v(static_cast<std::size_t>(r + s));
  for (int i = 0; i < r + s; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

RescaleFactor::RescaleFactor(double constant) : f_(constant) {
  if (!(constant > 0.0))
    throw ConfigError("collapse factor must be positive");
}

RescaleFactor::RescaleFactor(ExprPtr field) : f_(std::move(field)) {}

double RescaleFactor::value_at(std::span<const double> x) const {
  if (is_constant()) return constant();
  double v = eval(*field(), x);
  if (!(v > 0.0))
    throw EvalError("collapse factor field is non-positive at a sample point");
  return v;
}

ExprPtr RescaleFactor::as_expr() const {
  if (is_constant()) return make_literal(constant());
  return field();
}

double evaluate_profile(const CollapseProfile& p, double f) {
  if (!(f > 0.0)) throw ConfigError("profile evaluation requires f > 0");
  double f2 = f * f;
  return p.q4 * f2 * f2 + p.q2 * f2 + p.q0 + p.qm2 / f2;
}

ChartManifold rescale_frame(const ChartManifold& m, const SplitSpec& split,
                            const RescaleFactor& f) {
  int n = m.dim();
  if (split.dim() != n)
    throw ConfigError("split does not match chart dimension");
  ExprPtr factor = f.as_expr();
  if (!f.is_constant()) {
    // factor must stay positive across the chart; spot-check the box
    for (const Point& p : sample_points(m.sample_box(), 64, 1)) {
      double v = eval(*factor, p.span());
      if (!(v > 0.0))
        throw ConfigError("collapse factor field is not positive on the "
                          "sample box (value at " +
                          format_point(p) + ")");
    }
  }
  std::vector<ExprPtr> grid;
  grid.reserve(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      ExprPtr comp = m.frame_expr(a, i);
      if (a >= split.r)
        comp = make_binary(Expr::Kind::Mul, factor, comp);
      grid.push_back(std::move(comp));
    }
  return m.with_frame(std::move(grid), m.name() + ":collapsed");
}

StructureTensor transform_structure_functions(const StructureTensor& c,
                                              const SplitSpec& split,
                                              double f_value,
                                              std::span<const double> grad_f) {
  int n = c.dim();
  if (split.dim() != n)
    throw ConfigError("split does not match tensor dimension");
  if (!(f_value > 0.0))
    throw ConfigError("collapse factor must be positive");
  if (static_cast<int>(grad_f.size()) != n)
    throw ConfigError("grad_f must hold one frame derivative per index");

  int r = split.r;
  double f = f_value;
  StructureTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        bool iX = i < r, jX = j < r, kX = k < r;
        double v = c.at(k, i, j);
        double t;
        if (iX && jX) {
          t = kX ? v : v / f;
        } else if (iX && !jX) {
          if (kX) {
            t = f * v;
          } else if (k == j) {
            t = grad_f[static_cast<std::size_t>(i)] / f + v;
          } else {
            t = v;
          }
        } else {  // both lowers in Y
          if (kX) {
            t = f * f * v;
          } else if (k == i) {
            t = f * v - grad_f[static_cast<std::size_t>(j)];
          } else if (k == j) {
            t = f * v + grad_f[static_cast<std::size_t>(i)];
          } else {
            t = f * v;
          }
        }
        out.at(k, i, j) = t;
        out.at(k, j, i) = -t;
      }
  return out;
}

RestrictedScalars restricted_scalars(const ChartManifold& m,
                                     const SplitSpec& split, const Point& p,
                                     const DerivativeEngine& engine) {
  StructureJet jet = structure_jet(m, p, engine);
  return {scalar_curvature_restricted(jet, split.x_indices()),
          scalar_curvature_restricted(jet, split.y_indices())};
}

CollapseProfile collapse_profile_from_jet(const StructureJet& jet,
                                          const SplitSpec& split) {
  const StructureTensor& c = jet.c;
  int n = c.dim();
  if (split.dim() != n)
    throw ConfigError("split does not match tensor dimension");
  int r = split.r;

  double s1 = scalar_curvature_restricted(jet, split.x_indices());
  double s2 = scalar_curvature_restricted(jet, split.y_indices());

  CollapseProfile q;

  double sq_igb = 0.0;  // Σ c[i][γ][β]²
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int b = r; b < n; ++b) sq_igb += c.at(i, g, b) * c.at(i, g, b);
  q.q4 = -0.25 * sq_igb;

  double f2 = s2;
  for (int g = r; g < n; ++g)
    for (int j = 0; j < r; ++j)
      f2 += 2.0 * jet.d[static_cast<std::size_t>(g)].at(j, g, j);
  for (int a = r; a < n; ++a)
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) f2 -= c.at(k, a, k) * c.at(j, a, j);
  for (int a = r; a < n; ++a)
    for (int k = 0; k < r; ++k)
      for (int b = r; b < n; ++b) f2 -= 2.0 * c.at(k, a, k) * c.at(b, a, b);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k)
      for (int b = r; b < n; ++b) f2 -= 0.5 * c.at(k, i, b) * c.at(i, k, b);
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int b = r; b < n; ++b) f2 -= c.at(i, g, b) * c.at(g, i, b);
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int j = 0; j < r; ++j) f2 -= 0.5 * c.at(i, g, j) * c.at(i, g, j);
  q.q2 = f2;

  double f0 = s1;
  for (int k = 0; k < r; ++k)
    for (int b = r; b < n; ++b)
      f0 += 2.0 * jet.d[static_cast<std::size_t>(k)].at(b, k, b);
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int b = r; b < n; ++b) f0 -= c.at(g, i, g) * c.at(b, i, b);
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int j = 0; j < r; ++j) f0 -= 2.0 * c.at(g, i, g) * c.at(j, i, j);
  for (int a = r; a < n; ++a)
    for (int g = r; g < n; ++g)
      for (int j = 0; j < r; ++j) f0 -= 0.5 * c.at(a, g, j) * c.at(g, a, j);
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int j = 0; j < r; ++j) f0 -= c.at(i, g, j) * c.at(g, i, j);
  for (int a = r; a < n; ++a)
    for (int k = 0; k < r; ++k)
      for (int b = r; b < n; ++b) f0 -= 0.5 * c.at(a, k, b) * c.at(a, k, b);
  q.q0 = f0;

  double sq_akj = 0.0;  // Σ c[α][k][j]²
  for (int a = r; a < n; ++a)
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) sq_akj += c.at(a, k, j) * c.at(a, k, j);
  q.qm2 = -0.25 * sq_akj;

  return q;
}

CollapseProfile collapse_profile(const ChartManifold& m,
                                 const SplitSpec& split, const Point& p,
                                 const DerivativeEngine& engine) {
  return collapse_profile_from_jet(structure_jet(m, p, engine), split);
}

CollapseProfile collapse_profile_constants(const StructureTensor& c,
                                           const SplitSpec& split) {
  StructureJet jet;
  jet.c = c;
  jet.d.assign(static_cast<std::size_t>(c.dim()), StructureTensor(c.dim()));
  return collapse_profile_from_jet(jet, split);
}

double npb_indicator_from_jet(const StructureJet& jet,
                              const SplitSpec& split) {
  const StructureTensor& c = jet.c;
  int n = c.dim();
  int r = split.r;
  double v = scalar_curvature_restricted(jet, split.y_indices());
  for (int g = r; g < n; ++g)
    for (int j = 0; j < r; ++j)
      v += 2.0 * jet.d[static_cast<std::size_t>(g)].at(j, g, j);
  for (int a = r; a < n; ++a)
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) v -= c.at(k, a, k) * c.at(j, a, j);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k)
      for (int b = r; b < n; ++b) v -= 0.5 * c.at(k, i, b) * c.at(i, k, b);
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int j = 0; j < r; ++j) v -= 0.5 * c.at(i, g, j) * c.at(i, g, j);
  return v;
}

double npb_indicator(const ChartManifold& m, const SplitSpec& split,
                     const Point& p, const DerivativeEngine& engine) {
  return npb_indicator_from_jet(structure_jet(m, p, engine), split);
}

namespace {

struct EntryMax {
  double value = 0.0;
  int k = -1, i = -1, j = -1;
  void consider(double v, int kk, int ii, int jj) {
    if (std::abs(v) > std::abs(value) || k < 0) {
      value = v;
      k = kk;
      i = ii;
      j = jj;
    }
  }
};

EntryMax max_escape_entry(const StructureTensor& c, int r) {
  // c[i][γ][β]: bracket of two collapse directions escaping into X
  EntryMax m;
  int n = c.dim();
  for (int i = 0; i < r; ++i)
    for (int g = r; g < n; ++g)
      for (int b = r; b < n; ++b) m.consider(c.at(i, g, b), i, g, b);
  return m;
}

EntryMax max_mixing_entry(const StructureTensor& c, int r) {
  // c[k][α][j]: mixed bracket escaping into X (bundle-like obstruction)
  EntryMax m;
  int n = c.dim();
  for (int k = 0; k < r; ++k)
    for (int a = r; a < n; ++a)
      for (int j = 0; j < r; ++j) m.consider(c.at(k, a, j), k, a, j);
  return m;
}

}  // namespace

ClassificationReport classify(const ChartManifold& m, const SplitSpec& split,
                              std::span<const Point> samples,
                              const DerivativeEngine& engine) {
  if (samples.empty()) throw ConfigError("classification needs samples");
  if (split.dim() != m.dim())
    throw ConfigError("split does not match chart dimension");
  int r = split.r;
  int n = m.dim();

  ClassificationReport rep;
  rep.sample_count = static_cast<int>(samples.size());

  bool all_zero = true;
  bool all_nonzero = true;
  bool literal_all = true;
  EntryMax worst_escape, worst_mixing;
  Point escape_point, mixing_point;
  bool npb_all_positive = true;
  double npb_min = 0.0, npb_max = 0.0;
  Point npb_argmin;
  bool first = true;

  for (const Point& p : samples) {
    StructureJet jet = structure_jet(m, p, engine);
    EntryMax escape = max_escape_entry(jet.c, r);
    double esc = std::abs(escape.value);
    if (esc >= kZeroThreshold) all_zero = false;
    if (esc <= kNonzeroThreshold) all_nonzero = false;
    if (esc > kZeroThreshold && esc < kNonzeroThreshold)
      ++rep.indeterminate_samples;
    if (std::abs(escape.value) > std::abs(worst_escape.value) ||
        worst_escape.k < 0) {
      worst_escape = escape;
      escape_point = p;
    }

    for (int i = 0; i < r && literal_all; ++i)
      for (int g = r; g < n && literal_all; ++g)
        for (int b = r; b < n && literal_all; ++b)
          if (g != b && std::abs(jet.c.at(i, g, b)) <= kNonzeroThreshold)
            literal_all = false;

    EntryMax mixing = max_mixing_entry(jet.c, r);
    if (std::abs(mixing.value) > std::abs(worst_mixing.value) ||
        worst_mixing.k < 0) {
      worst_mixing = mixing;
      mixing_point = p;
    }

    double npb = npb_indicator_from_jet(jet, split);
    if (!(npb > 0.0)) npb_all_positive = false;
    if (first || npb < npb_min) {
      npb_min = npb;
      npb_argmin = p;
    }
    if (first || npb > npb_max) npb_max = npb;
    first = false;
  }

  rep.involutive = all_zero;
  rep.everywhere_noninvolutive = all_nonzero;
  rep.everywhere_noninvolutive_literal = literal_all && r > 0 && split.s > 1;
  rep.bundle_like = std::abs(worst_mixing.value) < kZeroThreshold
                        ? Certificate::Yes
                        : Certificate::NotForThisFrame;
  rep.npb = npb_all_positive ? Certificate::Yes : Certificate::NotForThisFrame;
  rep.npb_min = npb_min;
  rep.npb_max = npb_max;
  if (worst_escape.k >= 0)
    rep.involutivity_witness =
        Witness{escape_point, worst_escape.k, worst_escape.i, worst_escape.j,
                worst_escape.value};
  if (worst_mixing.k >= 0)
    rep.bundle_like_witness =
        Witness{mixing_point, worst_mixing.k, worst_mixing.i, worst_mixing.j,
                worst_mixing.value};
  rep.npb_witness = npb_argmin;
  return rep;
}

namespace {

double horner(std::span<const double> coeffs, double u) {
  double v = 0.0;
  for (double c : coeffs) v = v * u + c;
  return v;
}

// Expand a bracket around u0 until p changes sign, then bisect.
double polish_root(std::span<const double> coeffs, double u0) {
  double delta = 1e-3 * (1.0 + std::abs(u0));
  for (int attempt = 0; attempt < 40; ++attempt, delta *= 2.0) {
    double lo = u0 - delta, hi = u0 + delta;
    double flo = horner(coeffs, lo), fhi = horner(coeffs, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) != (fhi < 0.0)) {
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = horner(coeffs, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  return u0;  // tangency or repeated root, keep the eigenvalue estimate
}

}  // namespace

SignAnalysis sign_thresholds(const CollapseProfile& profile) {
  // cubic in u = f²  (profile multiplied through by u)
  std::vector<double> coeffs = {profile.q4, profile.q2, profile.q0,
                                profile.qm2};
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  double tol = 1e-9 * (1.0 + scale);

  SignAnalysis out;
  // asymptotic sign: first coefficient (highest power of f) above noise
  for (double c : coeffs) {
    if (std::abs(c) > tol) {
      out.asymptotic_sign = c > 0.0 ? 1 : -1;
      break;
    }
  }
  // trim noise-level leading coefficients; deflate roots at u = 0
  std::size_t lead = 0;
  while (lead < coeffs.size() && std::abs(coeffs[lead]) <= tol) ++lead;
  coeffs.erase(coeffs.begin(),
               coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  while (!coeffs.empty() && std::abs(coeffs.back()) <= tol)
    coeffs.pop_back();
  if (coeffs.size() < 2) return out;  // constant (or empty): no roots

  int degree = static_cast<int>(coeffs.size()) - 1;
  std::vector<double> roots;
  if (degree == 1) {
    roots.push_back(-coeffs[1] / coeffs[0]);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 0; i < degree; ++i)
      companion(0, i) = -coeffs[static_cast<std::size_t>(i + 1)] / coeffs[0];
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
    for (int i = 0; i < degree; ++i) {
      std::complex<double> z = solver.eigenvalues()(i);
      if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z.real())))
        roots.push_back(z.real());
    }
  }

  std::vector<double> fs;
  for (double u : roots) {
    if (!(u > 1e-12 * (1.0 + scale))) continue;
    u = polish_root(coeffs, u);
    fs.push_back(std::sqrt(u));
  }
  std::sort(fs.begin(), fs.end());
  for (double f : fs) {
    if (out.thresholds.empty() ||
        std::abs(f - out.thresholds.back()) > 1e-9 * (1.0 + f))
      out.thresholds.push_back(f);
  }
  return out;
}

const char* special_case_name(SpecialCase c) {
  switch (c) {
    case SpecialCase::Codim1: return "codim1";
    case SpecialCase::Foliation1D: return "foliation1d";
    case SpecialCase::BundleLike1D: return "bundlelike1d";
    case SpecialCase::Involutive: return "involutive";
    case SpecialCase::BundleLikeGeneral: return "bundlelike";
  }
  return "?";
}

namespace {

void require_involutive(const StructureTensor& c, int r) {
  EntryMax m = max_escape_entry(c, r);
  if (m.k >= 0 && std::abs(m.value) >= kZeroThreshold)
    throw HypothesisError(
        "collapse block is not involutive: bracket escapes into the "
        "transverse block",
        m.k, m.i, m.j, m.value);
}

void require_bundle_like(const StructureTensor& c, int r) {
  EntryMax m = max_mixing_entry(c, r);
  if (m.k >= 0 && std::abs(m.value) >= kZeroThreshold)
    throw HypothesisError(
        "frame is not a bundle-like witness: mixed bracket has a "
        "transverse component",
        m.k, m.i, m.j, m.value);
}

}  // namespace

CollapseProfile specialized_profile(SpecialCase which, const ChartManifold& m,
                                    const SplitSpec& split, const Point& p,
                                    const DerivativeEngine& engine) {
  if (split.dim() != m.dim())
    throw ConfigError("split does not match chart dimension");
  StructureJet jet = structure_jet(m, p, engine);
  const StructureTensor& c = jet.c;
  int n = m.dim();
  int r = split.r;

  switch (which) {
    case SpecialCase::Codim1: {
      if (r != 1)
        throw HypothesisError(
            "codimension-1 reduction requires a rank-1 transverse block");
      CollapseProfile q;
      double s2 = scalar_curvature_restricted(jet, split.y_indices());
      double sq = 0.0;
      for (int g = 1; g < n; ++g)
        for (int b = 1; b < n; ++b) sq += c.at(0, g, b) * c.at(0, g, b);
      q.q4 = -0.25 * sq;
      double f2 = s2;
      for (int g = 1; g < n; ++g)
        f2 += 2.0 * jet.d[static_cast<std::size_t>(g)].at(0, g, 0);
      for (int a = 1; a < n; ++a) f2 -= c.at(0, a, 0) * c.at(0, a, 0);
      for (int a = 1; a < n; ++a)
        for (int b = 1; b < n; ++b) f2 -= 2.0 * c.at(0, a, 0) * c.at(b, a, b);
      for (int b = 1; b < n; ++b) f2 -= 0.5 * c.at(0, 0, b) * c.at(0, 0, b);
      for (int g = 1; g < n; ++g)
        for (int b = 1; b < n; ++b) f2 -= c.at(0, g, b) * c.at(g, 0, b);
      for (int g = 1; g < n; ++g) f2 -= 0.5 * c.at(0, g, 0) * c.at(0, g, 0);
      q.q2 = f2;
      double f0 = 0.0;  // 1-dimensional transverse block: S1 = 0
      for (int b = 1; b < n; ++b)
        f0 += 2.0 * jet.d[0].at(b, 0, b);
      double trace = 0.0;
      for (int g = 1; g < n; ++g) trace += c.at(g, 0, g);
      f0 -= trace * trace;
      for (int a = 1; a < n; ++a)
        for (int g = 1; g < n; ++g) f0 -= 0.5 * c.at(a, g, 0) * c.at(g, a, 0);
      for (int a = 1; a < n; ++a)
        for (int b = 1; b < n; ++b) f0 -= 0.5 * c.at(a, 0, b) * c.at(a, 0, b);
      q.q0 = f0;
      q.qm2 = 0.0;  // both lower indices transverse: impossible with r = 1
      return q;
    }

    case SpecialCase::Foliation1D:
    case SpecialCase::BundleLike1D: {
      if (split.s != 1)
        throw HypothesisError(
            "1-dimensional-foliation reduction requires a rank-1 collapse "
            "block");
      if (which == SpecialCase::BundleLike1D) require_bundle_like(c, r);
      int mu = n - 1;
      CollapseProfile q;
      q.q4 = 0.0;  // a line field is involutive
      if (which == SpecialCase::Foliation1D) {
        double f2 = 0.0;  // 1-dimensional collapse block: S2 = 0
        for (int j = 0; j < r; ++j)
          f2 += 2.0 * jet.d[static_cast<std::size_t>(mu)].at(j, mu, j);
        double trace = 0.0;
        for (int k = 0; k < r; ++k) trace += c.at(k, mu, k);
        f2 -= trace * trace;
        for (int i = 0; i < r; ++i)
          for (int k = 0; k < r; ++k)
            f2 -= 0.5 * c.at(k, i, mu) * c.at(i, k, mu);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            f2 -= 0.5 * c.at(i, mu, j) * c.at(i, mu, j);
        q.q2 = f2;
      } else {
        q.q2 = 0.0;  // bundle-like kills every mixed quadratic term
      }
      double f0 = scalar_curvature_restricted(jet, split.x_indices());
      for (int k = 0; k < r; ++k)
        f0 += 2.0 * jet.d[static_cast<std::size_t>(k)].at(mu, k, mu);
      for (int i = 0; i < r; ++i) f0 -= 2.0 * c.at(mu, i, mu) * c.at(mu, i, mu);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          f0 -= 2.0 * c.at(mu, i, mu) * c.at(j, i, j);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          f0 -= c.at(i, mu, j) * c.at(mu, i, j);
      q.q0 = f0;
      double sq = 0.0;
      for (int k = 0; k < r; ++k)
        for (int j = 0; j < r; ++j) sq += c.at(mu, k, j) * c.at(mu, k, j);
      q.qm2 = -0.25 * sq;
      return q;
    }

    case SpecialCase::Involutive: {
      require_involutive(c, r);
      CollapseProfile q = collapse_profile_from_jet(jet, split);
      q.q4 = 0.0;
      return q;
    }

    case SpecialCase::BundleLikeGeneral: {
      require_involutive(c, r);
      require_bundle_like(c, r);
      CollapseProfile q = collapse_profile_from_jet(jet, split);
      q.q4 = 0.0;
      q.q2 = scalar_curvature_restricted(jet, split.y_indices());
      return q;
    }
  }
  throw ConfigError("unknown specialized case");
}

}  // namespace framecurv
