#include "framecurv/geometry.hpp"

#include <cmath>
#include <cstdio>

namespace framecurv {

std::string format_point(const Point& p) {
  std::string s = "(";
  char buf[40];
  for (int i = 0; i < p.dim(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", p[i]);
    if (i) s += ", ";
    s += buf;
  }
  s += ")";
  return s;
}

namespace {

std::vector<ExprPtr> parse_frame_rows(
    const std::vector<std::vector<std::string>>& rows,
    std::span<const std::string> coords, int dim) {
  if (static_cast<int>(rows.size()) != dim)
    throw ConfigError("frame grid must have one row per frame vector");
  std::vector<ExprPtr> grid;
  grid.reserve(static_cast<std::size_t>(dim * dim));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim)
      throw ConfigError("frame row must have one component per coordinate");
    for (const auto& src : row) grid.push_back(parse_expression(src, coords));
  }
  return grid;
}

}  // namespace

ChartManifold::ChartManifold(std::string name,
                             std::vector<std::string> coord_names,
                             const std::vector<std::vector<std::string>>& rows,
                             std::vector<Interval> sample_box,
                             std::vector<std::string> frame_labels)
    : ChartManifold(std::move(name), coord_names,
                    parse_frame_rows(rows, coord_names,
                                     static_cast<int>(coord_names.size())),
                    std::move(sample_box), std::move(frame_labels)) {}

ChartManifold::ChartManifold(std::string name,
                             std::vector<std::string> coord_names,
                             std::vector<ExprPtr> frame_grid,
                             std::vector<Interval> sample_box,
                             std::vector<std::string> frame_labels)
    : name_(std::move(name)),
      dim_(static_cast<int>(coord_names.size())),
      coord_names_(std::move(coord_names)),
      frame_(std::move(frame_grid)),
      sample_box_(std::move(sample_box)),
      frame_labels_(std::move(frame_labels)) {
  if (dim_ < 1 || dim_ > kMaxDim)
    throw ConfigError("chart dimension must be between 1 and 8");
  if (static_cast<int>(frame_.size()) != dim_ * dim_)
    throw ConfigError("frame grid size does not match chart dimension");
  if (static_cast<int>(sample_box_.size()) != dim_)
    throw ConfigError("sample box must have one interval per coordinate");
  for (const auto& iv : sample_box_)
    if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw ConfigError("sample box intervals must be finite and non-empty");
  if (frame_labels_.empty()) {
    for (int a = 0; a < dim_; ++a)
      frame_labels_.push_back("e" + std::to_string(a + 1));
  }
  if (static_cast<int>(frame_labels_.size()) != dim_)
    throw ConfigError("frame labels must match chart dimension");
}

ChartManifold ChartManifold::with_frame(std::vector<ExprPtr> frame_grid,
                                        std::string name) const {
  return ChartManifold(std::move(name), coord_names_, std::move(frame_grid),
                       sample_box_, frame_labels_);
}

void DerivativeEngine::validate() const {
  if (!(fd_step > 0.0 && fd_step < 1e-2))
    throw ConfigError("fd_step must lie in (0, 1e-2)");
  if (!(nested_step > 0.0 && nested_step < 1e-2))
    throw ConfigError("nested_step must lie in (0, 1e-2)");
}

Mat<double> frame_matrix(const ChartManifold& m, const Point& p) {
  Mat<double> e;
  try {
    e = m.frame_matrix_t<double>(p.span());
  } catch (const EvalError& err) {
    throw EvalError(std::string(err.what()) + " at point " + format_point(p) +
                    " on chart '" + m.name() + "'");
  }
  LuFactorization<double> lu(e);
  if (lu.singular() || std::abs(lu.det()) <= kFrameDetFloor)
    throw SingularFrameError("frame matrix singular at point " +
                             format_point(p) + " on chart '" + m.name() +
                             "'");
  return e;
}

Mat<double> metric_from_frame(const ChartManifold& m, const Point& p) {
  frame_matrix(m, p);  // runs the det check with the point in the message
  return metric_from_frame_t<double>(m, p.span());
}

Mat<double> jacobian(const ChartManifold& m, int frame_index, const Point& p,
                     const DerivativeEngine& engine) {
  engine.validate();
  int n = m.dim();
  if (engine.mode == DerivMode::ForwardDual)
    return jacobian_t<double>(m, frame_index, p.span());
  Mat<double> jac(n);
  double h = engine.fd_step;
  std::vector<double> xp(p.coords), xm(p.coords);
  for (int j = 0; j < n; ++j) {
    xp[static_cast<std::size_t>(j)] += h;
    xm[static_cast<std::size_t>(j)] -= h;
    for (int i = 0; i < n; ++i) {
      double fp = eval(m.frame_expr(frame_index, i), xp);
      double fm = eval(m.frame_expr(frame_index, i), xm);
      jac(i, j) = (fp - fm) / (2.0 * h);
    }
    xp[static_cast<std::size_t>(j)] = p[j];
    xm[static_cast<std::size_t>(j)] = p[j];
  }
  return jac;
}

ScalarField ScalarField::from_expr(ExprPtr e) {
  ScalarField f;
  f.value = [e](std::span<const double> x) { return eval(*e, x); };
  f.dual = [e](std::span<const double> x, std::span<const double> d) {
    return eval_dual(*e, x, d);
  };
  return f;
}

double directional_derivative(const DerivativeEngine& engine,
                              const ScalarField& field, const Point& p,
                              std::span<const double> direction) {
  engine.validate();
  if (engine.mode == DerivMode::ForwardDual && field.dual)
    return field.dual(p.span(), direction).tangent;
  double h = engine.fd_step;
  std::vector<double> xp(p.coords), xm(p.coords);
  for (std::size_t i = 0; i < xp.size(); ++i) {
    xp[i] += h * direction[i];
    xm[i] -= h * direction[i];
  }
  return (field.value(xp) - field.value(xm)) / (2.0 * h);
}

}  // namespace framecurv
