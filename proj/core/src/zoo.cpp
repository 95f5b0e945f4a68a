#include "framecurv/zoo.hpp"

#include <cmath>
#include <cstdio>

namespace framecurv {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<std::string>> zero_grid(int n) {
  return std::vector<std::vector<std::string>>(
      static_cast<std::size_t>(n),
      std::vector<std::string>(static_cast<std::size_t>(n), "0"));
}

}  // namespace

ZooEntry flat(int n) {
  if (n < 1 || n > kMaxDim)
    throw ConfigError("flat fixture dimension must be between 1 and 8");
  std::vector<std::string> coords;
  for (int i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i + 1));
  auto grid = zero_grid(n);
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = "1";
  std::vector<Interval> box(static_cast<std::size_t>(n),
                            Interval{-1.0, 1.0});
  ZooEntry e;
  e.id = "flat" + std::to_string(n);
  e.manifold.emplace(e.id, coords, grid, box);
  if (n >= 2) e.default_split = SplitSpec::of_dim(n - 1, n);
  e.expected = {
      {"S", {0.0, 1e-6, "by-construction"}},
      {"q4", {0.0, 1e-9, "by-construction"}},
      {"q2", {0.0, 1e-9, "by-construction"}},
      {"q0", {0.0, 1e-9, "by-construction"}},
      {"qm2", {0.0, 1e-9, "by-construction"}},
  };
  return e;
}

ZooEntry sphere2() {
  ZooEntry e;
  e.id = "s2";
  e.manifold.emplace(
      "s2", std::vector<std::string>{"p", "q"},
      std::vector<std::vector<std::string>>{{"1", "0"}, {"0", "csc(p)"}},
      std::vector<Interval>{{0.2, kPi - 0.2}, {0.2, 2.0 * kPi - 0.2}});
  e.default_split = SplitSpec(1, 1);
  e.expected = {{"S", {2.0, 1e-6, "cross-checked"}}};
  return e;
}

ZooEntry sphere3() {
  // Invariant vector fields of the unit 3-sphere pushed through the
  // stereographic chart; components are polynomials in the chart
  // coordinates. Frame order (Z, X, Y).
  ZooEntry e;
  e.id = "s3";
  e.manifold.emplace(
      "s3", std::vector<std::string>{"y1", "y2", "y3"},
      std::vector<std::vector<std::string>>{
          {"y1*y3 - y2", "y1 + y2*y3", "(1 - y1^2 - y2^2 + y3^2)/2"},
          {"(1 + y1^2 - y2^2 - y3^2)/2", "y1*y2 - y3", "y1*y3 + y2"},
          {"y1*y2 + y3", "(1 - y1^2 + y2^2 - y3^2)/2", "y2*y3 - y1"}},
      std::vector<Interval>{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}},
      std::vector<std::string>{"Z", "X", "Y"});
  StructureTensor c(3);
  c.at(2, 0, 1) = -2.0;
  c.at(2, 1, 0) = 2.0;
  c.at(1, 0, 2) = 2.0;
  c.at(1, 2, 0) = -2.0;
  c.at(0, 1, 2) = -2.0;
  c.at(0, 2, 1) = 2.0;
  e.lie_constants = c;
  e.default_split = SplitSpec(1, 2);
  e.expected = {
      {"S", {6.0, 1e-6, "analytic"}},
      {"q4", {-2.0, 1e-7, "analytic"}},
      {"q2", {8.0, 1e-7, "analytic"}},
      {"q0", {0.0, 1e-7, "analytic"}},
      {"qm2", {0.0, 1e-7, "analytic"}},
  };
  return e;
}

ZooEntry seven_manifold(double k_h) {
  if (!(k_h < 0.0))
    throw ConfigError("seven fixture needs a negative hyperbolic curvature");
  double a = std::sqrt(-k_h);
  std::vector<std::string> coords = {"t", "x1", "x2", "p", "q", "u", "v"};
  // Frame order (e2, e3, e6, e7, e1, e4, e5): the collapse block
  // {e1, e4, e5} occupies the last three slots.
  auto grid = zero_grid(7);
  auto set = [&grid](int row, int col, std::string s) {
    grid[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
        std::move(s);
  };
  set(0, 1, "1");                  // e2 = d/dx1
  set(1, 1, "t");                  // e3 = t d/dx1 + d/dx2
  set(1, 2, "1");
  set(2, 5, num(a) + "*v");        // e6
  set(3, 6, num(a) + "*v");        // e7
  set(4, 0, "1");                  // e1 = d/dt
  set(5, 3, "1");                  // e4 = d/dp
  set(6, 4, "csc(p)");             // e5 = csc p d/dq

  ZooEntry e;
  e.id = "seven";
  e.manifold.emplace(
      "seven", coords, grid,
      std::vector<Interval>{{-1.5, 1.5},
                            {-1.0, 1.0},
                            {-1.0, 1.0},
                            {0.2, kPi - 0.2},
                            {0.2, 2.0 * kPi - 0.2},
                            {-1.0, 1.0},
                            {0.5, 2.0}},
      std::vector<std::string>{"e2", "e3", "e6", "e7", "e1", "e4", "e5"});
  e.default_split = SplitSpec(4, 3);
  e.expected = {
      {"S", {1.5 + 2.0 * k_h, 1e-5, "cross-checked"}},
      {"S2", {2.0, 1e-6, "analytic"}},
      {"npb", {1.5, 1e-6, "analytic"}},
      {"q4", {0.0, 1e-9, "analytic"}},
      {"q2", {1.5, 1e-6, "analytic"}},
      {"q0", {2.0 * k_h, 1e-5, "cross-checked"}},
      {"qm2", {0.0, 1e-9, "analytic"}},
  };
  return e;
}

ZooEntry hyperbolic2() {
  ZooEntry e;
  e.id = "hyp2";
  e.manifold.emplace(
      "hyp2", std::vector<std::string>{"u", "v"},
      std::vector<std::vector<std::string>>{{"2*v", "0"}, {"0", "2*v"}},
      std::vector<Interval>{{-2.0, 2.0}, {0.5, 2.5}});
  e.default_split = SplitSpec(1, 1);
  e.expected = {{"S", {-8.0, 1e-6, "cross-checked"}}};
  return e;
}

ZooEntry lie_group(StructureTensor constants, const std::string& name) {
  ZooEntry e;
  e.id = "lie:" + name;
  e.lie_constants = std::move(constants);
  if (e.lie_constants->dim() >= 2)
    e.default_split = SplitSpec::of_dim(1, e.lie_constants->dim());
  return e;
}

ZooEntry lie_su2() {
  StructureTensor c(3);
  c.at(2, 0, 1) = -2.0;
  c.at(2, 1, 0) = 2.0;
  c.at(1, 0, 2) = 2.0;
  c.at(1, 2, 0) = -2.0;
  c.at(0, 1, 2) = -2.0;
  c.at(0, 2, 1) = 2.0;
  ZooEntry e = lie_group(std::move(c), "su2");
  e.expected = {{"S", {6.0, 1e-12, "analytic"}}};
  return e;
}

ZooEntry lie_abelian() {
  ZooEntry e = lie_group(StructureTensor(3), "abelian");
  e.expected = {{"S", {0.0, 1e-12, "by-construction"}}};
  return e;
}

ZooEntry lie_heisenberg() {
  StructureTensor c(3);
  c.at(2, 0, 1) = 1.0;
  c.at(2, 1, 0) = -1.0;
  ZooEntry e = lie_group(std::move(c), "heisenberg");
  e.expected = {{"S", {-0.5, 1e-12, "analytic"}}};
  return e;
}

ZooEntry find_zoo_entry(const std::string& id, std::optional<double> k_h) {
  if (id.rfind("flat", 0) == 0 && id.size() == 5 && id[4] >= '1' &&
      id[4] <= '8')
    return flat(id[4] - '0');
  if (id == "s2") return sphere2();
  if (id == "s3") return sphere3();
  if (id == "seven") return seven_manifold(k_h.value_or(-4.0));
  if (id == "hyp2") return hyperbolic2();
  if (id == "lie:su2") return lie_su2();
  if (id == "lie:abelian") return lie_abelian();
  if (id == "lie:heisenberg") return lie_heisenberg();
  throw ConfigError("unknown manifold id '" + id + "'");
}

std::vector<std::string> zoo_ids() {
  return {"flat2", "flat7",   "s2",          "s3",
          "seven", "hyp2",    "lie:su2",     "lie:abelian",
          "lie:heisenberg"};
}

}  // namespace framecurv
