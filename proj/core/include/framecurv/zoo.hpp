#ifndef FRAMECURV_ZOO_HPP
#define FRAMECURV_ZOO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framecurv/collapse.hpp"

namespace framecurv {

/// An expected quantity with the tolerance it is pinned at and a note on
/// where the number comes from ("analytic", "cross-checked",
/// "by-construction").
struct ExpectedValue {
  double value;
  double tol;
  std::string provenance;
};

/// A fixture manifold with known curvature data. Lie-frame entries carry
/// constant structure functions instead of (or in addition to) a chart.
struct ZooEntry {
  std::string id;
  std::optional<ChartManifold> manifold;
  std::optional<StructureTensor> lie_constants;
  std::optional<SplitSpec> default_split;
  std::map<std::string, ExpectedValue> expected;
};

/// Identity frame on a box, dimension 1..8. Scalar curvature zero.
ZooEntry flat(int n);

/// Round unit 2-sphere chart (p, q) with frame {∂_p, csc p ∂_q}.
ZooEntry sphere2();

/// Unit 3-sphere, two representations: constant structure functions of the
/// invariant frame, and a stereographic chart with the same frame pushed
/// forward (polynomial components). Frame order (Z, X, Y) so the default
/// r = 1 split collapses the non-involutive {X, Y} plane.
ZooEntry sphere3();

/// 7-manifold product fixture: twisted 3-manifold x round 2-sphere x
/// hyperbolic surface of Gaussian curvature K_H < 0. Frame is reordered so
/// the collapse block {e1, e4, e5} sits last (split r = 4).
ZooEntry seven_manifold(double k_h = -4.0);

/// Hyperbolic half-plane chart with Gaussian curvature -4 (scalar -8).
ZooEntry hyperbolic2();

/// Constants-only entry for a Lie frame.
ZooEntry lie_group(StructureTensor constants, const std::string& name);

ZooEntry lie_su2();
ZooEntry lie_abelian();
ZooEntry lie_heisenberg();

/// Lookup by CLI id: flat<N>, s2, s3, seven, hyp2, lie:<name>.
/// `k_h` overrides the hyperbolic-factor curvature of `seven`.
ZooEntry find_zoo_entry(const std::string& id,
                        std::optional<double> k_h = std::nullopt);

std::vector<std::string> zoo_ids();

}  // namespace framecurv

#endif  // FRAMECURV_ZOO_HPP
