#ifndef FRAMECURV_COLLAPSE_HPP
#define FRAMECURV_COLLAPSE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "framecurv/curvature.hpp"

namespace framecurv {

/// Partition of the frame indices into a transverse block X (the first r
/// indices) and a collapse block Y (the last s indices).
struct SplitSpec {
  int r;
  int s;

  SplitSpec(int r_, int s_) : r(r_), s(s_) {
    if (r < 0 || s < 1) throw ConfigError("split requires r >= 0 and s >= 1");
  }
  static SplitSpec of_dim(int r_, int n) { return SplitSpec(r_, n - r_); }
  int dim() const { return r + s; }
  bool in_x(int idx) const { return idx < r; }
  std::vector<int> x_indices() const;
  std::vector<int> y_indices() const;
  std::vector<int> all_indices() const;
};

/// Collapse factor f: either a positive constant or a positive scalar
/// field written in the chart coordinates.
class RescaleFactor {
 public:
  RescaleFactor(double constant);  // NOLINT: implicit constant factor
  explicit RescaleFactor(ExprPtr field);

  bool is_constant() const { return std::holds_alternative<double>(f_); }
  double constant() const { return std::get<double>(f_); }
  const ExprPtr& field() const { return std::get<ExprPtr>(f_); }

  double value_at(std::span<const double> x) const;
  ExprPtr as_expr() const;

 private:
  std::variant<double, ExprPtr> f_;
};

/// Laurent coefficients of the collapsed scalar curvature at a point:
///   S(f) = q4·f⁴ + q2·f² + q0 + qm2·f⁻².
/// q4 and qm2 are each −¼ times a sum of squares, hence never positive.
struct CollapseProfile {
  double q4 = 0.0;
  double q2 = 0.0;
  double q0 = 0.0;
  double qm2 = 0.0;
};

double evaluate_profile(const CollapseProfile& p, double f);

/// New chart whose frame multiplies the last s frame vectors by f; its
/// recovered metric is g_X ⊕ (1/f²) g_Y.
ChartManifold rescale_frame(const ChartManifold& m, const SplitSpec& split,
                            const RescaleFactor& f);

/// Pointwise transformation of structure functions under e'_a = e_a,
/// e'_α = f e_α. `grad_f` holds the frame-direction derivatives e_A(f)
/// of the factor (all zero for constant f). Rules, with Roman letters in
/// the X block and Greek in the Y block:
///   c̃[k][i][j]  = c[k][i][j]
///   c̃[α][i][j]  = c[α][i][j] / f
///   c̃[k][i][α]  = f · c[k][i][α]
///   c̃[β][i][β]  = e_i(f)/f + c[β][i][β]
///   c̃[β][i][α]  = c[β][i][α]                    (β ≠ α)
///   c̃[k][α][β]  = f² · c[k][α][β]
///   c̃[γ][γ][β]  = f · c[γ][γ][β] − e_β(f)       (γ ≠ β)
///   c̃[γ][α][β]  = f · c[γ][α][β]                (γ ∉ {α, β})
StructureTensor transform_structure_functions(const StructureTensor& c,
                                              const SplitSpec& split,
                                              double f_value,
                                              std::span<const double> grad_f);

/// Block-restricted scalar curvatures (S1 on X, S2 on Y), computed by the
/// frame formula with all indices and derivative directions restricted to
/// the block.
struct RestrictedScalars {
  double s1;
  double s2;
};
RestrictedScalars restricted_scalars(const ChartManifold& m,
                                     const SplitSpec& split, const Point& p,
                                     const DerivativeEngine& engine = {});

/// The four Laurent coefficients at a point (constant-f semantics). The
/// derivative terms use the unrescaled frame directions.
CollapseProfile collapse_profile(const ChartManifold& m,
                                 const SplitSpec& split, const Point& p,
                                 const DerivativeEngine& engine = {});

/// Same decomposition from a precomputed jet (avoids re-deriving).
CollapseProfile collapse_profile_from_jet(const StructureJet& jet,
                                          const SplitSpec& split);

/// Derivative-free variant for constant structure functions.
CollapseProfile collapse_profile_constants(const StructureTensor& c,
                                           const SplitSpec& split);

/// S2 plus the quadratic corrections whose positivity certifies that the
/// collapse direction f → ∞ drives the scalar curvature up:
///   S2 + 2 e_γ(c[j][γ][j]) − Σ_α (Σ_k c[k][α][k])²
///      − ½ c[k][i][β] c[i][k][β] − ½ c[i][γ][j]².
double npb_indicator(const ChartManifold& m, const SplitSpec& split,
                     const Point& p, const DerivativeEngine& engine = {});
double npb_indicator_from_jet(const StructureJet& jet, const SplitSpec& split);

enum class Certificate { Yes, NotForThisFrame };

struct Witness {
  Point point;
  int k = -1, i = -1, j = -1;  // offending tensor entry, when applicable
  double value = 0.0;
};

/// Verdicts over a sample set. Involutivity thresholds are asymmetric
/// (zero test at 1e-8, nonzero test at 1e-6); samples falling in between
/// are counted as indeterminate instead of forcing a verdict. Bundle-like
/// and NPB are frame-relative certificates: a single adapted frame can
/// witness the property but cannot refute it.
struct ClassificationReport {
  bool involutive = false;
  bool everywhere_noninvolutive = false;
  // literal reading of "every bracket escapes": every entry c[i][γ][β]
  // nonzero at every sample (reported for reference only)
  bool everywhere_noninvolutive_literal = false;
  int indeterminate_samples = 0;
  Certificate bundle_like = Certificate::NotForThisFrame;
  Certificate npb = Certificate::NotForThisFrame;
  double npb_min = 0.0;
  double npb_max = 0.0;
  int sample_count = 0;
  std::optional<Witness> involutivity_witness;  // largest |c[i][γ][β]|
  std::optional<Witness> bundle_like_witness;   // largest |c[k][α][j]|
  std::optional<Point> npb_witness;             // sample attaining npb_min
};

inline constexpr double kZeroThreshold = 1e-8;
inline constexpr double kNonzeroThreshold = 1e-6;

ClassificationReport classify(const ChartManifold& m, const SplitSpec& split,
                              std::span<const Point> samples,
                              const DerivativeEngine& engine = {});

/// Positive critical collapse factors and the sign of S(f) as f → ∞.
/// Substituting u = f² and multiplying by u turns the Laurent profile into
/// the cubic q4·u³ + q2·u² + q0·u + qm2, solved by companion-matrix
/// eigenvalues and polished by bisection.
struct SignAnalysis {
  std::vector<double> thresholds;  // sorted ascending
  int asymptotic_sign = 0;         // −1, 0, +1
};
SignAnalysis sign_thresholds(const CollapseProfile& profile);

/// Reduced forms of the decomposition, valid under extra hypotheses which
/// are checked at the point (HypothesisError otherwise):
///   Codim1            r = 1
///   Foliation1D       s = 1 (a line field is automatically involutive)
///   BundleLike1D      s = 1 and c[k][α][j] ≈ 0
///   Involutive        c[i][γ][β] ≈ 0 (quartic coefficient forced to zero)
///   BundleLikeGeneral involutive and c[k][α][j] ≈ 0
enum class SpecialCase {
  Codim1,
  Foliation1D,
  BundleLike1D,
  Involutive,
  BundleLikeGeneral,
};

const char* special_case_name(SpecialCase c);

CollapseProfile specialized_profile(SpecialCase which, const ChartManifold& m,
                                    const SplitSpec& split, const Point& p,
                                    const DerivativeEngine& engine = {});

}  // namespace framecurv

#endif  // FRAMECURV_COLLAPSE_HPP
