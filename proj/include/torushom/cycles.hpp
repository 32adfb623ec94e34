#pragma once

// Intersection calculus on H_*(X): torus classes, face classes, spine and
// diaphragm cycles. Geometric input (supports, bordisms, Q-side pairings)
// comes from the fixture; only the algebra is computed here.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torushom/char_lambda.hpp"
#include "torushom/face_ring.hpp"
#include "torushom/homology_x.hpp"
#include "torushom/orbit_space.hpp"

namespace torushom {

// Element of the exterior algebra on e_1..e_n; e_A keyed by bitmask.
struct TorusClass {
  int n = 0;
  std::map<Subset, Rational> terms;

  static TorusClass basis(int n, Subset a);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const TorusClass&, const TorusClass&) = default;
};

// (-1)^{#{(a, b) in A x B : a > b}}
int shuffle_sign(Subset a, Subset b);
TorusClass wedge(const TorusClass& x, const TorusClass& y);
TorusClass poincare_dual(const TorusClass& x);
TorusClass poincare_dual_inverse(const TorusClass& x);
TorusClass torus_intersect(const TorusClass& x, const TorusClass& y);
std::string torus_name(Subset a);  // "e12", "e0" for the empty set

struct SpineDatum {
  std::string name;
  int dim = 0;  // degree in H_*(Q)
};

struct DiaphragmDatum {
  std::string name;
  int dim = 0;  // degree in H_*(Q, dQ)
  std::optional<std::vector<int>> meets_faces;         // absent: assumed to meet every face
  std::vector<std::pair<std::string, BigInt>> chain;  // optional relative chain over interior cells
};

// A Q-side product, expressed in spine handles ("pt" is the point class).
struct PairingDatum {
  std::string first, second;
  std::vector<std::pair<std::string, Rational>> value;
};

// dia_source = dia_target + rows (rows form, for one subset A), or
// dia_source = dia_target - sum D_I C_{I,A} [X_I] (chain form, every A).
struct BordismDatum {
  std::string source, target;
  bool chain_form = false;
  std::optional<Subset> subset;                 // rows form only
  std::vector<std::pair<int, Rational>> faces;  // element id -> row coefficient or D_I
};

struct Geometry {
  std::vector<SpineDatum> spines;
  std::vector<DiaphragmDatum> diaphragms;
  std::vector<PairingDatum> spine_diaphragm;
  std::vector<PairingDatum> spine_spine;
  std::vector<std::pair<std::string, std::string>> disjoint;
  std::vector<BordismDatum> bordisms;
};

using FacePart = std::map<SimplicialPoset::Index, Rational>;

struct CycleExpression {
  FacePart faces;
  std::map<std::pair<std::string, Subset>, Rational> spines;
  std::map<std::pair<std::string, Subset>, Rational> diaphragms;

  bool empty() const { return faces.empty() && spines.empty() && diaphragms.empty(); }
};

class CycleCalculus {
 public:
  using Index = SimplicialPoset::Index;

  // Throws MismatchedDatum on inconsistent geometry.
  CycleCalculus(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k, Geometry geometry,
                const Coefficients& coeffs);

  const Geometry& geometry() const noexcept { return geometry_; }
  const Field& field() const noexcept { return field_; }
  const QuotientRing& ring() const noexcept { return ring_; }
  int n() const noexcept { return s_->dim(); }

  CycleExpression face(Index i, const Rational& c = 1) const;
  CycleExpression spine(const std::string& name, Subset a, const Rational& c = 1) const;
  CycleExpression diaphragm(const std::string& name, Subset a, const Rational& c = 1) const;
  CycleExpression add(const CycleExpression& x, const CycleExpression& y, const Rational& scale = 1) const;

  // Product of face classes through the face ring; DegreeOverflow past degree n.
  FacePart face_intersect(const FacePart& x, const FacePart& y) const;

  // Rewrites dia_{L,e_A} along one datum, in either direction.
  CycleExpression bordism_rewrite(const std::string& name, Subset a, const BordismDatum& datum) const;

  // "face:4", "spine:eta:e0", "dia:L:e12", optionally "c*term" joined by '+'; throws ParseError.
  CycleExpression parse(const std::string& text) const;

  // Throws Unresolvable naming the offending pair.
  CycleExpression intersect(const CycleExpression& x, const CycleExpression& y) const;

  // E^inf_{q,q} coordinates of the face classes of rank n - q.
  FieldVector reduce_faces(const FacePart& x, int q) const;
  const GradedPresentation& e_infinity(int q) const;
  // Generator of E^inf_{0,0} used as [pt].
  Index point_element() const;
  // Coefficient of [pt] in the degree-0 part.
  Rational point_coefficient(const CycleExpression& x) const;

  std::string render_face(Index i) const;
  std::string render(const CycleExpression& x) const;
  // Raw form, then " = " and the E^inf reduction of the face part.
  std::string render_reduced(const CycleExpression& x) const;

  // Bidegree (k, l) of every term.
  std::vector<std::pair<int, int>> bidegrees(const CycleExpression& x) const;

 private:
  struct Reach {
    std::string name;
    FacePart sigma;  // dia_start = dia_name + sigma
  };

  const DiaphragmDatum& diaphragm_datum(const std::string& name) const;
  const SpineDatum* spine_datum(const std::string& name) const;
  bool meets(const std::string& name, Index face) const;
  bool disjoint(const std::string& a, const std::string& b) const;
  std::optional<FacePart> face_delta(Subset a, const BordismDatum& datum, bool forward) const;
  std::vector<Reach> reachable(const std::string& name, Subset a) const;
  void check_geometry() const;

  CycleExpression spine_times_diaphragm(const std::string& eta, Subset a, const std::string& l, Subset b) const;
  CycleExpression diaphragm_times_diaphragm(const std::string& l, Subset a, const std::string& m, Subset b) const;
  CycleExpression diaphragm_times_face(const std::string& l, Subset a, Index i) const;
  CycleExpression from_q_class(const std::vector<std::pair<std::string, Rational>>& value, const TorusClass& t,
                               const Rational& c) const;

  const SimplicialPoset* s_;
  const CharacteristicMatrix* lambda_;
  const CornerComplex* k_;
  Geometry geometry_;
  Coefficients coeffs_;
  Field field_;
  QuotientRing ring_;
  std::vector<GradedPresentation> e_inf_;
};

}  // namespace torushom
