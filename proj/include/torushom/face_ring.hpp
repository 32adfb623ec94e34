#pragma once

// Face ring k[S] with the straightening law, and the graded quotient k[S]/Theta.
//
// Degrees are algebraic (v_I has degree |I|); the topological degree is twice
// that. The quotient in degree k is presented on the generators v_I, |I| = k,
// modulo the rows sum_{I >1 J} eps(I,J) C_{I,A} v_I.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torushom/char_lambda.hpp"
#include "torushom/exact_linalg.hpp"
#include "torushom/poset.hpp"

namespace torushom {

// Multichain I_1 <= ... <= I_t of non-minimal elements, listed by (rank, index).
using Monomial = std::vector<SimplicialPoset::Index>;
using FaceRingElement = std::map<Monomial, Rational>;

class FaceRing {
 public:
  FaceRing(const SimplicialPoset& s, Field field) : s_(&s), field_(field) {}

  const SimplicialPoset& poset() const noexcept { return *s_; }
  const Field& field() const noexcept { return field_; }

  FaceRingElement one() const { return {{Monomial{}, Rational(1)}}; }
  FaceRingElement generator(SimplicialPoset::Index i) const;
  // Straightens an arbitrary product of generators into multichain normal form.
  FaceRingElement monomial(const std::vector<SimplicialPoset::Index>& factors) const;

  FaceRingElement multiply(const FaceRingElement& x, const FaceRingElement& y) const;
  FaceRingElement add(const FaceRingElement& x, const FaceRingElement& y, const Rational& scale = 1) const;

  int degree(const Monomial& m) const;
  bool is_multichain(const Monomial& m) const;
  // All multichains of the given algebraic degree, in a fixed order.
  std::vector<Monomial> multichains(int degree) const;

  std::string render(const FaceRingElement& x) const;

 private:
  void straighten(Monomial m, const Rational& c, FaceRingElement& out) const;

  const SimplicialPoset* s_;
  Field field_;
};

// dim k[S]_{2j} for j = 0..maxdeg/2, listed per topological degree (odd entries 0).
std::vector<std::int64_t> hilbert_series(const SimplicialPoset& s, int maxdeg);

// A graded module presented as k^{generators} / span(relations).
struct GradedPresentation {
  int degree = 0;
  Field field = Field::rationals();
  std::vector<SimplicialPoset::Index> generators;
  std::vector<IntVector> relations;  // exact integer rows over generators
  std::vector<std::string> relation_labels;
  RowSpace echelon{Field::rationals(), 0};
  std::vector<std::size_t> basis;  // surviving generator positions (non-pivot columns)

  std::size_t dimension() const { return basis.size(); }
  std::size_t rank() const { return echelon.rank(); }
  std::optional<std::size_t> position(SimplicialPoset::Index element) const;
  // Generator vector -> coordinates on the surviving basis.
  FieldVector coordinates(const FieldVector& v) const;
  FieldVector coordinates_of(SimplicialPoset::Index element) const;
  // Coordinates -> generator vector supported on the basis.
  FieldVector lift(const FieldVector& coords) const;
  bool in_span(const FieldVector& v) const { return echelon.contains(v); }
};

GradedPresentation make_presentation(int degree, Field field, std::vector<SimplicialPoset::Index> generators,
                                     std::vector<IntVector> relations, std::vector<std::string> labels);

// First-kind row for (J, A) over the generators of degree |J|+1.
IntVector theta_relation_row(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                             const std::vector<SimplicialPoset::Index>& generators, SimplicialPoset::Index j,
                             Subset a);

// (k[S]/Theta)_{2k}; throws StarViolation.
GradedPresentation quotient_presentation(const SimplicialPoset& s, const CharacteristicMatrix& lambda, int k,
                                         const Coefficients& coeffs);

// Picks the maximal simplex used to eliminate v_i from v_i v_I.
using MaximalChoice =
    std::function<SimplicialPoset::Index(SimplicialPoset::Index, const std::vector<SimplicialPoset::Index>&)>;

// Lexicographically least maximal simplex by (sorted vertex ids, id).
SimplicialPoset::Index lex_least_maximal(const SimplicialPoset& s, const std::vector<SimplicialPoset::Index>& candidates);

// The quotient k[S]/Theta in all degrees, with the vertex action and socle.
class QuotientRing {
 public:
  QuotientRing(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const Coefficients& coeffs,
               MaximalChoice choice = {});

  const SimplicialPoset& poset() const noexcept { return *s_; }
  const CharacteristicMatrix& lambda() const noexcept { return *lambda_; }
  const Field& field() const noexcept { return field_; }
  const FaceRing& ring() const noexcept { return ring_; }
  int n() const noexcept { return s_->dim(); }

  // Degrees 0..n+1; degree n+1 has no generators.
  const GradedPresentation& presentation(int k) const;

  // [v_i v_I] as a generator vector of degree |I|+1.
  FieldVector vertex_times_generator(SimplicialPoset::Index vertex, SimplicialPoset::Index element) const;
  // Coordinates of degree k -> coordinates of degree k+1.
  FieldVector vertex_action(SimplicialPoset::Index vertex, const FieldVector& coords, int k) const;
  // Matrix of the action (columns = basis of degree k).
  std::vector<FieldVector> action_matrix(SimplicialPoset::Index vertex, int k) const;

  std::vector<FieldVector> socle_basis(int k) const;
  bool in_socle(const FieldVector& coords, int k) const;

  // Image of a face ring element of degree k in the presentation coordinates.
  FieldVector reduce(const FaceRingElement& x, int k) const;

  // span{theta_j * m : m multichain of degree k-1} inside k[S]_k, in multichain coordinates.
  const RowSpace& theta_span(int k) const;
  const std::vector<Monomial>& multichain_basis(int k) const;
  FieldVector multichain_coordinates(const FaceRingElement& x, int k) const;
  bool in_theta_ideal(const FaceRingElement& x, int k) const;
  // dim k[S]_k - rank(Theta k[S]_{k-1}), computed inside the face ring.
  std::size_t theta_quotient_dimension(int k) const;

  FaceRingElement theta_element(int j) const;

 private:
  FieldVector reduce_monomial(const Monomial& m) const;

  const SimplicialPoset* s_;
  const CharacteristicMatrix* lambda_;
  Field field_;
  FaceRing ring_;
  MaximalChoice choice_;
  std::vector<GradedPresentation> presentations_;
  mutable std::map<std::pair<SimplicialPoset::Index, SimplicialPoset::Index>, FieldVector> vertex_cache_;
  mutable std::map<Monomial, FieldVector> reduce_cache_;
  mutable std::map<int, std::vector<Monomial>> multichain_cache_;
  mutable std::map<int, RowSpace> theta_cache_;
};

}  // namespace torushom
