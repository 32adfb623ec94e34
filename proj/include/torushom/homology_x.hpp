#pragma once

// Homology of X = (Q x T^n)/~ assembled from the face module and the
// homology of (Q, dQ).

#include <string>
#include <vector>

#include "torushom/char_lambda.hpp"
#include "torushom/face_ring.hpp"
#include "torushom/orbit_space.hpp"

namespace torushom {

enum class RelationKind { First, Second };

struct RelationRow {
  int q = 0;
  RelationKind kind = RelationKind::First;
  std::string label;
  IntVector coefficients;  // over the face classes [X_I], |I| = n - q, in of_rank order
};

// First kind: R_{J,A}, |J| = n-q-1, |A| = q. Second kind: R'_{beta,A} for beta in delta_image(q), q <= n-2.
// Throws StarViolation; RangeError for the second kind when q > n-2.
std::vector<RelationRow> relation_rows(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                       const CornerComplex& k, int q, RelationKind kind, const Coefficients& coeffs);

// E^2_{q,q} (first kind only) or E^inf_{q,q} (both kinds) presented on the face classes.
GradedPresentation face_module(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k,
                               int q, const Coefficients& coeffs, bool second_kind = true);

// Finitely generated group: Z^rank plus torsion (over a field only the rank is used).
struct GroupData {
  std::size_t rank = 0;
  IntVector torsion;
  std::string describe(const Coefficients& coeffs) const;
};

struct BettiCell {
  GroupData group;
  std::size_t face_part = 0;      // diagonal only: E^inf_{k,k}
  std::size_t relative_part = 0;  // diagonal only: H_k(Q,dQ) x Lambda_k
};

struct BigradedBettiTable {
  int n = 0;
  Coefficients coeffs = Coefficients::rationals();
  std::vector<std::vector<BettiCell>> cells;  // cells[k][l]
  std::vector<std::size_t> totals;            // rank H_j(X), j = 0..2n

  const BettiCell& at(int k, int l) const { return cells[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]; }
  std::int64_t euler_characteristic() const;
};

BigradedBettiTable bigraded_betti(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k,
                                  const Coefficients& coeffs);

struct KernelOfG {
  int degree = 0;  // algebraic degree k (topological 2k)
  std::vector<FieldVector> basis;
  std::size_t dimension() const { return basis.size(); }
};

// Span of the L'_{beta,A} in (k[S]/Theta)_k, 1 <= k <= n.
KernelOfG kernel_of_g(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k, int degree,
                      const Coefficients& coeffs);

struct NovikSwartzReport {
  int q = 0;
  std::size_t elements = 0;  // number of L'_{beta,A} built
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  bool all_in_socle = true;
  bool boundary_class_vanishes = true;  // q = n-1: [dQ] x Lambda_{n-1} maps to 0
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// L'_{beta,A} over a basis of all of H_q(dQ), every |A| = q.
NovikSwartzReport novik_swartz_check(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                     const CornerComplex& k, int q, const Coefficients& coeffs);

// rank H^j_T(X) for j = 0..maxdeg; H^j(Q) ranks over Q.
std::vector<std::int64_t> equivariant_series(const SimplicialPoset& s, const CornerComplex& k, int maxdeg);

struct IdealMembershipReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// phi(R_{J,A}) = sum eps(I,J) C_{I,A} v_I lies in the span of theta_j times multichains, for every (J, A).
IdealMembershipReport ideal_membership(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                       const Coefficients& coeffs);

struct ConsistencyReport {
  std::vector<std::size_t> quotient_dims;  // dim (k[S]/Theta)_k in multichain coordinates
  std::vector<std::int64_t> h_prime;
  std::vector<std::size_t> e2_dims;  // dim E^2_{n-k,n-k}, indexed by k
  bool buchsbaum = true;
  std::int64_t euler = 0;
  std::int64_t fixed_points = 0;
  std::vector<std::string> passed;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

ConsistencyReport consistency_report(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                     const CornerComplex& k, const Coefficients& coeffs);

}  // namespace torushom
