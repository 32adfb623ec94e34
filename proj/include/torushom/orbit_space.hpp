#pragma once

// Cellular model of the orbit space Q. Every proper face F_I (I != 0^) is one
// cell of dimension n - |I|, with boundary sum_{J >1 I} eps(J,I) F_J; the
// user supplies the interior cells. In the total complex each degree lists
// the face cells first, then the interior cells.

#include <map>
#include <string>
#include <vector>

#include "torushom/exact_linalg.hpp"
#include "torushom/poset.hpp"

namespace torushom {

struct InteriorCell {
  std::string id;
  int dim = 0;
  std::vector<std::pair<int, BigInt>> faces;             // poset element id -> coefficient
  std::vector<std::pair<std::string, BigInt>> interior;  // interior cell id -> coefficient
};

enum class Selector { Boundary, Total, Relative };
std::string selector_name(Selector s);

struct ComplexReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct LesReport {
  // Indexed by degree 0..n.
  std::vector<std::size_t> boundary, total, relative;
  std::vector<std::size_t> rank_i, rank_j, rank_delta;  // i_q, j_q and delta_q : H_q(Q,dQ) -> H_{q-1}(dQ)
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

class CornerComplex {
 public:
  using Index = SimplicialPoset::Index;

  // Throws InvalidComplex on unknown references or wrong dimensions.
  CornerComplex(const SimplicialPoset& s, std::vector<InteriorCell> cells, bool orientable = true);

  const SimplicialPoset& poset() const noexcept { return *s_; }
  int n() const noexcept { return s_->dim(); }
  bool orientable() const noexcept { return orientable_; }
  const std::vector<InteriorCell>& interior_cells() const noexcept { return cells_; }
  std::size_t interior_index(const std::string& id) const;  // throws ElementNotFound

  // Face cells of dimension d (elements of rank n - d).
  const std::vector<Index>& face_cells(int d) const;
  const std::vector<std::size_t>& interior_of_dim(int d) const;
  std::size_t face_position(Index element) const;

  // Interior cells of dim d -> face cells of dim d-1, and -> interior cells of dim d-1.
  IntMatrix face_block(int d) const;
  IntMatrix interior_block(int d) const;
  // Face cells of dim d -> face cells of dim d-1.
  IntMatrix face_boundary(int d) const;

  ChainComplex chain_complex(Selector sel) const;

  // d^2 = 0 and, when orientable, rank H_n(Q, dQ) = 1 over Q.
  ComplexReport validate() const;

  // Throws InvalidComplex when validate() fails.
  std::map<int, HomologyGroup> homology(Selector sel, const Coefficients& coeffs) const;

  // Face chains of dimension q (over face_cells(q)) generating im(delta_{q+1}) in H_q(dQ);
  // equivalently ker(H_q(dQ) -> H_q(Q)). Over F_p entries are residues. RangeError outside [0, n-1].
  std::vector<IntVector> delta_image(int q, const Coefficients& coeffs) const;

  // Ranks of the long exact sequence of (Q, dQ) and the exactness checks; field coefficients only.
  LesReport les_report(const Coefficients& coeffs) const;

  // rank H_q(dQ) = rank H_{n-1-q}(S) for every q (Poincare duality of dQ).
  bool duality_check(const Coefficients& coeffs) const;

  std::int64_t euler_characteristic() const;

  // Same cells over a re-signed copy of the poset: face coefficients are multiplied by o'(I) o(I).
  CornerComplex reoriented(const SimplicialPoset& target) const;

 private:
  void require_valid() const;

  const SimplicialPoset* s_;
  std::vector<InteriorCell> cells_;
  bool orientable_;
  std::vector<std::vector<Index>> face_cells_;
  std::vector<std::vector<std::size_t>> interior_by_dim_;
  std::map<std::string, std::size_t> interior_pos_;
  std::vector<std::size_t> face_pos_;
  mutable int valid_ = -1;
};

}  // namespace torushom
