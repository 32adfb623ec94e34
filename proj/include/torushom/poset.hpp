#pragma once

// Simplicial posets with incidence signs.
//
// Elements are stored densely, sorted by id. A vertex is a rank-1 element and
// its vertex id equals its element id. For an element J the sorted vertex
// list ver(J) indexes the Boolean lower ideal: face(J, mask) is the face of J
// spanned by the vertices at the set bit positions of mask.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torushom/exact_linalg.hpp"

namespace torushom {

struct PosetElement {
  int id = 0;
  std::vector<int> vertices;
};

// Raw input, possibly invalid.
struct PosetData {
  std::vector<PosetElement> elements;
  // (upper id, lower id) pairs; derived from vertex sets when absent.
  std::optional<std::vector<std::pair<int, int>>> covers;
  // (upper id, lower id) -> +1 / -1; default convention when absent.
  std::optional<std::map<std::pair<int, int>, int>> signs;
};

struct PosetReport {
  std::vector<std::string> violations;
  int rank = 0;
  bool pure = false;

  bool ok() const { return violations.empty(); }
};

// Checks the minimum, the Boolean lower ideals, purity and the sign cocycle.
PosetReport validate(const PosetData& data);

class SimplicialPoset {
 public:
  using Index = std::size_t;

  // Throws InvalidPoset on every violation except non-purity.
  explicit SimplicialPoset(const PosetData& data);

  std::size_t size() const noexcept { return ids_.size(); }
  int dim() const noexcept { return n_; }  // maximal rank
  bool is_pure() const noexcept { return pure_; }

  int id(Index i) const { return ids_[i]; }
  Index index_of(int id) const;  // throws ElementNotFound
  bool contains_id(int id) const { return by_id_.count(id) != 0; }
  Index bottom() const noexcept { return bottom_; }

  int rank(Index i) const { return static_cast<int>(vertices_[i].size()); }
  // Vertex elements of i, sorted.
  const std::vector<Index>& vertices(Index i) const { return vertices_[i]; }
  const std::vector<Index>& vertex_list() const { return of_rank_.size() > 1 ? of_rank_[1] : empty_; }
  const std::vector<Index>& of_rank(int k) const;
  std::vector<Index> maximal() const;

  Index face(Index j, std::uint32_t mask) const { return faces_[j][mask]; }
  std::uint32_t full_mask(Index j) const { return (std::uint32_t{1} << rank(j)) - 1; }
  bool leq(Index i, Index j) const;
  // Position-mask of ver(i) inside ver(j); requires i <= j.
  std::uint32_t mask_in(Index i, Index j) const;

  // Elements covered by j, with the removed vertex position t.
  std::vector<std::pair<Index, int>> covers_down(Index j) const;
  const std::vector<Index>& covers_up(Index i) const { return up_[i]; }

  // epsilon(J, J minus its t-th vertex)
  int sign(Index j, int t) const { return signs_[j][static_cast<std::size_t>(t)]; }
  // epsilon(J, I) for I covered by J, 0 otherwise.
  int incidence(Index j, Index i) const;
  // o(J) with epsilon(J, J minus v_t) = o(J) o(J minus v_t) (-1)^t.
  int orientation(Index j) const { return orientation_[j]; }

  // Least upper bounds of rank |ver(a) u ver(b)|.
  std::vector<Index> joins(Index a, Index b) const;
  // Greatest lower bound; exists whenever joins(a, b) is nonempty.
  std::optional<Index> meet(Index a, Index b) const;
  // Maximal elements above i, in increasing index order.
  std::vector<Index> maximal_above(Index i) const;

  // Same poset with signs o(J) o(I) (-1)^t; o indexed by element.
  SimplicialPoset reoriented(const std::vector<int>& orientation) const;
  PosetData data() const;

 private:
  SimplicialPoset() = default;
  void build_orientation();

  int n_ = 0;
  bool pure_ = false;
  Index bottom_ = 0;
  std::vector<int> ids_;
  std::map<int, Index> by_id_;
  std::vector<std::vector<Index>> vertices_;
  std::vector<std::vector<Index>> faces_;
  std::vector<std::vector<Index>> up_;
  std::vector<std::vector<int>> signs_;
  std::vector<int> orientation_;
  std::vector<std::vector<Index>> of_rank_;
  std::vector<Index> empty_;
};

// epsilon(J, J minus v_t) = (-1)^t, keyed by (upper id, lower id).
std::map<std::pair<int, int>, int> default_sign_convention(const SimplicialPoset& s);

struct VectorTriple {
  std::vector<std::int64_t> f;        // f_{-1}, ..., f_{n-1}
  std::vector<std::int64_t> h;        // h_0, ..., h_n
  std::vector<std::int64_t> h_prime;  // h'_0, ..., h'_n (filled by h_prime_vector)
};

// Throws NotPure. The empty simplex is counted: f_{-1} = 1.
VectorTriple fh_vectors(const SimplicialPoset& s);

// C_k spanned by the rank-(k+1) elements; the augmented version adds C_{-1} = <0^>.
ChainComplex simplex_chain_complex(const SimplicialPoset& s, bool augmented = false);

// Reduced Betti numbers beta~_{-1}, ..., beta~_{n-1} over the field; index j+1 holds beta~_j.
std::vector<std::size_t> reduced_betti(const SimplicialPoset& s, const Coefficients& coeffs);

std::vector<std::int64_t> h_prime_vector(const SimplicialPoset& s, const Coefficients& coeffs);

// Elements above i; i becomes the minimum. Ids are kept.
SimplicialPoset link(const SimplicialPoset& s, SimplicialPoset::Index i);

struct BuchsbaumResult {
  bool buchsbaum = true;
  int witness_element = -1;  // failing element id
  int witness_degree = 0;    // failing homology degree
};

BuchsbaumResult buchsbaum_check(const SimplicialPoset& s, const Coefficients& coeffs);

std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace torushom
