#pragma once

// Characteristic matrix: one row omega_i per vertex, in vertex-id order.
// Torus coordinates are numbered 1..n; subsets A of [n] are bitmasks with
// bit j-1 standing for coordinate j.

#include <cstdint>
#include <vector>

#include "torushom/exact_linalg.hpp"
#include "torushom/poset.hpp"

namespace torushom {

using Subset = std::uint32_t;

class CharacteristicMatrix {
 public:
  // rows[r] belongs to the r-th vertex of s (vertex_list order); throws DimensionMismatch.
  CharacteristicMatrix(const SimplicialPoset& s, std::vector<IntVector> rows);

  int n() const noexcept { return n_; }
  const IntMatrix& matrix() const noexcept { return lambda_; }
  // Row of a vertex element.
  std::span<const BigInt> omega(SimplicialPoset::Index vertex) const;
  std::vector<IntVector> rows() const;

 private:
  int n_;
  IntMatrix lambda_;
  std::vector<std::size_t> row_of_;  // element index -> row, SIZE_MAX for non-vertices
};

struct StarResult {
  bool ok = true;
  int witness_element = -1;  // id of a maximal simplex with a bad minor
  BigInt witness_det = 0;
};

// Every maximal simplex minor is a unit of the coefficient ring.
StarResult check_star(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const Coefficients& coeffs);

// Minor on the rows ver(I) (sorted) and the given columns (0-based, increasing).
BigInt lambda_minor(const SimplicialPoset& s, const CharacteristicMatrix& lambda, SimplicialPoset::Index i,
                    const std::vector<int>& columns);

// C_{I,A}; requires |I| + |A| = n (RankMismatch otherwise).
BigInt c_coefficient(const SimplicialPoset& s, const CharacteristicMatrix& lambda, SimplicialPoset::Index i,
                     Subset a);

// theta_j as coefficient rows over the vertices (vertex_list order).
std::vector<IntVector> theta(const SimplicialPoset& s, const CharacteristicMatrix& lambda);

// Subsets of [n] of size k in increasing bitmask order.
std::vector<Subset> subsets_of_size(int n, int k);
int subset_size(Subset a);
std::vector<int> subset_elements(Subset a);  // 1-based
std::string subset_name(Subset a);           // "{1,2}", "{}"

}  // namespace torushom
