#pragma once

// JSON fixtures: the combinatorial input of one manifold plus its geometry
// block, and generators for polygons with holes.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torushom/char_lambda.hpp"
#include "torushom/cycles.hpp"
#include "torushom/orbit_space.hpp"
#include "torushom/poset.hpp"

namespace torushom {

struct Fixture {
  std::string name;
  int n = 0;
  PosetData poset;
  std::vector<IntVector> lambda;
  std::vector<InteriorCell> interior_cells;
  Geometry geometry;
  bool orientable = true;
  std::optional<std::string> coefficients;  // default coefficient choice
};

// Throws ParseError on schema violations (missing keys, wrong types, bad numbers).
Fixture fixture_from_json(const nlohmann::json& j);
nlohmann::json fixture_to_json(const Fixture& f);
Fixture load_fixture(const std::string& path);
// Two-space indentation, trailing newline.
std::string dump_fixture(const Fixture& f);

// Validated objects; non-movable because the complex and calculus keep pointers.
class Model {
 public:
  // Throws InvalidPoset / DimensionMismatch / InvalidComplex / MismatchedDatum.
  explicit Model(const Fixture& f);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const Fixture& fixture() const noexcept { return fixture_; }
  const SimplicialPoset& poset() const noexcept { return poset_; }
  const CharacteristicMatrix& lambda() const noexcept { return lambda_; }
  const CornerComplex& complex() const noexcept { return complex_; }
  int n() const noexcept { return poset_.dim(); }
  // Built on first use per coefficient choice.
  const CycleCalculus& calculus(const Coefficients& coeffs) const;

 private:
  Fixture fixture_;
  SimplicialPoset poset_;
  CharacteristicMatrix lambda_;
  CornerComplex complex_;
  mutable std::vector<std::pair<std::string, std::unique_ptr<CycleCalculus>>> calculi_;
};

// Disc with holes at n = 2. Component c has lengths[c] facets with consecutive
// vertex ids; corners join (v_t, v_{t+1}) and then close the cycle. One interior
// edge joins the closing corner of the outer component to that of each hole, and
// a single 2-cell bounds all facets. Geometry: a loop eta_h around hole h, the
// arc zeta_h along the h-th interior edge, eta_h . zeta_h' = delta_{h,h'} pt.
// Throws StarViolation naming the failing adjacent pair; RangeError on a length < 2.
Fixture polygon_with_holes(const std::vector<int>& lengths, const std::vector<IntVector>& lambda,
                           const std::string& name = "polygon");

// Rows satisfying the unimodularity condition on every corner, from a seeded random walk.
std::vector<IntVector> random_polygon_lambda(const std::vector<int>& lengths, std::uint64_t seed);

// Same fixture under the sign convention o (indexed by element position).
// Chain-form bordism coefficients are rescaled so every computed class is unchanged.
Fixture reoriented_fixture(const Fixture& f, const std::vector<int>& orientation);

}  // namespace torushom
