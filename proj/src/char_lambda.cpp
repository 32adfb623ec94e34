#include "torushom/char_lambda.hpp"

#include <bit>

namespace torushom {

CharacteristicMatrix::CharacteristicMatrix(const SimplicialPoset& s, std::vector<IntVector> rows) : n_(s.dim()) {
  const auto& verts = s.vertex_list();
  if (rows.size() != verts.size())
    throw TorusError(ErrorCode::DimensionMismatch, "lambda has " + std::to_string(rows.size()) + " rows but the poset has " +
                                                       std::to_string(verts.size()) + " vertices");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n_)
      throw TorusError(ErrorCode::DimensionMismatch, "lambda row width " + std::to_string(r.size()) + " != n = " +
                                                         std::to_string(n_));
  lambda_ = IntMatrix::from_rows(rows, static_cast<std::size_t>(n_));
  row_of_.assign(s.size(), SIZE_MAX);
  for (std::size_t r = 0; r < verts.size(); ++r) row_of_[verts[r]] = r;
}

std::span<const BigInt> CharacteristicMatrix::omega(SimplicialPoset::Index vertex) const {
  if (vertex >= row_of_.size() || row_of_[vertex] == SIZE_MAX)
    throw TorusError(ErrorCode::ElementNotFound, "element is not a vertex");
  return lambda_.row(row_of_[vertex]);
}

std::vector<IntVector> CharacteristicMatrix::rows() const {
  std::vector<IntVector> out;
  for (std::size_t r = 0; r < lambda_.rows(); ++r) out.push_back(lambda_.row_vector(r));
  return out;
}

BigInt lambda_minor(const SimplicialPoset& s, const CharacteristicMatrix& lambda, SimplicialPoset::Index i,
                    const std::vector<int>& columns) {
  const auto& verts = s.vertices(i);
  if (verts.size() != columns.size()) throw TorusError(ErrorCode::RankMismatch, "minor must be square");
  IntMatrix m(verts.size(), columns.size());
  for (std::size_t r = 0; r < verts.size(); ++r) {
    auto row = lambda.omega(verts[r]);
    for (std::size_t c = 0; c < columns.size(); ++c) m(r, c) = row[static_cast<std::size_t>(columns[c])];
  }
  return determinant(m);
}

StarResult check_star(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const Coefficients& coeffs) {
  if (lambda.n() != s.dim()) throw TorusError(ErrorCode::DimensionMismatch, "lambda width differs from poset rank");
  std::vector<int> all;
  for (int j = 0; j < s.dim(); ++j) all.push_back(j);
  StarResult res;
  for (auto m : s.maximal()) {
    if (s.rank(m) != s.dim()) continue;
    BigInt d = lambda_minor(s, lambda, m, all);
    bool unit = false;
    switch (coeffs.kind()) {
      case Coefficients::Kind::Integers: unit = (d == 1 || d == -1); break;
      case Coefficients::Kind::Rationals: unit = d != 0; break;
      case Coefficients::Kind::Prime: unit = d % coeffs.characteristic() != 0; break;
    }
    if (!unit) {
      res.ok = false;
      res.witness_element = s.id(m);
      res.witness_det = d;
      return res;
    }
  }
  return res;
}

BigInt c_coefficient(const SimplicialPoset& s, const CharacteristicMatrix& lambda, SimplicialPoset::Index i,
                     Subset a) {
  const int n = lambda.n();
  const int q = subset_size(a);
  const int r = s.rank(i);
  if (r + q != n)
    throw TorusError(ErrorCode::RankMismatch, "|I| + |A| = " + std::to_string(r + q) + " but n = " + std::to_string(n));
  if (r == 0) return 1;
  std::vector<int> columns;
  int exponent = r * (r + 1) / 2;
  for (int j = 1; j <= n; ++j)
    if (!(a & (Subset{1} << (j - 1)))) {
      columns.push_back(j - 1);
      exponent += j;
    }
  BigInt det = lambda_minor(s, lambda, i, columns);
  return ((exponent % 2) ? -1 : 1) * s.orientation(i) * det;
}

std::vector<IntVector> theta(const SimplicialPoset& s, const CharacteristicMatrix& lambda) {
  std::vector<IntVector> out;
  const auto& verts = s.vertex_list();
  for (int j = 0; j < lambda.n(); ++j) {
    IntVector row;
    for (auto v : verts) row.push_back(lambda.omega(v)[static_cast<std::size_t>(j)]);
    out.push_back(row);
  }
  return out;
}

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  for (Subset a = 0; a < (Subset{1} << n); ++a)
    if (std::popcount(a) == k) out.push_back(a);
  return out;
}

int subset_size(Subset a) { return std::popcount(a); }

std::vector<int> subset_elements(Subset a) {
  std::vector<int> out;
  for (int j = 1; a; ++j, a >>= 1)
    if (a & 1) out.push_back(j);
  return out;
}

std::string subset_name(Subset a) {
  std::string s = "{";
  bool first = true;
  for (int j : subset_elements(a)) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

}  // namespace torushom
