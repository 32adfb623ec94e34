#include "torushom/face_ring.hpp"

#include <algorithm>
#include <mutex>

namespace torushom {

using Index = SimplicialPoset::Index;

// ---------------------------------------------------------------- FaceRing

FaceRingElement FaceRing::generator(Index i) const {
  if (i == s_->bottom()) return one();
  return {{Monomial{i}, Rational(1)}};
}

int FaceRing::degree(const Monomial& m) const {
  int d = 0;
  for (Index i : m) d += s_->rank(i);
  return d;
}

bool FaceRing::is_multichain(const Monomial& m) const {
  for (std::size_t t = 0; t + 1 < m.size(); ++t)
    if (!s_->leq(m[t], m[t + 1])) return false;
  return std::none_of(m.begin(), m.end(), [&](Index i) { return i == s_->bottom(); });
}

void FaceRing::straighten(Monomial m, const Rational& c, FaceRingElement& out) const {
  std::sort(m.begin(), m.end(), [&](Index a, Index b) {
    return s_->rank(a) != s_->rank(b) ? s_->rank(a) < s_->rank(b) : a < b;
  });
  std::size_t t = 0;
  while (t + 1 < m.size() && s_->leq(m[t], m[t + 1])) ++t;
  if (t + 1 >= m.size()) {
    Rational& slot = out[m];
    slot = field_.normalize(slot + c);
    if (slot == 0) out.erase(m);
    return;
  }
  const Index a = m[t], b = m[t + 1];
  auto joins = s_->joins(a, b);
  if (joins.empty()) return;
  const Index meet = *s_->meet(a, b);
  Monomial rest;
  for (std::size_t u = 0; u < m.size(); ++u)
    if (u != t && u != t + 1) rest.push_back(m[u]);
  if (meet != s_->bottom()) rest.push_back(meet);
  for (Index k : joins) {
    Monomial next = rest;
    next.push_back(k);
    straighten(std::move(next), c, out);
  }
}

FaceRingElement FaceRing::monomial(const std::vector<Index>& factors) const {
  Monomial m;
  for (Index i : factors)
    if (i != s_->bottom()) m.push_back(i);
  FaceRingElement out;
  straighten(std::move(m), 1, out);
  return out;
}

FaceRingElement FaceRing::multiply(const FaceRingElement& x, const FaceRingElement& y) const {
  FaceRingElement out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      Monomial m = mx;
      m.insert(m.end(), my.begin(), my.end());
      straighten(std::move(m), field_.normalize(cx * cy), out);
    }
  return out;
}

FaceRingElement FaceRing::add(const FaceRingElement& x, const FaceRingElement& y, const Rational& scale) const {
  FaceRingElement out = x;
  for (const auto& [m, c] : y) {
    Rational& slot = out[m];
    slot = field_.normalize(slot + scale * c);
    if (slot == 0) out.erase(m);
  }
  return out;
}

std::vector<Monomial> FaceRing::multichains(int degree) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<std::vector<Index>> above(s_->size());
  for (Index i = 0; i < s_->size(); ++i)
    for (Index j = 0; j < s_->size(); ++j)
      if (j != s_->bottom() && s_->leq(i, j)) above[i].push_back(j);
  Monomial cur;
  std::function<void(Index, int)> rec = [&](Index prev, int remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (Index j : above[prev]) {
      if (s_->rank(j) > remaining) continue;
      cur.push_back(j);
      rec(j, remaining - s_->rank(j));
      cur.pop_back();
    }
  };
  rec(s_->bottom(), degree);
  return out;
}

std::string FaceRing::render(const FaceRingElement& x) const {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : x) {
    std::string coeff = to_string(c);
    if (!s.empty()) s += coeff[0] == '-' ? " - " : " + ";
    else if (coeff[0] == '-') s += "-";
    if (coeff[0] == '-') coeff.erase(0, 1);
    if (coeff != "1" || m.empty()) s += coeff;
    for (Index i : m) s += "v" + std::to_string(s_->id(i));
  }
  return s;
}

std::vector<std::int64_t> hilbert_series(const SimplicialPoset& s, int maxdeg) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(std::max(maxdeg + 1, 0)), 0);
  for (int d = 0; d <= maxdeg; d += 2) {
    const int j = d / 2;
    std::int64_t dim = (j == 0) ? 1 : 0;
    for (int i = 1; i <= s.dim(); ++i)
      dim += static_cast<std::int64_t>(s.of_rank(i).size()) * binomial(j - 1, i - 1);
    out[static_cast<std::size_t>(d)] = dim;
  }
  return out;
}

// ------------------------------------------------------ GradedPresentation

std::optional<std::size_t> GradedPresentation::position(Index element) const {
  auto it = std::find(generators.begin(), generators.end(), element);
  if (it == generators.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators.begin());
}

FieldVector GradedPresentation::coordinates(const FieldVector& v) const {
  if (v.size() != generators.size()) throw TorusError(ErrorCode::DimensionMismatch, "vector length differs from generator count");
  FieldVector norm(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) norm[i] = field.normalize(v[i]);
  FieldVector r = echelon.reduce(std::move(norm));
  FieldVector out(basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b) out[b] = r[basis[b]];
  return out;
}

FieldVector GradedPresentation::coordinates_of(Index element) const {
  auto p = position(element);
  if (!p) throw TorusError(ErrorCode::ElementNotFound, "element is not a generator in this degree");
  FieldVector v(generators.size(), Rational(0));
  v[*p] = 1;
  return coordinates(v);
}

FieldVector GradedPresentation::lift(const FieldVector& coords) const {
  if (coords.size() != basis.size()) throw TorusError(ErrorCode::DimensionMismatch, "coordinate length");
  FieldVector v(generators.size(), Rational(0));
  for (std::size_t b = 0; b < basis.size(); ++b) v[basis[b]] = coords[b];
  return v;
}

GradedPresentation make_presentation(int degree, Field field, std::vector<Index> generators,
                                     std::vector<IntVector> relations, std::vector<std::string> labels) {
  GradedPresentation p;
  p.degree = degree;
  p.field = field;
  p.generators = std::move(generators);
  p.echelon = RowSpace(field, p.generators.size());
  for (const auto& r : relations) {
    if (r.size() != p.generators.size()) throw TorusError(ErrorCode::DimensionMismatch, "relation row length");
    p.echelon.insert(r);
  }
  p.relations = std::move(relations);
  p.relation_labels = std::move(labels);
  p.basis = p.echelon.free_columns();
  return p;
}

IntVector theta_relation_row(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                             const std::vector<Index>& generators, Index j, Subset a) {
  IntVector row(generators.size());
  for (Index i : s.covers_up(j)) {
    auto it = std::find(generators.begin(), generators.end(), i);
    if (it == generators.end()) throw TorusError(ErrorCode::RankMismatch, "cover is not a generator");
    row[static_cast<std::size_t>(it - generators.begin())] += s.incidence(i, j) * c_coefficient(s, lambda, i, a);
  }
  return row;
}

GradedPresentation quotient_presentation(const SimplicialPoset& s, const CharacteristicMatrix& lambda, int k,
                                         const Coefficients& coeffs) {
  auto star = check_star(s, lambda, coeffs);
  if (!star.ok)
    throw TorusError(ErrorCode::StarViolation, "maximal simplex " + std::to_string(star.witness_element) +
                                                   " has minor " + star.witness_det.str());
  const int n = s.dim();
  if (k < 0 || k > n + 1) throw TorusError(ErrorCode::RangeError, "degree out of range");
  std::vector<Index> gens = s.of_rank(k);
  std::vector<IntVector> rows;
  std::vector<std::string> labels;
  if (k >= 1 && k <= n)
    for (Index j : s.of_rank(k - 1))
      for (Subset a : subsets_of_size(n, n - k)) {
        rows.push_back(theta_relation_row(s, lambda, gens, j, a));
        labels.push_back("R(J=" + std::to_string(s.id(j)) + ",A=" + subset_name(a) + ")");
      }
  return make_presentation(k, coeffs.field(), std::move(gens), std::move(rows), std::move(labels));
}

Index lex_least_maximal(const SimplicialPoset& s, const std::vector<Index>& candidates) {
  if (candidates.empty()) throw TorusError(ErrorCode::NoMaximalSimplex, "no maximal simplex available");
  auto key = [&](Index m) {
    std::vector<int> v;
    for (Index u : s.vertices(m)) v.push_back(s.id(u));
    return std::make_pair(v, s.id(m));
  };
  return *std::min_element(candidates.begin(), candidates.end(), [&](Index a, Index b) { return key(a) < key(b); });
}

// ------------------------------------------------------------ QuotientRing

namespace {
std::recursive_mutex& cache_mutex() {
  static std::recursive_mutex m;
  return m;
}
}  // namespace

QuotientRing::QuotientRing(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const Coefficients& coeffs,
                           MaximalChoice choice)
    : s_(&s), lambda_(&lambda), field_(coeffs.field()), ring_(s, coeffs.field()), choice_(std::move(choice)) {
  if (!s.is_pure()) throw TorusError(ErrorCode::NotPure, "poset is not pure");
  if (!choice_) choice_ = [this](Index, const std::vector<Index>& c) { return lex_least_maximal(*s_, c); };
  for (int k = 0; k <= s.dim() + 1; ++k) presentations_.push_back(quotient_presentation(s, lambda, k, coeffs));
}

const GradedPresentation& QuotientRing::presentation(int k) const {
  if (k < 0 || k > n() + 1) throw TorusError(ErrorCode::DegreeOverflow, "degree " + std::to_string(k) + " out of range");
  return presentations_[static_cast<std::size_t>(k)];
}

FieldVector QuotientRing::vertex_times_generator(Index vertex, Index element) const {
  std::lock_guard lock(cache_mutex());
  auto key = std::make_pair(vertex, element);
  if (auto it = vertex_cache_.find(key); it != vertex_cache_.end()) return it->second;

  const int k = s_->rank(element);
  const auto& target = presentation(std::min(k + 1, n() + 1));
  FieldVector out(target.generators.size(), Rational(0));
  auto add_product = [&](Index u, const Rational& c) {
    for (Index j : s_->joins(u, element)) {
      auto p = target.position(j);
      if (p) out[*p] = field_.normalize(out[*p] + c);
    }
  };
  const auto& ver = s_->vertices(element);
  if (std::find(ver.begin(), ver.end(), vertex) == ver.end()) {
    add_product(vertex, 1);
  } else {
    auto candidates = s_->maximal_above(element);
    std::erase_if(candidates, [&](Index m) { return s_->rank(m) != n(); });
    if (candidates.empty())
      throw TorusError(ErrorCode::NoMaximalSimplex, "no maximal simplex above " + std::to_string(s_->id(element)));
    const Index m = choice_(element, candidates);
    const auto& mv = s_->vertices(m);
    std::vector<FieldVector> a;
    FieldVector e(mv.size(), Rational(0));
    for (std::size_t r = 0; r < mv.size(); ++r) {
      a.push_back(field_.convert(lambda_->omega(mv[r])));
      if (mv[r] == vertex) e[r] = 1;
    }
    FieldVector c = field_solve(a, e, field_);
    // v_i = - sum_{u not in M} (omega_u . c) v_u modulo Theta
    for (Index u : s_->vertex_list()) {
      if (std::find(mv.begin(), mv.end(), u) != mv.end()) continue;
      auto w = lambda_->omega(u);
      Rational dot = 0;
      for (std::size_t j = 0; j < c.size(); ++j) dot += w[j] * c[j];
      dot = field_.normalize(-dot);
      if (dot != 0) add_product(u, dot);
    }
  }
  vertex_cache_.emplace(key, out);
  return out;
}

FieldVector QuotientRing::vertex_action(Index vertex, const FieldVector& coords, int k) const {
  const auto& src = presentation(k);
  const auto& dst = presentation(std::min(k + 1, n() + 1));
  if (k + 1 > n()) return FieldVector{};
  FieldVector x = src.lift(coords);
  FieldVector acc(dst.generators.size(), Rational(0));
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (x[g] == 0) continue;
    FieldVector prod = vertex_times_generator(vertex, src.generators[g]);
    for (std::size_t t = 0; t < acc.size(); ++t)
      if (prod[t] != 0) acc[t] = field_.normalize(acc[t] + x[g] * prod[t]);
  }
  return dst.coordinates(acc);
}

std::vector<FieldVector> QuotientRing::action_matrix(Index vertex, int k) const {
  const std::size_t cols = presentation(k).dimension();
  const std::size_t rows = (k + 1 > n()) ? 0 : presentation(k + 1).dimension();
  std::vector<FieldVector> m(rows, FieldVector(cols, Rational(0)));
  for (std::size_t b = 0; b < cols; ++b) {
    FieldVector e(cols, Rational(0));
    e[b] = 1;
    FieldVector img = vertex_action(vertex, e, k);
    for (std::size_t r = 0; r < rows; ++r) m[r][b] = img[r];
  }
  return m;
}

std::vector<FieldVector> QuotientRing::socle_basis(int k) const {
  std::vector<FieldVector> stacked;
  for (Index v : s_->vertex_list())
    for (auto& row : action_matrix(v, k)) stacked.push_back(row);
  return field_kernel(stacked, presentation(k).dimension(), field_);
}

bool QuotientRing::in_socle(const FieldVector& coords, int k) const {
  for (Index v : s_->vertex_list())
    if (!is_zero(vertex_action(v, coords, k))) return false;
  return true;
}

FieldVector QuotientRing::reduce_monomial(const Monomial& m) const {
  std::lock_guard lock(cache_mutex());
  if (auto it = reduce_cache_.find(m); it != reduce_cache_.end()) return it->second;
  FieldVector out;
  if (m.empty()) {
    out = presentation(0).coordinates_of(s_->bottom());
  } else if (m.size() == 1) {
    out = presentation(s_->rank(m[0])).coordinates_of(m[0]);
  } else {
    const Index first = m[0];
    const Index vertex = s_->vertices(first)[0];
    const Index rest_head = s_->face(first, s_->full_mask(first) & ~1u);
    Monomial rest;
    if (rest_head != s_->bottom()) rest.push_back(rest_head);
    rest.insert(rest.end(), m.begin() + 1, m.end());
    const int deg = ring_.degree(rest);
    if (deg + 1 > n()) {
      out = FieldVector{};
    } else {
      out = vertex_action(vertex, reduce_monomial(rest), deg);
    }
  }
  reduce_cache_.emplace(m, out);
  return out;
}

FieldVector QuotientRing::reduce(const FaceRingElement& x, int k) const {
  const std::size_t dim = (k > n()) ? 0 : presentation(k).dimension();
  FieldVector out(dim, Rational(0));
  if (k > n()) return out;
  for (const auto& [m, c] : x) {
    if (ring_.degree(m) != k) throw TorusError(ErrorCode::DimensionMismatch, "element is not homogeneous of degree " + std::to_string(k));
    FieldVector r = reduce_monomial(m);
    for (std::size_t t = 0; t < dim; ++t)
      if (r[t] != 0) out[t] = field_.normalize(out[t] + c * r[t]);
  }
  return out;
}

const std::vector<Monomial>& QuotientRing::multichain_basis(int k) const {
  std::lock_guard lock(cache_mutex());
  auto it = multichain_cache_.find(k);
  if (it == multichain_cache_.end()) it = multichain_cache_.emplace(k, ring_.multichains(k)).first;
  return it->second;
}

FieldVector QuotientRing::multichain_coordinates(const FaceRingElement& x, int k) const {
  const auto& basis = multichain_basis(k);
  FieldVector out(basis.size(), Rational(0));
  for (const auto& [m, c] : x) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) throw TorusError(ErrorCode::DimensionMismatch, "monomial outside the degree basis");
    out[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return out;
}

FaceRingElement QuotientRing::theta_element(int j) const {
  FaceRingElement out;
  for (Index v : s_->vertex_list()) {
    Rational c = field_.normalize(lambda_->omega(v)[static_cast<std::size_t>(j)]);
    if (c != 0) out[Monomial{v}] = c;
  }
  return out;
}

const RowSpace& QuotientRing::theta_span(int k) const {
  std::lock_guard lock(cache_mutex());
  if (auto it = theta_cache_.find(k); it != theta_cache_.end()) return it->second;
  RowSpace span(field_, multichain_basis(k).size());
  if (k >= 1)
    for (int j = 0; j < n(); ++j) {
      FaceRingElement th = theta_element(j);
      for (const auto& m : multichain_basis(k - 1))
        span.insert(multichain_coordinates(ring_.multiply(th, {{m, Rational(1)}}), k));
    }
  return theta_cache_.emplace(k, std::move(span)).first->second;
}

bool QuotientRing::in_theta_ideal(const FaceRingElement& x, int k) const {
  return theta_span(k).contains(multichain_coordinates(x, k));
}

std::size_t QuotientRing::theta_quotient_dimension(int k) const {
  return multichain_basis(k).size() - theta_span(k).rank();
}

}  // namespace torushom
