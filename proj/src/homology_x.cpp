#include "torushom/homology_x.hpp"

#include <algorithm>

namespace torushom {

namespace {

Coefficients field_coeffs(const Coefficients& c) { return c.is_field() ? c : Coefficients::rationals(); }

void require_star(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const Coefficients& coeffs) {
  auto star = check_star(s, lambda, coeffs);
  if (!star.ok)
    throw TorusError(ErrorCode::StarViolation, "maximal simplex " + std::to_string(star.witness_element) +
                                                   " has minor " + star.witness_det.str());
}

// L'_{beta,A} = sum_I B_I C_{I,A} v_I over the generators of rank n-q.
IntVector l_prime(const SimplicialPoset& s, const CharacteristicMatrix& lambda, int q, const IntVector& beta, Subset a) {
  const auto& gens = s.of_rank(s.dim() - q);
  IntVector row(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (beta[g] != 0) row[g] = beta[g] * c_coefficient(s, lambda, gens[g], a);
  return row;
}

GroupData tensor(const HomologyGroup& h, std::int64_t copies) {
  GroupData g;
  g.rank = h.free_rank * static_cast<std::size_t>(copies);
  for (std::int64_t c = 0; c < copies; ++c) g.torsion.insert(g.torsion.end(), h.torsion.begin(), h.torsion.end());
  return g;
}

GroupData presentation_group(const GradedPresentation& p, const Coefficients& coeffs) {
  GroupData g;
  if (coeffs.is_field() || p.relations.empty()) {
    g.rank = coeffs.is_field() ? p.dimension() : p.generators.size();
    return g;
  }
  auto factors = smith_normal_form(IntMatrix::from_rows(p.relations, p.generators.size())).invariant_factors();
  g.rank = p.generators.size() - factors.size();
  for (const auto& d : factors)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

std::size_t rank_at(const std::map<int, HomologyGroup>& h, int q) { return h.count(q) ? h.at(q).free_rank : 0; }

}  // namespace

std::vector<RelationRow> relation_rows(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                       const CornerComplex& k, int q, RelationKind kind, const Coefficients& coeffs) {
  require_star(s, lambda, coeffs);
  const int n = s.dim();
  if (q < 0 || q > n) throw TorusError(ErrorCode::RangeError, "q must lie in [0, n]");
  std::vector<RelationRow> out;
  const auto& gens = s.of_rank(n - q);
  if (kind == RelationKind::First) {
    if (n - q - 1 < 0) return out;
    for (auto j : s.of_rank(n - q - 1))
      for (Subset a : subsets_of_size(n, q))
        out.push_back({q, kind, "R(J=" + std::to_string(s.id(j)) + ",A=" + subset_name(a) + ")",
                       theta_relation_row(s, lambda, gens, j, a)});
    return out;
  }
  if (q > n - 2) throw TorusError(ErrorCode::RangeError, "second-kind relations need q <= n-2");
  auto betas = k.delta_image(q, coeffs);
  for (std::size_t b = 0; b < betas.size(); ++b)
    for (Subset a : subsets_of_size(n, q))
      out.push_back({q, kind, "R'(beta=" + std::to_string(b) + ",A=" + subset_name(a) + ")",
                     l_prime(s, lambda, q, betas[b], a)});
  return out;
}

GradedPresentation face_module(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k,
                               int q, const Coefficients& coeffs, bool second_kind) {
  auto rows = relation_rows(s, lambda, k, q, RelationKind::First, coeffs);
  if (second_kind && q <= s.dim() - 2) {
    auto more = relation_rows(s, lambda, k, q, RelationKind::Second, coeffs);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  std::vector<IntVector> mat;
  std::vector<std::string> labels;
  for (auto& r : rows) {
    mat.push_back(std::move(r.coefficients));
    labels.push_back(std::move(r.label));
  }
  return make_presentation(s.dim() - q, coeffs.field(), s.of_rank(s.dim() - q), std::move(mat), std::move(labels));
}

std::string GroupData::describe(const Coefficients& coeffs) const {
  std::string out;
  const std::string base = coeffs.is_field() ? coeffs.field().name() : "Z";
  if (rank == 1) out = base;
  else if (rank > 1) out = base + "^" + std::to_string(rank);
  for (const auto& t : torsion) out += (out.empty() ? "" : " + ") + std::string("Z/") + t.str();
  return out.empty() ? "0" : out;
}

std::int64_t BigradedBettiTable::euler_characteristic() const {
  std::int64_t chi = 0;
  for (std::size_t j = 0; j < totals.size(); ++j) chi += (j % 2 ? -1 : 1) * static_cast<std::int64_t>(totals[j]);
  return chi;
}

BigradedBettiTable bigraded_betti(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k,
                                  const Coefficients& coeffs) {
  require_star(s, lambda, coeffs);
  const int n = s.dim();
  auto hq = k.homology(Selector::Total, coeffs);
  auto hr = k.homology(Selector::Relative, coeffs);
  BigradedBettiTable t;
  t.n = n;
  t.coeffs = coeffs;
  t.cells.assign(static_cast<std::size_t>(n + 1), std::vector<BettiCell>(static_cast<std::size_t>(n + 1)));
  t.totals.assign(static_cast<std::size_t>(2 * n + 1), 0);
  for (int a = 0; a <= n; ++a)
    for (int l = 0; l <= n; ++l) {
      BettiCell& cell = t.cells[static_cast<std::size_t>(a)][static_cast<std::size_t>(l)];
      const std::int64_t copies = binomial(n, l);
      if (a > l) {
        cell.group = tensor(hq.count(a) ? hq.at(a) : HomologyGroup{}, copies);
      } else if (a < l) {
        cell.group = tensor(hr.count(a) ? hr.at(a) : HomologyGroup{}, copies);
      } else if (a < n) {
        GroupData face = presentation_group(face_module(s, lambda, k, a, coeffs), coeffs);
        GroupData rel = tensor(hr.count(a) ? hr.at(a) : HomologyGroup{}, copies);
        cell.face_part = face.rank;
        cell.relative_part = rel.rank;
        cell.group.rank = face.rank + rel.rank;
        cell.group.torsion = face.torsion;
        cell.group.torsion.insert(cell.group.torsion.end(), rel.torsion.begin(), rel.torsion.end());
      } else {
        cell.group.rank = 1;
        cell.face_part = 1;
      }
      t.totals[static_cast<std::size_t>(a + l)] += cell.group.rank;
    }
  return t;
}

KernelOfG kernel_of_g(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k, int degree,
                      const Coefficients& coeffs) {
  const int n = s.dim();
  if (degree < 1 || degree > n) throw TorusError(ErrorCode::RangeError, "kernel_of_g needs 1 <= k <= n");
  KernelOfG out;
  out.degree = degree;
  const int q = n - degree;
  if (q > n - 2) return out;
  const Coefficients fc = field_coeffs(coeffs);
  auto pres = quotient_presentation(s, lambda, degree, fc);
  RowSpace span(fc.field(), pres.dimension());
  for (const auto& beta : k.delta_image(q, fc))
    for (Subset a : subsets_of_size(n, q)) {
      FieldVector v = pres.coordinates(fc.field().convert(l_prime(s, lambda, q, beta, a)));
      if (span.insert(v)) out.basis.push_back(std::move(v));
    }
  return out;
}

NovikSwartzReport novik_swartz_check(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                     const CornerComplex& k, int q, const Coefficients& coeffs) {
  const int n = s.dim();
  if (q < 0 || q > n - 1) throw TorusError(ErrorCode::RangeError, "novik_swartz_check needs 0 <= q <= n-1");
  const Coefficients fc = field_coeffs(coeffs);
  const Field f = fc.field();
  QuotientRing ring(s, lambda, fc);
  const auto& pres = ring.presentation(n - q);
  NovikSwartzReport rep;
  rep.q = q;

  auto hb = k.homology(Selector::Boundary, fc);
  const auto basis = hb.count(q) ? hb.at(q).representatives : std::vector<IntVector>{};
  RowSpace span(f, pres.dimension());
  for (const auto& beta : basis)
    for (Subset a : subsets_of_size(n, q)) {
      FieldVector v = pres.coordinates(f.convert(l_prime(s, lambda, q, beta, a)));
      ++rep.elements;
      if (!ring.in_socle(v, n - q)) rep.all_in_socle = false;
      span.insert(v);
    }
  rep.rank = span.rank();
  const std::size_t copies = static_cast<std::size_t>(binomial(n, q));
  if (q <= n - 2) {
    rep.expected_rank = basis.size() * copies;
  } else {
    const auto fundamental = k.delta_image(q, fc);
    rep.expected_rank = (basis.size() - std::min(basis.size(), fundamental.size())) * copies;
    for (const auto& beta : fundamental)
      for (Subset a : subsets_of_size(n, q))
        if (!is_zero(pres.coordinates(f.convert(l_prime(s, lambda, q, beta, a))))) rep.boundary_class_vanishes = false;
  }
  if (!rep.all_in_socle) rep.violations.push_back("some L' is not in the socle");
  if (rep.rank != rep.expected_rank)
    rep.violations.push_back("rank " + std::to_string(rep.rank) + " != expected " + std::to_string(rep.expected_rank));
  if (!rep.boundary_class_vanishes) rep.violations.push_back("[dQ] does not map to zero");
  return rep;
}

std::vector<std::int64_t> equivariant_series(const SimplicialPoset& s, const CornerComplex& k, int maxdeg) {
  auto h = hilbert_series(s, maxdeg);
  auto hq = k.homology(Selector::Total, Coefficients::rationals());
  for (int j = 0; j <= maxdeg; ++j) h[static_cast<std::size_t>(j)] += static_cast<std::int64_t>(rank_at(hq, j)) - (j == 0);
  return h;
}

IdealMembershipReport ideal_membership(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                       const Coefficients& coeffs) {
  const Coefficients fc = field_coeffs(coeffs);
  QuotientRing ring(s, lambda, fc);
  IdealMembershipReport rep;
  const int n = s.dim();
  for (int deg = 1; deg <= n; ++deg)
    for (auto j : s.of_rank(deg - 1))
      for (Subset a : subsets_of_size(n, n - deg)) {
        FaceRingElement x;
        for (auto i : s.covers_up(j)) {
          Rational c = fc.field().normalize(BigInt(s.incidence(i, j)) * c_coefficient(s, lambda, i, a));
          if (c != 0) x[Monomial{i}] = fc.field().normalize(x[Monomial{i}] + c);
        }
        std::erase_if(x, [](const auto& kv) { return kv.second == 0; });
        ++rep.checked;
        if (!ring.in_theta_ideal(x, deg))
          rep.failures.push_back("R(J=" + std::to_string(s.id(j)) + ",A=" + subset_name(a) + ")");
      }
  return rep;
}

ConsistencyReport consistency_report(const SimplicialPoset& s, const CharacteristicMatrix& lambda,
                                     const CornerComplex& k, const Coefficients& coeffs) {
  const int n = s.dim();
  const Coefficients fc = field_coeffs(coeffs);
  ConsistencyReport rep;
  QuotientRing ring(s, lambda, fc);
  rep.h_prime = h_prime_vector(s, fc);
  rep.buchsbaum = buchsbaum_check(s, fc).buchsbaum;
  bool agree = true;
  for (int d = 0; d <= n; ++d) {
    rep.quotient_dims.push_back(ring.theta_quotient_dimension(d));
    rep.e2_dims.push_back(face_module(s, lambda, k, n - d, fc, false).dimension());
    const auto u = static_cast<std::size_t>(d);
    if (rep.quotient_dims[u] != rep.e2_dims[u]) agree = false;
    if (rep.buchsbaum && static_cast<std::int64_t>(rep.quotient_dims[u]) != rep.h_prime[u]) agree = false;
  }
  (agree ? rep.passed : rep.failures).push_back(rep.buchsbaum ? "quotient = h' = E2" : "quotient = E2 (h' skipped: not Buchsbaum)");

  auto table = bigraded_betti(s, lambda, k, coeffs);
  bool dual = true;
  for (int a = 0; a <= n; ++a)
    for (int l = 0; l <= n; ++l)
      if (table.at(a, l).group.rank != table.at(n - a, n - l).group.rank) dual = false;
  (dual ? rep.passed : rep.failures).push_back("bigraded duality");

  rep.euler = table.euler_characteristic();
  rep.fixed_points = static_cast<std::int64_t>(s.of_rank(n).size());
  (rep.euler == rep.fixed_points ? rep.passed : rep.failures).push_back("euler characteristic = fixed points");

  bool independent = true;
  for (int q = 0; q <= n - 2; ++q) {
    const std::size_t e2 = face_module(s, lambda, k, q, fc, false).dimension();
    const std::size_t einf = face_module(s, lambda, k, q, fc, true).dimension();
    const std::size_t second = relation_rows(s, lambda, k, q, RelationKind::Second, fc).size();
    if (e2 - einf != second) independent = false;
  }
  (independent ? rep.passed : rep.failures).push_back("second-kind rows independent in E2");
  return rep;
}

}  // namespace torushom
