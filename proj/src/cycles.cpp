#include "torushom/cycles.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <set>

namespace torushom {

using Index = SimplicialPoset::Index;

// ------------------------------------------------------------ torus classes

TorusClass TorusClass::basis(int n, Subset a) {
  TorusClass t;
  t.n = n;
  t.terms[a] = 1;
  return t;
}

int shuffle_sign(Subset a, Subset b) {
  int inversions = 0;
  for (int i = 0; i < 32; ++i)
    if (a & (Subset{1} << i)) inversions += std::popcount(b & ((Subset{1} << i) - 1));
  return inversions % 2 ? -1 : 1;
}

TorusClass wedge(const TorusClass& x, const TorusClass& y) {
  TorusClass out;
  out.n = std::max(x.n, y.n);
  for (const auto& [a, c] : x.terms)
    for (const auto& [b, d] : y.terms) {
      if (a & b) continue;
      Rational& slot = out.terms[a | b];
      slot += shuffle_sign(a, b) * c * d;
      if (slot == 0) out.terms.erase(a | b);
    }
  return out;
}

TorusClass poincare_dual(const TorusClass& x) {
  const Subset full = (Subset{1} << x.n) - 1;
  TorusClass out;
  out.n = x.n;
  for (const auto& [a, c] : x.terms) out.terms[full & ~a] = shuffle_sign(a, full & ~a) * c;
  return out;
}

TorusClass poincare_dual_inverse(const TorusClass& x) {
  const Subset full = (Subset{1} << x.n) - 1;
  TorusClass out;
  out.n = x.n;
  for (const auto& [c_set, c] : x.terms) out.terms[full & ~c_set] = shuffle_sign(full & ~c_set, c_set) * c;
  return out;
}

TorusClass torus_intersect(const TorusClass& x, const TorusClass& y) {
  return poincare_dual_inverse(wedge(poincare_dual(x), poincare_dual(y)));
}

std::string torus_name(Subset a) {
  if (a == 0) return "e0";
  auto el = subset_elements(a);
  const bool digits = el.back() <= 9;
  std::string s = digits ? "e" : "e{";
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (!digits && i) s += ",";
    s += std::to_string(el[i]);
  }
  return digits ? s : s + "}";
}

// ----------------------------------------------------------------- calculus

namespace {

void accumulate(FacePart& out, Index i, const Rational& c, const Field& f) {
  Rational& slot = out[i];
  slot = f.normalize(slot + c);
  if (slot == 0) out.erase(i);
}

template <class Key>
void accumulate(std::map<Key, Rational>& out, const Key& k, const Rational& c, const Field& f) {
  Rational& slot = out[k];
  slot = f.normalize(slot + c);
  if (slot == 0) out.erase(k);
}

std::string coefficient_prefix(const Rational& c, bool first) {
  std::string s = to_string(c);
  bool neg = s[0] == '-';
  if (neg) s.erase(0, 1);
  std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  if (s != "1") out += s + "·";
  return out;
}

bool is_face_point(const std::string& h) { return h == "pt"; }

[[noreturn]] void parse_failure(const std::string& text, const std::string& why) {
  throw TorusError(ErrorCode::ParseError, "cannot parse '" + text + "': " + why);
}

[[noreturn]] void mismatch(const std::string& m) { throw TorusError(ErrorCode::MismatchedDatum, m); }

}  // namespace

CycleCalculus::CycleCalculus(const SimplicialPoset& s, const CharacteristicMatrix& lambda, const CornerComplex& k,
                             Geometry geometry, const Coefficients& coeffs)
    : s_(&s),
      lambda_(&lambda),
      k_(&k),
      geometry_(std::move(geometry)),
      coeffs_(coeffs),
      field_(coeffs.field()),
      ring_(s, lambda, coeffs) {
  for (int q = 0; q <= s.dim(); ++q) e_inf_.push_back(face_module(s, lambda, k, q, coeffs));
  check_geometry();
}

const GradedPresentation& CycleCalculus::e_infinity(int q) const {
  if (q < 0 || q > n()) throw TorusError(ErrorCode::RangeError, "q out of range");
  return e_inf_[static_cast<std::size_t>(q)];
}

const DiaphragmDatum& CycleCalculus::diaphragm_datum(const std::string& name) const {
  for (const auto& d : geometry_.diaphragms)
    if (d.name == name) return d;
  throw TorusError(ErrorCode::MismatchedDatum, "unknown diaphragm " + name);
}

const SpineDatum* CycleCalculus::spine_datum(const std::string& name) const {
  for (const auto& d : geometry_.spines)
    if (d.name == name) return &d;
  return nullptr;
}

void CycleCalculus::check_geometry() const {
  auto fail = [](const std::string& m) { mismatch(m); };
  std::set<std::string> names{"pt"};
  auto hq = k_->homology(Selector::Total, Coefficients::rationals());
  std::map<int, std::size_t> spines_by_dim;
  for (const auto& sp : geometry_.spines) {
    if (!names.insert(sp.name).second) fail("duplicate geometry name " + sp.name);
    if (sp.dim < 0 || sp.dim > n()) fail("spine " + sp.name + " has dimension out of range");
    const std::size_t have = hq.count(sp.dim) ? hq.at(sp.dim).free_rank : 0;
    if (++spines_by_dim[sp.dim] > have) fail("more spine classes of dimension " + std::to_string(sp.dim) + " than rank H(Q)");
  }
  for (const auto& d : geometry_.diaphragms) {
    if (!names.insert(d.name).second) fail("duplicate geometry name " + d.name);
    if (d.dim < 0 || d.dim > n()) fail("diaphragm " + d.name + " has dimension out of range");
    if (d.meets_faces)
      for (int id : *d.meets_faces)
        if (!s_->contains_id(id)) fail("diaphragm " + d.name + " meets unknown face " + std::to_string(id));
    if (!d.chain.empty()) {
      IntVector v(k_->interior_of_dim(d.dim).size());
      for (const auto& [cell, c] : d.chain) {
        std::size_t idx = 0;
        try {
          idx = k_->interior_index(cell);
        } catch (const TorusError&) {
          fail("diaphragm " + d.name + " uses unknown cell " + cell);
        }
        const auto& slots = k_->interior_of_dim(d.dim);
        auto it = std::find(slots.begin(), slots.end(), idx);
        if (it == slots.end()) fail("diaphragm " + d.name + ": cell " + cell + " has the wrong dimension");
        v[static_cast<std::size_t>(it - slots.begin())] += c;
      }
      if (!is_zero(multiply(k_->interior_block(d.dim), v))) fail("diaphragm " + d.name + " is not a relative cycle");
    }
  }
  auto class_dim = [&](const std::string& h) -> int {
    if (is_face_point(h)) return 0;
    const SpineDatum* sp = spine_datum(h);
    if (!sp) fail("pairing value refers to unknown spine " + h);
    return sp->dim;
  };
  for (const auto& p : geometry_.spine_diaphragm) {
    const SpineDatum* sp = spine_datum(p.first);
    if (!sp) fail("pairing refers to unknown spine " + p.first);
    const int target = sp->dim + diaphragm_datum(p.second).dim - n();
    for (const auto& [h, c] : p.value)
      if (class_dim(h) != target) fail("pairing " + p.first + " x " + p.second + " lands in the wrong degree");
  }
  for (const auto& p : geometry_.spine_spine) {
    const SpineDatum* a = spine_datum(p.first);
    const SpineDatum* b = spine_datum(p.second);
    if (!a || !b) fail("pairing refers to an unknown spine");
    for (const auto& [h, c] : p.value)
      if (class_dim(h) != a->dim + b->dim - n()) fail("pairing " + p.first + " x " + p.second + " lands in the wrong degree");
  }
  for (const auto& [a, b] : geometry_.disjoint)
    if (!names.count(a) || !names.count(b)) fail("disjointness refers to unknown chain " + a + " / " + b);
  for (const auto& bd : geometry_.bordisms) {
    const auto& src = diaphragm_datum(bd.source);
    const auto& dst = diaphragm_datum(bd.target);
    if (src.dim != dst.dim) fail("bordism " + bd.source + " -> " + bd.target + " changes dimension");
    if (!bd.chain_form && (!bd.subset || subset_size(*bd.subset) != src.dim))
      fail("rows-form bordism " + bd.source + " -> " + bd.target + " needs a subset of size " + std::to_string(src.dim));
    for (const auto& [id, c] : bd.faces) {
      if (!s_->contains_id(id)) fail("bordism refers to unknown face " + std::to_string(id));
      if (s_->rank(s_->index_of(id)) != n() - src.dim)
        fail("bordism " + bd.source + " -> " + bd.target + ": face " + std::to_string(id) + " has the wrong dimension");
    }
    if (!src.chain.empty() && !dst.chain.empty()) {
      const auto& slots = k_->interior_of_dim(src.dim);
      IntVector diff(slots.size());
      for (const auto* d : {&src, &dst})
        for (const auto& [cell, c] : d->chain) {
          auto pos = std::find(slots.begin(), slots.end(), k_->interior_index(cell)) - slots.begin();
          diff[static_cast<std::size_t>(pos)] += (d == &src ? BigInt(1) : BigInt(-1)) * c;
        }
      IntMatrix up = k_->interior_block(src.dim + 1);
      if (!is_zero(diff) && (up.cols() == 0 || !in_integer_row_span(up.transpose(), diff)))
        fail("bordism " + bd.source + " -> " + bd.target + " joins different relative classes");
    }
  }
  // Path independence of the rewrites.
  for (const auto& d : geometry_.diaphragms)
    for (Subset a : subsets_of_size(n(), d.dim)) reachable(d.name, a);
}

bool CycleCalculus::meets(const std::string& name, Index face) const {
  const auto& d = diaphragm_datum(name);
  if (!d.meets_faces) return true;
  return std::find(d.meets_faces->begin(), d.meets_faces->end(), s_->id(face)) != d.meets_faces->end();
}

bool CycleCalculus::disjoint(const std::string& a, const std::string& b) const {
  for (const auto& [x, y] : geometry_.disjoint)
    if ((x == a && y == b) || (x == b && y == a)) return true;
  return false;
}

CycleExpression CycleCalculus::face(Index i, const Rational& c) const {
  CycleExpression x;
  if (i >= s_->size()) throw TorusError(ErrorCode::ElementNotFound, "no such face");
  accumulate(x.faces, i, c, field_);
  return x;
}

CycleExpression CycleCalculus::spine(const std::string& name, Subset a, const Rational& c) const {
  if (!is_face_point(name) && !spine_datum(name)) throw TorusError(ErrorCode::MismatchedDatum, "unknown spine " + name);
  if (a >> n()) throw TorusError(ErrorCode::RangeError, "torus index out of range");
  CycleExpression x;
  accumulate(x.spines, std::make_pair(name, a), c, field_);
  return x;
}

CycleExpression CycleCalculus::diaphragm(const std::string& name, Subset a, const Rational& c) const {
  const auto& d = diaphragm_datum(name);
  if (a >> n()) throw TorusError(ErrorCode::RangeError, "torus index out of range");
  if (subset_size(a) < d.dim) throw TorusError(ErrorCode::MismatchedDatum, "diaphragm " + name + " needs |A| >= dim L");
  CycleExpression x;
  accumulate(x.diaphragms, std::make_pair(name, a), c, field_);
  return x;
}

CycleExpression CycleCalculus::add(const CycleExpression& x, const CycleExpression& y, const Rational& scale) const {
  CycleExpression out = x;
  for (const auto& [i, c] : y.faces) accumulate(out.faces, i, scale * c, field_);
  for (const auto& [k, c] : y.spines) accumulate(out.spines, k, scale * c, field_);
  for (const auto& [k, c] : y.diaphragms) accumulate(out.diaphragms, k, scale * c, field_);
  return out;
}

FacePart CycleCalculus::face_intersect(const FacePart& x, const FacePart& y) const {
  const FaceRing& fr = ring_.ring();
  FacePart out;
  for (const auto& [i, c] : x)
    for (const auto& [j, d] : y) {
      const int deg = s_->rank(i) + s_->rank(j);
      if (deg > n())
        throw TorusError(ErrorCode::DegreeOverflow, "product of " + render_face(i) + " and " + render_face(j) +
                                                        " has degree " + std::to_string(2 * deg) + " > 2n");
      for (const auto& [m, e] : fr.multiply(fr.generator(i), fr.generator(j))) {
        const Rational coeff = c * d * e;
        if (m.empty()) {
          accumulate(out, s_->bottom(), coeff, field_);
        } else if (m.size() == 1) {
          accumulate(out, m[0], coeff, field_);
        } else {
          const auto& pres = ring_.presentation(deg);
          FieldVector gens = pres.lift(ring_.reduce({{m, Rational(1)}}, deg));
          for (std::size_t g = 0; g < gens.size(); ++g)
            if (gens[g] != 0) accumulate(out, pres.generators[g], coeff * gens[g], field_);
        }
      }
    }
  return out;
}

std::optional<FacePart> CycleCalculus::face_delta(Subset a, const BordismDatum& datum, bool forward) const {
  const int k = diaphragm_datum(datum.source).dim;
  FacePart sigma;
  if (subset_size(a) > k) return sigma;
  if (subset_size(a) < k) throw TorusError(ErrorCode::MismatchedDatum, "diaphragm needs |A| >= dim L");
  if (!datum.chain_form && datum.subset != a) return std::nullopt;
  const Rational dir = forward ? 1 : -1;
  for (const auto& [id, c] : datum.faces) {
    const Index i = s_->index_of(id);
    const Rational v = datum.chain_form ? Rational(-c * Rational(c_coefficient(*s_, *lambda_, i, a))) : c;
    accumulate(sigma, i, dir * v, field_);
  }
  return sigma;
}

CycleExpression CycleCalculus::bordism_rewrite(const std::string& name, Subset a, const BordismDatum& datum) const {
  bool forward;
  if (datum.source == name) forward = true;
  else if (datum.target == name) forward = false;
  else throw TorusError(ErrorCode::MismatchedDatum, "bordism " + datum.source + " -> " + datum.target + " does not touch " + name);
  auto sigma = face_delta(a, datum, forward);
  if (!sigma) throw TorusError(ErrorCode::MismatchedDatum, "bordism rows are given for another subset than " + subset_name(a));
  CycleExpression out = diaphragm(forward ? datum.target : datum.source, a);
  for (const auto& [i, c] : *sigma) accumulate(out.faces, i, c, field_);
  return out;
}

std::vector<CycleCalculus::Reach> CycleCalculus::reachable(const std::string& name, Subset a) const {
  std::vector<Reach> order{{name, {}}};
  std::map<std::string, std::size_t> seen{{name, 0}};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Reach cur = order[head];
    for (const auto& bd : geometry_.bordisms) {
      for (bool forward : {true, false}) {
        const std::string& from = forward ? bd.source : bd.target;
        const std::string& to = forward ? bd.target : bd.source;
        if (from != cur.name) continue;
        auto delta = face_delta(a, bd, forward);
        if (!delta) continue;
        FacePart sigma = cur.sigma;
        for (const auto& [i, c] : *delta) accumulate(sigma, i, c, field_);
        auto it = seen.find(to);
        if (it == seen.end()) {
          seen.emplace(to, order.size());
          order.push_back({to, std::move(sigma)});
          continue;
        }
        FacePart diff = order[it->second].sigma;
        for (const auto& [i, c] : sigma) accumulate(diff, i, -c, field_);
        for (int q = 0; q <= n(); ++q)
          if (!is_zero(reduce_faces(diff, q)))
            throw TorusError(ErrorCode::MismatchedDatum, "bordism data give two different rewrites of dia_{" + name + "," +
                                                             torus_name(a) + "} into " + to);
      }
    }
  }
  return order;
}

CycleExpression CycleCalculus::from_q_class(const std::vector<std::pair<std::string, Rational>>& value,
                                            const TorusClass& t, const Rational& c) const {
  CycleExpression out;
  for (const auto& [h, v] : value)
    for (const auto& [b, w] : t.terms) {
      const Rational coeff = c * v * w;
      if (is_face_point(h) && b == 0) accumulate(out.faces, point_element(), coeff, field_);
      else accumulate(out.spines, std::make_pair(h, b), coeff, field_);
    }
  return out;
}

CycleExpression CycleCalculus::spine_times_diaphragm(const std::string& eta, Subset a, const std::string& l,
                                                     Subset b) const {
  for (const auto& p : geometry_.spine_diaphragm)
    if (p.first == eta && p.second == l)
      return from_q_class(p.value, torus_intersect(TorusClass::basis(n(), a), TorusClass::basis(n(), b)), 1);
  throw TorusError(ErrorCode::Unresolvable, "spi_{" + eta + "," + torus_name(a) + "} x dia_{" + l + "," + torus_name(b) +
                                                "}: no Q-side pairing for " + eta + " and " + l);
}

CycleExpression CycleCalculus::diaphragm_times_face(const std::string& l, Subset a, Index i) const {
  if (i == s_->bottom()) return diaphragm(l, a);
  for (const auto& r : reachable(l, a)) {
    if (meets(r.name, i)) continue;
    CycleExpression out;
    out.faces = face_intersect(r.sigma, {{i, Rational(1)}});
    return out;
  }
  throw TorusError(ErrorCode::Unresolvable,
                   "dia_{" + l + "," + torus_name(a) + "} x " + render_face(i) + ": no rewrite avoids the face");
}

CycleExpression CycleCalculus::diaphragm_times_diaphragm(const std::string& l, Subset a, const std::string& m,
                                                         Subset b) const {
  const auto left = reachable(l, a);
  const auto right = reachable(m, b);
  for (const auto& x : left)
    for (const auto& y : right) {
      if (!disjoint(x.name, y.name)) continue;
      bool clear = true;
      for (const auto& [i, c] : y.sigma) clear = clear && !meets(x.name, i);
      for (const auto& [i, c] : x.sigma) clear = clear && !meets(y.name, i);
      if (!clear) continue;
      CycleExpression out;
      out.faces = face_intersect(x.sigma, y.sigma);
      return out;
    }
  throw TorusError(ErrorCode::Unresolvable, "dia_{" + l + "," + torus_name(a) + "} x dia_{" + m + "," + torus_name(b) +
                                                "}: no pair of rewrites with disjoint supports");
}

CycleExpression CycleCalculus::intersect(const CycleExpression& x, const CycleExpression& y) const {
  enum Kind { Face, Spine, Dia };
  struct Term {
    Kind kind;
    Index face = 0;
    std::string name;
    Subset a = 0;
    Rational c;
  };
  auto terms = [](const CycleExpression& e) {
    std::vector<Term> out;
    for (const auto& [i, c] : e.faces) out.push_back({Face, i, "", 0, c});
    for (const auto& [k, c] : e.spines) out.push_back({Spine, 0, k.first, k.second, c});
    for (const auto& [k, c] : e.diaphragms) out.push_back({Dia, 0, k.first, k.second, c});
    return out;
  };
  auto dim = [&](const Term& t) {
    if (t.kind == Face) return 2 * (n() - s_->rank(t.face));
    const int k = t.kind == Dia ? diaphragm_datum(t.name).dim : (is_face_point(t.name) ? 0 : spine_datum(t.name)->dim);
    return k + subset_size(t.a);
  };
  auto single = [&](const Term& t) {
    if (t.kind == Face) return face(t.face);
    if (t.kind == Spine) return spine(t.name, t.a);
    return diaphragm(t.name, t.a);
  };
  auto spine_spine = [&](const Term& u, const Term& v) {
    const TorusClass t = torus_intersect(TorusClass::basis(n(), u.a), TorusClass::basis(n(), v.a));
    for (const auto& p : geometry_.spine_spine) {
      if (p.first == u.name && p.second == v.name) return from_q_class(p.value, t, 1);
      if (p.first == v.name && p.second == u.name) {
        // Q-side product is graded commutative in the manifold Q of dimension n.
        const int ku = spine_datum(u.name)->dim, kv = spine_datum(v.name)->dim;
        return from_q_class(p.value, t, ((n() - ku) * (n() - kv)) % 2 ? -1 : 1);
      }
    }
    throw TorusError(ErrorCode::Unresolvable, "spi_{" + u.name + "} x spi_{" + v.name + "}: no Q-side pairing");
  };

  CycleExpression out;
  for (const Term& u : terms(x))
    for (const Term& v : terms(y)) {
      const Rational c = u.c * v.c;
      const Rational swap = (dim(u) * dim(v)) % 2 ? -1 : 1;
      CycleExpression r;
      if (u.kind == Face && u.face == s_->bottom()) r = single(v);
      else if (v.kind == Face && v.face == s_->bottom()) r = single(u);
      else if (u.kind == Face && v.kind == Face) r.faces = face_intersect({{u.face, Rational(1)}}, {{v.face, Rational(1)}});
      else if (u.kind == Spine && v.kind == Face) continue;
      else if (u.kind == Face && v.kind == Spine) continue;
      else if (u.kind == Spine && v.kind == Spine) r = spine_spine(u, v);
      else if (u.kind == Spine && v.kind == Dia) r = spine_times_diaphragm(u.name, u.a, v.name, v.a);
      else if (u.kind == Dia && v.kind == Spine) r = add({}, spine_times_diaphragm(v.name, v.a, u.name, u.a), swap);
      else if (u.kind == Dia && v.kind == Dia) r = diaphragm_times_diaphragm(u.name, u.a, v.name, v.a);
      else if (u.kind == Dia && v.kind == Face) r = diaphragm_times_face(u.name, u.a, v.face);
      else r = add({}, diaphragm_times_face(v.name, v.a, u.face), swap);
      out = add(out, r, c);
    }
  return out;
}

FieldVector CycleCalculus::reduce_faces(const FacePart& x, int q) const {
  const auto& pres = e_infinity(q);
  FieldVector v(pres.generators.size(), Rational(0));
  for (const auto& [i, c] : x)
    if (s_->rank(i) == n() - q) v[*pres.position(i)] += c;
  return pres.coordinates(v);
}

Index CycleCalculus::point_element() const {
  const auto& pres = e_infinity(0);
  if (pres.dimension() == 0) throw TorusError(ErrorCode::RangeError, "E^inf_{0,0} is zero");
  return pres.generators[pres.basis.front()];
}

Rational CycleCalculus::point_coefficient(const CycleExpression& x) const {
  const auto& pres = e_infinity(0);
  if (pres.dimension() != 1) throw TorusError(ErrorCode::RangeError, "E^inf_{0,0} is not one-dimensional");
  if (!x.spines.empty() || !x.diaphragms.empty()) {
    for (const auto& [k, c] : x.spines)
      if (!(k.first == "pt" && k.second == 0)) throw TorusError(ErrorCode::RangeError, "expression has positive-degree terms");
    if (!x.diaphragms.empty()) throw TorusError(ErrorCode::RangeError, "expression has positive-degree terms");
  }
  for (const auto& [i, c] : x.faces)
    if (s_->rank(i) != n()) throw TorusError(ErrorCode::RangeError, "expression has positive-degree terms");
  return reduce_faces(x.faces, 0)[0];
}

std::string CycleCalculus::render_face(Index i) const {
  if (i == s_->bottom()) return "[X]";
  const auto& verts = s_->vertices(i);
  std::string label;
  for (std::size_t t = 0; t < verts.size(); ++t) label += (t ? "," : "") + std::to_string(s_->id(verts[t]));
  if (verts.size() > 1) label = "{" + label + "}";
  std::size_t same = 0;
  for (Index j : s_->of_rank(s_->rank(i)))
    if (s_->vertices(j) == verts) ++same;
  if (same > 1) label += "#" + std::to_string(s_->id(i));
  return "[X_" + label + "]";
}

std::string CycleCalculus::render(const CycleExpression& x) const {
  std::string out;
  std::vector<Index> order;
  for (const auto& [i, c] : x.faces) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return s_->rank(a) < s_->rank(b); });
  for (Index i : order) {
    out += coefficient_prefix(x.faces.at(i), out.empty());
    out += render_face(i);
  }
  for (const auto& [k, c] : x.spines) out += coefficient_prefix(c, out.empty()) + "spi_{" + k.first + "," + torus_name(k.second) + "}";
  for (const auto& [k, c] : x.diaphragms) out += coefficient_prefix(c, out.empty()) + "dia_{" + k.first + "," + torus_name(k.second) + "}";
  return out.empty() ? "0" : out;
}

std::string CycleCalculus::render_reduced(const CycleExpression& x) const {
  const std::string raw = render(x);
  CycleExpression red = x;
  red.faces.clear();
  std::string faces;
  for (int q = 0; q <= n(); ++q) {
    bool any = false;
    for (const auto& [i, c] : x.faces) any = any || s_->rank(i) == n() - q;
    if (!any) continue;
    const auto& pres = e_infinity(q);
    FieldVector coords = reduce_faces(x.faces, q);
    for (std::size_t b = 0; b < coords.size(); ++b) {
      if (coords[b] == 0) continue;
      faces += coefficient_prefix(coords[b], faces.empty());
      faces += (q == 0 && pres.dimension() == 1) ? "[pt]" : render_face(pres.generators[pres.basis[b]]);
    }
  }
  std::string rest = red.empty() ? "" : render(red);
  std::string reduced = faces;
  if (!rest.empty()) reduced += reduced.empty() ? rest : (rest[0] == '-' ? " - " + rest.substr(1) : " + " + rest);
  if (reduced.empty()) reduced = "0";
  return reduced == raw ? raw : raw + " = " + reduced;
}

std::vector<std::pair<int, int>> CycleCalculus::bidegrees(const CycleExpression& x) const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [i, c] : x.faces) out.emplace_back(n() - s_->rank(i), n() - s_->rank(i));
  for (const auto& [k, c] : x.spines)
    out.emplace_back(is_face_point(k.first) ? 0 : spine_datum(k.first)->dim, subset_size(k.second));
  for (const auto& [k, c] : x.diaphragms) out.emplace_back(diaphragm_datum(k.first).dim, subset_size(k.second));
  return out;
}

CycleExpression CycleCalculus::parse(const std::string& text) const {
  auto fail = [&](const std::string& why) { parse_failure(text, why); };
  auto torus = [&](const std::string& tok) -> Subset {
    if (tok.size() < 2 || tok[0] != 'e') fail("torus class must look like e12 or e0");
    if (tok == "e0") return 0;
    Subset a = 0;
    std::string body = tok.substr(1);
    std::vector<int> idx;
    if (body.front() == '{') {
      if (body.back() != '}') fail("unterminated torus subset");
      std::string cur;
      for (char ch : body.substr(1, body.size() - 2) + ",") {
        if (ch == ',') {
          if (cur.empty()) fail("empty torus index");
          idx.push_back(std::stoi(cur));
          cur.clear();
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
          cur += ch;
        } else {
          fail("bad torus index");
        }
      }
    } else {
      for (char ch : body) {
        if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0') fail("bad torus index");
        idx.push_back(ch - '0');
      }
    }
    for (int j : idx) {
      if (j < 1 || j > n()) fail("torus index " + std::to_string(j) + " out of range");
      a |= Subset{1} << (j - 1);
    }
    return a;
  };
  CycleExpression out;
  std::string cleaned;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
  if (cleaned.empty()) fail("empty expression");
  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    std::size_t next = cleaned.find('+', pos + 1);
    std::string term = cleaned.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? cleaned.size() : next + 1;
    if (!term.empty() && term[0] == '+') term.erase(0, 1);
    Rational c = 1;
    if (auto star = term.find('*'); star != std::string::npos) {
      try {
        c = Rational(term.substr(0, star));
      } catch (const std::exception&) {
        fail("bad coefficient");
      }
      term = term.substr(star + 1);
    } else if (!term.empty() && term[0] == '-') {
      c = -1;
      term.erase(0, 1);
    }
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= term.size(); ++i)
      if (i == term.size() || term[i] == ':') {
        parts.push_back(term.substr(start, i - start));
        start = i + 1;
      }
    if (parts[0] == "face" && parts.size() == 2) {
      int id = 0;
      try {
        id = std::stoi(parts[1]);
      } catch (const std::exception&) {
        fail("face needs an element id");
      }
      if (!s_->contains_id(id)) fail("no element " + parts[1]);
      out = add(out, face(s_->index_of(id), c));
    } else if (parts[0] == "spine" && parts.size() == 3) {
      out = add(out, spine(parts[1], torus(parts[2]), c));
    } else if ((parts[0] == "dia" || parts[0] == "diaphragm") && parts.size() == 3) {
      out = add(out, diaphragm(parts[1], torus(parts[2]), c));
    } else {
      fail("unknown term '" + term + "'");
    }
  }
  return out;
}

}  // namespace torushom
