#include "torushom/fixture.hpp"

#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace torushom {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& why) {
  throw TorusError(ErrorCode::ParseError, where + ": " + why);
}

const json& key(const json& j, const char* k, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(k);
  if (it == j.end()) bad(where, std::string("missing key '") + k + "'");
  return *it;
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

BigInt big(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      bad(where, "'" + s + "' is not an integer");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  bad(where, "expected an integer (use a decimal string beyond 64 bits)");
}

Rational rational(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(big(j, where));
    const BigInt num = big(json(s.substr(0, slash)), where), den = big(json(s.substr(slash + 1)), where);
    if (den == 0) bad(where, "zero denominator");
    return Rational(num, den);
  }
  return Rational(big(j, where));
}

int small(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected a small integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad(where, "integer out of range");
  return static_cast<int>(v);
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json rational_json(const Rational& q) {
  if (denominator(q) == 1) return big_json(numerator(q));
  return to_string(q);
}

Subset subset_from(const json& j, const std::string& where) {
  Subset a = 0;
  for (const auto& e : array(j, where)) {
    const int v = small(e, where);
    if (v < 1 || v > 31) bad(where, "torus index out of range");
    a |= Subset{1} << (v - 1);
  }
  return a;
}

json subset_json(Subset a) { return subset_elements(a); }

std::vector<std::pair<int, Rational>> face_terms(const json& j, const std::string& where) {
  std::vector<std::pair<int, Rational>> out;
  for (const auto& t : array(j, where)) {
    if (!t.is_array() || t.size() != 2) bad(where, "expected [face id, coefficient]");
    out.emplace_back(small(t[0], where), rational(t[1], where));
  }
  return out;
}

std::vector<std::pair<std::string, Rational>> class_terms(const json& j, const std::string& where) {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& t : array(j, where)) {
    if (!t.is_array() || t.size() != 2) bad(where, "expected [class, coefficient]");
    out.emplace_back(text(t[0], where), rational(t[1], where));
  }
  return out;
}

Geometry geometry_from(const json& g) {
  Geometry out;
  if (g.is_null()) return out;
  if (!g.is_object()) bad("geometry", "expected an object");
  if (g.contains("spines"))
    for (const auto& s : array(g["spines"], "geometry.spines"))
      out.spines.push_back({text(key(s, "name", "spine"), "spine.name"), small(key(s, "dim", "spine"), "spine.dim")});
  if (g.contains("diaphragms"))
    for (const auto& d : array(g["diaphragms"], "geometry.diaphragms")) {
      DiaphragmDatum dd;
      dd.name = text(key(d, "name", "diaphragm"), "diaphragm.name");
      dd.dim = small(key(d, "dim", "diaphragm"), "diaphragm.dim");
      if (d.contains("meets")) {
        dd.meets_faces.emplace();
        for (const auto& id : array(d["meets"], "diaphragm.meets")) dd.meets_faces->push_back(small(id, "diaphragm.meets"));
      }
      if (d.contains("chain"))
        for (const auto& t : array(d["chain"], "diaphragm.chain")) {
          if (!t.is_array() || t.size() != 2) bad("diaphragm.chain", "expected [cell id, coefficient]");
          dd.chain.emplace_back(text(t[0], "diaphragm.chain"), big(t[1], "diaphragm.chain"));
        }
      out.diaphragms.push_back(std::move(dd));
    }
  for (auto [field, target] : {std::pair{"spine_diaphragm", &out.spine_diaphragm}, {"spine_spine", &out.spine_spine}}) {
    if (!g.contains(field)) continue;
    for (const auto& p : array(g[field], field))
      target->push_back({text(key(p, "first", field), field), text(key(p, "second", field), field),
                         class_terms(key(p, "value", field), field)});
  }
  if (g.contains("disjoint"))
    for (const auto& p : array(g["disjoint"], "geometry.disjoint")) {
      if (!p.is_array() || p.size() != 2) bad("geometry.disjoint", "expected a pair of names");
      out.disjoint.emplace_back(text(p[0], "disjoint"), text(p[1], "disjoint"));
    }
  if (g.contains("bordisms"))
    for (const auto& b : array(g["bordisms"], "geometry.bordisms")) {
      BordismDatum bd;
      bd.source = text(key(b, "source", "bordism"), "bordism.source");
      bd.target = text(key(b, "target", "bordism"), "bordism.target");
      const std::string form = b.contains("form") ? text(b["form"], "bordism.form") : "rows";
      if (form != "rows" && form != "chain") bad("bordism.form", "expected 'rows' or 'chain'");
      bd.chain_form = form == "chain";
      if (b.contains("subset")) bd.subset = subset_from(b["subset"], "bordism.subset");
      bd.faces = face_terms(key(b, "faces", "bordism"), "bordism.faces");
      out.bordisms.push_back(std::move(bd));
    }
  return out;
}

json geometry_to(const Geometry& g) {
  json out = json::object();
  json spines = json::array(), dias = json::array(), disjoint = json::array(), bordisms = json::array();
  for (const auto& s : g.spines) spines.push_back({{"name", s.name}, {"dim", s.dim}});
  for (const auto& d : g.diaphragms) {
    json e = {{"name", d.name}, {"dim", d.dim}};
    if (d.meets_faces) e["meets"] = *d.meets_faces;
    if (!d.chain.empty()) {
      json c = json::array();
      for (const auto& [cell, v] : d.chain) c.push_back({cell, big_json(v)});
      e["chain"] = c;
    }
    dias.push_back(e);
  }
  auto pairings = [](const std::vector<PairingDatum>& ps) {
    json out = json::array();
    for (const auto& p : ps) {
      json v = json::array();
      for (const auto& [h, c] : p.value) v.push_back({h, rational_json(c)});
      out.push_back({{"first", p.first}, {"second", p.second}, {"value", v}});
    }
    return out;
  };
  for (const auto& [a, b] : g.disjoint) disjoint.push_back({a, b});
  for (const auto& b : g.bordisms) {
    json f = json::array();
    for (const auto& [id, c] : b.faces) f.push_back({id, rational_json(c)});
    json e = {{"source", b.source}, {"target", b.target}, {"form", b.chain_form ? "chain" : "rows"}};
    if (b.subset) e["subset"] = subset_json(*b.subset);
    e["faces"] = f;
    bordisms.push_back(e);
  }
  out["spines"] = spines;
  out["diaphragms"] = dias;
  out["spine_diaphragm"] = pairings(g.spine_diaphragm);
  out["spine_spine"] = pairings(g.spine_spine);
  out["disjoint"] = disjoint;
  out["bordisms"] = bordisms;
  return out;
}

}  // namespace

Fixture fixture_from_json(const json& j) {
  Fixture f;
  if (!j.is_object()) bad("fixture", "expected an object");
  f.name = j.contains("name") ? text(j["name"], "name") : "fixture";
  f.n = small(key(j, "n", "fixture"), "n");
  const json& p = key(j, "poset", "fixture");
  for (const auto& e : array(key(p, "elements", "poset"), "poset.elements")) {
    PosetElement pe;
    pe.id = small(key(e, "id", "poset element"), "poset element id");
    for (const auto& v : array(key(e, "vertices", "poset element"), "poset element vertices"))
      pe.vertices.push_back(small(v, "poset element vertices"));
    f.poset.elements.push_back(std::move(pe));
  }
  if (p.contains("covers")) {
    f.poset.covers.emplace();
    for (const auto& c : array(p["covers"], "poset.covers")) {
      if (!c.is_array() || c.size() != 2) bad("poset.covers", "expected [upper, lower]");
      f.poset.covers->emplace_back(small(c[0], "poset.covers"), small(c[1], "poset.covers"));
    }
  }
  if (p.contains("signs")) {
    f.poset.signs.emplace();
    for (const auto& c : array(p["signs"], "poset.signs")) {
      if (!c.is_array() || c.size() != 3) bad("poset.signs", "expected [upper, lower, sign]");
      (*f.poset.signs)[{small(c[0], "poset.signs"), small(c[1], "poset.signs")}] = small(c[2], "poset.signs");
    }
  }
  for (const auto& row : array(key(j, "lambda", "fixture"), "lambda")) {
    IntVector r;
    for (const auto& x : array(row, "lambda row")) r.push_back(big(x, "lambda"));
    f.lambda.push_back(std::move(r));
  }
  if (j.contains("interior_cells"))
    for (const auto& c : array(j["interior_cells"], "interior_cells")) {
      InteriorCell cell;
      cell.id = text(key(c, "id", "interior cell"), "interior cell id");
      cell.dim = small(key(c, "dim", "interior cell"), "interior cell dim");
      for (const auto& t : array(key(c, "boundary", "interior cell"), "interior cell boundary")) {
        if (!t.is_array() || t.size() != 2) bad("interior cell " + cell.id, "expected [cell ref, coefficient]");
        const BigInt v = big(t[1], "interior cell " + cell.id);
        if (t[0].is_string()) cell.interior.emplace_back(t[0].get<std::string>(), v);
        else cell.faces.emplace_back(small(t[0], "interior cell " + cell.id), v);
      }
      f.interior_cells.push_back(std::move(cell));
    }
  f.geometry = geometry_from(j.contains("geometry") ? j["geometry"] : json());
  if (j.contains("orientable")) {
    if (!j["orientable"].is_boolean()) bad("orientable", "expected a boolean");
    f.orientable = j["orientable"].get<bool>();
  }
  if (j.contains("coefficients")) f.coefficients = text(j["coefficients"], "coefficients");
  return f;
}

json fixture_to_json(const Fixture& f) {
  json j;
  j["name"] = f.name;
  j["n"] = f.n;
  json elements = json::array();
  for (const auto& e : f.poset.elements) elements.push_back({{"id", e.id}, {"vertices", e.vertices}});
  json poset = {{"elements", elements}};
  if (f.poset.covers) {
    json c = json::array();
    for (auto [u, l] : *f.poset.covers) c.push_back({u, l});
    poset["covers"] = c;
  }
  if (f.poset.signs) {
    json s = json::array();
    for (const auto& [ul, v] : *f.poset.signs) s.push_back({ul.first, ul.second, v});
    poset["signs"] = s;
  }
  j["poset"] = poset;
  json lambda = json::array();
  for (const auto& row : f.lambda) {
    json r = json::array();
    for (const auto& x : row) r.push_back(big_json(x));
    lambda.push_back(r);
  }
  j["lambda"] = lambda;
  json cells = json::array();
  for (const auto& c : f.interior_cells) {
    json b = json::array();
    for (const auto& [id, v] : c.faces) b.push_back({id, big_json(v)});
    for (const auto& [id, v] : c.interior) b.push_back({id, big_json(v)});
    cells.push_back({{"id", c.id}, {"dim", c.dim}, {"boundary", b}});
  }
  j["interior_cells"] = cells;
  j["geometry"] = geometry_to(f.geometry);
  j["orientable"] = f.orientable;
  if (f.coefficients) j["coefficients"] = *f.coefficients;
  return j;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TorusError(ErrorCode::ParseError, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw TorusError(ErrorCode::ParseError, path + ": " + e.what());
  }
  return fixture_from_json(j);
}

namespace {

// Arrays without nested objects go on one line.
void pretty(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto flat = [](const json& a) {
    for (const auto& x : a)
      if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_array())) return false;
    return true;
  };
  auto scalar_object = [&](const json& o) {
    for (const auto& v : o)
      if (v.is_object() || (v.is_array() && !flat(v))) return false;
    return o.size() <= 3;
  };
  if (j.is_object() && scalar_object(j)) {
    out += "{";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += (i ? ", " : "") + json(it.key()).dump() + ": ";
      pretty(it.value(), indent, out);
    }
    out += "}";
  } else if (j.is_object()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + "  " + json(it.key()).dump() + ": ";
      pretty(it.value(), indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad + "  ";
      pretty(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      pretty(j[i], indent, out);
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_fixture(const Fixture& f) {
  std::string out;
  pretty(fixture_to_json(f), 0, out);
  return out + "\n";
}

// ------------------------------------------------------------------- model

Model::Model(const Fixture& f)
    : fixture_(f),
      poset_(f.poset),
      lambda_(poset_, f.lambda),
      complex_(poset_, f.interior_cells, f.orientable) {
  if (poset_.dim() != f.n)
    throw TorusError(ErrorCode::DimensionMismatch,
                     "fixture declares n = " + std::to_string(f.n) + " but the poset has rank " + std::to_string(poset_.dim()));
  if (lambda_.n() != f.n) throw TorusError(ErrorCode::DimensionMismatch, "lambda rows have the wrong length");
}

const CycleCalculus& Model::calculus(const Coefficients& coeffs) const {
  for (const auto& [name, c] : calculi_)
    if (name == coeffs.name()) return *c;
  calculi_.emplace_back(coeffs.name(),
                        std::make_unique<CycleCalculus>(poset_, lambda_, complex_, fixture_.geometry, coeffs));
  return *calculi_.back().second;
}

// -------------------------------------------------------------- generators

Fixture polygon_with_holes(const std::vector<int>& lengths, const std::vector<IntVector>& lambda,
                           const std::string& name) {
  if (lengths.empty()) throw TorusError(ErrorCode::RangeError, "at least one boundary component is needed");
  for (int l : lengths)
    if (l < 2) throw TorusError(ErrorCode::RangeError, "boundary components need at least two facets");
  Fixture f;
  f.name = name;
  f.n = 2;
  f.lambda = lambda;
  const int total = std::accumulate(lengths.begin(), lengths.end(), 0);
  if (static_cast<int>(lambda.size()) != total)
    throw TorusError(ErrorCode::DimensionMismatch,
                     "expected " + std::to_string(total) + " lambda rows, got " + std::to_string(lambda.size()));
  f.poset.elements.push_back({0, {}});
  for (int v = 1; v <= total; ++v) f.poset.elements.push_back({v, {v}});
  std::vector<int> closing;
  int next = total + 1, first = 1;
  auto det = [&](int a, int b) {
    const auto& x = lambda[static_cast<std::size_t>(a - 1)];
    const auto& y = lambda[static_cast<std::size_t>(b - 1)];
    if (x.size() != 2 || y.size() != 2) throw TorusError(ErrorCode::DimensionMismatch, "lambda rows need two entries");
    return BigInt(x[0] * y[1] - x[1] * y[0]);
  };
  for (int l : lengths) {
    for (int t = 0; t < l; ++t) {
      const int a = first + t, b = first + (t + 1) % l;
      const BigInt d = det(a, b);
      if (d != 1 && d != -1)
        throw TorusError(ErrorCode::StarViolation, "facets " + std::to_string(a) + " and " + std::to_string(b) +
                                                       " meet at a corner but det = " + d.str());
      f.poset.elements.push_back({next, {std::min(a, b), std::max(a, b)}});
      ++next;
    }
    closing.push_back(next - 1);
    first += l;
  }
  for (std::size_t h = 1; h < lengths.size(); ++h)
    f.interior_cells.push_back({"e" + std::to_string(h), 1, {{closing[0], 1}, {closing[h], 1}}, {}});
  InteriorCell top{"c", 2, {}, {}};
  for (int v = 1; v <= total; ++v) top.faces.push_back({v, 1});
  f.interior_cells.push_back(top);

  for (std::size_t h = 1; h < lengths.size(); ++h) {
    const std::string id = std::to_string(h);
    f.geometry.spines.push_back({"eta" + id, 1});
    f.geometry.diaphragms.push_back({"zeta" + id, 1, std::nullopt, {{"e" + id, 1}}});
  }
  for (std::size_t h = 1; h < lengths.size(); ++h)
    for (std::size_t g = 1; g < lengths.size(); ++g)
      f.geometry.spine_diaphragm.push_back(
          {"eta" + std::to_string(h), "zeta" + std::to_string(g), {{"pt", Rational(h == g ? 1 : 0)}}});
  return f;
}

std::vector<IntVector> random_polygon_lambda(const std::vector<int>& lengths, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  using V = std::pair<BigInt, BigInt>;
  auto det = [](const V& x, const V& y) { return BigInt(x.first * y.second - x.second * y.first); };
  // u with det(w, u) = 1 for primitive w.
  auto complement = [](const V& w) {
    BigInt a = w.first, b = w.second, x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
      BigInt q = a / b, t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
      t = y0 - q * y1;
      y0 = y1;
      y1 = t;
    }
    // x0 w1 + y0 w2 = a = +-1, so det(w, (-y0, x0)) = a.
    return a > 0 ? V{-y0, x0} : V{y0, -x0};
  };
  std::vector<IntVector> rows;
  for (int l : lengths) {
    std::vector<V> cyc;
    for (int attempt = 0;; ++attempt) {
      cyc.clear();
      V start;
      do start = {pick(-3, 3), pick(-3, 3)};
      while (boost::multiprecision::gcd(start.first, start.second) != 1);
      cyc.push_back(start);
      for (int t = 1; t + 1 < l; ++t) {
        V u = complement(cyc.back());
        const int m = pick(-2, 2), s = pick(0, 1) ? 1 : -1;
        cyc.push_back({s * (u.first + m * cyc.back().first), s * (u.second + m * cyc.back().second)});
      }
      if (l == 2) {
        cyc.push_back(complement(start));
        break;
      }
      // Close the cycle: w = u + m last with det(w, start) = +-1.
      const V& last = cyc.back();
      V u = complement(last);
      const BigInt du = det(u, start), dl = det(last, start);
      bool closed = false;
      for (int target : {1, -1}) {
        if (dl == 0) {
          closed = du == target;
        } else if ((target - du) % dl == 0) {
          const BigInt m = (target - du) / dl;
          u = {u.first + m * last.first, u.second + m * last.second};
          closed = true;
        }
        if (closed) break;
      }
      if (closed) {
        cyc.push_back(u);
        break;
      }
      if (attempt > 1000) throw TorusError(ErrorCode::StarViolation, "random walk failed to close");
    }
    for (const auto& [a, b] : cyc) rows.push_back({a, b});
  }
  return rows;
}

Fixture reoriented_fixture(const Fixture& f, const std::vector<int>& orientation) {
  SimplicialPoset s(f.poset);
  SimplicialPoset t = s.reoriented(orientation);
  CornerComplex k(s, f.interior_cells, f.orientable);
  Fixture out = f;
  out.poset = t.data();
  out.interior_cells = k.reoriented(t).interior_cells();
  for (auto& bd : out.geometry.bordisms) {
    if (!bd.chain_form) continue;
    for (auto& [id, c] : bd.faces) {
      const auto i = s.index_of(id);
      c *= s.orientation(i) * t.orientation(i);
    }
  }
  return out;
}

}  // namespace torushom
