#include "torushom/poset.hpp"

#include <algorithm>
#include <set>

namespace torushom {

namespace {

// Removes bit t from mask, shifting the higher bits down.
std::uint32_t drop_bit(std::uint32_t mask, int t) {
  const std::uint32_t low = mask & ((std::uint32_t{1} << t) - 1);
  const std::uint32_t high = (mask >> (t + 1)) << t;
  return low | high;
}

std::string join_ids(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

// Shared by validate() and the constructor: builds the structure while
// collecting violations.
struct PosetBuilder {
  std::vector<std::string> violations;
  bool fatal = false;  // structure could not be assembled
  int n = 0;
  bool pure = false;

  std::vector<int> ids;
  std::map<int, std::size_t> by_id;
  std::vector<std::vector<int>> vertex_ids;
  std::vector<std::vector<std::size_t>> vertices;
  std::vector<std::vector<std::size_t>> down;  // down[j][t] = cover removing vertex t
  std::vector<std::vector<std::size_t>> faces;
  std::vector<std::vector<int>> signs;
  std::size_t bottom = 0;

  void fail(std::string msg) {
    violations.push_back(std::move(msg));
    fatal = true;
  }

  void run(const PosetData& data) {
    std::vector<PosetElement> elems = data.elements;
    std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto vs = elems[i].vertices;
      std::sort(vs.begin(), vs.end());
      if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        fail("element " + std::to_string(elems[i].id) + " repeats a vertex");
      if (!by_id.emplace(elems[i].id, i).second) fail("duplicate element id " + std::to_string(elems[i].id));
      ids.push_back(elems[i].id);
      vertex_ids.push_back(vs);
    }
    if (fatal) return;

    std::size_t minimal = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (vertex_ids[i].empty()) {
        ++minimal;
        bottom = i;
      }
    }
    if (minimal > 1) fail("minimal element not unique");
    if (minimal == 0) fail("no minimal element");
    if (fatal) return;

    vertices.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (vertex_ids[i].size() == 1 && vertex_ids[i][0] != ids[i])
        fail("vertex element " + std::to_string(ids[i]) + " must carry its own id as vertex");
      if (vertex_ids[i].size() > 31) fail("element " + std::to_string(ids[i]) + " has too many vertices");
      for (int v : vertex_ids[i]) {
        auto it = by_id.find(v);
        if (it == by_id.end() || vertex_ids[it->second].size() != 1) {
          fail("element " + std::to_string(ids[i]) + " uses unknown vertex " + std::to_string(v));
          continue;
        }
        vertices[i].push_back(it->second);
      }
      n = std::max(n, static_cast<int>(vertex_ids[i].size()));
    }
    if (fatal) return;

    build_covers(data);
    if (fatal) return;
    build_faces();
    if (fatal) return;

    pure = true;
    std::vector<bool> has_up(ids.size(), false);
    for (std::size_t j = 0; j < ids.size(); ++j)
      for (std::size_t i : down[j]) has_up[i] = true;
    for (std::size_t j = 0; j < ids.size(); ++j)
      if (!has_up[j] && static_cast<int>(vertices[j].size()) != n) {
        pure = false;
        violations.push_back("maximal element " + std::to_string(ids[j]) + " has rank " +
                             std::to_string(vertices[j].size()) + " < " + std::to_string(n) + " (not pure)");
      }

    build_signs(data);
  }

  void build_covers(const PosetData& data) {
    down.assign(ids.size(), {});
    for (std::size_t j = 0; j < ids.size(); ++j) down[j].assign(vertices[j].size(), SIZE_MAX);
    auto vertex_set_without = [&](std::size_t j, std::size_t t) {
      std::vector<int> v = vertex_ids[j];
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(t));
      return v;
    };
    if (data.covers) {
      for (auto [up, lo] : *data.covers) {
        auto iu = by_id.find(up), il = by_id.find(lo);
        if (iu == by_id.end() || il == by_id.end()) {
          fail("cover (" + std::to_string(up) + "," + std::to_string(lo) + ") names an unknown element");
          continue;
        }
        std::size_t j = iu->second, i = il->second;
        const auto& vj = vertex_ids[j];
        const auto& vi = vertex_ids[i];
        bool ok = vi.size() + 1 == vj.size() && std::includes(vj.begin(), vj.end(), vi.begin(), vi.end());
        if (!ok) {
          fail("cover (" + std::to_string(up) + "," + std::to_string(lo) + ") is not a codimension-one face");
          continue;
        }
        std::size_t t = 0;
        while (t < vi.size() && vi[t] == vj[t]) ++t;
        if (down[j][t] != SIZE_MAX) {
          fail("lower ideal of " + std::to_string(up) + " is not Boolean (two faces on " +
               join_ids(vertex_set_without(j, t)) + ")");
          continue;
        }
        down[j][t] = i;
      }
    } else {
      std::map<std::vector<int>, std::vector<std::size_t>> by_set;
      for (std::size_t i = 0; i < ids.size(); ++i) by_set[vertex_ids[i]].push_back(i);
      for (std::size_t j = 0; j < ids.size(); ++j)
        for (std::size_t t = 0; t < vertices[j].size(); ++t) {
          auto it = by_set.find(vertex_set_without(j, t));
          if (it == by_set.end()) continue;
          if (it->second.size() > 1 && vertices[j].size() > 1) {
            fail("covers of element " + std::to_string(ids[j]) + " are ambiguous; supply \"covers\"");
            continue;
          }
          down[j][t] = it->second.front();
        }
    }
    for (std::size_t j = 0; j < ids.size(); ++j)
      for (std::size_t t = 0; t < down[j].size(); ++t)
        if (down[j][t] == SIZE_MAX)
          fail("lower ideal of " + std::to_string(ids[j]) + " is not Boolean (missing face " +
               join_ids(vertex_set_without(j, t)) + ")");
  }

  void build_faces() {
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vertices[a].size() < vertices[b].size(); });
    faces.assign(ids.size(), {});
    for (std::size_t j : order) {
      const int r = static_cast<int>(vertices[j].size());
      const std::uint32_t full = (std::uint32_t{1} << r) - 1;
      faces[j].assign(std::size_t{1} << r, SIZE_MAX);
      faces[j][full] = j;
      for (std::uint32_t mask = 0; mask < full; ++mask) {
        int t = r - 1;
        while (mask & (std::uint32_t{1} << t)) --t;
        faces[j][mask] = faces[down[j][static_cast<std::size_t>(t)]][drop_bit(mask, t)];
      }
      // Every route down must agree: this is the Boolean ideal condition.
      for (int t = 0; t < r; ++t) {
        const std::size_t lower = down[j][static_cast<std::size_t>(t)];
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
          if (mask & (std::uint32_t{1} << t)) continue;
          if (faces[j][mask] != faces[lower][drop_bit(mask, t)]) {
            fail("lower ideal of " + std::to_string(ids[j]) + " is not Boolean");
            return;
          }
        }
      }
    }
  }

  void build_signs(const PosetData& data) {
    signs.assign(ids.size(), {});
    for (std::size_t j = 0; j < ids.size(); ++j) {
      signs[j].assign(vertices[j].size(), 0);
      for (std::size_t t = 0; t < vertices[j].size(); ++t) {
        if (!data.signs) {
          signs[j][t] = (t % 2 == 0) ? 1 : -1;
          continue;
        }
        auto it = data.signs->find({ids[j], ids[down[j][t]]});
        if (it == data.signs->end() || (it->second != 1 && it->second != -1)) {
          fail("missing or invalid sign for cover (" + std::to_string(ids[j]) + "," +
               std::to_string(ids[down[j][t]]) + ")");
          continue;
        }
        signs[j][t] = it->second;
      }
    }
    if (fatal) return;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const int r = static_cast<int>(vertices[j].size());
      for (int t1 = 0; t1 < r; ++t1)
        for (int t2 = t1 + 1; t2 < r; ++t2) {
          std::size_t a = down[j][static_cast<std::size_t>(t1)];
          std::size_t b = down[j][static_cast<std::size_t>(t2)];
          // a lacks v_{t1}, so v_{t2} sits at t2-1 there; b lacks v_{t2}, v_{t1} keeps position t1.
          int lhs = signs[j][static_cast<std::size_t>(t1)] * signs[a][static_cast<std::size_t>(t2 - 1)] +
                    signs[j][static_cast<std::size_t>(t2)] * signs[b][static_cast<std::size_t>(t1)];
          if (lhs != 0) {
            fail("sign cocycle fails on element " + std::to_string(ids[j]));
            return;
          }
        }
    }
  }
};

PosetReport validate(const PosetData& data) {
  PosetBuilder b;
  b.run(data);
  return PosetReport{b.violations, b.n, b.pure};
}

SimplicialPoset::SimplicialPoset(const PosetData& data) {
  PosetBuilder b;
  b.run(data);
  if (b.fatal) {
    std::string msg;
    for (const auto& v : b.violations) msg += (msg.empty() ? "" : "; ") + v;
    throw TorusError(ErrorCode::InvalidPoset, msg);
  }
  n_ = b.n;
  pure_ = b.pure;
  bottom_ = b.bottom;
  ids_ = std::move(b.ids);
  by_id_ = std::move(b.by_id);
  vertices_ = std::move(b.vertices);
  faces_ = std::move(b.faces);
  signs_ = std::move(b.signs);
  up_.assign(ids_.size(), {});
  for (Index j = 0; j < ids_.size(); ++j)
    for (std::size_t t = 0; t < vertices_[j].size(); ++t) up_[faces_[j][full_mask(j) & ~(1u << t)]].push_back(j);
  of_rank_.assign(static_cast<std::size_t>(n_) + 1, {});
  for (Index j = 0; j < ids_.size(); ++j) of_rank_[static_cast<std::size_t>(rank(j))].push_back(j);
  build_orientation();
}

void SimplicialPoset::build_orientation() {
  orientation_.assign(ids_.size(), 0);
  orientation_[bottom_] = 1;
  for (int r = 1; r <= n_; ++r)
    for (Index j : of_rank_[static_cast<std::size_t>(r)]) {
      Index lower = faces_[j][full_mask(j) & ~1u];
      orientation_[j] = signs_[j][0] * orientation_[lower];
      for (int t = 1; t < r; ++t) {
        Index l = faces_[j][full_mask(j) & ~(1u << t)];
        int expected = orientation_[j] * orientation_[l] * ((t % 2) ? -1 : 1);
        if (expected != signs_[j][static_cast<std::size_t>(t)])
          throw TorusError(ErrorCode::InvalidPoset, "signs admit no orientation at element " + std::to_string(ids_[j]));
      }
    }
}

SimplicialPoset::Index SimplicialPoset::index_of(int id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw TorusError(ErrorCode::ElementNotFound, "no element with id " + std::to_string(id));
  return it->second;
}

const std::vector<SimplicialPoset::Index>& SimplicialPoset::of_rank(int k) const {
  if (k < 0 || k > n_) return empty_;
  return of_rank_[static_cast<std::size_t>(k)];
}

std::vector<SimplicialPoset::Index> SimplicialPoset::maximal() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (up_[i].empty()) out.push_back(i);
  return out;
}

std::uint32_t SimplicialPoset::mask_in(Index i, Index j) const {
  const auto& vi = vertices_[i];
  const auto& vj = vertices_[j];
  std::uint32_t mask = 0;
  std::size_t p = 0;
  for (std::size_t t = 0; t < vj.size() && p < vi.size(); ++t)
    if (vj[t] == vi[p]) {
      mask |= 1u << t;
      ++p;
    }
  if (p != vi.size()) throw TorusError(ErrorCode::RangeError, "vertex set is not contained");
  return mask;
}

bool SimplicialPoset::leq(Index i, Index j) const {
  const auto& vi = vertices_[i];
  const auto& vj = vertices_[j];
  if (!std::includes(vj.begin(), vj.end(), vi.begin(), vi.end())) return false;
  return faces_[j][mask_in(i, j)] == i;
}

std::vector<std::pair<SimplicialPoset::Index, int>> SimplicialPoset::covers_down(Index j) const {
  std::vector<std::pair<Index, int>> out;
  for (int t = 0; t < rank(j); ++t) out.emplace_back(faces_[j][full_mask(j) & ~(1u << t)], t);
  return out;
}

int SimplicialPoset::incidence(Index j, Index i) const {
  if (rank(i) + 1 != rank(j) || !leq(i, j)) return 0;
  const std::uint32_t missing = full_mask(j) & ~mask_in(i, j);
  int t = 0;
  while (!(missing & (1u << t))) ++t;
  return signs_[j][static_cast<std::size_t>(t)];
}

std::vector<SimplicialPoset::Index> SimplicialPoset::joins(Index a, Index b) const {
  std::vector<Index> u;
  std::set_union(vertices_[a].begin(), vertices_[a].end(), vertices_[b].begin(), vertices_[b].end(),
                 std::back_inserter(u));
  std::vector<Index> out;
  if (static_cast<int>(u.size()) > n_) return out;
  for (Index k : of_rank_[u.size()])
    if (vertices_[k] == u && leq(a, k) && leq(b, k)) out.push_back(k);
  return out;
}

std::optional<SimplicialPoset::Index> SimplicialPoset::meet(Index a, Index b) const {
  std::vector<Index> common;
  std::set_intersection(vertices_[a].begin(), vertices_[a].end(), vertices_[b].begin(), vertices_[b].end(),
                        std::back_inserter(common));
  auto face_on = [&](Index x) {
    std::uint32_t mask = 0;
    std::size_t p = 0;
    for (std::size_t t = 0; t < vertices_[x].size() && p < common.size(); ++t)
      if (vertices_[x][t] == common[p]) {
        mask |= 1u << t;
        ++p;
      }
    return faces_[x][mask];
  };
  Index fa = face_on(a), fb = face_on(b);
  if (fa != fb) return std::nullopt;
  return fa;
}

std::vector<SimplicialPoset::Index> SimplicialPoset::maximal_above(Index i) const {
  std::vector<Index> out;
  for (Index k : maximal())
    if (leq(i, k)) out.push_back(k);
  return out;
}

SimplicialPoset SimplicialPoset::reoriented(const std::vector<int>& o) const {
  if (o.size() != size()) throw TorusError(ErrorCode::DimensionMismatch, "orientation vector size");
  SimplicialPoset out = *this;
  for (Index j = 0; j < size(); ++j)
    for (int t = 0; t < rank(j); ++t) {
      Index l = faces_[j][full_mask(j) & ~(1u << t)];
      out.signs_[j][static_cast<std::size_t>(t)] = o[j] * o[l] * ((t % 2) ? -1 : 1);
    }
  out.build_orientation();
  return out;
}

PosetData SimplicialPoset::data() const {
  PosetData d;
  std::vector<std::pair<int, int>> covers;
  std::map<std::pair<int, int>, int> signs;
  for (Index j = 0; j < size(); ++j) {
    PosetElement e;
    e.id = ids_[j];
    for (Index v : vertices_[j]) e.vertices.push_back(ids_[v]);
    d.elements.push_back(e);
    for (auto [i, t] : covers_down(j)) {
      covers.emplace_back(ids_[j], ids_[i]);
      signs[{ids_[j], ids_[i]}] = sign(j, t);
    }
  }
  d.covers = covers;
  d.signs = signs;
  return d;
}

std::map<std::pair<int, int>, int> default_sign_convention(const SimplicialPoset& s) {
  std::map<std::pair<int, int>, int> out;
  for (SimplicialPoset::Index j = 0; j < s.size(); ++j)
    for (auto [i, t] : s.covers_down(j)) out[{s.id(j), s.id(i)}] = (t % 2) ? -1 : 1;
  return out;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

VectorTriple fh_vectors(const SimplicialPoset& s) {
  if (!s.is_pure()) throw TorusError(ErrorCode::NotPure, "poset is not pure");
  const int n = s.dim();
  VectorTriple v;
  for (int i = 0; i <= n; ++i) v.f.push_back(static_cast<std::int64_t>(s.of_rank(i).size()));
  v.f[0] = 1;
  for (int k = 0; k <= n; ++k) {
    std::int64_t h = 0;
    for (int i = 0; i <= k; ++i) h += v.f[static_cast<std::size_t>(i)] * binomial(n - i, k - i) * (((k - i) % 2) ? -1 : 1);
    v.h.push_back(h);
  }
  return v;
}

ChainComplex simplex_chain_complex(const SimplicialPoset& s, bool augmented) {
  ChainComplex c;
  const int lo = augmented ? 0 : 1;
  c.base_degree = lo - 1;
  std::vector<std::map<SimplicialPoset::Index, std::size_t>> pos;
  for (int r = lo; r <= s.dim(); ++r) {
    std::vector<std::string> labels;
    std::map<SimplicialPoset::Index, std::size_t> p;
    for (auto i : s.of_rank(r)) {
      p[i] = labels.size();
      labels.push_back(std::to_string(s.id(i)));
    }
    c.labels.push_back(labels);
    pos.push_back(p);
  }
  for (int r = lo; r <= s.dim(); ++r) {
    const std::size_t k = static_cast<std::size_t>(r - lo);
    if (k == 0) {
      c.boundaries.emplace_back(0, c.labels[0].size());
      continue;
    }
    IntMatrix d(c.labels[k - 1].size(), c.labels[k].size());
    for (auto j : s.of_rank(r))
      for (auto [i, t] : s.covers_down(j)) d(pos[k - 1].at(i), pos[k].at(j)) += s.sign(j, t);
    c.boundaries.push_back(std::move(d));
  }
  return c;
}

std::vector<std::size_t> reduced_betti(const SimplicialPoset& s, const Coefficients& coeffs) {
  Coefficients field = coeffs.is_field() ? coeffs : Coefficients::rationals();
  auto h = chain_homology(simplex_chain_complex(s, true), field);
  std::vector<std::size_t> out;
  for (int j = -1; j <= s.dim() - 1; ++j) out.push_back(h.count(j) ? h[j].free_rank : 0);
  return out;
}

std::vector<std::int64_t> h_prime_vector(const SimplicialPoset& s, const Coefficients& coeffs) {
  VectorTriple v = fh_vectors(s);
  auto beta = reduced_betti(s, coeffs);
  const int n = s.dim();
  std::vector<std::int64_t> hp;
  for (int k = 0; k <= n; ++k) {
    std::int64_t sum = 0;
    for (int j = 1; j <= k - 1; ++j)
      sum += (((k - j - 1) % 2) ? -1 : 1) * static_cast<std::int64_t>(beta[static_cast<std::size_t>(j)]);
    hp.push_back(v.h[static_cast<std::size_t>(k)] + binomial(n, k) * sum);
  }
  return hp;
}

SimplicialPoset link(const SimplicialPoset& s, SimplicialPoset::Index i) {
  if (i >= s.size()) throw TorusError(ErrorCode::ElementNotFound, "no element at index " + std::to_string(i));
  PosetData d;
  std::vector<std::pair<int, int>> covers;
  std::map<std::pair<int, int>, int> signs;
  for (SimplicialPoset::Index j = 0; j < s.size(); ++j) {
    if (!s.leq(i, j)) continue;
    PosetElement e;
    e.id = s.id(j);
    const std::uint32_t mi = s.mask_in(i, j);
    for (int t = 0; t < s.rank(j); ++t)
      if (!(mi & (1u << t))) e.vertices.push_back(s.id(s.face(j, mi | (1u << t))));
    d.elements.push_back(e);
    for (auto [l, t] : s.covers_down(j))
      if (s.leq(i, l)) {
        covers.emplace_back(s.id(j), s.id(l));
        signs[{s.id(j), s.id(l)}] = s.sign(j, t);
      }
  }
  d.covers = covers;
  d.signs = signs;
  return SimplicialPoset(d);
}

BuchsbaumResult buchsbaum_check(const SimplicialPoset& s, const Coefficients& coeffs) {
  if (!s.is_pure()) throw TorusError(ErrorCode::NotPure, "poset is not pure");
  BuchsbaumResult res;
  for (SimplicialPoset::Index i = 0; i < s.size(); ++i) {
    if (i == s.bottom()) continue;
    SimplicialPoset l = link(s, i);
    const int d = s.dim() - s.rank(i) - 1;
    auto beta = reduced_betti(l, coeffs);
    for (int j = -1; j < d; ++j)
      if (beta[static_cast<std::size_t>(j + 1)] != 0) {
        res.buchsbaum = false;
        res.witness_element = s.id(i);
        res.witness_degree = j;
        return res;
      }
  }
  return res;
}

}  // namespace torushom
