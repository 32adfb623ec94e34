#include "torushom/orbit_space.hpp"

#include <algorithm>

namespace torushom {

namespace {

std::vector<FieldVector> columns(const IntMatrix& m, const Field& f) {
  std::vector<FieldVector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(f.convert(m.col_vector(c)));
  return out;
}

std::size_t span_rank(const std::vector<std::vector<FieldVector>>& parts, std::size_t dim, const Field& f) {
  RowSpace rs(f, dim);
  for (const auto& p : parts)
    for (const auto& v : p) rs.insert(v);
  return rs.rank();
}

}  // namespace

std::string selector_name(Selector s) {
  switch (s) {
    case Selector::Boundary: return "boundary";
    case Selector::Total: return "Q";
    case Selector::Relative: return "relative";
  }
  return "?";
}

CornerComplex::CornerComplex(const SimplicialPoset& s, std::vector<InteriorCell> cells, bool orientable)
    : s_(&s), cells_(std::move(cells)), orientable_(orientable) {
  const int n = s.dim();
  face_cells_.resize(static_cast<std::size_t>(n + 1));
  interior_by_dim_.resize(static_cast<std::size_t>(n + 1));
  face_pos_.assign(s.size(), SIZE_MAX);
  for (int d = 0; d < n; ++d) {
    face_cells_[static_cast<std::size_t>(d)] = s.of_rank(n - d);
    const auto& fc = face_cells_[static_cast<std::size_t>(d)];
    for (std::size_t p = 0; p < fc.size(); ++p) face_pos_[fc[p]] = p;
  }
  std::vector<std::size_t> slot(cells_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& cell = cells_[c];
    if (cell.dim < 0 || cell.dim > n)
      throw TorusError(ErrorCode::InvalidComplex, "cell " + cell.id + " has dimension " + std::to_string(cell.dim));
    if (!interior_pos_.emplace(cell.id, c).second)
      throw TorusError(ErrorCode::InvalidComplex, "duplicate interior cell " + cell.id);
    auto& bucket = interior_by_dim_[static_cast<std::size_t>(cell.dim)];
    slot[c] = bucket.size();
    bucket.push_back(c);
  }
  for (const auto& cell : cells_) {
    for (const auto& [id, coeff] : cell.faces) {
      if (!s.contains_id(id))
        throw TorusError(ErrorCode::InvalidComplex, "cell " + cell.id + " refers to unknown face " + std::to_string(id));
      const Index e = s.index_of(id);
      if (e == s.bottom() || n - s.rank(e) != cell.dim - 1)
        throw TorusError(ErrorCode::InvalidComplex,
                         "cell " + cell.id + ": face " + std::to_string(id) + " has the wrong dimension");
    }
    for (const auto& [id, coeff] : cell.interior) {
      auto it = interior_pos_.find(id);
      if (it == interior_pos_.end())
        throw TorusError(ErrorCode::InvalidComplex, "cell " + cell.id + " refers to unknown cell " + id);
      if (cells_[it->second].dim != cell.dim - 1)
        throw TorusError(ErrorCode::InvalidComplex, "cell " + cell.id + ": cell " + id + " has the wrong dimension");
    }
  }
}

std::size_t CornerComplex::interior_index(const std::string& id) const {
  auto it = interior_pos_.find(id);
  if (it == interior_pos_.end()) throw TorusError(ErrorCode::ElementNotFound, "no interior cell " + id);
  return it->second;
}

const std::vector<CornerComplex::Index>& CornerComplex::face_cells(int d) const {
  static const std::vector<Index> none;
  if (d < 0 || d >= n()) return none;
  return face_cells_[static_cast<std::size_t>(d)];
}

const std::vector<std::size_t>& CornerComplex::interior_of_dim(int d) const {
  static const std::vector<std::size_t> none;
  if (d < 0 || d > n()) return none;
  return interior_by_dim_[static_cast<std::size_t>(d)];
}

std::size_t CornerComplex::face_position(Index element) const {
  if (element >= face_pos_.size() || face_pos_[element] == SIZE_MAX)
    throw TorusError(ErrorCode::ElementNotFound, "element is not a face cell");
  return face_pos_[element];
}

IntMatrix CornerComplex::face_block(int d) const {
  const auto& cols = interior_of_dim(d);
  IntMatrix m(face_cells(d - 1).size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [id, coeff] : cells_[cols[c]].faces) m(face_position(s_->index_of(id)), c) += coeff;
  return m;
}

IntMatrix CornerComplex::interior_block(int d) const {
  const auto& cols = interior_of_dim(d);
  const auto& rows = interior_of_dim(d - 1);
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [id, coeff] : cells_[cols[c]].interior) {
      auto r = std::find(rows.begin(), rows.end(), interior_pos_.at(id)) - rows.begin();
      m(static_cast<std::size_t>(r), c) += coeff;
    }
  return m;
}

IntMatrix CornerComplex::face_boundary(int d) const {
  const auto& cols = face_cells(d);
  IntMatrix m(face_cells(d - 1).size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (Index j : s_->covers_up(cols[c])) m(face_position(j), c) += s_->incidence(j, cols[c]);
  return m;
}

ChainComplex CornerComplex::chain_complex(Selector sel) const {
  ChainComplex cc;
  cc.base_degree = 0;
  const bool faces = sel != Selector::Relative;
  const bool interior = sel != Selector::Boundary;
  const int top = sel == Selector::Boundary ? n() - 1 : n();
  for (int d = 0; d <= top; ++d) {
    std::vector<std::string> labels;
    if (faces)
      for (Index e : face_cells(d)) labels.push_back("F" + std::to_string(s_->id(e)));
    if (interior)
      for (std::size_t c : interior_of_dim(d)) labels.push_back(cells_[c].id);
    cc.labels.push_back(std::move(labels));
  }
  for (int d = 0; d <= top; ++d) {
    const std::size_t nf = faces ? face_cells(d).size() : 0;
    const std::size_t nf1 = faces ? face_cells(d - 1).size() : 0;
    const std::size_t rows = d == 0 ? 0 : cc.labels[static_cast<std::size_t>(d - 1)].size();
    IntMatrix m(rows, cc.labels[static_cast<std::size_t>(d)].size());
    if (d > 0) {
      if (faces) {
        IntMatrix fb = face_boundary(d);
        for (std::size_t r = 0; r < fb.rows(); ++r)
          for (std::size_t c = 0; c < fb.cols(); ++c) m(r, c) = fb(r, c);
      }
      if (interior) {
        IntMatrix ib = interior_block(d);
        for (std::size_t r = 0; r < ib.rows(); ++r)
          for (std::size_t c = 0; c < ib.cols(); ++c) m(nf1 + r, nf + c) = ib(r, c);
        if (faces) {
          IntMatrix fb = face_block(d);
          for (std::size_t r = 0; r < fb.rows(); ++r)
            for (std::size_t c = 0; c < fb.cols(); ++c) m(r, nf + c) = fb(r, c);
        }
      }
    }
    cc.boundaries.push_back(std::move(m));
  }
  return cc;
}

ComplexReport CornerComplex::validate() const {
  ComplexReport rep;
  ChainComplex cc = chain_complex(Selector::Total);
  for (int d = 2; d <= n(); ++d) {
    IntMatrix sq = cc.boundary(d - 1) * cc.boundary(d);
    for (std::size_t c = 0; c < sq.cols(); ++c)
      for (std::size_t r = 0; r < sq.rows(); ++r)
        if (sq(r, c) != 0) {
          rep.violations.push_back("boundary of boundary of " + cc.labels[static_cast<std::size_t>(d)][c] +
                                   " is nonzero at " + cc.labels[static_cast<std::size_t>(d - 2)][r]);
          break;
        }
  }
  if (rep.ok() && orientable_) {
    auto h = chain_homology(chain_complex(Selector::Relative), Coefficients::rationals());
    const std::size_t top = h.count(n()) ? h.at(n()).free_rank : 0;
    if (top != 1)
      rep.violations.push_back("orientable, but rank H_" + std::to_string(n()) + "(Q, dQ) = " + std::to_string(top));
  }
  return rep;
}

void CornerComplex::require_valid() const {
  if (valid_ < 0) valid_ = validate().ok() ? 1 : 0;
  if (!valid_) throw TorusError(ErrorCode::InvalidComplex, validate().violations.front());
}

std::map<int, HomologyGroup> CornerComplex::homology(Selector sel, const Coefficients& coeffs) const {
  require_valid();
  return chain_homology(chain_complex(sel), coeffs);
}

std::vector<IntVector> CornerComplex::delta_image(int q, const Coefficients& coeffs) const {
  require_valid();
  if (q < 0 || q > n() - 1) throw TorusError(ErrorCode::RangeError, "delta_image needs 0 <= q <= n-1");
  const IntMatrix inner = interior_block(q + 1);
  const IntMatrix outer = face_block(q + 1);
  const IntMatrix bnd = face_boundary(q + 1);
  const std::size_t dim = face_cells(q).size();
  std::vector<IntVector> kept;

  if (coeffs.is_field()) {
    const Field f = coeffs.field();
    RowSpace rs(f, dim);
    for (auto& v : columns(bnd, f)) rs.insert(v);
    for (const auto& x : field_kernel(inner, f)) {
      FieldVector img(dim, Rational(0));
      for (std::size_t r = 0; r < dim; ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < x.size(); ++c) acc += Rational(outer(r, c)) * x[c];
        img[r] = f.normalize(acc);
      }
      if (rs.insert(img)) kept.push_back(to_integer_vector(img));
    }
    return kept;
  }

  std::vector<IntVector> lattice;
  for (std::size_t c = 0; c < bnd.cols(); ++c) lattice.push_back(bnd.col_vector(c));
  for (const auto& x : integer_kernel(inner)) {
    IntVector img = multiply(outer, x);
    if (is_zero(img)) continue;
    if (!lattice.empty() && in_integer_row_span(IntMatrix::from_rows(lattice, dim), img)) continue;
    lattice.push_back(img);
    kept.push_back(std::move(img));
  }
  return kept;
}

LesReport CornerComplex::les_report(const Coefficients& coeffs) const {
  require_valid();
  const Coefficients fc = coeffs.is_field() ? coeffs : Coefficients::rationals();
  const Field f = fc.field();
  LesReport rep;
  auto hb = homology(Selector::Boundary, fc);
  auto ht = homology(Selector::Total, fc);
  auto hr = homology(Selector::Relative, fc);
  ChainComplex tot = chain_complex(Selector::Total);
  const int top = n();
  for (int q = 0; q <= top; ++q) {
    rep.boundary.push_back(hb.count(q) ? hb.at(q).free_rank : 0);
    rep.total.push_back(ht.count(q) ? ht.at(q).free_rank : 0);
    rep.relative.push_back(hr.count(q) ? hr.at(q).free_rank : 0);

    const std::size_t dim = tot.rank(q);
    const std::size_t nf = face_cells(q).size();
    auto embed = [&](const std::vector<FieldVector>& vs) {
      std::vector<FieldVector> out;
      for (const auto& v : vs) {
        FieldVector w(dim, Rational(0));
        std::copy(v.begin(), v.end(), w.begin());
        out.push_back(std::move(w));
      }
      return out;
    };
    const auto bq = q < top ? columns(tot.boundary(q + 1), f) : std::vector<FieldVector>{};
    const auto zq = field_kernel(tot.boundary(q), f);
    std::vector<FieldVector> cd;
    for (std::size_t r = 0; r < nf; ++r) {
      FieldVector e(nf, Rational(0));
      e[r] = 1;
      cd.push_back(std::move(e));
    }
    const auto zd = q < top ? embed(field_kernel(face_boundary(q), f)) : std::vector<FieldVector>{};
    const std::size_t rb = span_rank({bq}, dim, f);
    rep.rank_i.push_back(span_rank({bq, zd}, dim, f) - rb);
    const std::size_t rcb = span_rank({bq, embed(cd)}, dim, f);
    rep.rank_j.push_back(span_rank({bq, embed(cd), zq}, dim, f) - rcb);
    rep.rank_delta.push_back(q == 0 ? 0 : delta_image(q - 1, fc).size());
  }
  for (int q = 0; q <= top; ++q) {
    const auto u = static_cast<std::size_t>(q);
    const std::size_t next_delta = q < top ? rep.rank_delta[u + 1] : 0;
    auto fail = [&](const std::string& where) {
      rep.violations.push_back("exactness fails at " + where + "_" + std::to_string(q));
    };
    if (rep.boundary[u] != next_delta + rep.rank_i[u]) fail("H(dQ)");
    if (rep.total[u] != rep.rank_i[u] + rep.rank_j[u]) fail("H(Q)");
    if (rep.relative[u] != rep.rank_j[u] + rep.rank_delta[u]) fail("H(Q,dQ)");
  }
  return rep;
}

bool CornerComplex::duality_check(const Coefficients& coeffs) const {
  const Coefficients fc = coeffs.is_field() ? coeffs : Coefficients::rationals();
  auto hb = chain_homology(chain_complex(Selector::Boundary), fc);
  auto hs = chain_homology(simplex_chain_complex(*s_, false), fc);
  for (int q = 0; q < n(); ++q) {
    const std::size_t a = hb.count(q) ? hb.at(q).free_rank : 0;
    const std::size_t b = hs.count(n() - 1 - q) ? hs.at(n() - 1 - q).free_rank : 0;
    if (a != b) return false;
  }
  return true;
}

std::int64_t CornerComplex::euler_characteristic() const { return chain_complex(Selector::Total).euler_characteristic(); }

CornerComplex CornerComplex::reoriented(const SimplicialPoset& target) const {
  auto cells = cells_;
  for (auto& cell : cells)
    for (auto& [id, coeff] : cell.faces) {
      const Index a = s_->index_of(id), b = target.index_of(id);
      coeff *= s_->orientation(a) * target.orientation(b);
    }
  return CornerComplex(target, std::move(cells), orientable_);
}

}  // namespace torushom
