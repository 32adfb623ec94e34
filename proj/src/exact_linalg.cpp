#include "torushom/exact_linalg.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace torushom {

namespace bmp = boost::multiprecision;

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::InvalidPoset: return "InvalidPoset";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::ElementNotFound: return "ElementNotFound";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::StarViolation: return "StarViolation";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::MismatchedDatum: return "MismatchedDatum";
    case ErrorCode::Unresolvable: return "Unresolvable";
    case ErrorCode::NoMaximalSimplex: return "NoMaximalSimplex";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw TorusError(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return IntVector(s.begin(), s.end());
}

IntVector IntMatrix::col_vector(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const BigInt& s = (*this)(src, c);
    if (s != 0) (*this)(dst, c) += factor * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const BigInt& s = (*this)(r, src);
    if (s != 0) (*this)(r, dst) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw TorusError(ErrorCode::DimensionMismatch, "matrix product shape");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntVector multiply(const IntMatrix& m, std::span<const BigInt> x) {
  if (m.cols() != x.size()) throw TorusError(ErrorCode::DimensionMismatch, "matrix-vector shape");
  IntVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (x[c] != 0 && m(r, c) != 0) out[r] += m(r, c) * x[c];
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw TorusError(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// --------------------------------------------------------------- Smith form

IntVector SmithForm::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

struct SmithWork {
  IntMatrix a, u, u_inv, v, v_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  // row[dst] += f * row[src]
  void row_add(std::size_t dst, std::size_t src, const BigInt& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
    u_inv.add_col_multiple(src, dst, -f);
  }
  // col[dst] += f * col[src]
  void col_add(std::size_t dst, std::size_t src, const BigInt& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
    v_inv.add_row_multiple(src, dst, -f);
  }
  void negate_row(std::size_t r) {
    a.negate_row(r);
    u.negate_row(r);
    u_inv.negate_col(r);
  }

  // Moves the nonzero entry of least absolute value in the trailing block to (t, t).
  bool pivot_block(std::size_t t) {
    bool found = false;
    std::size_t bi = 0, bj = 0;
    BigInt best;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        const BigInt& x = a(i, j);
        if (x == 0) continue;
        BigInt ax = bmp::abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Moves the least nonzero entry of row t / column t (excluding (t,t)) to (t,t) if smaller.
  void pivot_cross(std::size_t t) {
    BigInt best = bmp::abs(a(t, t));
    std::size_t bi = t, bj = t;
    for (std::size_t i = t + 1; i < a.rows(); ++i)
      if (a(i, t) != 0 && bmp::abs(a(i, t)) < best) {
        best = bmp::abs(a(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < a.cols(); ++j)
      if (a(t, j) != 0 && bmp::abs(a(t, j)) < best) {
        best = bmp::abs(a(t, j));
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.cols())};
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    if (!w.pivot_block(t)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (w.a(i, t) == 0) continue;
        BigInt q = w.a(i, t) / w.a(t, t);
        w.row_add(i, t, -q);
        if (w.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (w.a(t, j) == 0) continue;
        BigInt q = w.a(t, j) / w.a(t, t);
        w.col_add(j, t, -q);
        if (w.a(t, j) != 0) clean = false;
      }
      if (!clean) {
        w.pivot_cross(t);
        continue;
      }
      // Divisibility: every trailing entry must be a multiple of the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < m.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < m.cols(); ++j)
          if (w.a(i, j) % w.a(t, t) != 0) {
            w.row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.a(t, t) < 0) w.negate_row(t);
  }
  SmithForm out{std::move(w.u), std::move(w.a), std::move(w.v), std::move(w.u_inv), std::move(w.v_inv), t};
  return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<IntVector> out;
  for (std::size_t j = s.rank; j < m.cols(); ++j) out.push_back(s.V.col_vector(j));
  return out;
}

bool in_integer_row_span(const IntMatrix& m, std::span<const BigInt> v) {
  if (v.size() != m.cols()) throw TorusError(ErrorCode::DimensionMismatch, "row-span membership shape");
  if (m.rows() == 0) return is_zero(v);
  SmithForm s = smith_normal_form(m);
  // y^T M = v  <=>  z^T D = v V  with z^T = y^T U^{-1}
  for (std::size_t j = 0; j < m.cols(); ++j) {
    BigInt w = 0;
    for (std::size_t i = 0; i < m.cols(); ++i)
      if (v[i] != 0) w += v[i] * s.V(i, j);
    if (j < s.rank) {
      if (w % s.D(j, j) != 0) return false;
    } else if (w != 0) {
      return false;
    }
  }
  return true;
}

// -------------------------------------------------------------------- Field

namespace {

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::int64_t>((static_cast<__int128>(result) * base) % mod);
    base = static_cast<std::int64_t>((static_cast<__int128>(base) * base) % mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime_number(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t residue(const BigInt& x, std::uint32_t p) {
  BigInt r = x % p;
  if (r < 0) r += p;
  return r.convert_to<std::int64_t>();
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (!is_prime_number(p)) throw TorusError(ErrorCode::ParseError, "not a prime: " + std::to_string(p));
  return Field(p);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Rational Field::normalize(const Rational& x) const {
  if (p_ == 0) return x;
  std::int64_t num = residue(bmp::numerator(x), p_);
  std::int64_t den = residue(bmp::denominator(x), p_);
  if (den == 0) throw TorusError(ErrorCode::NotAField, "denominator vanishes mod " + std::to_string(p_));
  std::int64_t inv = mod_pow(den, p_ - 2, p_);
  return Rational(static_cast<std::int64_t>((static_cast<__int128>(num) * inv) % p_));
}

Rational Field::inverse(const Rational& x) const {
  if (x == 0) throw TorusError(ErrorCode::NotAField, "inverse of zero");
  if (p_ == 0) return 1 / x;
  std::int64_t r = residue(bmp::numerator(x), p_);
  return Rational(mod_pow(r, p_ - 2, p_));
}

FieldVector Field::convert(std::span<const BigInt> v) const {
  FieldVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(normalize(x));
  return out;
}

Coefficients Coefficients::prime(std::uint32_t p) {
  Field::prime(p);
  return Coefficients(Kind::Prime, p);
}

Coefficients Coefficients::parse(std::string_view text) {
  if (text == "z" || text == "Z") return integers();
  if (text == "q" || text == "Q") return rationals();
  if (text.size() > 1 && (text[0] == 'f' || text[0] == 'F')) {
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
    if (ec == std::errc() && ptr == text.data() + text.size()) return prime(p);
  }
  throw TorusError(ErrorCode::ParseError, "unknown coefficients '" + std::string(text) + "' (expected z, q or f<p>)");
}

Field Coefficients::field() const { return kind_ == Kind::Prime ? Field::prime(p_) : Field::rationals(); }

std::string Coefficients::name() const {
  switch (kind_) {
    case Kind::Integers: return "z";
    case Kind::Rationals: return "q";
    case Kind::Prime: return "f" + std::to_string(p_);
  }
  return "?";
}

// ----------------------------------------------------------------- RowSpace

FieldVector RowSpace::reduce(FieldVector v) const {
  if (v.size() != dim_) throw TorusError(ErrorCode::DimensionMismatch, "row length");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = v[pivots_[k]];
    if (f == 0) continue;
    const FieldVector& row = rows_[k];
    for (std::size_t c = 0; c < dim_; ++c)
      if (row[c] != 0) v[c] = field_.normalize(v[c] - f * row[c]);
  }
  return v;
}

bool RowSpace::contains(const FieldVector& v) const { return is_zero(reduce(v)); }

bool RowSpace::insert(FieldVector row) {
  for (auto& x : row) x = field_.normalize(x);
  row = reduce(std::move(row));
  std::size_t pivot = 0;
  while (pivot < dim_ && row[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;
  const Rational inv = field_.inverse(row[pivot]);
  for (auto& x : row)
    if (x != 0) x = field_.normalize(x * inv);
  for (auto& existing : rows_) {
    const Rational f = existing[pivot];
    if (f == 0) continue;
    for (std::size_t c = 0; c < dim_; ++c)
      if (row[c] != 0) existing[c] = field_.normalize(existing[c] - f * row[c]);
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(pivot);
  return true;
}

std::vector<std::size_t> RowSpace::free_columns() const {
  std::vector<bool> is_pivot(dim_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < dim_; ++c)
    if (!is_pivot[c]) out.push_back(c);
  return out;
}

std::size_t field_rank(const std::vector<FieldVector>& rows, std::size_t cols, const Field& field) {
  RowSpace rs(field, cols);
  for (const auto& r : rows) rs.insert(r);
  return rs.rank();
}

std::size_t field_rank(const IntMatrix& m, const Field& field) {
  RowSpace rs(field, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) rs.insert(m.row(r));
  return rs.rank();
}

std::vector<FieldVector> field_kernel(const std::vector<FieldVector>& rows, std::size_t cols, const Field& field) {
  RowSpace rs(field, cols);
  for (const auto& r : rows) rs.insert(r);
  std::vector<FieldVector> out;
  for (std::size_t free : rs.free_columns()) {
    FieldVector x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t k = 0; k < rs.rank(); ++k) x[rs.pivots()[k]] = field.normalize(-rs.rows()[k][free]);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<FieldVector> field_kernel(const IntMatrix& m, const Field& field) {
  std::vector<FieldVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(field.convert(m.row(r)));
  return field_kernel(rows, m.cols(), field);
}

FieldVector field_solve(const std::vector<FieldVector>& a, FieldVector b, const Field& field) {
  const std::size_t n = a.size();
  if (b.size() != n) throw TorusError(ErrorCode::DimensionMismatch, "solve shape");
  std::vector<FieldVector> m = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw TorusError(ErrorCode::DimensionMismatch, "solve needs a square matrix");
    m[i].push_back(b[i]);
    for (auto& x : m[i]) x = field.normalize(x);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw TorusError(ErrorCode::RankMismatch, "singular system");
    std::swap(m[c], m[piv]);
    const Rational inv = field.inverse(m[c][c]);
    for (auto& x : m[c]) x = field.normalize(x * inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] = field.normalize(m[r][k] - f * m[c][k]);
    }
  }
  FieldVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

bool is_zero(const FieldVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool is_zero(std::span<const BigInt> v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

IntVector to_integer_vector(const FieldVector& v) {
  BigInt lcm = 1;
  for (const auto& x : v) {
    const BigInt d = bmp::denominator(x);
    lcm = lcm / bmp::gcd(lcm, d) * d;
  }
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(bmp::numerator(x) * (lcm / bmp::denominator(x)));
  return out;
}

std::string to_string(const Rational& q) {
  if (bmp::denominator(q) == 1) return bmp::numerator(q).str();
  return bmp::numerator(q).str() + "/" + bmp::denominator(q).str();
}

// ------------------------------------------------------------ ChainComplex

std::size_t ChainComplex::rank(int degree) const {
  if (degree < base_degree || degree > top_degree()) return 0;
  return labels[static_cast<std::size_t>(degree - base_degree)].size();
}

IntMatrix ChainComplex::boundary(int degree) const {
  if (degree <= base_degree || degree > top_degree()) return IntMatrix(rank(degree - 1), rank(degree));
  return boundaries[static_cast<std::size_t>(degree - base_degree)];
}

void ChainComplex::validate() const {
  if (boundaries.size() != labels.size())
    throw TorusError(ErrorCode::InvalidComplex, "expected one boundary map per chain group");
  for (int d = base_degree + 1; d <= top_degree(); ++d) {
    const IntMatrix& b = boundaries[static_cast<std::size_t>(d - base_degree)];
    if (b.rows() != rank(d - 1) || b.cols() != rank(d))
      throw TorusError(ErrorCode::InvalidComplex, "boundary map in degree " + std::to_string(d) + " has wrong shape");
  }
  for (int d = base_degree + 2; d <= top_degree(); ++d) {
    IntMatrix composite = boundary(d - 1) * boundary(d);
    if (!composite.is_zero())
      throw TorusError(ErrorCode::InvalidComplex, "boundary squared is nonzero in degree " + std::to_string(d));
  }
}

std::int64_t ChainComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int d = base_degree; d <= top_degree(); ++d)
    chi += ((d % 2 == 0) ? 1 : -1) * static_cast<std::int64_t>(rank(d));
  return chi;
}

std::string HomologyGroup::describe() const {
  std::ostringstream os;
  bool any = false;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    any = true;
  }
  for (const auto& t : torsion) {
    if (any) os << " + ";
    os << "Z/" << t.str();
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

namespace {

HomologyGroup integer_homology(const IntMatrix& in, const IntMatrix& out, std::size_t dim) {
  HomologyGroup h;
  if (dim == 0) return h;
  // ker(out) has basis V[:, r:]
  SmithForm sa = smith_normal_form(out);
  const std::size_t r = sa.rank;
  const std::size_t z = dim - r;
  if (z == 0) return h;
  IntMatrix kernel(dim, z);
  for (std::size_t j = 0; j < z; ++j)
    for (std::size_t i = 0; i < dim; ++i) kernel(i, j) = sa.V(i, r + j);
  // Express the incoming image in kernel coordinates: rows r.. of V^{-1} * in.
  IntMatrix image = sa.V_inv * in;
  IntMatrix reduced(z, in.cols());
  for (std::size_t i = 0; i < z; ++i)
    for (std::size_t j = 0; j < in.cols(); ++j) reduced(i, j) = image(r + i, j);
  SmithForm sb = smith_normal_form(reduced);
  IntMatrix gens = kernel * sb.U_inv;
  for (std::size_t j = 0; j < z; ++j) {
    if (j < sb.rank) {
      const BigInt& d = sb.D(j, j);
      if (d == 1) continue;
      h.torsion.push_back(d);
      h.torsion_representatives.push_back(gens.col_vector(j));
    } else {
      ++h.free_rank;
      h.representatives.push_back(gens.col_vector(j));
    }
  }
  return h;
}

HomologyGroup field_homology(const IntMatrix& in, const IntMatrix& out, std::size_t dim, const Field& field) {
  HomologyGroup h;
  if (dim == 0) return h;
  RowSpace boundaries(field, dim);
  for (std::size_t j = 0; j < in.cols(); ++j) boundaries.insert(in.col_vector(j));
  for (auto& z : field_kernel(out, field)) {
    if (boundaries.insert(z)) {
      ++h.free_rank;
      h.representatives.push_back(to_integer_vector(z));
    }
  }
  return h;
}

}  // namespace

std::map<int, HomologyGroup> chain_homology(const ChainComplex& complex, const Coefficients& coeffs) {
  complex.validate();
  std::map<int, HomologyGroup> out;
  for (int d = complex.base_degree; d <= complex.top_degree(); ++d) {
    IntMatrix in = complex.boundary(d + 1);
    IntMatrix outgoing = complex.boundary(d);
    out[d] = coeffs.is_field() ? field_homology(in, outgoing, complex.rank(d), coeffs.field())
                               : integer_homology(in, outgoing, complex.rank(d));
  }
  return out;
}

}  // namespace torushom
