#pragma once

// Exact linear algebra over Z, Q and F_p.
//
// Integer matrices use arbitrary-precision entries throughout. Field
// computations store every element as a cpp_rational; for F_p the stored
// value is the canonical residue in [0, p).

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "torushom/error.hpp"

namespace torushom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<BigInt>;
using FieldVector = std::vector<Rational>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const BigInt> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector row_vector(std::size_t r) const;
  IntVector col_vector(std::size_t c) const;

  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_diagonal() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  // col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

IntVector multiply(const IntMatrix& m, std::span<const BigInt> x);

// Fraction-free (Bareiss) determinant of a square matrix.
BigInt determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  // d_1 | d_2 | ... | d_rank, all positive.
  IntVector invariant_factors() const;
};

// U * m * V == D with U, V unimodular and D diagonal in divisibility order.
// Pivots are chosen by minimal absolute value.
SmithForm smith_normal_form(const IntMatrix& m);

// Z-basis of {x : m x = 0}, one vector per entry.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

// True iff v is an integer combination of the rows of m.
bool in_integer_row_span(const IntMatrix& m, std::span<const BigInt> v);

class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t p);

  bool is_prime() const noexcept { return p_ != 0; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::string name() const;

  Rational normalize(const Rational& x) const;
  Rational normalize(const BigInt& x) const { return normalize(Rational(x)); }
  Rational inverse(const Rational& x) const;

  FieldVector convert(std::span<const BigInt> v) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

// Coefficient ring selector: Z, Q or F_p.
class Coefficients {
 public:
  enum class Kind { Integers, Rationals, Prime };

  static Coefficients integers() { return Coefficients(Kind::Integers, 0); }
  static Coefficients rationals() { return Coefficients(Kind::Rationals, 0); }
  static Coefficients prime(std::uint32_t p);
  // "z", "q", "f<p>"
  static Coefficients parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_field() const noexcept { return kind_ != Kind::Integers; }
  std::uint32_t characteristic() const noexcept { return p_; }
  // The field used for rank computations; Z maps to Q.
  Field field() const;
  std::string name() const;

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  Coefficients(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

// Incrementally maintained reduced row echelon form of a subspace of F^dim.
class RowSpace {
 public:
  RowSpace(Field field, std::size_t dim) : field_(field), dim_(dim) {}

  // Adds a row; returns true iff the rank increased.
  bool insert(FieldVector row);
  bool insert(std::span<const BigInt> row) { return insert(field_.convert(row)); }

  // Remainder of v after elimination by the stored rows (zero on pivot columns).
  FieldVector reduce(FieldVector v) const;
  bool contains(const FieldVector& v) const;

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const Field& field() const noexcept { return field_; }
  const std::vector<FieldVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  // Non-pivot columns in increasing order.
  std::vector<std::size_t> free_columns() const;

 private:
  Field field_;
  std::size_t dim_;
  std::vector<FieldVector> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t field_rank(const std::vector<FieldVector>& rows, std::size_t cols, const Field& field);
std::size_t field_rank(const IntMatrix& m, const Field& field);
// Basis of {x : m x = 0} over the field.
std::vector<FieldVector> field_kernel(const IntMatrix& m, const Field& field);
std::vector<FieldVector> field_kernel(const std::vector<FieldVector>& rows, std::size_t cols,
                                      const Field& field);
// Solves a x = b for square invertible a; throws RankMismatch if singular.
FieldVector field_solve(const std::vector<FieldVector>& a, FieldVector b, const Field& field);

bool is_zero(const FieldVector& v);
bool is_zero(std::span<const BigInt> v);
// Smallest positive integer multiple of a rational vector (Q) or the residues (F_p).
IntVector to_integer_vector(const FieldVector& v);

// Graded chain complex C_base, ..., C_top.
struct ChainComplex {
  int base_degree = 0;
  std::vector<std::vector<std::string>> labels;  // labels[i] = basis of C_{base+i}
  std::vector<IntMatrix> boundaries;             // boundaries[i] : C_{base+i} -> C_{base+i-1}

  int top_degree() const { return base_degree + static_cast<int>(labels.size()) - 1; }
  std::size_t rank(int degree) const;
  // Boundary matrix of size rank(degree-1) x rank(degree); empty outside range.
  IntMatrix boundary(int degree) const;
  // Throws InvalidComplex on shape mismatch or nonzero composite.
  void validate() const;
  std::int64_t euler_characteristic() const;
};

struct HomologyGroup {
  std::size_t free_rank = 0;
  IntVector torsion;  // invariant factors > 1
  std::vector<IntVector> representatives;          // free generators
  std::vector<IntVector> torsion_representatives;  // parallel to torsion

  std::size_t total_rank() const { return free_rank; }
  std::string describe() const;
};

// H_k = ker d_k / im d_{k+1} for every degree of the complex.
std::map<int, HomologyGroup> chain_homology(const ChainComplex& complex, const Coefficients& coeffs);

std::string to_string(const Rational& q);

}  // namespace torushom
