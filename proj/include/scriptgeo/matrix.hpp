#pragma once

#include "scriptgeo/core.hpp"

#include <iosfwd>
#include <utility>

namespace scriptgeo {

using Dense = std::vector<std::vector<Integer>>;

// sparse integer matrix, zero entries are never stored
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_dense(const Dense& d, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Integer& v);
  void add(std::size_t r, std::size_t c, const Integer& v);
  const std::map<std::pair<std::size_t, std::size_t>, Integer>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  Dense dense() const;
  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
  IntMatrix select_cols(const std::vector<std::size_t>& cols) const;
  std::vector<Integer> column(std::size_t c) const;
  std::vector<Integer> apply(const std::vector<Integer>& x) const;
  Integer frobenius_squared() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix& o) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Integer> entries_;
};

// "rows cols" header then "r c value" lines, zero-based
void write_matrix(std::ostream& os, const IntMatrix& m);
IntMatrix read_matrix(std::istream& is);

struct SmithForm {
  IntMatrix U, D, V;  // U * A * V == D
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;  // nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix& a);
// invariant factors only; sparse elimination, suitable for large boundary matrices
std::vector<Integer> invariant_factors(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);
Integer determinant(const IntMatrix& a);  // square only

// saturated lattice basis of ker(a); columns are primitive, first nonzero entry positive
std::vector<std::vector<Integer>> kernel_basis(const IntMatrix& a);
// coordinates y with basis * y == b, when b lies in the span of the (saturated) basis
std::optional<std::vector<Integer>> solve_in_lattice(const std::vector<std::vector<Integer>>& basis,
                                                     const std::vector<Integer>& b);
// divide by content and fix the sign of the first nonzero entry
std::vector<Integer> primitive(std::vector<Integer> v);
IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols, std::size_t rows);

}  // namespace scriptgeo
