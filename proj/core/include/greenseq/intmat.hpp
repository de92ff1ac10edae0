#pragma once

// Exact integer matrices and the structural predicates of exchange matrices.
//
// Storage access (Matrix::at, Matrix::column, Matrix::row) is 0-based like any
// C++ container.  Every domain operation in this header (mutation directions,
// source/sink indices, index sets, permutations) takes 1-based indices.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace greenseq {

using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Integer>;

/// Square integer matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}

  /// Throws std::invalid_argument unless `rows` is square and non-empty.
  static Matrix from_rows(const std::vector<std::vector<Integer>>& rows);
  static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static Matrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Integer& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);
  std::vector<std::vector<Integer>> rows() const;

  Matrix transpose() const;
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);

  /// Largest absolute entry (0 for the empty matrix).
  Integer max_abs() const;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);
std::string to_string(const Matrix& m);
std::string to_string(const Vector& v);

/// A bijection of [1,n], stored by its images.
class Permutation {
 public:
  Permutation() = default;
  /// `images[j-1]` is sigma(j).  Throws std::invalid_argument if not a bijection of [1,n].
  explicit Permutation(std::vector<int> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  int operator()(int j) const { return images_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<int>& images() const noexcept { return images_; }
  Permutation inverse() const;
  /// (this ∘ other)(j) = this(other(j)).
  Permutation compose(const Permutation& other) const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

struct DirectedGraph {
  std::size_t vertex_count = 0;
  /// 1-based (i, j) pairs, sorted lexicographically.
  std::vector<std::pair<int, int>> edges;
};

/// Matrix mutation at direction k (1-based).  Throws std::out_of_range.
Matrix mutate_matrix(const Matrix& b, int k);

bool is_sign_skew_symmetric(const Matrix& b);
bool is_skew_symmetric(const Matrix& b);
bool is_nonpositive(const Matrix& m);
bool is_nonnegative(const Matrix& m);

/// Smallest positive integer diagonal D with d_i b_ij = -d_j b_ji, if any.
/// Each connected component of the support graph is scaled independently.
/// Throws std::invalid_argument when `b` is not sign-skew-symmetric.
std::optional<std::vector<Integer>> skew_symmetrizer(const Matrix& b);

/// Edge i -> j iff b_ij > 0.
DirectedGraph gamma_graph(const Matrix& b);
bool is_acyclic(const Matrix& b);

/// Row j nonnegative.
bool is_source(const Matrix& b, int j);
/// Row j nonpositive.
bool is_sink(const Matrix& b, int j);

/// Sources mutated one by one, smallest available index first.  nullopt iff
/// the matrix is not acyclic.
std::optional<std::vector<int>> admissible_source_sequence(const Matrix& b);

struct Submatrix {
  Matrix matrix;
  /// Sorted 1-based indices of the parent; local index s+1 maps to indices[s].
  std::vector<int> indices;

  /// Parent index -> local 1-based index, or 0 if not in V.
  int local_index(int parent) const;
};

/// Principal submatrix on V (duplicates ignored, order normalised).
/// Throws std::invalid_argument on empty V, std::out_of_range on bad index.
Submatrix submatrix(const Matrix& b, const std::vector<int>& v);

/// n x n matrix whose only nonzero row is row j of A with negative entries clamped to 0.
Matrix positive_part_row(const Matrix& a, int j);
/// J_j: identity with -1 in position j.
Matrix signed_diagonal(std::size_t n, int j);
/// P_sigma: column j is e_{sigma(j)}.
Matrix perm_matrix(const Permutation& sigma);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const Matrix& m);

/// +1 if v is nonzero and nonnegative, -1 if nonzero and nonpositive, 0 otherwise
/// (zero or mixed signs).
int vector_sign(const Vector& v);

}  // namespace greenseq
