#include "greenseq/intmat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace greenseq {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::size_t checked_index(std::size_t n, int k, const char* what) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(k) +
                            " outside [1," + std::to_string(n) + "]");
  }
  return static_cast<std::size_t>(k - 1);
}

int sign_of(const Integer& x) { return x.sign(); }

}  // namespace

Matrix Matrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix must have dimension >= 1");
  Matrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("matrix is not square: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<Integer>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return from_rows(r);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = at(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  for (std::size_t i = 0; i < n_; ++i) at(i, j) = v[i];
}

std::vector<std::vector<Integer>> Matrix::rows() const {
  std::vector<std::vector<Integer>> r;
  r.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) r.push_back(row(i));
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator-() const {
  Matrix r(*this);
  for (auto& x : r.data_) x = -x;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Integer Matrix::max_abs() const {
  Integer best = 0;
  for (const auto& x : data_) {
    Integer a = abs(x);
    if (a > best) best = a;
  }
  return best;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix dimension mismatch");
  const std::size_t n = a.n_;
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < n; ++s) {
      const Integer& x = a.at(i, s);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) r.at(i, j) += x * b.at(s, j);
    }
  return r;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) os << ',';
      os << m.at(i, j);
    }
    os << ']';
  }
  return os << ']';
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::string to_string(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 1 || static_cast<std::size_t>(x) > images_.size() || seen[static_cast<std::size_t>(x - 1)]) {
      throw std::invalid_argument("not a permutation of [1,n]");
    }
    seen[static_cast<std::size_t>(x - 1)] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t j = 0; j < images_.size(); ++j)
    inv[static_cast<std::size_t>(images_[j] - 1)] = static_cast<int>(j + 1);
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> im(size());
  for (std::size_t j = 0; j < size(); ++j) im[j] = (*this)(other.images_[j]);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t j = 0; j < images_.size(); ++j)
    if (images_[j] != static_cast<int>(j + 1)) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  os << '(';
  for (std::size_t j = 0; j < p.size(); ++j) os << (j ? "," : "") << p.images()[j];
  return os << ')';
}

Matrix mutate_matrix(const Matrix& b, int k) {
  const std::size_t n = b.size();
  const std::size_t kk = checked_index(n, k, "mutate_matrix");
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == kk || j == kk) {
        r.at(i, j) = -b.at(i, j);
        continue;
      }
      const Integer& bik = b.at(i, kk);
      const Integer& bkj = b.at(kk, j);
      // (|b_ik| b_kj + b_ik |b_kj|) / 2 is b_ik b_kj when both are positive,
      // -b_ik b_kj when both are negative, and 0 otherwise.
      const int si = sign_of(bik);
      const int sk = sign_of(bkj);
      if (si > 0 && sk > 0)
        r.at(i, j) = b.at(i, j) + bik * bkj;
      else if (si < 0 && sk < 0)
        r.at(i, j) = b.at(i, j) - bik * bkj;
      else
        r.at(i, j) = b.at(i, j);
    }
  }
  return r;
}

bool is_sign_skew_symmetric(const Matrix& b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const int s1 = sign_of(b.at(i, j));
      const int s2 = sign_of(b.at(j, i));
      if (s1 == 0 && s2 == 0) continue;
      if (s1 * s2 >= 0) return false;
    }
  }
  return true;
}

bool is_skew_symmetric(const Matrix& b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (b.at(i, j) != -b.at(j, i)) return false;
  return true;
}

bool is_nonpositive(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m.at(i, j) > 0) return false;
  return true;
}

bool is_nonnegative(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m.at(i, j) < 0) return false;
  return true;
}

std::optional<std::vector<Integer>> skew_symmetrizer(const Matrix& b) {
  if (!is_sign_skew_symmetric(b)) throw std::invalid_argument("skew_symmetrizer: matrix is not sign-skew-symmetric");
  const std::size_t n = b.size();
  std::vector<Rational> d(n, Rational(0));
  std::vector<int> component(n, -1);
  int components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] >= 0) continue;
    d[root] = 1;
    component[root] = components;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (b.at(i, j).is_zero() || component[j] >= 0) continue;
        // d_i b_ij = -d_j b_ji
        d[j] = -d[i] * Rational(b.at(i, j)) / Rational(b.at(j, i));
        component[j] = components;
        stack.push_back(j);
      }
    }
    ++components;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d[i] * Rational(b.at(i, j)) != -d[j] * Rational(b.at(j, i))) return std::nullopt;

  std::vector<Integer> out(n);
  for (int c = 0; c < components; ++c) {
    Integer lcm_den = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (component[i] == c) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(d[i]));
    Integer g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (component[i] != c) continue;
      out[i] = numerator(d[i]) * (lcm_den / denominator(d[i]));
      g = boost::multiprecision::gcd(g, out[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (component[i] == c) out[i] /= g;
  }
  return out;
}

DirectedGraph gamma_graph(const Matrix& b) {
  DirectedGraph g{b.size(), {}};
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b.at(i, j) > 0) g.edges.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
  return g;
}

namespace {

// Kahn's algorithm with a smallest-index tie-break; returns the order found,
// which covers every vertex iff the graph is acyclic.
std::vector<int> topological_order(const Matrix& b) {
  const std::size_t n = b.size();
  std::vector<int> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b.at(i, j) > 0) ++indegree[j];
  std::vector<bool> done(n, false);
  std::vector<int> order;
  for (;;) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && indegree[v] == 0) {
        pick = v;
        break;
      }
    if (pick == n) break;
    done[pick] = true;
    order.push_back(static_cast<int>(pick + 1));
    for (std::size_t j = 0; j < n; ++j)
      if (b.at(pick, j) > 0) --indegree[j];
  }
  return order;
}

}  // namespace

bool is_acyclic(const Matrix& b) { return topological_order(b).size() == b.size(); }

bool is_source(const Matrix& b, int j) {
  const std::size_t jj = checked_index(b.size(), j, "is_source");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.at(jj, i) < 0) return false;
  return true;
}

bool is_sink(const Matrix& b, int j) {
  const std::size_t jj = checked_index(b.size(), j, "is_sink");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.at(jj, i) > 0) return false;
  return true;
}

std::optional<std::vector<int>> admissible_source_sequence(const Matrix& b) {
  // For a sign-skew-symmetric matrix, "row j nonnegative" is "no edge into j"
  // in Gamma_B, and mutating at a source only reverses the edges at j.  So
  // mutating sources in turn is exactly a topological order of Gamma_B.
  auto order = topological_order(b);
  if (order.size() != b.size()) return std::nullopt;
  return order;
}

int Submatrix::local_index(int parent) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), parent);
  if (it == indices.end() || *it != parent) return 0;
  return static_cast<int>(it - indices.begin()) + 1;
}

Submatrix submatrix(const Matrix& b, const std::vector<int>& v) {
  if (v.empty()) throw std::invalid_argument("submatrix: empty index set");
  std::vector<int> idx(v);
  for (int x : idx) checked_index(b.size(), x, "submatrix");
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  Matrix m(idx.size());
  for (std::size_t s = 0; s < idx.size(); ++s)
    for (std::size_t t = 0; t < idx.size(); ++t)
      m.at(s, t) = b.at(static_cast<std::size_t>(idx[s] - 1), static_cast<std::size_t>(idx[t] - 1));
  return Submatrix{std::move(m), std::move(idx)};
}

Matrix positive_part_row(const Matrix& a, int j) {
  const std::size_t jj = checked_index(a.size(), j, "positive_part_row");
  Matrix r(a.size());
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a.at(jj, s) > 0) r.at(jj, s) = a.at(jj, s);
  return r;
}

Matrix signed_diagonal(std::size_t n, int j) {
  const std::size_t jj = checked_index(n, j, "signed_diagonal");
  Matrix r = Matrix::identity(n);
  r.at(jj, jj) = -1;
  return r;
}

Matrix perm_matrix(const Permutation& sigma) {
  Matrix r(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j)
    r.at(static_cast<std::size_t>(sigma.images()[j] - 1), j) = 1;
  return r;
}

Integer determinant(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Matrix a(m);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k).is_zero()) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

int vector_sign(const Vector& v) {
  bool pos = false;
  bool neg = false;
  for (const auto& x : v) {
    if (x > 0) pos = true;
    else if (x < 0) neg = true;
  }
  if (pos == neg) return 0;
  return pos ? 1 : -1;
}

}  // namespace greenseq
