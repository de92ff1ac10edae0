#include "greenseq/pattern.hpp"

#include <sstream>
#include <stdexcept>

#include "greenseq/errors.hpp"

namespace greenseq {

namespace {

Integer positive_part(const Integer& x) { return x > 0 ? x : Integer(0); }

std::size_t to_offset(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw std::out_of_range("direction " + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
  return static_cast<std::size_t>(k - 1);
}

int coherent_sign(const Vector& v, const char* what, int k) {
  const int s = vector_sign(v);
  if (s == 0) {
    throw InvariantViolation(std::string(what) + " " + std::to_string(k) + " is zero or not sign-coherent: " +
                             to_string(v));
  }
  return s;
}

bool is_pm_unit(const Vector& v, std::size_t& at) {
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (abs(v[i]) != 1) return false;
    at = i;
    ++nonzero;
  }
  return nonzero == 1;
}

}  // namespace

PatternContext::PatternContext(Matrix b0, InvariantChecks checks)
    : b0_(std::move(b0)), dual_b0_(-b0_.transpose()), checks_(checks) {
  if (b0_.empty()) throw std::invalid_argument("exchange matrix must have dimension >= 1");
  if (!is_sign_skew_symmetric(b0_)) throw std::invalid_argument("initial exchange matrix is not sign-skew-symmetric");
}

SeedPair initial_seed(const PatternContext& ctx) {
  const std::size_t n = ctx.size();
  return SeedPair{Seed{ctx.b0(), Matrix::identity(n), Matrix::identity(n)},
                  Seed{ctx.dual_b0(), Matrix::identity(n), Matrix::identity(n)}};
}

int column_sign(const Matrix& c, int k) {
  return coherent_sign(c.column(to_offset(c.size(), k)), "c-vector", k);
}

int row_sign(const Matrix& g, int k) { return coherent_sign(g.row(to_offset(g.size(), k)), "row of G", k); }

Matrix mutate_c_matrix(const Matrix& b, const Matrix& c, int k) {
  const std::size_t n = b.size();
  const std::size_t kk = to_offset(n, k);
  column_sign(c, k);
  Matrix out = c;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == kk) continue;
    const Integer& bkj = b.at(kk, j);
    if (bkj.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Integer& cik = c.at(i, kk);
      out.at(i, j) += (cik * abs(bkj) + abs(cik) * bkj) / 2;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.at(i, kk) = -c.at(i, kk);
  return out;
}

Seed mutate_single(const Matrix& b0, const Seed& s, int k, bool cross_check) {
  const std::size_t n = s.b.size();
  const std::size_t kk = to_offset(n, k);
  const int eps = column_sign(s.c, k);

  // c'_ij = c_ij + (c_ik |b_kj| + |c_ik| b_kj) / 2 for j != k.  With c_k
  // sign-coherent this adds [eps b_kj]_+ c_k to column j.
  Seed out{mutate_matrix(s.b, k), mutate_c_matrix(s.b, s.c, k), s.g};

  // g'_ik = -g_ik + sum_s g_is [-b_sk]_+ - sum_s b0_is [-c_sk]_+
  for (std::size_t i = 0; i < n; ++i) {
    Integer v = -s.g.at(i, kk);
    for (std::size_t t = 0; t < n; ++t) {
      v += s.g.at(i, t) * positive_part(-s.b.at(t, kk));
      v -= b0.at(i, t) * positive_part(-s.c.at(t, kk));
    }
    out.g.at(i, kk) = v;
  }

  if (cross_check) {
    Matrix scaled = s.b;
    if (eps < 0) scaled = -scaled;
    const Matrix matrix_form = s.c * (signed_diagonal(n, k) + positive_part_row(scaled, k));
    if (matrix_form != out.c) {
      throw InvariantViolation("entrywise and matrix-form C mutation disagree at direction " + std::to_string(k) +
                               ": " + to_string(out.c) + " vs " + to_string(matrix_form));
    }
  }
  return out;
}

SeedPair mutate_seed(const PatternContext& ctx, const SeedPair& sp, int k) {
  SeedPair out{mutate_single(ctx.b0(), sp.seed, k, ctx.checks()),
               mutate_single(ctx.dual_b0(), sp.dual, k, ctx.checks())};
  if (!is_sign_skew_symmetric(out.seed.b))
    throw NotTotallyMutable("mutation at " + std::to_string(k) + " gives a matrix that is not sign-skew-symmetric: " +
                                to_string(out.seed.b),
                            {k});
  if (ctx.checks()) {
    if (auto err = find_invariant_violation(ctx, out)) {
      throw InvariantViolation("after mutation at " + std::to_string(k) + ": " + *err);
    }
  }
  return out;
}

bool check_first_duality(const SeedPair& sp, const Matrix& b0) {
  return sp.seed.g * sp.seed.b == b0 * sp.seed.c;
}

bool check_second_duality(const SeedPair& sp) {
  return sp.dual.g.transpose() * sp.seed.c == Matrix::identity(sp.size());
}

std::optional<std::string> find_invariant_violation(const PatternContext& ctx, const SeedPair& sp) {
  const std::size_t n = sp.size();
  std::ostringstream msg;
  for (std::size_t k = 0; k < n; ++k) {
    const Vector c = sp.seed.c.column(k);
    const Vector cd = sp.dual.c.column(k);
    const int sc = vector_sign(c);
    const int scd = vector_sign(cd);
    if (sc == 0) return "column " + std::to_string(k + 1) + " of C is not sign-coherent: " + to_string(c);
    if (scd == 0) return "column " + std::to_string(k + 1) + " of dual C is not sign-coherent: " + to_string(cd);
    if (sc != scd) return "column " + std::to_string(k + 1) + " of C and dual C have different signs";
    const int sg = vector_sign(sp.seed.g.row(k));
    const int sgd = vector_sign(sp.dual.g.row(k));
    if (sg == 0) return "row " + std::to_string(k + 1) + " of G is not sign-coherent";
    if (sgd == 0) return "row " + std::to_string(k + 1) + " of dual G is not sign-coherent";
    if (sg != sgd) return "row " + std::to_string(k + 1) + " of G and dual G have different signs";
    std::size_t a = 0;
    std::size_t b = 0;
    const bool unit = is_pm_unit(c, a);
    const bool unit_dual = is_pm_unit(cd, b);
    if (unit != unit_dual || (unit && a != b))
      return "column " + std::to_string(k + 1) + " is +-e_j in only one of C and dual C";
    const bool grow = is_pm_unit(sp.seed.g.row(k), a);
    const bool grow_dual = is_pm_unit(sp.dual.g.row(k), b);
    if (grow != grow_dual || (grow && a != b))
      return "row " + std::to_string(k + 1) + " is +-e_j^T in only one of G and dual G";
  }
  if (sp.dual.b != -sp.seed.b.transpose()) return "dual B is not -B^T";
  if (!is_sign_skew_symmetric(sp.seed.b)) return "B is not sign-skew-symmetric: " + to_string(sp.seed.b);
  if (!check_first_duality(sp, ctx.b0())) return "first duality G B = B0 C fails";
  if (!(sp.dual.g * sp.dual.b == ctx.dual_b0() * sp.dual.c)) return "first duality fails in the dual pattern";
  if (!check_second_duality(sp)) return "second duality dualG^T C = I fails";
  for (const Matrix* m : {&sp.seed.c, &sp.seed.g}) {
    const Integer d = determinant(*m);
    if (d != 1 && d != -1) {
      msg << "determinant " << d << " is not +-1 for " << *m;
      return msg.str();
    }
  }
  return std::nullopt;
}

Matrix rebase_c_matrix(const PatternContext& ctx, const SeedPair& sp, int j) {
  const std::size_t n = ctx.size();
  const int eps = row_sign(sp.seed.g, j);
  if (eps != row_sign(sp.dual.g, j))
    throw InvariantViolation("row " + std::to_string(j) + " of G and dual G have different signs");
  Matrix scaled = ctx.b0();
  if (eps > 0) scaled = -scaled;
  return (signed_diagonal(n, j) + positive_part_row(scaled, j)) * sp.seed.c;
}

std::optional<Permutation> as_permutation_matrix(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<int> images(n, 0);
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const Integer& x = m.at(i, j);
      if (x.is_zero()) continue;
      if (x != 1 || images[j] != 0 || used[i]) return std::nullopt;
      images[j] = static_cast<int>(i + 1);
      used[i] = true;
    }
    if (images[j] == 0) return std::nullopt;
  }
  return Permutation(std::move(images));
}

std::optional<Permutation> is_nonpositive_C(const Matrix& c) {
  if (!is_nonpositive(c)) return std::nullopt;
  auto p = as_permutation_matrix(-c);
  if (!p) throw InvariantViolation("nonpositive C-matrix is not a negated permutation matrix: " + to_string(c));
  return p;
}

Hemisphere hemisphere(const SeedPair& sp, int j) {
  return row_sign(sp.dual.g, j) > 0 ? Hemisphere::plus : Hemisphere::minus;
}

}  // namespace greenseq
