#pragma once

// F_q-linear algebra on F_{q^l} viewed as an l-dimensional F_q-space.
//
// Coordinates are taken against the polynomial basis 1, z, ..., z^{l-1}
// (z primitive, so its minimal polynomial over F_q has degree l) and are
// extracted with the trace-dual basis: c_j(x) = Tr(x * dual_j).
// Matrix entries are FElem values lying in F_q.

#include <optional>
#include <span>
#include <vector>

#include "crg/field.hpp"

namespace crg {

using Matrix = std::vector<std::vector<FElem>>;

/// Reduced row echelon form in place over F_q. Rows end sorted by pivot
/// column; zero rows are dropped. Returns the pivot column of each row.
inline std::vector<unsigned> row_reduce(const Field& F, Matrix& rows) {
  std::vector<unsigned> pivots;
  if (rows.empty()) return pivots;
  const unsigned cols = static_cast<unsigned>(rows.front().size());
  std::size_t r = 0;
  for (unsigned c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].value == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const FElem inv = F.inv(rows[r][c]);
    for (auto& v : rows[r]) v = F.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].value == 0) continue;
      const FElem f = rows[i][c];
      for (unsigned j = 0; j < cols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

struct Echelon {
  Matrix rows;                  // RREF rows, F_q coordinates
  std::vector<unsigned> pivots; // pivot column per row, ascending
  std::vector<FElem> elements;  // rows mapped back into F_{q^l}
};

class FqLinear {
 public:
  explicit FqLinear(FieldPtr field) : F_(std::move(field)) {
    const Field& F = *F_;
    const unsigned l = F.ell();
    basis_.reserve(l);
    for (unsigned i = 0; i < l; ++i) basis_.push_back(F.z_pow(i));
    Matrix gram(l, std::vector<FElem>(l));
    for (unsigned i = 0; i < l; ++i)
      for (unsigned j = 0; j < l; ++j) gram[i][j] = F.trace_to_base(F.mul(basis_[i], basis_[j]));
    const auto inv = inverse(gram);
    if (!inv) throw Error(Errc::rank_deficient, "trace form is degenerate");
    dual_.assign(l, F.zero());
    for (unsigned j = 0; j < l; ++j)
      for (unsigned k = 0; k < l; ++k) dual_[j] = F.add(dual_[j], F.mul((*inv)[k][j], basis_[k]));
  }

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  unsigned dim() const { return F_->ell(); }
  const std::vector<FElem>& basis() const { return basis_; }
  const std::vector<FElem>& dual_basis() const { return dual_; }

  std::vector<FElem> coords(FElem x) const {
    std::vector<FElem> c(dual_.size());
    for (std::size_t j = 0; j < dual_.size(); ++j) c[j] = F_->trace_to_base(F_->mul(x, dual_[j]));
    return c;
  }

  FElem from_coords(std::span<const FElem> c) const {
    FElem acc = F_->zero();
    for (std::size_t j = 0; j < c.size(); ++j) acc = F_->add(acc, F_->mul(c[j], basis_[j]));
    return acc;
  }

  Echelon echelon(std::span<const FElem> xs) const {
    Echelon e;
    for (FElem x : xs) e.rows.push_back(coords(x));
    e.pivots = row_reduce(*F_, e.rows);
    for (const auto& r : e.rows) e.elements.push_back(from_coords(r));
    return e;
  }

  /// Dimension over F_q of the span of `xs`.
  std::size_t rank(std::span<const FElem> xs) const {
    Matrix rows;
    rows.reserve(xs.size());
    for (FElem x : xs) rows.push_back(coords(x));
    return row_reduce(*F_, rows).size();
  }

  std::optional<Matrix> inverse(const Matrix& a) const {
    const std::size_t n = a.size();
    Matrix aug(n, std::vector<FElem>(2 * n, F_->zero()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
      aug[i][n + i] = F_->one();
    }
    const auto piv = row_reduce(*F_, aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix out(n, std::vector<FElem>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
  }

  /// Unique solution of A x = b for square A, or nullopt if A is singular.
  std::optional<std::vector<FElem>> solve(const Matrix& a, std::span<const FElem> b) const {
    const auto inv = inverse(a);
    if (!inv) return std::nullopt;
    std::vector<FElem> x(a.size(), F_->zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) x[i] = F_->add(x[i], F_->mul((*inv)[i][j], b[j]));
    return x;
  }

 private:
  FieldPtr F_;
  std::vector<FElem> basis_;
  std::vector<FElem> dual_;
};

}  // namespace crg
