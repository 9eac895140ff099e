#pragma once

// Exact linear algebra over ordered fields, written against Eigen types.
//
// Everything here is templated on the scalar so that the same reductions run
// over GMP rationals in production and over small exact types in tests. No
// routine divides by anything other than an exactly nonzero pivot.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cofinal {

using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, Eigen::Index>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// A sparse column as (row, value) pairs sorted by row, without zeros.
template <typename Scalar>
using SparseColumn = std::vector<std::pair<Eigen::Index, Scalar>>;

namespace detail {

// a ← a + c·b
template <typename Scalar>
void add_scaled(SparseColumn<Scalar>& a, const Scalar& c, const SparseColumn<Scalar>& b) {
  SparseColumn<Scalar> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, c * j->second);
      ++j;
    } else {
      Scalar v = i->second + c * j->second;
      if (v != Scalar(0)) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

}  // namespace detail

template <typename Derived>
std::vector<SparseColumn<typename Derived::Scalar>> sparse_columns(
    const Eigen::SparseMatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const SparseMatrix<Scalar> col_major = m.derived();
  std::vector<SparseColumn<Scalar>> cols(static_cast<std::size_t>(col_major.cols()));
  for (Eigen::Index k = 0; k < col_major.outerSize(); ++k) {
    for (typename SparseMatrix<Scalar>::InnerIterator it(col_major, k); it; ++it) {
      if (it.value() != Scalar(0)) cols[static_cast<std::size_t>(k)].emplace_back(it.row(), it.value());
    }
  }
  return cols;
}

template <typename Derived>
std::vector<SparseColumn<typename Derived::Scalar>> sparse_columns(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  std::vector<SparseColumn<Scalar>> cols(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != Scalar(0)) cols[static_cast<std::size_t>(c)].emplace_back(r, m(r, c));
    }
  }
  return cols;
}

template <typename Scalar>
SparseMatrix<Scalar> from_columns(Eigen::Index rows, const std::vector<SparseColumn<Scalar>>& cols) {
  std::vector<Eigen::Triplet<Scalar, Eigen::Index>> triplets;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const auto& [r, v] : cols[c]) triplets.emplace_back(r, static_cast<Eigen::Index>(c), v);
  }
  SparseMatrix<Scalar> m(rows, static_cast<Eigen::Index>(cols.size()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

/// Left-to-right column reduction R = D·V with V unit upper triangular.
/// Each nonzero column of R has a distinct lowest row (its pivot), so the
/// number of nonzero columns is the rank; the columns of V whose R-column
/// vanished span the kernel.
template <typename Scalar>
struct ColumnReduction {
  std::vector<SparseColumn<Scalar>> reduced;
  std::vector<SparseColumn<Scalar>> combination;  // empty unless tracked
  Eigen::Index rank = 0;
};

template <typename Scalar>
ColumnReduction<Scalar> reduce_columns(std::vector<SparseColumn<Scalar>> cols, bool track_combination) {
  ColumnReduction<Scalar> out;
  const std::size_t n = cols.size();
  if (track_combination) {
    out.combination.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.combination[j].emplace_back(static_cast<Eigen::Index>(j), Scalar(1));
  }
  std::unordered_map<Eigen::Index, std::size_t> pivot_owner;
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = cols[j];
    while (!col.empty()) {
      const Eigen::Index low = col.back().first;
      auto owner = pivot_owner.find(low);
      if (owner == pivot_owner.end()) break;
      const auto& other = cols[owner->second];
      const Scalar factor = -col.back().second / other.back().second;
      if (track_combination) detail::add_scaled(out.combination[j], factor, out.combination[owner->second]);
      detail::add_scaled(col, factor, other);
    }
    if (!col.empty()) {
      pivot_owner.emplace(col.back().first, j);
      ++out.rank;
    }
  }
  out.reduced = std::move(cols);
  return out;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::SparseMatrixBase<Derived>& m) {
  return reduce_columns(sparse_columns(m), false).rank;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  return reduce_columns(sparse_columns(m), false).rank;
}

/// Columns form a basis of ker m.
template <typename Derived>
SparseMatrix<typename Derived::Scalar> kernel_basis(const Eigen::SparseMatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  auto red = reduce_columns(sparse_columns(m), true);
  std::vector<SparseColumn<Scalar>> basis;
  for (std::size_t j = 0; j < red.reduced.size(); ++j) {
    if (red.reduced[j].empty()) basis.push_back(std::move(red.combination[j]));
  }
  return from_columns<Scalar>(m.derived().cols(), basis);
}

/// Horizontal concatenation [a | b] of sparse matrices with equal row counts.
template <typename Scalar>
SparseMatrix<Scalar> hconcat(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  auto cols = sparse_columns(a);
  auto more = sparse_columns(b);
  cols.insert(cols.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  return from_columns<Scalar>(a.rows(), cols);
}

template <typename Derived>
bool is_zero(const Eigen::SparseMatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const SparseMatrix<Scalar> e = m.derived();
  for (Eigen::Index k = 0; k < e.outerSize(); ++k) {
    for (typename SparseMatrix<Scalar>::InnerIterator it(e, k); it; ++it) {
      if (it.value() != Scalar(0)) return false;
    }
  }
  return true;
}

}  // namespace cofinal
