#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parsel/errors.hpp"

namespace parsel {

using word_t = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

/// Word-packed bit vector over GF(2). Bit i of a width-n vector corresponds
/// to qubit/column i; as an unsigned integer the vector reads Sum b_i * 2^i.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n_bits)
      : n_(n_bits), w_((n_bits + kWordBits - 1) / kWordBits, 0) {}

  static BitVec from_uint(std::size_t n_bits, std::uint64_t value) {
    BitVec v(n_bits);
    for (std::size_t i = 0; i < n_bits && i < kWordBits; ++i) {
      if ((value >> i) & 1u) v.set(i, true);
    }
    return v;
  }

  // '0'/'1' characters, leftmost character is bit 0.
  static BitVec from_string(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i, true);
      } else if (s[i] != '0') {
        throw parse_error("invalid bit character '" + std::string(1, s[i]) +
                          "'");
      }
    }
    return v;
  }

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const {
    return (w_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }

  void set(std::size_t i, bool v) {
    word_t mask = word_t{1} << (i % kWordBits);
    if (v) {
      w_[i / kWordBits] |= mask;
    } else {
      w_[i / kWordBits] &= ~mask;
    }
  }

  void flip(std::size_t i) { w_[i / kWordBits] ^= word_t{1} << (i % kWordBits); }

  bool none() const {
    for (word_t w : w_) {
      if (w != 0) return false;
    }
    return true;
  }

  bool any() const { return !none(); }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (word_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::optional<std::size_t> first_set() const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (w_[k] != 0) {
        return k * kWordBits +
               static_cast<std::size_t>(std::countr_zero(w_[k]));
      }
    }
    return std::nullopt;
  }

  void xor_with(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  }

  /// Parity of the AND of two equal-width vectors.
  static bool dot(const BitVec& a, const BitVec& b) {
    word_t acc = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return std::popcount(acc) & 1u;
  }

  /// Compares the unsigned integer values (bit i has weight 2^i), any width.
  static int compare_uint(const BitVec& a, const BitVec& b) {
    for (std::size_t k = a.w_.size(); k-- > 0;) {
      if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k] ? -1 : 1;
    }
    return 0;
  }

  std::uint64_t to_uint() const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n_ && i < kWordBits; ++i) {
      if (get(i)) v |= std::uint64_t{1} << i;
    }
    return v;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  const std::vector<word_t>& words() const { return w_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<word_t> w_;
};

/// Row-major bit matrix; row operations are word-parallel.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

  static BitMatrix from_rows(std::vector<BitVec> rows) {
    BitMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows[0].size();
    for (const BitVec& r : rows) {
      if (r.size() != m.cols_) throw dimension_error("ragged bit matrix");
    }
    m.r_ = std::move(rows);
    return m;
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.r_[i].set(i, true);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const BitVec& row(std::size_t i) const { return r_[i]; }
  BitVec& row(std::size_t i) { return r_[i]; }

  bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool v) { r_[i].set(j, v); }

  void add_row(std::size_t source, std::size_t target) {
    r_[target].xor_with(r_[source]);
  }

  void swap_rows(std::size_t a, std::size_t b) { std::swap(r_[a], r_[b]); }

  BitVec column(std::size_t j) const {
    BitVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.set(i, r_[i].get(j));
    return c;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (r_[i].get(j)) t.set(j, i, true);
      }
    }
    return t;
  }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_error("bit matrix product shape");
    BitMatrix bt = b.transposed();
    BitMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (BitVec::dot(a.r_[i], bt.r_[j])) c.set(i, j, true);
      }
    }
    return c;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVec> r_;
};

inline std::size_t gf2_rank(const BitMatrix& m) {
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i].get(col)) rows[i].xor_with(rows[rank]);
    }
    ++rank;
  }
  return rank;
}

/// Incremental GF(2) row basis. try_extend accepts a vector exactly when it
/// lies outside the current span, mirroring the greedy independent-set search.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t size() const { return echelon_.size(); }

  /// Reduces v against the stored echelon rows.
  BitVec reduce(const BitVec& v) const {
    if (v.size() != cols_) throw dimension_error("basis vector width");
    BitVec r = v;
    for (std::size_t k = 0; k < echelon_.size(); ++k) {
      if (r.get(lead_[k])) r.xor_with(echelon_[k]);
    }
    return r;
  }

  bool contains(const BitVec& v) const { return reduce(v).none(); }

  bool try_extend(const BitVec& v) {
    BitVec r = reduce(v);
    auto lead = r.first_set();
    if (!lead) return false;
    echelon_.push_back(std::move(r));
    lead_.push_back(*lead);
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<BitVec> echelon_;
  std::vector<std::size_t> lead_;
};

/// ACCEPT/REJECT decision for one vector against a growing basis.
inline bool independent_extend(Gf2Basis& basis, const BitVec& v) {
  return basis.try_extend(v);
}

struct RowOp {
  std::size_t source;
  std::size_t target;  // row[target] ^= row[source]
  friend bool operator==(const RowOp&, const RowOp&) = default;
};

struct GaussJordanResult {
  BitMatrix reduced;
  std::vector<RowOp> ops;
  std::vector<std::size_t> pivot_cols;  // pivot_cols[i] is the pivot of row i
};

/// Row-reduces a full-row-rank matrix in place order (no row swaps), so the
/// op log replays directly onto the input. Throws independence_error naming
/// the first dependent row.
inline GaussJordanResult gauss_jordan(const BitMatrix& m) {
  if (m.rows() > m.cols()) {
    throw precondition_error("gauss_jordan requires rows <= cols");
  }
  GaussJordanResult res;
  res.reduced = m;
  BitMatrix& a = res.reduced;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    // Eliminate previously pivoted rows from row i.
    for (std::size_t k = 0; k < i; ++k) {
      if (a.get(i, res.pivot_cols[k])) {
        a.add_row(k, i);
        res.ops.push_back({k, i});
      }
    }
    auto pivot = a.row(i).first_set();
    if (!pivot) {
      throw independence_error("gauss_jordan: row " + std::to_string(i) +
                               " is dependent on earlier rows");
    }
    res.pivot_cols.push_back(*pivot);
    // Clear this pivot column from all other rows.
    for (std::size_t k = 0; k < a.rows(); ++k) {
      if (k != i && a.get(k, *pivot)) {
        a.add_row(i, k);
        res.ops.push_back({i, k});
      }
    }
  }
  return res;
}

/// Solves a * x = rhs (x picks columns of a). Requires a solution to exist;
/// returns std::nullopt when the system is inconsistent.
inline std::optional<BitVec> gf2_solve(const BitMatrix& a, const BitVec& rhs) {
  if (rhs.size() != a.rows()) throw dimension_error("gf2_solve shape");
  // Augmented elimination on a copy.
  std::vector<BitVec> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BitVec r(a.cols() + 1);
    for (std::size_t j = 0; j < a.cols(); ++j) r.set(j, a.get(i, j));
    r.set(a.cols(), rhs.get(i));
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> pivot_of_col(a.cols(), SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i].get(col)) rows[i].xor_with(rows[rank]);
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (rows[i].get(a.cols())) return std::nullopt;  // inconsistent
  }
  BitVec x(a.cols());
  for (std::size_t col = 0; col < a.cols(); ++col) {
    if (pivot_of_col[col] != SIZE_MAX && rows[pivot_of_col[col]].get(a.cols())) {
      x.set(col, true);
    }
  }
  return x;
}

/// Inverse of a square invertible matrix; throws independence_error otherwise.
inline BitMatrix gf2_inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw dimension_error("gf2_inverse: square only");
  std::size_t n = m.rows();
  std::vector<BitVec> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVec r(2 * n);
    for (std::size_t j = 0; j < n; ++j) r.set(j, m.get(i, j));
    r.set(n + i, true);
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
    if (pivot == rows.size()) {
      throw independence_error("gf2_inverse: singular matrix");
    }
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != rank && rows[i].get(col)) rows[i].xor_with(rows[rank]);
    }
    ++rank;
  }
  // rows[i] now has a single 1 in columns [0,n) at position perm(i); undo the
  // implicit permutation while reading out the right half.
  BitMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lead = *rows[i].first_set();
    for (std::size_t j = 0; j < n; ++j) inv.set(lead, j, rows[i].get(n + j));
  }
  return inv;
}

}  // namespace parsel
