#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chenres/rational.hpp"

namespace chenres {

struct MatrixEntry {
  int row = 0;
  int col = 0;
  Rational value;
};

// Sparse rational matrix. Entries are kept sorted by (row, col), unique, and
// nonzero; construction normalizes.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
  RationalMatrix(int rows, int cols, std::vector<MatrixEntry> entries);

  static RationalMatrix identity(int n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<MatrixEntry>& entries() const { return entries_; }

  Rational at(int r, int c) const;
  std::vector<std::vector<Rational>> dense_rows() const;
  std::vector<std::vector<std::pair<int, Rational>>> sparse_rows() const;
  RationalMatrix transpose() const;
  RationalMatrix vstack(const RationalMatrix& other) const;

  bool operator==(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || entries_.size() != o.entries_.size()) return false;
    for (size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].row != o.entries_[i].row || entries_[i].col != o.entries_[i].col ||
          entries_[i].value != o.entries_[i].value)
        return false;
    }
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<MatrixEntry> entries_;
};

// Row-reduced canonical subspace of Q^ambient. Equality of subspaces is
// equality of their RREF basis matrices.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

  // Canonical span of arbitrary row vectors.
  static Subspace span(int ambient, const std::vector<std::vector<Rational>>& rows);
  static Subspace span(const RationalMatrix& rows);
  static Subspace full(int ambient);

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const RationalMatrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const std::vector<Rational>& v) const;
  bool contains(const Subspace& other) const;
  // Coordinates of v in the RREF basis; nullopt when v is outside.
  std::optional<std::vector<Rational>> coordinates(const std::vector<Rational>& v) const;

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  // Deterministic key for dedup / ordering.
  std::string canonical_key() const;

 private:
  friend Subspace make_subspace_trusted(int ambient, RationalMatrix rref_basis, std::vector<int> pivots);
  int ambient_ = 0;
  RationalMatrix basis_;
  std::vector<int> pivots_;
};

struct RrefResult {
  RationalMatrix matrix;
  int rank = 0;
  std::vector<int> pivots;
};

RrefResult rref(const RationalMatrix& m);

// Canonical basis of the right null space {x : m x = 0}.
Subspace kernel_basis(const RationalMatrix& m);

Subspace intersect(const Subspace& a, const Subspace& b);

// Sum of subspaces (canonical).
Subspace subspace_sum(const Subspace& a, const Subspace& b);

struct RankMode {
  enum Kind { Exact, Modular } kind = Exact;
  int prime_count = 3;
  uint64_t seed = 0;

  static RankMode exact() { return RankMode{Exact, 0, 0}; }
  static RankMode modular(int primes, uint64_t seed = 0) { return RankMode{Modular, primes, seed}; }
};

struct RankResult {
  long long rank = 0;
  bool exact = true;        // computed over Q
  bool agreement = true;    // in modular mode: all primes agreed
  std::vector<uint64_t> primes;
};

// Exact mode: fraction-free sparse elimination over Z after clearing row
// denominators. Modular mode: max rank over prime_count random primes > 2^30
// that avoid all entry denominators, with an agreement flag.
RankResult rank_certified(const RationalMatrix& m, const RankMode& mode);

}  // namespace chenres
