#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "chenres/rational.hpp"

namespace chenres {

// Barrett-reduced arithmetic modulo a prime p < 2^31.
struct Barrett {
  uint64_t p = 0;
  uint64_t mu = 0;  // floor(2^64 / p)

  Barrett() = default;
  explicit Barrett(uint64_t prime) : p(prime) {
    mu = (uint64_t)((((unsigned __int128)1) << 64) / p);
  }

  // valid for x < 2^63
  inline uint64_t reduce(uint64_t x) const {
    uint64_t q = (uint64_t)(((unsigned __int128)x * mu) >> 64);
    uint64_t r = x - q * p;
    if (r >= p) r -= p;
    return r;
  }

  inline uint64_t mul(uint64_t a, uint64_t b) const { return reduce(a * b); }
  inline uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    if (s >= p) s -= p;
    return s;
  }
  inline uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const { return pow(a % p, p - 2); }
};

bool is_prime_u64(uint64_t n);

// Deterministic stream of random primes in (2^30, 2^31), rejecting those that
// divide any of the given denominators. Throws on exhaustion.
class PrimeSampler {
 public:
  PrimeSampler(uint64_t seed, std::vector<Integer> forbidden_divisors);
  uint64_t next();

 private:
  std::mt19937_64 rng_;
  std::vector<Integer> forbidden_;
  std::vector<uint64_t> emitted_;
};

uint64_t mod_of(const Rational& q, const Barrett& b);

// Dense matrix over Z/p. Row-major contiguous storage.
class DenseMod {
 public:
  DenseMod(int rows, int cols, uint64_t p) : rows_(rows), cols_(cols), bar_(p), a_((size_t)rows * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  uint64_t p() const { return bar_.p; }
  uint32_t* row(int i) { return a_.data() + (size_t)i * cols_; }
  const uint32_t* row(int i) const { return a_.data() + (size_t)i * cols_; }
  uint32_t& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
  uint32_t at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }
  const Barrett& barrett() const { return bar_; }

 private:
  int rows_, cols_;
  Barrett bar_;
  std::vector<uint32_t> a_;
};

// Rank by forward elimination; destroys m. Serial reference implementation.
int rank_mod_serial(DenseMod& m);

// Same result, OpenMP-parallel row updates.
int rank_mod_parallel(DenseMod& m);

// Incremental row-echelon accumulator mod p. Rows are added in batches (the
// batch reduction against existing pivots runs in parallel), pivots are kept
// normalized to leading 1. kernel_basis() finishes the RREF and returns the
// canonical kernel of the accumulated row space, as columns.
class ModEchelon {
 public:
  ModEchelon(int cols, uint64_t p) : cols_(cols), bar_(p) {}

  void add_rows(std::vector<std::vector<uint32_t>>&& batch);
  void add_row(std::vector<uint32_t>&& row);
  int rank() const { return (int)rows_.size(); }
  int cols() const { return cols_; }

  // Canonical basis of {x : R x = 0}; each kernel vector is a column of the
  // result, result is cols x nullity.
  std::vector<std::vector<uint32_t>> kernel_basis();

 private:
  void reduce_row(std::vector<uint32_t>& r) const;
  void insert_reduced(std::vector<uint32_t>&& r);

  int cols_;
  Barrett bar_;
  std::vector<std::vector<uint32_t>> rows_;  // echelon rows, by pivot col
  std::vector<int> pivots_;                  // pivot col of rows_[i], increasing
};

// c = a * b mod p, dense; a is ra x ca, b is ca x cb (both row-major flat).
void matmul_mod(const Barrett& bar, const std::vector<uint32_t>& a, int ra, int ca,
                const std::vector<uint32_t>& b, int cb, std::vector<uint32_t>& c);

}  // namespace chenres
