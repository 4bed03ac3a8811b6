#include "chenres/modrank.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chenres {

uint64_t Barrett::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  Barrett bar(n);
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = bar.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = bar.mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeSampler::PrimeSampler(uint64_t seed, std::vector<Integer> forbidden)
    : rng_(seed ^ 0x9e3779b97f4a7c15ull), forbidden_(std::move(forbidden)) {}

uint64_t PrimeSampler::next() {
  const uint64_t lo = (1ull << 30) + 1;
  const uint64_t hi = (1ull << 31) - 1;
  std::uniform_int_distribution<uint64_t> dist(lo, hi);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    uint64_t c = dist(rng_) | 1ull;
    if (!is_prime_u64(c)) continue;
    if (std::find(emitted_.begin(), emitted_.end(), c) != emitted_.end()) continue;
    bool bad = false;
    for (const auto& d : forbidden_) {
      if (d == 0) continue;
      if (mpz_fdiv_ui(d.get_mpz_t(), (unsigned long)c) == 0) {
        bad = true;
        break;
      }
    }
    if (bad) continue;
    emitted_.push_back(c);
    return c;
  }
  throw std::runtime_error("prime exhaustion: no usable prime avoids the entry denominators");
}

uint64_t mod_of(const Rational& q, const Barrett& b) {
  uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), (unsigned long)b.p);
  uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), (unsigned long)b.p);
  if (den == 0) throw std::domain_error("denominator divisible by modulus");
  if (num == 0) return 0;
  return b.mul(num, b.inv(den));
}

namespace {

// dst += c * src over Z/p, dense rows
inline void axpy_row(const Barrett& bar, uint32_t* dst, const uint32_t* src, uint64_t c, int n) {
  for (int j = 0; j < n; ++j) {
    if (src[j]) dst[j] = (uint32_t)bar.reduce(dst[j] + c * src[j]);
  }
}

int rank_mod_impl(DenseMod& m, bool parallel) {
  const int R = m.rows(), C = m.cols();
  const Barrett& bar = m.barrett();
  int rank = 0;
  for (int col = 0; col < C && rank < R; ++col) {
    int piv = -1;
    for (int i = rank; i < R; ++i) {
      if (m.at(i, col)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rank) std::swap_ranges(m.row(piv), m.row(piv) + C, m.row(rank));
    const uint64_t inv = bar.inv(m.at(rank, col));
    uint32_t* prow = m.row(rank);
    for (int j = col; j < C; ++j) prow[j] = (uint32_t)bar.mul(prow[j], inv);
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
      for (int i = rank + 1; i < R; ++i) {
        uint32_t v = m.at(i, col);
        if (v) axpy_row(bar, m.row(i) + col, prow + col, bar.p - v, C - col);
      }
    } else {
      for (int i = rank + 1; i < R; ++i) {
        uint32_t v = m.at(i, col);
        if (v) axpy_row(bar, m.row(i) + col, prow + col, bar.p - v, C - col);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int rank_mod_serial(DenseMod& m) { return rank_mod_impl(m, false); }

int rank_mod_parallel(DenseMod& m) { return rank_mod_impl(m, true); }

void ModEchelon::reduce_row(std::vector<uint32_t>& r) const {
  // rows_ is kept fully reduced (each pivot column is zero in every other
  // pivot row), so all elimination coefficients can be gathered up front and
  // the update fused into one pass with 128-bit accumulators.
  const size_t k = rows_.size();
  if (k == 0) return;
  std::vector<uint64_t> coeff(k);
  bool any = false;
  for (size_t i = 0; i < k; ++i) {
    const uint32_t v = r[pivots_[i]];
    coeff[i] = v ? bar_.p - v : 0;
    any |= (v != 0);
  }
  if (!any) return;
  std::vector<unsigned __int128> acc(cols_);
  for (int j = 0; j < cols_; ++j) acc[j] = r[j];
  for (size_t i = 0; i < k; ++i) {
    const uint64_t c = coeff[i];
    if (!c) continue;
    const uint32_t* src = rows_[i].data();
    for (int j = 0; j < cols_; ++j) acc[j] += (unsigned __int128)c * src[j];
  }
  for (int j = 0; j < cols_; ++j) r[j] = (uint32_t)(uint64_t)(acc[j] % bar_.p);
}

void ModEchelon::insert_reduced(std::vector<uint32_t>&& r) {
  int lead = -1;
  for (int j = 0; j < cols_; ++j) {
    if (r[j]) {
      lead = j;
      break;
    }
  }
  if (lead < 0) return;
  const uint64_t inv = bar_.inv(r[lead]);
  for (int j = lead; j < cols_; ++j) r[j] = (uint32_t)bar_.mul(r[j], inv);
  // keep existing rows reduced against the new pivot
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (size_t i = 0; i < rows_.size(); ++i) {
    const uint32_t v = rows_[i][lead];
    if (v) axpy_row(bar_, rows_[i].data() + lead, r.data() + lead, bar_.p - v, cols_ - lead);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
  size_t idx = (size_t)(pos - pivots_.begin());
  pivots_.insert(pos, lead);
  rows_.insert(rows_.begin() + idx, std::move(r));
}

void ModEchelon::add_row(std::vector<uint32_t>&& row) {
  if ((int)row.size() != cols_) throw std::invalid_argument("ModEchelon: bad row length");
  reduce_row(row);
  insert_reduced(std::move(row));
}

void ModEchelon::add_rows(std::vector<std::vector<uint32_t>>&& batch) {
  const size_t base = rows_.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (size_t i = 0; i < batch.size(); ++i) {
    if ((int)batch[i].size() != cols_) continue;  // checked again on insert
    // reduce against the pivot set present before this batch
    for (size_t k = 0; k < base; ++k) {
      const uint32_t v = batch[i][pivots_[k]];
      if (v) axpy_row(bar_, batch[i].data(), rows_[k].data(), bar_.p - v, cols_);
    }
  }
  for (auto& r : batch) {
    if ((int)r.size() != cols_) throw std::invalid_argument("ModEchelon: bad row length");
    // finish reduction against pivots added during this batch
    reduce_row(r);
    insert_reduced(std::move(r));
  }
}

std::vector<std::vector<uint32_t>> ModEchelon::kernel_basis() {
  // rows_ is maintained in full RREF; read the kernel off directly.
  std::vector<bool> is_piv(cols_, false);
  for (int p : pivots_) is_piv[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < cols_; ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  std::vector<std::vector<uint32_t>> kern(free_cols.size(), std::vector<uint32_t>(cols_, 0));
  for (size_t t = 0; t < free_cols.size(); ++t) {
    const int f = free_cols[t];
    kern[t][f] = 1;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const uint32_t v = rows_[i][f];
      if (v) kern[t][pivots_[i]] = (uint32_t)(bar_.p - v);
    }
  }
  return kern;
}

void matmul_mod(const Barrett& bar, const std::vector<uint32_t>& a, int ra, int ca,
                const std::vector<uint32_t>& b, int cb, std::vector<uint32_t>& c) {
  c.assign((size_t)ra * cb, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < ra; ++i) {
    std::vector<unsigned __int128> acc(cb, 0);
    for (int k = 0; k < ca; ++k) {
      const uint64_t av = a[(size_t)i * ca + k];
      if (!av) continue;
      const uint32_t* brow = b.data() + (size_t)k * cb;
      for (int j = 0; j < cb; ++j) acc[j] += (unsigned __int128)av * brow[j];
    }
    uint32_t* crow = c.data() + (size_t)i * cb;
    for (int j = 0; j < cb; ++j) crow[j] = (uint32_t)(uint64_t)(acc[j] % bar.p);
  }
}

}  // namespace chenres
