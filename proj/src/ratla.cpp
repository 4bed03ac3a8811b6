#include "chenres/ratla.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "chenres/modrank.hpp"

namespace chenres {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

Integer binomial(long n, long m) {
  if (m < 0 || n < m) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)m);
  return r;
}

long long binomial_ll(long n, long m) {
  Integer b = binomial(n, m);
  if (!b.fits_slong_p()) throw std::overflow_error("binomial too large for long long");
  return (long long)b.get_si();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

Poly poly_scale(const Poly& a, const Rational& c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& x : r) x *= c;
  return r;
}

Rational poly_eval(const Poly& p, long k) {
  Rational acc(0), pw(1);
  for (const auto& c : p) {
    acc += c * pw;
    pw *= k;
  }
  return acc;
}

std::string poly_str(const Poly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!first) os << " + ";
    os << rational_str(p[i]);
    if (i == 1) os << "*k";
    if (i > 1) os << "*k^" << i;
    first = false;
  }
  if (first) return "0";
  return os.str();
}

RationalMatrix::RationalMatrix(int rows, int cols, std::vector<MatrixEntry> entries)
    : rows_(rows), cols_(cols) {
  std::map<std::pair<int, int>, Rational> acc;
  for (auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::out_of_range("matrix entry out of bounds");
    acc[{e.row, e.col}] += e.value;
  }
  for (auto& [rc, v] : acc)
    if (v != 0) entries_.push_back({rc.first, rc.second, v});
}

RationalMatrix RationalMatrix::identity(int n) {
  std::vector<MatrixEntry> es;
  for (int i = 0; i < n; ++i) es.push_back({i, i, Rational(1)});
  return RationalMatrix(n, n, std::move(es));
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  int r = (int)rows.size();
  int c = r ? (int)rows[0].size() : 0;
  std::vector<MatrixEntry> es;
  for (int i = 0; i < r; ++i) {
    if ((int)rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j)
      if (rows[i][j] != 0) es.push_back({i, j, rows[i][j]});
  }
  return RationalMatrix(r, c, std::move(es));
}

Rational RationalMatrix::at(int r, int c) const {
  for (const auto& e : entries_)
    if (e.row == r && e.col == c) return e.value;
  return Rational(0);
}

std::vector<std::vector<Rational>> RationalMatrix::dense_rows() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_, Rational(0)));
  for (const auto& e : entries_) d[e.row][e.col] = e.value;
  return d;
}

std::vector<std::vector<std::pair<int, Rational>>> RationalMatrix::sparse_rows() const {
  std::vector<std::vector<std::pair<int, Rational>>> d(rows_);
  for (const auto& e : entries_) d[e.row].push_back({e.col, e.value});
  return d;
}

RationalMatrix RationalMatrix::transpose() const {
  std::vector<MatrixEntry> es;
  es.reserve(entries_.size());
  for (const auto& e : entries_) es.push_back({e.col, e.row, e.value});
  return RationalMatrix(cols_, rows_, std::move(es));
}

RationalMatrix RationalMatrix::vstack(const RationalMatrix& other) const {
  if (cols_ != other.cols_) throw std::invalid_argument("vstack: column mismatch");
  std::vector<MatrixEntry> es = entries_;
  for (const auto& e : other.entries_) es.push_back({e.row + rows_, e.col, e.value});
  return RationalMatrix(rows_ + other.rows_, cols_, std::move(es));
}

namespace {

using SparseRow = std::vector<std::pair<int, Rational>>;

// dst += c * src (sparse merge)
SparseRow axpy(const SparseRow& dst, const Rational& c, const SparseRow& src) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j >= src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i >= dst.size() || src[j].first < dst[i].first) {
      Rational v = c * src[j].second;
      if (v != 0) out.push_back({src[j].first, v});
      ++j;
    } else {
      Rational v = dst[i].second + c * src[j].second;
      if (v != 0) out.push_back({dst[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

void scale_row(SparseRow& r, const Rational& c) {
  for (auto& [col, v] : r) v *= c;
}

// Row echelon over Q. Returns pivot rows in order of increasing pivot column,
// fully reduced (Gauss-Jordan) so the result is the canonical RREF.
struct EchelonQ {
  std::vector<SparseRow> rows;  // pivot rows
  std::vector<int> pivots;

  void run(std::vector<SparseRow> work) {
    // forward pass
    while (true) {
      int best = -1;
      int best_lead = INT32_MAX;
      size_t best_nnz = SIZE_MAX;
      for (int i = 0; i < (int)work.size(); ++i) {
        if (work[i].empty()) continue;
        int lead = work[i][0].first;
        if (lead < best_lead || (lead == best_lead && work[i].size() < best_nnz)) {
          best = i;
          best_lead = lead;
          best_nnz = work[i].size();
        }
      }
      if (best < 0) break;
      SparseRow piv = std::move(work[best]);
      work.erase(work.begin() + best);
      Rational inv = 1 / piv[0].second;
      scale_row(piv, inv);
      for (auto& r : work) {
        if (!r.empty() && r[0].first == best_lead) r = axpy(r, -r[0].second, piv);
      }
      rows.push_back(std::move(piv));
      pivots.push_back(best_lead);
    }
    // backward pass: reduce above pivots
    for (int i = (int)rows.size() - 1; i >= 0; --i) {
      for (int j = 0; j < i; ++j) {
        // find pivots[i] in rows[j]
        const SparseRow& upper = rows[j];
        auto it = std::lower_bound(upper.begin(), upper.end(), pivots[i],
                                   [](const std::pair<int, Rational>& e, int c) { return e.first < c; });
        if (it != upper.end() && it->first == pivots[i]) {
          rows[j] = axpy(rows[j], -it->second, rows[i]);
        }
      }
    }
  }
};

RationalMatrix rows_to_matrix(const std::vector<SparseRow>& rows, int cols) {
  std::vector<MatrixEntry> es;
  for (int i = 0; i < (int)rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) es.push_back({i, c, v});
  return RationalMatrix((int)rows.size(), cols, std::move(es));
}

}  // namespace

Subspace make_subspace_trusted(int ambient, RationalMatrix rref_basis, std::vector<int> pivots) {
  Subspace s(ambient);
  s.basis_ = std::move(rref_basis);
  s.pivots_ = std::move(pivots);
  return s;
}

RrefResult rref(const RationalMatrix& m) {
  EchelonQ ech;
  ech.run(m.sparse_rows());
  RrefResult res;
  res.rank = (int)ech.rows.size();
  res.pivots = ech.pivots;
  // keep original row count: pad with zero rows to match input shape
  std::vector<SparseRow> rows = ech.rows;
  rows.resize(m.rows());
  res.matrix = rows_to_matrix(rows, m.cols());
  return res;
}

Subspace Subspace::span(const RationalMatrix& rows) {
  EchelonQ ech;
  ech.run(rows.sparse_rows());
  return make_subspace_trusted(rows.cols(), rows_to_matrix(ech.rows, rows.cols()), ech.pivots);
}

Subspace Subspace::span(int ambient, const std::vector<std::vector<Rational>>& rows) {
  for (const auto& r : rows)
    if ((int)r.size() != ambient) throw std::invalid_argument("span: bad vector length");
  RationalMatrix m = RationalMatrix::from_rows(rows);
  if (rows.empty()) m = RationalMatrix(0, ambient);
  EchelonQ ech;
  ech.run(m.sparse_rows());
  return make_subspace_trusted(ambient, rows_to_matrix(ech.rows, ambient), ech.pivots);
}

Subspace Subspace::full(int ambient) {
  return make_subspace_trusted(ambient, RationalMatrix::identity(ambient), [&] {
    std::vector<int> p(ambient);
    for (int i = 0; i < ambient; ++i) p[i] = i;
    return p;
  }());
}

std::optional<std::vector<Rational>> Subspace::coordinates(const std::vector<Rational>& v) const {
  if ((int)v.size() != ambient_) throw std::invalid_argument("coordinates: bad vector length");
  std::vector<Rational> rem = v;
  std::vector<Rational> coords(dim(), Rational(0));
  auto rows = basis_.sparse_rows();
  for (int i = 0; i < dim(); ++i) {
    const Rational c = rem[pivots_[i]];
    if (c != 0) {
      coords[i] = c;
      for (const auto& [col, val] : rows[i]) rem[col] -= c * val;
    }
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return coords;
}

bool Subspace::contains(const std::vector<Rational>& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_) throw std::invalid_argument("contains: ambient mismatch");
  for (const auto& row : other.basis().dense_rows())
    if (!contains(row)) return false;
  return true;
}

std::string Subspace::canonical_key() const {
  std::ostringstream os;
  os << ambient_ << ";" << dim() << ";";
  for (const auto& e : basis_.entries()) os << e.row << "," << e.col << "," << rational_str(e.value) << ";";
  return os.str();
}

Subspace kernel_basis(const RationalMatrix& m) {
  EchelonQ ech;
  ech.run(m.sparse_rows());
  const int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> kern;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (size_t i = 0; i < ech.rows.size(); ++i) {
      // coefficient of free column f in pivot row i
      const SparseRow& r = ech.rows[i];
      auto it = std::lower_bound(r.begin(), r.end(), f,
                                 [](const std::pair<int, Rational>& e, int c) { return e.first < c; });
      if (it != r.end() && it->first == f) v[ech.pivots[i]] = -it->second;
    }
    kern.push_back(std::move(v));
  }
  return Subspace::span(n, kern);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersect: ambient dimension mismatch");
  // a = ker(Ka), b = ker(Kb); a cap b = ker([Ka; Kb])
  Subspace ak = kernel_basis(a.basis());
  Subspace bk = kernel_basis(b.basis());
  RationalMatrix stacked = ak.basis().vstack(bk.basis());
  return kernel_basis(stacked);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("sum: ambient dimension mismatch");
  return Subspace::span(a.basis().vstack(b.basis()));
}

namespace {

// Fraction-free sparse rank over Z: rows are scaled to integers, elimination
// uses cross-multiplication and divides each result row by its content.
using ZRow = std::vector<std::pair<int, Integer>>;

void normalize_content(ZRow& r) {
  if (r.empty()) return;
  Integer g = 0;
  for (auto& [c, v] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& [c, v] : r) v /= g;
}

long long rank_exact_ff(const RationalMatrix& m) {
  std::vector<ZRow> work;
  work.reserve(m.rows());
  for (auto& row : m.sparse_rows()) {
    if (row.empty()) continue;
    Integer lcm = 1;
    for (auto& [c, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    ZRow zr;
    zr.reserve(row.size());
    for (auto& [c, v] : row) {
      Rational scaled = v * Rational(lcm);
      zr.push_back({c, Integer(scaled.get_num())});
    }
    normalize_content(zr);
    work.push_back(std::move(zr));
  }
  long long rank = 0;
  while (true) {
    int best = -1, best_lead = INT32_MAX;
    size_t best_nnz = SIZE_MAX;
    for (int i = 0; i < (int)work.size(); ++i) {
      if (work[i].empty()) continue;
      int lead = work[i][0].first;
      if (lead < best_lead || (lead == best_lead && work[i].size() < best_nnz)) {
        best = i;
        best_lead = lead;
        best_nnz = work[i].size();
      }
    }
    if (best < 0) break;
    ZRow piv = std::move(work[best]);
    work.erase(work.begin() + best);
    const Integer& pv = piv[0].second;
    for (auto& r : work) {
      if (r.empty() || r[0].first != best_lead) continue;
      const Integer cv = r[0].second;
      // r = pv * r - cv * piv
      ZRow out;
      out.reserve(r.size() + piv.size());
      size_t i = 0, j = 0;
      while (i < r.size() || j < piv.size()) {
        if (j >= piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
          out.push_back({r[i].first, pv * r[i].second});
          ++i;
        } else if (i >= r.size() || piv[j].first < r[i].first) {
          out.push_back({piv[j].first, -cv * piv[j].second});
          ++j;
        } else {
          Integer v = pv * r[i].second - cv * piv[j].second;
          if (v != 0) out.push_back({r[i].first, v});
          ++i;
          ++j;
        }
      }
      normalize_content(out);
      r = std::move(out);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

RankResult rank_certified(const RationalMatrix& m, const RankMode& mode) {
  RankResult res;
  if (mode.kind == RankMode::Exact) {
    res.rank = rank_exact_ff(m);
    res.exact = true;
    return res;
  }
  if (mode.prime_count < 2) throw std::invalid_argument("modular mode requires prime_count >= 2");
  std::vector<Integer> dens;
  for (const auto& e : m.entries()) dens.push_back(Integer(e.value.get_den()));
  PrimeSampler sampler(mode.seed, std::move(dens));
  res.exact = false;
  long long best = -1;
  bool agree = true;
  auto rows = m.sparse_rows();
  if ((size_t)m.rows() * (size_t)m.cols() > (size_t)600'000'000)
    throw std::length_error("rank_certified: matrix too large for dense modular elimination");
  for (int t = 0; t < mode.prime_count; ++t) {
    uint64_t p = sampler.next();
    res.primes.push_back(p);
    DenseMod dm(m.rows(), m.cols(), p);
    for (int i = 0; i < m.rows(); ++i)
      for (const auto& [c, v] : rows[i]) dm.at(i, c) = (uint32_t)mod_of(v, dm.barrett());
    long long r = rank_mod_parallel(dm);
    if (best >= 0 && r != best) agree = false;
    best = std::max(best, r);
  }
  res.rank = best;
  res.agreement = agree;
  return res;
}

}  // namespace chenres
