#pragma once

#include <map>
#include <vector>

#include "chenres/ratla.hpp"

namespace chenres {

// Strictly increasing generator-index tuple, 1-based entries.
using IndexTuple = std::vector<int>;

// Lexicographic bijection between increasing tuples of length `degree` in
// 1..n and 0-based column indices.
class GradedBasisIndex {
 public:
  GradedBasisIndex(int n, int degree);

  int n() const { return n_; }
  int degree() const { return degree_; }
  long long size() const { return size_; }
  long long rank(const IndexTuple& t) const;
  IndexTuple unrank(long long idx) const;

 private:
  int n_, degree_;
  long long size_;
};

// Sparse element of the degree-d piece of the exterior algebra on n
// generators over Q. Degrees 0..3 only.
class ExteriorVector {
 public:
  ExteriorVector() = default;
  ExteriorVector(int n, int degree);

  static ExteriorVector generator(int n, int i);  // e_i, 1-based
  static ExteriorVector monomial(int n, const IndexTuple& t, const Rational& c = Rational(1));

  int n() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<IndexTuple, Rational>& coeffs() const { return coeffs_; }

  void add_term(const IndexTuple& t, const Rational& c);
  Rational coeff(const IndexTuple& t) const;

  ExteriorVector operator+(const ExteriorVector& o) const;
  ExteriorVector operator-(const ExteriorVector& o) const;
  ExteriorVector operator*(const Rational& c) const;
  bool operator==(const ExteriorVector& o) const {
    return n_ == o.n_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
  }

  std::vector<Rational> to_dense(const GradedBasisIndex& idx) const;
  static ExteriorVector from_dense(int n, int degree, const std::vector<Rational>& v);

  std::string str(const std::vector<std::string>* gen_labels = nullptr) const;

 private:
  int n_ = 0;
  int degree_ = 0;
  std::map<IndexTuple, Rational> coeffs_;
};

ExteriorVector wedge(const ExteriorVector& u, const ExteriorVector& v);

// Orlik-Solomon boundary: linear, with del(e_i) = 1 and the graded Leibniz
// rule del(uv) = (del u) v + (-1)^|u| u (del v).
ExteriorVector os_boundary(const ExteriorVector& u);

// Degree-3 piece of the two-sided ideal generated by i2 (plus optional extra
// degree-3 generators): canonical span of { e_i ^ g : g in basis(i2) } and
// extra3 inside E^3.
Subspace ideal_degree3(int n, const Subspace& i2, const std::vector<ExteriorVector>& extra3 = {});

}  // namespace chenres
