#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "skewbraid/cpoly.hpp"
#include "skewbraid/error.hpp"

namespace skewbraid {

/// Number of complex parameters of the degree-d family, (d-1)(d+4)/2.
inline int dimension(int d) {
  if (d < 2) throw Error(ErrorKind::BadDegree, "degree must be >= 2, got " + std::to_string(d));
  return (d - 1) * (d + 4) / 2;
}

/// Parameter lambda of the skew-product family f(z,w) = (z^d, q_{lambda,z}(w)).
///
/// Row j (j = 0..d-2) holds the d-j+1 entries a_{j,k}, k = 0..d-j. The fiber
/// coefficient of w^j is A_j(z) = sum_k a_{j,k}^{d-j} z^k, so the stored
/// entries are homogeneous of weight one: scaling lambda by t scales the roots
/// of every fiber polynomial by t.
class SkewParam {
 public:
  SkewParam() = default;

  SkewParam(int d, std::vector<std::vector<cd>> rows) : d_(d), rows_(std::move(rows)) { validate(); }

  static SkewParam zero(int d) {
    dimension(d);
    std::vector<std::vector<cd>> rows;
    for (int j = 0; j <= d - 2; ++j) rows.emplace_back(static_cast<std::size_t>(d - j + 1), cd(0.0));
    return SkewParam(d, std::move(rows));
  }

  /// Flat layout (a_{0,0}, ..., a_{0,d}, a_{1,0}, ..., a_{d-2,2}).
  static SkewParam from_flat(int d, const std::vector<cd>& flat) {
    const int dim = dimension(d);
    if (static_cast<int>(flat.size()) != dim)
      throw Error(ErrorKind::LengthMismatch, "degree " + std::to_string(d) + " expects " + std::to_string(dim) +
                                                 " entries, found " + std::to_string(flat.size()));
    SkewParam p = zero(d);
    std::size_t i = 0;
    for (auto& row : p.rows_)
      for (cd& v : row) v = flat[i++];
    return p;
  }

  int degree() const noexcept { return d_; }
  const std::vector<std::vector<cd>>& rows() const noexcept { return rows_; }
  cd entry(int j, int k) const { return rows_.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(k)); }

  std::vector<cd> flat() const {
    std::vector<cd> out;
    for (const auto& row : rows_) out.insert(out.end(), row.begin(), row.end());
    return out;
  }

  bool is_zero() const noexcept {
    for (const auto& row : rows_)
      for (cd v : row)
        if (v != cd(0.0)) return false;
    return true;
  }

  SkewParam scaled(cd t) const {
    SkewParam p = *this;
    for (auto& row : p.rows_)
      for (cd& v : row) v *= t;
    return p;
  }

  friend bool operator==(const SkewParam&, const SkewParam&) = default;

 private:
  void validate() const {
    dimension(d_);
    if (static_cast<int>(rows_.size()) != d_ - 1)
      throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(d_ - 1) + " rows, found " +
                                                 std::to_string(rows_.size()));
    for (int j = 0; j <= d_ - 2; ++j) {
      const auto expected = static_cast<std::size_t>(d_ - j + 1);
      if (rows_[j].size() != expected)
        throw Error(ErrorKind::LengthMismatch, "row " + std::to_string(j) + " expects " + std::to_string(expected) +
                                                   " entries, found " + std::to_string(rows_[j].size()));
    }
  }

  int d_ = 2;
  std::vector<std::vector<cd>> rows_{{cd(0.0), cd(0.0), cd(0.0)}};
};

/// q_{lambda,z} as a polynomial in w, tagged with its base point.
struct FiberPoly {
  cd z;
  CPoly poly;
};

/// A_j(z) for j = 0..d-2.
inline std::vector<cd> fiber_coefficients(const SkewParam& lambda, cd z) {
  const int d = lambda.degree();
  std::vector<cd> a(static_cast<std::size_t>(d - 1));
  for (int j = 0; j <= d - 2; ++j) {
    const auto& row = lambda.rows()[j];
    cd v = 0.0;
    for (std::size_t k = row.size(); k-- > 0;) v = v * z + std::pow(row[k], d - j);
    a[j] = v;
  }
  return a;
}

/// w^d + sum_{j<=d-2} A_j(z) w^j. The w^{d-1} coefficient is exactly zero.
inline FiberPoly fiber_poly(const SkewParam& lambda, cd z) {
  const int d = lambda.degree();
  std::vector<cd> c(static_cast<std::size_t>(d + 1), cd(0.0));
  const auto a = fiber_coefficients(lambda, z);
  for (int j = 0; j <= d - 2; ++j) c[j] = a[j];
  c[d] = 1.0;
  return {z, CPoly(std::move(c))};
}

/// Q^n_{lambda,z}(w) = q_{z_{n-1}} o ... o q_{z_0}(w) with z_k = z^{d^k}.
/// Throws OverflowError naming the first step that leaves the floating range.
inline cd iterate_Q(const SkewParam& lambda, cd z, cd w, int n) {
  if (n < 0) throw Error(ErrorKind::BadInput, "iteration count must be >= 0");
  const int d = lambda.degree();
  cd zk = z;
  for (int k = 0; k < n; ++k) {
    const cd next = fiber_poly(lambda, zk).poly.eval(w);
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) throw OverflowError(k + 1, w);
    w = next;
    zk = std::pow(zk, d);
  }
  return w;
}

/// R_lambda = sum_j (sum_k |a_{j,k}|^{d-j})^{1/(d-j)}. For the base z^d the
/// supremum over the unit circle is attained everywhere.
inline double escape_norm(const SkewParam& lambda) {
  const int d = lambda.degree();
  double r = 0.0;
  for (int j = 0; j <= d - 2; ++j) {
    double s = 0.0;
    for (cd v : lambda.rows()[j]) s += std::pow(std::abs(v), d - j);
    r += std::pow(s, 1.0 / (d - j));
  }
  return r;
}

/// Critical points of q_{lambda,z}: the d-1 roots of its w-derivative.
inline std::vector<cd> critical_points(const SkewParam& lambda, cd z, RootOptions opt = {}) {
  const CPoly dq = fiber_poly(lambda, z).poly.derivative();
  if (dq.degree() == 1) return {-dq[0] / dq[1]};
  // q' = d w^{d-1} + ...; when every lower coefficient vanishes the root is 0
  // with full multiplicity and Aberth would only approach it linearly.
  bool monomial = true;
  for (int k = 0; k < dq.degree(); ++k) monomial = monomial && dq[k] == cd(0.0);
  if (monomial) return std::vector<cd>(static_cast<std::size_t>(dq.degree()), cd(0.0));
  return roots(dq, opt);
}

/// prod over critical points c of q_{lambda,z}(c); the discriminant curve is
/// its zero set in z.
inline cd critical_value_product(const SkewParam& lambda, cd z, RootOptions opt = {}) {
  const FiberPoly q = fiber_poly(lambda, z);
  cd prod = 1.0;
  for (cd c : critical_points(lambda, z, opt)) prod *= q.poly.eval(c);
  return prod;
}

struct Discriminant {
  CPoly poly;
  bool degenerate = false;  // product vanishes identically in z
  std::size_t samples = 0;
};

inline std::size_t discriminant_sample_count(int d) {
  const std::size_t bound = static_cast<std::size_t>(d) * (d - 1) * d + 1;
  std::size_t n = 1;
  while (n <= bound) n <<= 1;
  return n;
}

/// z -> P(lambda, z), reconstructed from the critical-value product at N
/// roots of unity. The product vanishes identically when, at every sample,
/// some critical value is zero up to roundoff in its own evaluation; this is
/// reported through `degenerate`.
inline Discriminant discriminant_in_z(const SkewParam& lambda) {
  const int d = lambda.degree();
  const std::size_t n = discriminant_sample_count(d);
  std::vector<cd> samples(n);
  double worst = 0.0;  // max over samples of the smallest relative critical value
  for (std::size_t k = 0; k < n; ++k) {
    const cd z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    const FiberPoly q = fiber_poly(lambda, z);
    cd prod = 1.0;
    double rel = std::numeric_limits<double>::infinity();
    for (cd c : critical_points(lambda, z)) {
      const cd v = q.poly.eval(c);
      prod *= v;
      const double size = q.poly.abs_eval(std::abs(c));
      rel = std::min(rel, size > 0.0 ? std::abs(v) / size : 0.0);
    }
    samples[k] = prod;
    worst = std::max(worst, rel);
  }
  Discriminant out;
  out.samples = n;
  if (worst <= 1e-9) {
    out.poly = CPoly();
    out.degenerate = true;
    return out;
  }
  out.poly = interpolate_at_roots_of_unity(samples, n);
  return out;
}

struct EMembership {
  bool in_E = false;
  std::vector<cd> circle_roots;  // roots with ||z| - 1| <= tol
  std::vector<cd> all_roots;
  CPoly discriminant;
};

/// Decides whether the direction [lambda] lies in E, i.e. whether P(lambda, .)
/// has a zero on the unit circle.
inline EMembership e_membership(const SkewParam& lambda, double tol = 1e-6) {
  if (lambda.is_zero()) throw Error(ErrorKind::BadInput, "e_membership needs lambda != 0");
  const Discriminant disc = discriminant_in_z(lambda);
  if (disc.degenerate) throw Error(ErrorKind::Degenerate, "critical-value product vanishes identically");
  EMembership out;
  out.discriminant = disc.poly;
  if (disc.poly.degree() < 1) return out;
  out.all_roots = roots(disc.poly);
  for (cd r : out.all_roots) {
    if (std::abs(std::abs(r) - 1.0) <= tol) out.circle_roots.push_back(r);
  }
  out.in_E = !out.circle_roots.empty();
  return out;
}

/// Q^n_{lambda,z} expanded in w by composing the fiber polynomials.
inline CPoly iterate_poly(const SkewParam& lambda, cd z, int n) {
  const int d = lambda.degree();
  CPoly acc = CPoly::monomial(1.0, 1);
  cd zk = z;
  for (int k = 0; k < n; ++k) {
    acc = fiber_poly(lambda, zk).poly.compose(acc);
    zk = std::pow(zk, d);
  }
  return acc;
}

inline constexpr int kMaxTreeSize = 64;

/// prod over critical points c of q_{lambda,z} of (Q^n_{lambda,z}(c) - c):
/// vanishes exactly when some critical point is n-periodic along the base
/// orbit. Uses the same critical-value normalization as the discriminant; the
/// Sylvester resultant Res(Q^n - w, q') differs from it by
/// (-1)^{d^n (d-1)} d^{d^n}.
inline cd per_resultant(const SkewParam& lambda, cd z, int n) {
  if (n < 1) throw Error(ErrorKind::BadInput, "period must be >= 1 (Q^0 - w vanishes identically)");
  const int d = lambda.degree();
  double size = std::pow(static_cast<double>(d), n);
  if (size > kMaxTreeSize)
    throw Error(ErrorKind::SizeGuard, "d^n = " + std::to_string(static_cast<long long>(size)) + " exceeds " +
                                          std::to_string(kMaxTreeSize));
  const CPoly g = iterate_poly(lambda, z, n) - CPoly::monomial(1.0, 1);
  cd prod = 1.0;
  for (cd c : critical_points(lambda, z)) prod *= g.eval(c);
  return prod;
}

}  // namespace skewbraid
