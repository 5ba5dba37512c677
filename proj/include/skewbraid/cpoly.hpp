#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "skewbraid/error.hpp"

namespace skewbraid {

/// Dense univariate polynomial with complex coefficients, stored in ascending
/// powers. Exact trailing zeros are stripped on construction; `trim` applies a
/// relative drop tolerance for results that carry floating noise.
class CPoly {
 public:
  static constexpr double kDropTolerance = 1e-12;

  CPoly() : c_{cd(0.0)} {}
  explicit CPoly(std::vector<cd> coeffs) : c_(std::move(coeffs)) { strip_exact(); }
  CPoly(std::initializer_list<cd> coeffs) : c_(coeffs) { strip_exact(); }

  static CPoly constant(cd v) { return CPoly({v}); }
  static CPoly monomial(cd coeff, std::size_t power) {
    std::vector<cd> c(power + 1, cd(0.0));
    c[power] = coeff;
    return CPoly(std::move(c));
  }
  /// lead * prod (w - r) over the multiset `roots`.
  static CPoly from_roots(std::span<const cd> roots, cd lead = 1.0) {
    std::vector<cd> c{lead};
    for (cd r : roots) {
      std::vector<cd> next(c.size() + 1, cd(0.0));
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= r * c[k];
      }
      c = std::move(next);
    }
    return CPoly(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.size() == 1 && c_[0] == cd(0.0); }
  const std::vector<cd>& coeffs() const noexcept { return c_; }
  cd operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : cd(0.0); }
  cd leading() const noexcept { return c_.back(); }

  double max_coeff_abs() const noexcept {
    double m = 0.0;
    for (cd v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Drops trailing coefficients whose magnitude is at most rel * max|coeff|.
  CPoly trimmed(double rel = kDropTolerance) const {
    const double cut = rel * max_coeff_abs();
    std::vector<cd> c = c_;
    while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
    return CPoly(std::move(c));
  }

  cd eval(cd x) const noexcept {
    cd v = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) v = v * x + c_[k];
    return v;
  }

  /// Horner for p and p' in one pass.
  std::pair<cd, cd> eval_with_derivative(cd x) const noexcept {
    cd v = c_.back();
    cd dv = 0.0;
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
      dv = dv * x + v;
      v = v * x + c_[k];
    }
    return {v, dv};
  }

  /// sum |c_k| |x|^k, the scale used for backward-error residual tests.
  double abs_eval(double r) const noexcept {
    double v = std::abs(c_.back());
    for (std::size_t k = c_.size() - 1; k-- > 0;) v = v * r + std::abs(c_[k]);
    return v;
  }

  CPoly derivative() const {
    if (c_.size() == 1) return CPoly();
    std::vector<cd> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return CPoly(std::move(d));
  }

  friend CPoly operator+(const CPoly& a, const CPoly& b) {
    std::vector<cd> c(std::max(a.c_.size(), b.c_.size()), cd(0.0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return CPoly(std::move(c));
  }
  friend CPoly operator-(const CPoly& a, const CPoly& b) { return a + b * cd(-1.0); }
  friend CPoly operator*(const CPoly& a, cd s) {
    std::vector<cd> c = a.c_;
    for (cd& v : c) v *= s;
    return CPoly(std::move(c));
  }
  friend CPoly operator*(const CPoly& a, const CPoly& b) {
    std::vector<cd> c(a.c_.size() + b.c_.size() - 1, cd(0.0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return CPoly(std::move(c));
  }

  /// this(inner(w)), by Horner on polynomials.
  CPoly compose(const CPoly& inner) const {
    CPoly v = CPoly::constant(c_.back());
    for (std::size_t k = c_.size() - 1; k-- > 0;) v = v * inner + CPoly::constant(c_[k]);
    return v;
  }

 private:
  void strip_exact() {
    if (c_.empty()) c_.push_back(cd(0.0));
    while (c_.size() > 1 && c_.back() == cd(0.0)) c_.pop_back();
  }

  std::vector<cd> c_;
};

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 500;
};

/// All deg(p) roots with multiplicity, by Aberth-Ehrlich simultaneous iteration
/// started on a perturbed circle of Fujiwara radius, followed by one Newton
/// polish per root. A root is accepted once |p(x)| <= tol * sum|c_k||x|^k.
/// Clustered roots are reported individually (no deflation).
inline std::vector<cd> roots(const CPoly& p, RootOptions opt = {}) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorKind::DegreeZero, "root finding needs degree >= 1");
  const auto& c = p.coeffs();
  const cd lead = c[n];

  if (n == 1) return {-c[0] / lead};

  double fujiwara = 0.0;
  for (int k = 1; k <= n; ++k) {
    double ratio = std::abs(c[n - k] / lead);
    if (k == n) ratio *= 0.5;
    fujiwara = std::max(fujiwara, std::pow(ratio, 1.0 / k));
  }
  const double radius = std::max(2.0 * fujiwara, 1e-3);

  std::vector<cd> z(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    const double r = radius * (1.0 + 0.01 * ((k * 7919) % 13) / 13.0);
    z[k] = std::polar(r, angle);
  }

  auto accepted = [&](cd x, cd v) { return std::abs(v) <= opt.tol * p.abs_eval(std::abs(x)); };

  std::vector<bool> done(n, false);
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      auto [v, dv] = p.eval_with_derivative(z[k]);
      if (accepted(z[k], v)) {
        done[k] = true;
        continue;
      }
      all_done = false;
      cd repulsion = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        cd diff = z[k] - z[j];
        if (diff == cd(0.0)) diff = cd(1e-14 * (1.0 + std::abs(z[k])), 0.0);
        repulsion += 1.0 / diff;
      }
      cd step;
      if (dv == cd(0.0)) {
        step = cd(1e-8 * (1.0 + std::abs(z[k])), 1e-8);
      } else {
        const cd ratio = v / dv;
        step = ratio / (1.0 - ratio * repulsion);
      }
      z[k] -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z[k])) done[k] = true;
    }
    if (all_done) break;
  }
  if (iter == opt.max_iter) {
    bool ok = true;
    for (int k = 0; k < n; ++k) ok = ok && accepted(z[k], p.eval(z[k]));
    if (!ok) {
      throw NonConvergenceError("Aberth iteration did not converge in " + std::to_string(opt.max_iter) +
                                    " iterations",
                                opt.max_iter, z);
    }
  }

  for (cd& x : z) {
    auto [v, dv] = p.eval_with_derivative(x);
    if (dv == cd(0.0)) continue;
    const cd polished = x - v / dv;
    if (std::abs(p.eval(polished)) <= std::abs(v)) x = polished;
  }
  return z;
}

/// lc(f)^{deg g} * prod_{f(a)=0} g(a), evaluated through the roots of f. With
/// this convention the value coincides with the Sylvester determinant below.
inline cd resultant_product(const CPoly& f, const CPoly& g, RootOptions opt = {}) {
  if (f.degree() < 1) throw Error(ErrorKind::BadInput, "resultant_product needs deg f >= 1");
  const auto rs = roots(f, opt);
  cd prod = std::pow(f.leading(), g.degree());
  for (cd r : rs) prod *= g.eval(r);
  return prod;
}

/// Same as resultant_product without the leading-coefficient factor:
/// prod_{f(a)=0} g(a).
inline cd root_product(const CPoly& f, const CPoly& g, RootOptions opt = {}) {
  if (f.degree() < 1) throw Error(ErrorKind::BadInput, "root_product needs deg f >= 1");
  cd prod = 1.0;
  for (cd r : roots(f, opt)) prod *= g.eval(r);
  return prod;
}

/// Determinant of the (deg f + deg g) Sylvester matrix: deg g shifted rows of
/// f's coefficients (leading first) on top of deg f shifted rows of g's.
/// Res(w - a, w - b) = a - b under this layout.
inline cd sylvester_resultant(const CPoly& f, const CPoly& g) {
  const int m = f.degree();
  const int n = g.degree();
  if (m < 1 || n < 1) throw Error(ErrorKind::BadInput, "sylvester_resultant needs deg f, deg g >= 1");
  const int size = m + n;
  std::vector<cd> a(static_cast<std::size_t>(size) * size, cd(0.0));
  auto at = [&](int r, int col) -> cd& { return a[static_cast<std::size_t>(r) * size + col]; };
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) at(r, r + k) = f[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) at(n + r, r + k) = g[n - k];

  cd det = 1.0;
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    for (int r = col + 1; r < size; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (at(pivot, col) == cd(0.0)) return 0.0;
    if (pivot != col) {
      for (int k = 0; k < size; ++k) std::swap(at(pivot, k), at(col, k));
      det = -det;
    }
    det *= at(col, col);
    for (int r = col + 1; r < size; ++r) {
      const cd factor = at(r, col) / at(col, col);
      if (factor == cd(0.0)) continue;
      for (int k = col; k < size; ++k) at(r, k) -= factor * at(col, k);
    }
  }
  return det;
}

namespace detail {

// In-place iterative radix-2 FFT; sign = +1 computes sum x_k e^{+2 pi i jk/N}.
inline void fft(std::vector<cd>& x, int sign) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cd w = std::polar(1.0, ang * static_cast<double>(k));
        const cd u = x[i + k];
        const cd v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
      }
    }
  }
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace detail

/// Recovers the polynomial whose values at e^{2 pi i k/N} are `samples`
/// (true degree < N). Trailing coefficients below 1e-9 * max|sample| are
/// dropped.
inline CPoly interpolate_at_roots_of_unity(std::span<const cd> samples, std::size_t n) {
  if (samples.size() != n)
    throw Error(ErrorKind::LengthMismatch,
                "expected " + std::to_string(n) + " samples, found " + std::to_string(samples.size()));
  if (!detail::is_power_of_two(n)) throw Error(ErrorKind::BadInput, "sample count must be a power of two");
  std::vector<cd> c(samples.begin(), samples.end());
  double scale = 0.0;
  for (cd s : c) scale = std::max(scale, std::abs(s));
  detail::fft(c, -1);
  for (cd& v : c) v /= static_cast<double>(n);
  const double cut = 1e-9 * scale;
  while (c.size() > 1 && std::abs(c.back()) < cut) c.pop_back();
  if (c.size() == 1 && std::abs(c[0]) < cut) c[0] = 0.0;
  return CPoly(std::move(c));
}

/// Values of p at the N-th roots of unity e^{2 pi i k/N}.
inline std::vector<cd> sample_at_roots_of_unity(const CPoly& p, std::size_t n) {
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = p.eval(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
  return out;
}

}  // namespace skewbraid
