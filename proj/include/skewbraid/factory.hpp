#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "skewbraid/error.hpp"
#include "skewbraid/escape.hpp"
#include "skewbraid/skewparam.hpp"

namespace skewbraid {

/// d = fixed + sum(cycles). `radii` lists R_0 (only when fixed > 0) followed
/// by R_1..R_m, strictly increasing.
struct CycleSpec {
  int d = 2;
  int fixed = 0;
  std::vector<int> cycles;
  std::vector<double> radii;

  std::size_t radius_count() const { return cycles.size() + (fixed > 0 ? 1 : 0); }

  /// Fills in the default radii 2, 3, 4, ... when none are given.
  CycleSpec& with_default_radii() {
    if (radii.empty())
      for (std::size_t j = 0; j < radius_count(); ++j) radii.push_back(2.0 + static_cast<double>(j));
    return *this;
  }

  void validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::SpecInvalid, why); };
    if (d < 2) fail("degree must be >= 2");
    if (fixed < 0) fail("fixed count must be >= 0");
    int total = fixed;
    for (int c : cycles) {
      if (c < 2) fail("cycle lengths must be >= 2");
      total += c;
    }
    if (total != d) fail("fixed + cycle lengths = " + std::to_string(total) + " but d = " + std::to_string(d));
    if (radii.size() != radius_count())
      fail("expected " + std::to_string(radius_count()) + " radii, found " + std::to_string(radii.size()));
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] > 0.0)) fail("radii must be positive");
      if (i && !(radii[i] > radii[i - 1])) fail("radii must be strictly increasing");
    }
  }

  /// Requested cycle type of S_q, non-increasing.
  std::vector<int> cycle_type() const {
    std::vector<int> t = cycles;
    t.insert(t.end(), static_cast<std::size_t>(fixed), 1);
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
  }
};

namespace detail {

// Bivariate polynomial, coefficient [j][k] of w^j z^k, sized (d+1) x (d+1).
using Bivariate = std::vector<std::vector<cd>>;

inline Bivariate bivariate_mul(const Bivariate& a, const Bivariate& b) {
  const std::size_t n = a.size();
  Bivariate out(n, std::vector<cd>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == cd(0.0)) continue;
      for (std::size_t j = 0; i + j < n; ++j)
        for (std::size_t l = 0; k + l < n; ++l) out[i + j][k + l] += a[i][k] * b[j][l];
    }
  return out;
}

// p(w + c z, z).
inline Bivariate bivariate_shift(const Bivariate& p, cd c) {
  const std::size_t n = p.size();
  Bivariate out(n, std::vector<cd>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (p[a][b] == cd(0.0)) continue;
      double binom = 1.0;
      for (std::size_t i = 0; i <= a; ++i) {
        // C(a, i) w^i (c z)^{a-i} z^b
        if (i) binom = binom * static_cast<double>(a - i + 1) / static_cast<double>(i);
        const std::size_t zdeg = a - i + b;
        if (zdeg >= n) throw Error(ErrorKind::NormalizationFailed, "shift exceeds the degree bound");
        out[i][zdeg] += p[a][b] * binom * std::pow(c, static_cast<int>(a - i));
      }
    }
  return out;
}

}  // namespace detail

/// Expanded product (w^fixed - R_0^fixed z^fixed) * prod_j (w^{d_j} - R_j^{d_j} z),
/// with the w^{d-1} term removed by w -> w + R_0 z / d when fixed = 1.
inline std::vector<std::vector<cd>> cycle_type_expansion(const CycleSpec& spec) {
  spec.validate();
  const int d = spec.d;
  const auto n = static_cast<std::size_t>(d + 1);
  detail::Bivariate p(n, std::vector<cd>(n, 0.0));
  p[0][0] = 1.0;
  std::size_t r = 0;
  if (spec.fixed > 0) {
    const double r0 = spec.radii[r++];
    detail::Bivariate f(n, std::vector<cd>(n, 0.0));
    f[spec.fixed][0] = 1.0;
    f[0][spec.fixed] = -std::pow(r0, spec.fixed);
    p = detail::bivariate_mul(p, f);
  }
  for (int len : spec.cycles) {
    const double rj = spec.radii[r++];
    detail::Bivariate f(n, std::vector<cd>(n, 0.0));
    f[len][0] = 1.0;
    f[0][1] = -std::pow(rj, len);
    p = detail::bivariate_mul(p, f);
  }
  if (spec.fixed == 1) p = detail::bivariate_shift(p, spec.radii[0] / d);

  double scale = 0.0;
  for (const auto& row : p)
    for (cd v : row) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(p[d - 1][k]) > 1e-12 * scale)
      throw Error(ErrorKind::NormalizationFailed, "w^{d-1} coefficient does not vanish");
    p[d - 1][k] = 0.0;
  }
  for (int j = 0; j <= d; ++j)
    for (int k = d - j + 1; k <= d; ++k)
      if (std::abs(p[j][k]) > 1e-12 * scale)
        throw Error(ErrorKind::NormalizationFailed, "coefficient of w^" + std::to_string(j) + " has z-degree > " +
                                                        std::to_string(d - j));
  return p;
}

/// Parameter realizing the requested cycle type of S_q: entries are principal
/// (d-j)-th roots of the expanded coefficients, multiplied by `scale`.
inline SkewParam cycle_type_params(const CycleSpec& spec, double scale = 1.0) {
  if (!(scale > 0.0)) throw Error(ErrorKind::SpecInvalid, "scale must be positive");
  const auto p = cycle_type_expansion(spec);
  const int d = spec.d;
  std::vector<std::vector<cd>> rows;
  for (int j = 0; j <= d - 2; ++j) {
    std::vector<cd> row;
    for (int k = 0; k <= d - j; ++k) {
      const cd c = p[j][k];
      row.push_back(c == cd(0.0) ? cd(0.0) : scale * std::pow(c, 1.0 / (d - j)));
    }
    rows.push_back(std::move(row));
  }
  return SkewParam(d, std::move(rows));
}

struct ScaledParam {
  SkewParam lambda;
  double scale = 1.0;
  AdmissibilityReport report;
};

inline constexpr int kMaxAutoScaleDoublings = 20;

/// Smallest power-of-two scale whose parameter passes the admissibility
/// certificate.
inline ScaledParam auto_scale(const std::function<SkewParam(double)>& make, const EscapeConfig& cfg = {}) {
  double t = 1.0;
  for (int i = 0; i <= kMaxAutoScaleDoublings; ++i, t *= 2.0) {
    SkewParam l = make(t);
    AdmissibilityReport rep = admissibility_certificate(l, cfg);
    if (rep.admissible) return {std::move(l), t, std::move(rep)};
    if (rep.in_E || rep.degenerate)
      throw Error(ErrorKind::NotAdmissible, "no scale helps: " + rep.reason);
  }
  throw Error(ErrorKind::NotAdmissible, "not admissible up to scale 2^" + std::to_string(kMaxAutoScaleDoublings));
}

inline ScaledParam cycle_type_params_auto(const CycleSpec& spec, const EscapeConfig& cfg = {}) {
  return auto_scale([&](double t) { return cycle_type_params(spec, t); }, cfg);
}

/// All specs fixed + cycles = d with cycles >= 2 in non-increasing order, one
/// per conjugacy class of the symmetric group, default radii.
inline std::vector<CycleSpec> cycle_type_specs(int d) {
  if (d < 2) throw Error(ErrorKind::BadDegree, "degree must be >= 2");
  std::vector<CycleSpec> out;
  std::vector<int> parts;
  std::function<void(int, int, int)> rec = [&](int fixed, int remaining, int max_part) {
    if (remaining == 0) {
      CycleSpec s{d, fixed, parts, {}};
      out.push_back(s.with_default_radii());
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 2; --p) {
      parts.push_back(p);
      rec(fixed, remaining - p, p);
      parts.pop_back();
    }
  };
  for (int fixed = d; fixed >= 0; --fixed) rec(fixed, d - fixed, d);
  return out;
}

/// Number of roots of c^2 + b^2 z + a^2 z^2 in the open unit disk, with
/// multiplicity.
inline int quad_s(cd a, cd b, cd c) {
  const cd A = a * a, B = b * b, C = c * c;
  if (A == cd(0.0) && B == cd(0.0) && C == cd(0.0)) throw Error(ErrorKind::AllZero, "a = b = c = 0");
  std::vector<cd> zs;
  if (A != cd(0.0)) {
    const cd disc = std::sqrt(B * B - 4.0 * A * C);
    // pick the sign that avoids cancellation, then use Vieta for the other root
    const cd q = -0.5 * (B + (std::real(std::conj(B) * disc) >= 0.0 ? disc : -disc));
    if (q == cd(0.0)) {
      zs = {0.0, 0.0};
    } else {
      zs = {q / A, C / q};
    }
  } else if (B != cd(0.0)) {
    zs = {-C / B};
  }
  int s = 0;
  for (cd z : zs) {
    if (std::abs(std::abs(z) - 1.0) <= 1e-9)
      throw Error(ErrorKind::BoundaryRoot, "root on the unit circle at z = (" + std::to_string(z.real()) + ", " +
                                               std::to_string(z.imag()) + ")");
    if (std::abs(z) < 1.0) ++s;
  }
  return s;
}

struct PresetInfo {
  std::string name;
  int d = 0;
  std::vector<cd> flat;  // before scaling
  double scale = 1.0;
  std::string description;
};

inline const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = [] {
    const cd i4(0.0, 4.0);
    std::vector<PresetInfo> base{
        {"d3-ex1", 3, {0, 0, 0, -2, 0, 0, 0}, 1.0, "w^3 - 8z^3, S_q = Id"},
        {"d3-ex2", 3, {0, -2, 0, 0, 0, 0, 0}, 1.0, "w^3 - 8z, S_q = (1 2 3)"},
        {"d3-ex3", 3, {0, 0, 0, 0, 0, i4, 0}, 1.0, "w^3 - 16zw, S_q = (2 3)"},
        {"d2-s0", 2, {1, 0, 0}, 1.0, "w^2 + 1, s = 0"},
        {"d2-s1", 2, {0, 1, 0}, 1.0, "w^2 + z, s = 1"},
        {"d2-s2", 2, {0, 0, 1}, 1.0, "w^2 + z^2, s = 2"},
    };
    std::vector<PresetInfo> out;
    for (const auto& p : base) {
      out.push_back(p);
      PresetInfo adm = p;
      adm.name += "-adm";
      adm.scale = p.d == 3 ? 4.0 : 16.0;
      adm.description += ", scaled by " + std::to_string(static_cast<int>(adm.scale));
      out.push_back(adm);
    }
    return out;
  }();
  return catalog;
}

inline std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : preset_catalog()) names.push_back(p.name);
  return names;
}

inline const PresetInfo& preset_info(const std::string& name) {
  for (const auto& p : preset_catalog())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : preset_catalog()) known += (known.empty() ? "" : ", ") + p.name;
  throw Error(ErrorKind::UnknownPreset, "unknown preset '" + name + "' (known: " + known + ")");
}

inline SkewParam preset(const std::string& name) {
  const PresetInfo& p = preset_info(name);
  return SkewParam::from_flat(p.d, p.flat).scaled(p.scale);
}

}  // namespace skewbraid
