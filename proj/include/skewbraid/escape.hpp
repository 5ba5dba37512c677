#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skewbraid/error.hpp"
#include "skewbraid/skewparam.hpp"

namespace skewbraid {

struct EscapeConfig {
  double alpha = 1.5;     // escape radius is R_lambda^alpha, alpha in (1, d)
  int max_iter = 200;
  int z_samples = 256;    // equispaced points on the unit circle
  double margin = 1.25;   // slack factor on the critical-value bound

  void validate(int d) const {
    if (!(alpha > 1.0 && alpha < static_cast<double>(d)))
      throw Error(ErrorKind::BadInput, "alpha must lie strictly between 1 and d=" + std::to_string(d));
    if (max_iter < 1) throw Error(ErrorKind::BadInput, "max_iter must be >= 1");
    if (z_samples < 1) throw Error(ErrorKind::BadInput, "z_samples must be >= 1");
    if (!(margin >= 1.0)) throw Error(ErrorKind::BadInput, "margin must be >= 1");
  }
};

struct GreenEstimate {
  double value = 0.0;
  bool certified_positive = false;
  std::optional<int> escape_step;
  bool cycled = false;  // non-escaping orbit returned to an earlier state
};

/// Radius beyond which every orbit escapes with at least doubling modulus:
/// max(R^alpha, 2R, 4). For R >= 4 and alpha >= 1.5 this is R^alpha.
inline double escape_threshold(const SkewParam& lambda, double alpha) {
  const double r = escape_norm(lambda);
  return std::max({std::pow(r, alpha), 2.0 * r, 4.0});
}

namespace detail {

// Base points on the unit circle are carried as turns in [0,1) so that dyadic
// grid points iterate exactly under z -> z^d.
struct BasePoint {
  bool on_circle = false;
  double turns = 0.0;
  cd z;

  static BasePoint from(cd z) {
    BasePoint b;
    b.z = z;
    if (std::abs(std::abs(z) - 1.0) <= 1e-12) {
      b.on_circle = true;
      double t = std::arg(z) / (2.0 * std::numbers::pi);
      if (t < 0.0) t += 1.0;
      if (t >= 1.0) t -= 1.0;
      b.turns = t;
    }
    return b;
  }
  static BasePoint from_turns(double t) {
    BasePoint b;
    b.on_circle = true;
    b.turns = t - std::floor(t);
    b.z = std::polar(1.0, 2.0 * std::numbers::pi * b.turns);
    return b;
  }
  BasePoint next(int d) const {
    if (on_circle) return from_turns(turns * d);
    BasePoint b;
    b.z = std::pow(z, d);
    return b;
  }
  cd value() const { return on_circle ? std::polar(1.0, 2.0 * std::numbers::pi * turns) : z; }
};

inline bool finite(cd v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Past this many iterations' worth of d^n, rounding in w has been amplified
// beyond all significant digits and an escape proves nothing.
inline constexpr double kMaxCertifiedScale = 1e12;

inline GreenEstimate green_from(const SkewParam& lambda, BasePoint base, cd w, const EscapeConfig& cfg) {
  const int d = lambda.degree();
  const double threshold = escape_threshold(lambda, cfg.alpha);
  GreenEstimate out;

  std::vector<BasePoint> bases{base};
  std::vector<cd> orbit{w};
  double scale = 1.0;  // d^n

  auto refine = [&](int n, cd wn, BasePoint b) {
    double value = std::log(std::abs(wn)) / scale;
    for (int extra = 0; extra < 2; ++extra) {
      const cd next = fiber_poly(lambda, b.value()).poly.eval(wn);
      if (!finite(next) || next == cd(0.0)) break;
      wn = next;
      b = b.next(d);
      const double s = scale * std::pow(static_cast<double>(d), extra + 1);
      value = std::log(std::abs(wn)) / s;
    }
    out.value = value;
    out.certified_positive = value > 0.0 && scale <= kMaxCertifiedScale;
    out.escape_step = n;
  };

  if (std::abs(w) >= threshold) {
    refine(0, w, base);
    return out;
  }

  cd wn = w;
  BasePoint b = base;
  for (int n = 1; n <= cfg.max_iter; ++n) {
    const cd next = fiber_poly(lambda, b.value()).poly.eval(wn);
    b = b.next(d);
    scale *= d;
    if (!finite(next)) {
      // Overflow past the threshold still certifies escape.
      out.value = std::log(std::abs(wn)) / (scale / d);
      out.certified_positive = out.value > 0.0 && scale / d <= kMaxCertifiedScale;
      out.escape_step = n;
      return out;
    }
    wn = next;
    if (std::abs(wn) >= threshold) {
      refine(n, wn, b);
      return out;
    }
    bases.push_back(b);
    orbit.push_back(wn);
  }

  out.value = std::max(0.0, std::log(std::abs(wn))) / scale;
  out.certified_positive = false;

  const std::size_t last = orbit.size() - 1;
  const double wtol = 1e-9 * std::max(1.0, std::abs(orbit[last]));
  for (std::size_t k = last; k-- > 0;) {
    bool same_base;
    if (bases[k].on_circle && bases[last].on_circle) {
      double dt = std::abs(bases[k].turns - bases[last].turns);
      dt = std::min(dt, 1.0 - dt);
      same_base = dt <= 1e-12;
    } else {
      same_base = std::abs(bases[k].z - bases[last].z) <= 1e-12;
    }
    if (same_base && std::abs(orbit[k] - orbit[last]) <= wtol) {
      out.cycled = true;
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Estimate of the vertical Green function G_{lambda,z}(w): iterate until the
/// orbit passes the escape threshold, then report (1/d^n) log|Q^n| refined by
/// two further iterations.
inline GreenEstimate green_estimate(const SkewParam& lambda, cd z, cd w, const EscapeConfig& cfg = {}) {
  cfg.validate(lambda.degree());
  return detail::green_from(lambda, detail::BasePoint::from(z), w, cfg);
}

/// Random test of the doubling property |q_z(w)| >= 2|w| on |w| = R^alpha.
inline bool escape_doubling_check(const SkewParam& lambda, const EscapeConfig& cfg, int trials,
                                  unsigned seed = 0x5eed) {
  cfg.validate(lambda.degree());
  const double r = escape_norm(lambda);
  if (!(r > 1.0)) throw Error(ErrorKind::BadInput, "doubling check needs R_lambda > 1");
  const double radius = std::pow(r, cfg.alpha);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> turn(0.0, 1.0);
  for (int i = 0; i < trials; ++i) {
    const cd z = std::polar(1.0, 2.0 * std::numbers::pi * turn(rng));
    const cd w = std::polar(radius, 2.0 * std::numbers::pi * turn(rng));
    if (std::abs(fiber_poly(lambda, z).poly.eval(w)) < 2.0 * radius) return false;
  }
  return true;
}

struct OrbitWitness {
  cd z;
  cd c;
  GreenEstimate estimate;
};

enum class ShiftVerdict { InD, NotInD, Undecided };

inline const char* to_string(ShiftVerdict v) {
  switch (v) {
    case ShiftVerdict::InD: return "InD";
    case ShiftVerdict::NotInD: return "NotInD";
    case ShiftVerdict::Undecided: return "Undecided";
  }
  return "?";
}

struct ShiftLocusResult {
  ShiftVerdict verdict = ShiftVerdict::Undecided;
  std::vector<OrbitWitness> witnesses;  // the non-certified critical orbits
  int samples = 0;
};

/// Sampled shift-locus membership: every critical orbit over the z-grid must
/// be certified escaping. A non-escaping orbit that revisits a state gives
/// NotInD; one without such evidence gives Undecided. InD is a grid
/// certificate, not a proof for all z.
inline ShiftLocusResult shift_locus_test(const SkewParam& lambda, const EscapeConfig& cfg = {}) {
  cfg.validate(lambda.degree());
  ShiftLocusResult out;
  out.samples = cfg.z_samples;
  bool bounded = false;
  for (int i = 0; i < cfg.z_samples; ++i) {
    const auto base = detail::BasePoint::from_turns(static_cast<double>(i) / cfg.z_samples);
    for (cd c : critical_points(lambda, base.value())) {
      const GreenEstimate g = detail::green_from(lambda, base, c, cfg);
      if (g.certified_positive) continue;
      bounded = bounded || g.cycled;
      out.witnesses.push_back({base.value(), c, g});
    }
  }
  if (out.witnesses.empty())
    out.verdict = ShiftVerdict::InD;
  else
    out.verdict = bounded ? ShiftVerdict::NotInD : ShiftVerdict::Undecided;
  return out;
}

struct AdmissibilityReport {
  bool admissible = false;
  bool in_E = false;
  bool degenerate = false;
  bool doubling_ok = false;
  double escape_norm = 0.0;
  double min_critical_value = 0.0;  // min |q_z(c)| over the grid
  double required = 0.0;            // margin * 2 * R^alpha
  double slack = 0.0;               // min_critical_value / required
  cd binding_z;
  cd binding_c;
  std::string reason;
};

inline constexpr int kDoublingTrials = 1000;

/// Checks the three conditions that license the monodromy pipeline: [lambda]
/// outside E, the doubling property at R^alpha, and every critical value over
/// the z-grid at least margin * 2 R^alpha in modulus.
inline AdmissibilityReport admissibility_certificate(const SkewParam& lambda, const EscapeConfig& cfg = {}) {
  cfg.validate(lambda.degree());
  AdmissibilityReport rep;
  if (lambda.is_zero()) {
    rep.degenerate = true;
    rep.reason = "lambda = 0: every critical value vanishes";
    return rep;
  }
  rep.escape_norm = escape_norm(lambda);

  try {
    const EMembership e = e_membership(lambda);
    rep.in_E = e.in_E;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Degenerate) throw;
    rep.degenerate = true;
  }

  rep.doubling_ok = rep.escape_norm > 1.0 && escape_doubling_check(lambda, cfg, kDoublingTrials);

  rep.required = cfg.margin * 2.0 * std::pow(rep.escape_norm, cfg.alpha);
  rep.min_critical_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.z_samples; ++i) {
    const cd z = std::polar(1.0, 2.0 * std::numbers::pi * i / cfg.z_samples);
    const FiberPoly q = fiber_poly(lambda, z);
    for (cd c : critical_points(lambda, z)) {
      const double v = std::abs(q.poly.eval(c));
      if (v < rep.min_critical_value) {
        rep.min_critical_value = v;
        rep.binding_z = z;
        rep.binding_c = c;
      }
    }
  }
  rep.slack = rep.required > 0.0 ? rep.min_critical_value / rep.required : 0.0;
  const bool values_ok = rep.min_critical_value >= rep.required && rep.required > 0.0;

  rep.admissible = !rep.degenerate && !rep.in_E && rep.doubling_ok && values_ok;
  if (rep.degenerate)
    rep.reason = "critical-value product vanishes identically";
  else if (rep.in_E)
    rep.reason = "[lambda] lies in E: discriminant has a root on the unit circle";
  else if (!rep.doubling_ok)
    rep.reason = "doubling property fails at radius R^alpha";
  else if (!values_ok)
    rep.reason = "critical values too small: min " + std::to_string(rep.min_critical_value) + " < required " +
                 std::to_string(rep.required);
  return rep;
}

}  // namespace skewbraid
