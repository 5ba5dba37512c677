#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewbraid/cpoly.hpp"
#include "skewbraid/error.hpp"
#include "skewbraid/escape.hpp"
#include "skewbraid/perm.hpp"
#include "skewbraid/skewparam.hpp"

namespace skewbraid {

struct TrackConfig {
  int steps = 1024;        // base number of uniform steps over [0,1]
  double tol = 1e-10;      // Newton tolerance, relative to max(1,|w|)
  int max_halvings = 12;   // local step refinement limit
  bool require_admissible = true;
  EscapeConfig escape;
};

/// One tracked root. Samples share the time grid of their BraidGeometry.
struct Strand {
  std::vector<double> t;
  std::vector<cd> w;
  int start_index = 0;
  int end_index = 0;
};

/// The numerical closed braid: d^n strands over z = e^{2 pi i m t}.
struct BraidGeometry {
  int d = 0;
  int level = 1;
  int turns = 1;
  std::vector<Strand> strands;
  Perm permutation;          // start label -> end label
  std::vector<cd> base_roots;  // labelled roots over z = 1
};

/// Word a_n ... a_1 over {1..d}, stored in written order (a_n first).
using Word = std::vector<int>;

inline std::string format_word(const Word& w) {
  const bool wide = std::any_of(w.begin(), w.end(), [](int a) { return a >= 10; });
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (wide && i ? "," : "") + std::to_string(w[i]);
  return s;
}

/// Lexicographic index of a word, a_n most significant.
inline int word_index(const Word& w, int d) {
  int idx = 0;
  for (int a : w) idx = idx * d + (a - 1);
  return idx;
}

inline Word word_from_index(int idx, int d, int n) {
  Word w(static_cast<std::size_t>(n));
  for (int p = n - 1; p >= 0; --p) {
    w[p] = idx % d + 1;
    idx /= d;
  }
  return w;
}

namespace detail {

inline double min_separation(const std::vector<cd>& ws) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j) m = std::min(m, std::abs(ws[i] - ws[j]));
  return m;
}

// Value and w-derivative of q_{z_{n-1}} o ... o q_{z_0} by the chain rule.
inline std::pair<cd, cd> eval_chain(const std::vector<CPoly>& chain, cd w) {
  cd v = w;
  cd dv = 1.0;
  for (const CPoly& q : chain) {
    auto [qv, dq] = q.eval_with_derivative(v);
    dv *= dq;
    v = qv;
  }
  return {v, dv};
}

inline std::vector<CPoly> fiber_chain(const SkewParam& lambda, cd z, int n) {
  std::vector<CPoly> chain;
  chain.reserve(static_cast<std::size_t>(n));
  cd zk = z;
  for (int k = 0; k < n; ++k) {
    chain.push_back(fiber_poly(lambda, zk).poly);
    zk = std::pow(zk, lambda.degree());
  }
  return chain;
}

// Newton on a (value, derivative) system until |dw| <= tol * max(1,|w|).
template <class System>
std::optional<cd> newton(const System& sys, cd w, double tol, int max_iter = 60) {
  for (int it = 0; it < max_iter; ++it) {
    auto [v, dv] = sys(w);
    if (dv == cd(0.0) || !finite(v) || !finite(dv)) return std::nullopt;
    const cd step = v / dv;
    w -= step;
    if (!finite(w)) return std::nullopt;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(w))) return w;
  }
  return std::nullopt;
}

struct Continuation {
  std::vector<double> s;
  std::vector<std::vector<cd>> w;  // w[strand][sample]
};

// Continues every root of H(s, .) from s = 0 to s = 1. `make_system(s)`
// returns a callable w -> (H, dH/dw). The predictor is the previous root; a
// step is rejected and halved when any Newton correction exceeds a quarter of
// the current minimum pairwise distance.
template <class MakeSystem>
Continuation continue_roots(const std::vector<cd>& start, MakeSystem&& make_system, int steps, double tol,
                            int max_halvings, bool record) {
  const std::size_t n = start.size();
  Continuation out;
  out.w.assign(n, {});
  const double guard = 10.0 * tol;
  if (n > 1 && min_separation(start) < guard)
    throw CollisionError(ErrorKind::StrandCollision, 0.0, "start roots closer than the collision guard");

  auto push = [&](double s, const std::vector<cd>& ws) {
    if (!record && s != 0.0 && s != 1.0) return;
    out.s.push_back(s);
    for (std::size_t i = 0; i < n; ++i) out.w[i].push_back(ws[i]);
  };

  std::vector<cd> current = start;
  push(0.0, current);
  const double base_h = 1.0 / steps;
  const double min_h = base_h / std::ldexp(1.0, max_halvings);
  double h = base_h;
  double s = 0.0;
  std::vector<cd> next(n);
  while (s < 1.0) {
    const double h_try = std::min(h, 1.0 - s);
    const double s_try = (1.0 - s - h_try <= 1e-15) ? 1.0 : s + h_try;
    const auto sys = make_system(s_try);
    const double sep = n > 1 ? min_separation(current) : std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const auto w = newton(sys, current[i], tol);
      if (!w || std::abs(*w - current[i]) > 0.25 * sep) {
        ok = false;
      } else {
        next[i] = *w;
      }
    }
    double new_sep = std::numeric_limits<double>::infinity();
    if (ok && n > 1) {
      new_sep = min_separation(next);
      if (new_sep < 0.5 * sep) ok = false;
    }
    if (!ok) {
      if (h_try <= min_h * (1.0 + 1e-9)) {
        throw NonConvergenceError("root continuation stalled at s=" + std::to_string(s) + " after " +
                                      std::to_string(max_halvings) + " halvings",
                                  max_halvings, current);
      }
      h = h_try * 0.5;
      continue;
    }
    if (new_sep < guard) throw CollisionError(ErrorKind::StrandCollision, s_try, "strands collided");
    current = next;
    s = s_try;
    push(s, current);
    h = std::min(base_h, h * 2.0);
  }
  return out;
}

// Deterministic order: argument in [0, 2 pi), then modulus, then rounded
// (re, im), each compared at 1e-9.
inline bool label_less(cd a, cd b) {
  auto key_arg = [](cd w) {
    if (std::abs(w) < 1e-12) return 0.0;
    double t = std::arg(w);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    if (t > 2.0 * std::numbers::pi - 1e-9) t = 0.0;
    return t;
  };
  const double aa = key_arg(a), ab = key_arg(b);
  if (std::abs(aa - ab) > 1e-9) return aa < ab;
  const double ma = std::abs(a), mb = std::abs(b);
  if (std::abs(ma - mb) > 1e-9) return ma < mb;
  const double ra = std::round(a.real() * 1e9), rb = std::round(b.real() * 1e9);
  if (ra != rb) return ra < rb;
  return std::round(a.imag() * 1e9) < std::round(b.imag() * 1e9);
}

inline void require_tree_size(int d, int n) {
  if (n < 1) throw Error(ErrorKind::BadInput, "level must be >= 1");
  const double size = std::pow(static_cast<double>(d), n);
  if (size > kMaxTreeSize)
    throw Error(ErrorKind::SizeGuard, "d^n = " + std::to_string(static_cast<long long>(size)) + " exceeds " +
                                          std::to_string(kMaxTreeSize));
}

inline void require_admissible(const SkewParam& lambda, const TrackConfig& cfg) {
  if (!cfg.require_admissible) return;
  if (lambda.is_zero()) throw Error(ErrorKind::NotAdmissible, "lambda = 0 is not admissible");
  const AdmissibilityReport rep = admissibility_certificate(lambda, cfg.escape);
  if (!rep.admissible) throw Error(ErrorKind::NotAdmissible, rep.reason);
}

}  // namespace detail

/// Roots of q_{lambda,1}, Newton-polished and sorted into the label order
/// x_1, ..., x_d.
inline std::vector<cd> labelled_base_roots(const SkewParam& lambda, double tol = 1e-12) {
  const CPoly q1 = fiber_poly(lambda, 1.0).poly;
  auto rs = roots(q1, {.tol = 1e-14, .max_iter = 1000});
  for (cd& r : rs) {
    if (auto w = detail::newton([&](cd x) { return q1.eval_with_derivative(x); }, r, tol)) r = *w;
  }
  std::sort(rs.begin(), rs.end(), detail::label_less);
  return rs;
}

/// Tracks `start` (roots of Q^level over z = 1) along z = e^{2 pi i m t} and
/// labels endpoints by the start list.
inline BraidGeometry track_from(const SkewParam& lambda, int level, int turns, const std::vector<cd>& start,
                                const TrackConfig& cfg) {
  const int d = lambda.degree();
  detail::require_tree_size(d, level);
  BraidGeometry g;
  g.d = d;
  g.level = level;
  g.turns = turns;
  g.base_roots = start;

  const auto make_system = [&](double t) {
    double frac = turns * t;
    frac -= std::floor(frac);
    const cd z = (t == 1.0 || frac == 0.0) ? cd(1.0) : std::polar(1.0, 2.0 * std::numbers::pi * frac);
    return [chain = detail::fiber_chain(lambda, z, level)](cd w) { return detail::eval_chain(chain, w); };
  };
  const int steps = std::max(1, cfg.steps * std::max(1, std::abs(turns)));
  detail::Continuation c;
  if (turns == 0) {
    c.s = {0.0, 1.0};
    for (cd w : start) c.w.push_back({w, w});
  } else {
    c = detail::continue_roots(start, make_system, steps, cfg.tol, cfg.max_halvings, true);
  }

  const std::size_t n = start.size();
  const double sep0 = n > 1 ? detail::min_separation(start) : std::numeric_limits<double>::infinity();
  std::vector<int> images(n, -1);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const cd end = c.w[i].back();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double dist = std::abs(end - start[j]);
      if (dist < best_d) {
        best_d = dist;
        best = j;
      }
    }
    if (!(best_d < sep0 / 10.0) || hit[best])
      throw Error(ErrorKind::SeparationLoss, "endpoint of strand " + std::to_string(i + 1) +
                                                 " does not match a unique start root");
    hit[best] = true;
    images[i] = static_cast<int>(best);
  }
  g.permutation = Perm(images);
  for (std::size_t i = 0; i < n; ++i) {
    Strand s;
    s.t = c.s;
    s.w = std::move(c.w[i]);
    s.start_index = static_cast<int>(i);
    s.end_index = images[i];
    g.strands.push_back(std::move(s));
  }
  return g;
}

/// Result of coding the level-n preimage tree over z = 1.
struct LevelCoding {
  int d = 0;
  int level = 0;
  std::vector<Word> words;       // lexicographic, index = word_index
  std::vector<cd> roots;         // roots[i] is the point coded by words[i]
  std::vector<cd> base_roots;    // x_1..x_d
  std::vector<cd> critical_values;

  int index_of(const Word& w) const { return word_index(w, d); }
};

namespace detail {

// All inverse branches g_1..g_d of q_1 at the value v, by continuing the
// labelled roots x_j along q_1(w) = s v, s in [0,1].
inline std::vector<cd> inverse_branches(const CPoly& q1, const std::vector<cd>& x,
                                        const std::vector<cd>& critical_values, cd v, const TrackConfig& cfg) {
  if (v == cd(0.0)) return x;
  for (cd cv : critical_values) {
    // distance from cv to the segment [0, v]
    const double s = std::clamp((std::conj(v) * cv).real() / std::norm(v), 0.0, 1.0);
    if (std::abs(cv - s * v) <= std::max(cfg.tol, 1e-12 * std::abs(cv)))
      throw Error(ErrorKind::BranchCollision, "segment to the target value meets a critical value");
  }
  const auto make_system = [&](double s) {
    const cd target = s * v;
    return [&q1, target](cd w) {
      auto [val, der] = q1.eval_with_derivative(w);
      return std::pair<cd, cd>{val - target, der};
    };
  };
  auto c = continue_roots(x, make_system, 64, cfg.tol, cfg.max_halvings, false);
  std::vector<cd> out;
  out.reserve(x.size());
  for (auto& strand : c.w) out.push_back(strand.back());
  return out;
}

}  // namespace detail

/// Codes the d^n roots of q_1^{on} by words: L(a_n...a_1) = g_{a_1} o ... o
/// g_{a_n}(0), each inverse branch realized by continuation from x_{a}.
inline LevelCoding code_level_n(const SkewParam& lambda, int n, const TrackConfig& cfg = {}) {
  const int d = lambda.degree();
  detail::require_tree_size(d, n);
  detail::require_admissible(lambda, cfg);

  LevelCoding out;
  out.d = d;
  out.level = n;
  const CPoly q1 = fiber_poly(lambda, 1.0).poly;
  out.base_roots = labelled_base_roots(lambda);
  for (cd c : critical_points(lambda, 1.0)) out.critical_values.push_back(q1.eval(c));

  // Level 1, then extend each word u by every last letter j: L(u j) = g_j(L(u)).
  std::vector<cd> level_roots = out.base_roots;
  for (int k = 2; k <= n; ++k) {
    std::vector<cd> next;
    next.reserve(level_roots.size() * static_cast<std::size_t>(d));
    for (cd y : level_roots) {
      const auto g = detail::inverse_branches(q1, out.base_roots, out.critical_values, y, cfg);
      next.insert(next.end(), g.begin(), g.end());
    }
    level_roots = std::move(next);
  }

  const std::vector<CPoly> chain(static_cast<std::size_t>(n), q1);
  const auto sys = [&](cd w) { return detail::eval_chain(chain, w); };
  for (cd& r : level_roots) {
    if (auto w = detail::newton(sys, r, cfg.tol)) r = *w;
  }
  if (level_roots.size() > 1 && detail::min_separation(level_roots) < 10.0 * cfg.tol)
    throw Error(ErrorKind::SeparationLoss, "coded level-" + std::to_string(n) + " roots are not distinct");

  out.roots = std::move(level_roots);
  for (int i = 0; i < static_cast<int>(out.roots.size()); ++i) out.words.push_back(word_from_index(i, d, n));
  return out;
}

/// Braid of Q^level over m turns of the base circle. Level 1 starts from the
/// labelled roots of q_1; deeper levels start from the coded tree so labels
/// are word indices. For level 1 and one turn the permutation is S_q.
inline BraidGeometry track_circle(const SkewParam& lambda, int level, int turns, const TrackConfig& cfg = {}) {
  detail::require_tree_size(lambda.degree(), level);
  detail::require_admissible(lambda, cfg);
  TrackConfig inner = cfg;
  inner.require_admissible = false;
  const std::vector<cd> start =
      level == 1 ? labelled_base_roots(lambda) : code_level_n(lambda, level, inner).roots;
  return track_from(lambda, level, turns, start, inner);
}

/// Iterated-monodromy recurrence: the letter a_i at position i from the right
/// becomes S^{d^{i-1} m}(a_i).
inline Word img_action(const Word& word, long long m, const Perm& s, int d) {
  for (int a : word)
    if (a < 1 || a > d) throw Error(ErrorKind::LetterOutOfRange, "letter " + std::to_string(a) + " not in 1.." +
                                                                     std::to_string(d));
  if (s.size() != d) throw Error(ErrorKind::BadInput, "permutation size does not match d");
  const long long ord = s.order();
  const long long mm = ((m % ord) + ord) % ord;
  Word out = word;
  long long power = 1 % ord;  // d^{i-1} mod ord
  for (std::size_t i = 1; i <= word.size(); ++i) {
    const std::size_t pos = word.size() - i;
    const long long e = (power * mm) % ord;
    out[pos] = s.pow(e).apply1(word[pos]);
    power = (power * d) % ord;
  }
  return out;
}

struct LevelCheck {
  bool match = false;
  Perm numeric;  // on word indices, from tracking
  Perm formula;  // on word indices, from img_action
  Perm s;        // S_q in base-root labels
};

/// Numeric tree monodromy at level n over m turns versus the recurrence
/// formula driven by S_q; `match` is exact permutation equality.
inline LevelCheck level_monodromy_check(const SkewParam& lambda, int n, int m, const TrackConfig& cfg = {}) {
  const int d = lambda.degree();
  detail::require_tree_size(d, n);
  if (std::pow(static_cast<double>(d), n) > 32)
    throw Error(ErrorKind::SizeGuard, "level check is limited to d^n <= 32");
  detail::require_admissible(lambda, cfg);
  TrackConfig inner = cfg;
  inner.require_admissible = false;

  const LevelCoding coding = code_level_n(lambda, n, inner);
  const BraidGeometry base = track_from(lambda, 1, 1, coding.base_roots, inner);
  const BraidGeometry tree = track_from(lambda, n, m, coding.roots, inner);

  LevelCheck out;
  out.s = base.permutation;
  out.numeric = tree.permutation;
  std::vector<int> images(coding.words.size());
  for (std::size_t i = 0; i < coding.words.size(); ++i)
    images[i] = word_index(img_action(coding.words[i], m, out.s, d), d);
  out.formula = Perm(images);
  out.match = out.numeric == out.formula;
  return out;
}

/// Strand samples as CSV: strand_id, t, re_w, im_w (strand ids are 1-based
/// start labels).
inline void write_strands_csv(const BraidGeometry& g, std::ostream& os) {
  os << "strand_id,t,re_w,im_w\n";
  char buf[128];
  for (const Strand& s : g.strands) {
    for (std::size_t k = 0; k < s.t.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", s.start_index + 1, s.t[k], s.w[k].real(),
                    s.w[k].imag());
      os << buf;
    }
  }
}

}  // namespace skewbraid
