#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "skewbraid/error.hpp"
#include "skewbraid/monodromy.hpp"
#include "skewbraid/perm.hpp"

namespace skewbraid {

/// sigma_generator^sign.
struct Letter {
  int generator = 1;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word in the Artin group B_d.
struct BraidWord {
  int strands = 2;
  std::vector<Letter> letters;

  void validate() const {
    if (strands < 1) throw Error(ErrorKind::BadInput, "braid needs at least one strand");
    for (const Letter& l : letters) {
      if (l.generator < 1 || l.generator >= strands)
        throw Error(ErrorKind::BadInput, "generator s" + std::to_string(l.generator) + " out of range for B_" +
                                             std::to_string(strands));
      if (l.sign != 1 && l.sign != -1) throw Error(ErrorKind::BadInput, "letter sign must be +1 or -1");
    }
  }
  int exponent_sum() const {
    int e = 0;
    for (const Letter& l : letters) e += l.sign;
    return e;
  }
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// ASCII form: "s2 s1 s1^-1"; the empty word prints as "e".
inline std::string format_word(const BraidWord& w) {
  if (w.letters.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += 's' + std::to_string(w.letters[i].generator);
    if (w.letters[i].sign < 0) out += "^-1";
  }
  return out;
}

/// Parses the ASCII form; "s1^3" and "s2^-2" expand to repeated letters.
inline BraidWord parse_braid_word(const std::string& text, int strands) {
  BraidWord w;
  w.strands = strands;
  std::istringstream is(text);
  std::string tok;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "bad braid word '" + text + "': " + why);
  };
  while (is >> tok) {
    if (tok == "e") continue;
    if (tok.size() < 2 || tok[0] != 's' || !std::isdigit(static_cast<unsigned char>(tok[1])))
      fail("token '" + tok + "'");
    std::size_t pos = 1;
    int gen = 0;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) gen = gen * 10 + (tok[pos++] - '0');
    int power = 1;
    if (pos < tok.size()) {
      if (tok[pos] != '^') fail("token '" + tok + "'");
      try {
        std::size_t used = 0;
        power = std::stoi(tok.substr(pos + 1), &used);
        if (pos + 1 + used != tok.size()) fail("token '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("exponent in '" + tok + "'");
      }
    }
    for (int k = 0; k < std::abs(power); ++k) w.letters.push_back({gen, power < 0 ? -1 : 1});
  }
  w.validate();
  return w;
}

/// Cancels adjacent s_i s_i^-1 pairs until none remain.
inline BraidWord free_reduce(const BraidWord& w) {
  BraidWord out;
  out.strands = w.strands;
  for (const Letter& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().generator == l.generator && out.letters.back().sign == -l.sign)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

/// Position permutation of a word: start position -> end position, each
/// letter s_i exchanging positions i and i+1.
inline Perm word_permutation(const BraidWord& w) {
  w.validate();
  std::vector<int> at(static_cast<std::size_t>(w.strands));  // at[pos] = start position of strand there
  std::iota(at.begin(), at.end(), 0);
  for (const Letter& l : w.letters) std::swap(at[l.generator - 1], at[l.generator]);
  std::vector<int> images(at.size());
  for (std::size_t pos = 0; pos < at.size(); ++pos) images[at[pos]] = static_cast<int>(pos);
  return Perm(images);
}

struct Crossing {
  double t = 0.0;
  int generator = 1;  // position of the left strand, 1-based
  int sign = 1;
  int strand_left = 0;   // start labels (0-based) of the strands, left before the crossing
  int strand_right = 0;
};

struct ExtractedBraid {
  BraidWord word;
  std::vector<Crossing> crossings;
  double angle = 0.0;  // projection angle actually used
  int retries = 0;
  Perm position_of_label;  // label -> position at t = 0
};

inline constexpr int kMaxProjectionRetries = 32;
inline constexpr double kProjectionShear = 0.25;

namespace detail {

struct ProjectionAttempt {
  bool ok = false;
  ExtractedBraid braid;
};

// Plane coordinates after rotating by `angle` and applying the shear
// (x, y) -> (x + shear * y^2 / scale, y). The shear is isotopic to the
// identity and preserves orientation, so it changes neither the braid class
// nor crossing signs, but it breaks the central symmetry of odd fibers.
inline ProjectionAttempt try_projection(const BraidGeometry& g, double angle, double shear) {
  ProjectionAttempt out;
  const std::size_t n = g.strands.size();
  const std::size_t samples = g.strands.front().t.size();
  const cd rot = std::polar(1.0, angle);
  double scale = 1.0;
  for (const Strand& s : g.strands)
    for (cd w : s.w) scale = std::max(scale, std::abs(w));
  const double tie = 1e-9 * scale;

  auto plane = [&](std::size_t i, std::size_t k) {
    const cd p = rot * g.strands[i].w[k];
    return cd(p.real() + shear * p.imag() * p.imag() / scale, p.imag());
  };
  auto x = [&](std::size_t i, std::size_t k) { return plane(i, k).real(); };

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return x(a, 0) < x(b, 0); });
  for (std::size_t p = 0; p + 1 < n; ++p)
    if (x(order[p + 1], 0) - x(order[p], 0) <= tie) return out;
  std::vector<int> start_pos(n);
  for (std::size_t p = 0; p < n; ++p) start_pos[order[p]] = static_cast<int>(p);

  std::vector<Crossing> all;
  for (std::size_t k = 0; k + 1 < samples; ++k) {
    struct Event {
      double t;
      int i, j;
      double im;
      double dre;
    };
    std::vector<Event> events;
    const double t0 = g.strands.front().t[k], t1 = g.strands.front().t[k + 1];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const cd u0 = plane(i, k) - plane(j, k);
        const cd u1 = plane(i, k + 1) - plane(j, k + 1);
        if (std::abs(u1.real()) <= tie) return out;  // projection tie at a sample
        if ((u0.real() < 0.0) == (u1.real() < 0.0)) continue;
        const double f = u0.real() / (u0.real() - u1.real());
        events.push_back({t0 + f * (t1 - t0), static_cast<int>(i), static_cast<int>(j),
                          u0.imag() + f * (u1.imag() - u0.imag()), u1.real() - u0.real()});
      }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
    for (std::size_t e = 0; e < events.size(); ++e) {
      const Event& ev = events[e];
      if (std::abs(ev.im) <= tie) return out;  // strands meet in the projection plane direction
      for (std::size_t f = e + 1; f < events.size() && events[f].t - ev.t <= 1e-9; ++f) {
        const Event& o = events[f];
        if (o.i == ev.i || o.i == ev.j || o.j == ev.i || o.j == ev.j) return out;  // triple coincidence
      }
      std::size_t pi = 0, pj = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (order[p] == ev.i) pi = p;
        if (order[p] == ev.j) pj = p;
      }
      const std::size_t left = std::min(pi, pj);
      if (std::max(pi, pj) != left + 1) return out;  // not adjacent
      Crossing c;
      c.t = ev.t;
      c.generator = static_cast<int>(left) + 1;
      c.sign = ev.im * -ev.dre > 0.0 ? 1 : -1;
      c.strand_left = order[left];
      c.strand_right = order[left + 1];
      std::swap(order[left], order[left + 1]);
      all.push_back(c);
    }
  }

  // The closing order must agree with the sorted order at t = 1.
  std::vector<int> final_sorted(n);
  std::iota(final_sorted.begin(), final_sorted.end(), 0);
  std::sort(final_sorted.begin(), final_sorted.end(),
            [&](int a, int b) { return x(a, samples - 1) < x(b, samples - 1); });
  if (final_sorted != order) return out;

  out.ok = true;
  out.braid.angle = angle;
  out.braid.crossings = std::move(all);
  out.braid.word.strands = static_cast<int>(n);
  for (const Crossing& c : out.braid.crossings) out.braid.word.letters.push_back({c.generator, c.sign});
  out.braid.position_of_label = Perm(start_pos);
  return out;
}

}  // namespace detail

/// Reads a braid word off the projection x = Re(e^{i angle} w). A crossing is
/// positive when w_i - w_j turns counterclockwise through the imaginary axis
/// of the rotated frame. Ties, triple points and non-adjacent swaps restart
/// with the angle advanced by golden-ratio * pi; restarts also apply a small
/// quadratic shear, since a centrally symmetric configuration such as
/// {0, v, -v} has a triple point under every linear projection.
inline ExtractedBraid extract_word(const BraidGeometry& g, double angle = 0.0) {
  if (g.strands.empty()) throw Error(ErrorKind::BadInput, "empty braid geometry");
  const double step = std::numbers::phi * std::numbers::pi;
  for (int r = 0; r <= kMaxProjectionRetries; ++r) {
    auto attempt = detail::try_projection(g, angle + r * step, r == 0 ? 0.0 : kProjectionShear);
    if (attempt.ok) {
      attempt.braid.retries = r;
      return attempt.braid;
    }
  }
  throw Error(ErrorKind::DegenerateProjection,
              "no regular projection after " + std::to_string(kMaxProjectionRetries) + " retries");
}

/// Strand-pair rotation data of a closed braid.
struct PairwiseLinking {
  std::vector<std::vector<double>> half_turns;  // accumulated arg change / pi, per strand pair
  int total = 0;                                // rounded sum over all pairs
  std::vector<std::vector<int>> components;     // cycles of the permutation, 0-based labels
  std::vector<std::vector<int>> component_linking;
};

/// Accumulates arg(w_i - w_j) along the samples for every pair. Individual
/// pair counts need not be integers when strands belong to one component, so
/// the total is rounded once. Off-diagonal component entries are linking
/// numbers; diagonal entries count the half-turns inside a component.
inline PairwiseLinking pairwise_linking(const BraidGeometry& g) {
  const std::size_t n = g.strands.size();
  PairwiseLinking out;
  out.half_turns.assign(n, std::vector<double>(n, 0.0));
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      cd prev = g.strands[i].w[0] - g.strands[j].w[0];
      if (prev == cd(0.0)) throw Error(ErrorKind::SeparationLoss, "strands coincide");
      for (std::size_t k = 1; k < g.strands[i].w.size(); ++k) {
        const cd cur = g.strands[i].w[k] - g.strands[j].w[k];
        if (cur == cd(0.0)) throw Error(ErrorKind::SeparationLoss, "strands coincide");
        acc += std::arg(cur / prev);
        prev = cur;
      }
      out.half_turns[i][j] = out.half_turns[j][i] = acc / std::numbers::pi;
      sum += acc / std::numbers::pi;
    }
  }
  out.total = static_cast<int>(std::lround(sum));

  out.components = g.permutation.cycles();
  const std::size_t c = out.components.size();
  std::vector<int> comp_of(n);
  for (std::size_t a = 0; a < c; ++a)
    for (int s : out.components[a]) comp_of[s] = static_cast<int>(a);
  std::vector<std::vector<double>> acc(c, std::vector<double>(c, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const int a = comp_of[i], b = comp_of[j];
      acc[a][b] += out.half_turns[i][j];
      if (a != b) acc[b][a] += out.half_turns[i][j];
    }
  out.component_linking.assign(c, std::vector<int>(c, 0));
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b)
      out.component_linking[a][b] = static_cast<int>(std::lround(a == b ? acc[a][b] : acc[a][b] / 2.0));
  return out;
}

struct BraidInvariants {
  int strands = 0;
  std::vector<int> cycle_type;
  int exponent_sum = 0;
  int component_count = 0;
  std::vector<int> windings;  // per component, in component order
  std::vector<std::vector<int>> linking_matrix;
};

/// Conjugacy invariants from geometry: components are the cycles of the
/// permutation, each winding as many times as it has strands; the exponent
/// sum is the pairwise-linking total.
inline BraidInvariants invariants(const BraidGeometry& g) {
  const PairwiseLinking pl = pairwise_linking(g);
  BraidInvariants inv;
  inv.strands = static_cast<int>(g.strands.size());
  inv.cycle_type = g.permutation.cycle_type();
  inv.exponent_sum = pl.total;
  inv.component_count = static_cast<int>(pl.components.size());
  for (const auto& comp : pl.components) inv.windings.push_back(static_cast<int>(comp.size()));
  inv.linking_matrix = pl.component_linking;
  return inv;
}

struct WordInvariants {
  Perm perm;
  int exponent_sum = 0;
  BraidWord reduced;
  BraidInvariants fingerprint;
};

/// Invariants of an abstract word. Each crossing between strands of
/// components A != B adds sign/2 to lk(A,B); crossings inside a component add
/// their sign to its diagonal entry.
inline WordInvariants word_invariants(const BraidWord& w) {
  w.validate();
  WordInvariants out;
  out.perm = word_permutation(w);
  out.exponent_sum = w.exponent_sum();
  out.reduced = free_reduce(w);

  const int n = w.strands;
  const auto comps = out.perm.cycles();
  std::vector<int> comp_of(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < comps.size(); ++a)
    for (int s : comps[a]) comp_of[s] = static_cast<int>(a);
  const std::size_t c = comps.size();
  std::vector<std::vector<int>> twice(c, std::vector<int>(c, 0));
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 0);
  for (const Letter& l : w.letters) {
    const int a = comp_of[at[l.generator - 1]], b = comp_of[at[l.generator]];
    if (a == b) {
      twice[a][a] += 2 * l.sign;
    } else {
      twice[a][b] += l.sign;
      twice[b][a] += l.sign;
    }
    std::swap(at[l.generator - 1], at[l.generator]);
  }
  BraidInvariants& f = out.fingerprint;
  f.strands = n;
  f.cycle_type = out.perm.cycle_type();
  f.exponent_sum = out.exponent_sum;
  f.component_count = static_cast<int>(c);
  for (const auto& comp : comps) f.windings.push_back(static_cast<int>(comp.size()));
  f.linking_matrix.assign(c, std::vector<int>(c, 0));
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) f.linking_matrix[a][b] = twice[a][b] / 2;
  return out;
}

namespace detail {

inline bool match_components(const BraidInvariants& a, const BraidInvariants& b, std::vector<int>& map,
                             std::vector<bool>& used, std::size_t k) {
  const std::size_t c = a.windings.size();
  if (k == c) return true;
  for (std::size_t j = 0; j < c; ++j) {
    if (used[j] || a.windings[k] != b.windings[j]) continue;
    bool ok = a.linking_matrix[k][k] == b.linking_matrix[j][j];
    for (std::size_t p = 0; p < k && ok; ++p) ok = a.linking_matrix[k][p] == b.linking_matrix[j][map[p]];
    if (!ok) continue;
    used[j] = true;
    map[k] = static_cast<int>(j);
    if (match_components(a, b, map, used, k + 1)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace detail

/// Equality of fingerprints: cycle type, exponent sum, winding multiset and
/// linking matrix up to a relabeling of components.
inline bool fingerprint_equal(const BraidInvariants& a, const BraidInvariants& b) {
  if (a.strands != b.strands || a.cycle_type != b.cycle_type || a.exponent_sum != b.exponent_sum ||
      a.component_count != b.component_count || a.windings.size() != b.windings.size())
    return false;
  std::vector<int> wa = a.windings, wb = b.windings;
  std::sort(wa.begin(), wa.end());
  std::sort(wb.begin(), wb.end());
  if (wa != wb) return false;
  std::vector<int> map(a.windings.size(), -1);
  std::vector<bool> used(a.windings.size(), false);
  return detail::match_components(a, b, map, used, 0);
}

/// Braid diagram: one horizontal track per position, crossings left to right
/// in t order. For a positive crossing the strand moving down is drawn over.
inline void write_svg(const ExtractedBraid& b, std::ostream& os) {
  const int n = b.word.strands;
  const int cols = static_cast<int>(b.word.letters.size());
  const double dx = 40.0, dy = 30.0, margin = 20.0;
  const double width = 2 * margin + dx * std::max(1, cols);
  const double height = 2 * margin + dy * std::max(0, n - 1);
  auto y = [&](int pos) { return margin + dy * pos; };
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  os << buf;
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto line = [&](double x0, double y0, double x1, double y1, const char* extra) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\" stroke-width=\"2\"%s/>\n",
                  x0, y0, x1, y1, extra);
    os << buf;
  };
  for (int c = 0; c < std::max(1, cols); ++c) {
    const double x0 = margin + dx * c, x1 = x0 + dx;
    const int gen = c < cols ? b.word.letters[c].generator : 0;
    for (int p = 0; p < n; ++p)
      if (p != gen - 1 && p != gen) line(x0, y(p), x1, y(p), "");
    if (c >= cols) continue;
    const bool positive = b.word.letters[c].sign > 0;
    const double top = y(gen - 1), bottom = y(gen);
    // under-strand first with a gap, then the over-strand
    const double under_from = positive ? bottom : top, under_to = positive ? top : bottom;
    const double xm = (x0 + x1) / 2, ym = (top + bottom) / 2;
    const double gx = dx * 0.15, gy = (under_to - under_from) * 0.15;
    line(x0, under_from, xm - gx, ym - gy, "");
    line(xm + gx, ym + gy, x1, under_to, "");
    line(x0, positive ? top : bottom, x1, positive ? bottom : top, "");
  }
  os << "<text x=\"" << margin << "\" y=\"" << height - 4 << "\" font-family=\"monospace\" font-size=\"10\">"
     << format_word(b.word) << "</text>\n";
  os << "</svg>\n";
}

}  // namespace skewbraid
