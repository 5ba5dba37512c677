#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>
#include <vector>

#include "skewbraid/error.hpp"
#include "skewbraid/perm.hpp"

namespace skewbraid {

/// Eventually periodic sequence a_1 a_2 ... = preperiod, then period repeated.
/// Normal form: primitive period and shortest preperiod.
struct Code {
  std::vector<int> preperiod;
  std::vector<int> period{1};

  /// Letter a_n, n >= 1.
  int letter(std::size_t n) const {
    if (n <= preperiod.size()) return preperiod[n - 1];
    return period[(n - 1 - preperiod.size()) % period.size()];
  }

  void validate(int d) const {
    if (period.empty()) throw Error(ErrorKind::BadInput, "code period must be nonempty");
    auto check = [d](int a) {
      if (a < 1 || a > d) throw Error(ErrorKind::LetterOutOfRange, "letter " + std::to_string(a) + " not in 1.." +
                                                                       std::to_string(d));
    };
    std::for_each(preperiod.begin(), preperiod.end(), check);
    std::for_each(period.begin(), period.end(), check);
  }

  Code& normalize() {
    if (period.empty()) throw Error(ErrorKind::BadInput, "code period must be nonempty");
    const std::size_t n = period.size();
    for (std::size_t p = 1; p <= n; ++p) {
      if (n % p) continue;
      bool repeats = true;
      for (std::size_t i = p; i < n && repeats; ++i) repeats = period[i] == period[i - p];
      if (repeats) {
        period.resize(p);
        break;
      }
    }
    while (!preperiod.empty() && preperiod.back() == period.back()) {
      preperiod.pop_back();
      std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
    return *this;
  }

  Code normalized() const {
    Code c = *this;
    return c.normalize();
  }

  /// Constant sequence j j j ...
  static Code constant(int j) { return Code{{}, {j}}; }

  friend bool operator==(const Code&, const Code&) = default;
};

/// "pre:period" with comma-separated letters, e.g. "2:1,3" for 2,1,3,1,3,...
inline std::string format_code(const Code& c) {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  return join(c.preperiod) + ":" + join(c.period);
}

/// Inverse of format_code; a string without ':' is read as a pure period.
inline Code parse_code(const std::string& text) {
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::ParseError, "bad code '" + text + "': " + why); };
  auto parse_list = [&](const std::string& s) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ',' || std::isspace(static_cast<unsigned char>(s[i])))) ++i;
      if (i >= s.size()) break;
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected a letter");
      int v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
      out.push_back(v);
    }
    return out;
  };
  Code c;
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    c.preperiod.clear();
    c.period = parse_list(text);
  } else {
    c.preperiod = parse_list(text.substr(0, colon));
    c.period = parse_list(text.substr(colon + 1));
  }
  if (c.period.empty()) fail("empty period");
  return c.normalize();
}

/// m_S, the least n >= 1 with S^n = Id.
inline long long perm_order(const Perm& s) { return s.order(); }

/// h^k: the letter at position n becomes S^{k d^{n-1}}(a_n), exponents mod m_S.
inline Code h_apply(const Perm& s, int d, const Code& c, long long k) {
  if (d < 2) throw Error(ErrorKind::BadDegree, "degree must be >= 2");
  if (s.size() != d) throw Error(ErrorKind::BadInput, "permutation size does not match d");
  c.validate(d);
  const long long m = s.order();
  const long long kk = ((k % m) + m) % m;

  // r_n = d^{n-1} mod m is eventually periodic: first repeat at index mu + lam.
  std::vector<long long> r{1 % m};
  std::size_t mu = 0, lam = 1;
  while (true) {
    const long long next = (r.back() * d) % m;
    const auto it = std::find(r.begin(), r.end(), next);
    if (it != r.end()) {
      mu = static_cast<std::size_t>(it - r.begin());
      lam = r.size() - mu;
      break;
    }
    r.push_back(next);
  }
  auto exponent = [&](std::size_t n) {
    const std::size_t i = n - 1 < r.size() ? n - 1 : mu + (n - 1 - mu) % lam;
    return (kk * r[i]) % m;
  };

  const std::size_t pre = std::max(c.preperiod.size(), mu);
  const std::size_t per = std::lcm(c.period.size(), lam);
  Code out;
  out.preperiod.clear();
  out.period.clear();
  for (std::size_t n = 1; n <= pre + per; ++n) {
    const int b = s.pow(exponent(n)).apply1(c.letter(n));
    (n <= pre ? out.preperiod : out.period).push_back(b);
  }
  return out.normalize();
}

struct ComponentOrbit {
  std::vector<Code> orbit;
  int winding = 0;
};

/// Orbit of a code under h; its size is the number of times the component
/// through that point winds above the base circle.
inline ComponentOrbit component_orbit(const Perm& s, int d, const Code& c) {
  ComponentOrbit out;
  const Code start = c.normalized();
  Code x = start;
  do {
    out.orbit.push_back(x);
    x = h_apply(s, d, x, 1);
  } while (!(x == start));
  out.winding = static_cast<int>(out.orbit.size());
  return out;
}

struct FixedPointComponent {
  std::vector<int> points;  // 1-based labels j of the fixed points p_j
  int winding = 0;
};

/// The fixed points p_j grouped into components by the cycles of S, each
/// winding m_j = cycle length times.
inline std::vector<FixedPointComponent> fixed_point_components(const Perm& s) {
  std::vector<FixedPointComponent> out;
  for (const auto& cyc : s.cycles()) {
    FixedPointComponent c;
    for (int v : cyc) c.points.push_back(v + 1);
    std::sort(c.points.begin(), c.points.end());
    c.winding = static_cast<int>(cyc.size());
    out.push_back(std::move(c));
  }
  return out;
}

struct SuspensionPoint {
  double t = 0.0;
  Code code;
};

/// Equality in the suspension [0,1] x C / (0,x) ~ (1,h(x)).
inline bool suspension_eq(const Perm& s, int d, const SuspensionPoint& p, const SuspensionPoint& q) {
  for (const auto* x : {&p, &q})
    if (!(x->t >= 0.0 && x->t <= 1.0)) throw Error(ErrorKind::BadInput, "suspension time must lie in [0,1]");
  const Code a = p.code.normalized(), b = q.code.normalized();
  a.validate(d);
  b.validate(d);
  if (p.t == q.t) return a == b;
  if (p.t == 0.0 && q.t == 1.0) return h_apply(s, d, a, 1) == b;
  if (p.t == 1.0 && q.t == 0.0) return h_apply(s, d, b, 1) == a;
  return false;
}

}  // namespace skewbraid
