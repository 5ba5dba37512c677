#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "skewbraid/error.hpp"

namespace skewbraid {

/// Permutation of {1..n}, stored 0-based: images()[i] is the image of i+1,
/// minus one. Composition follows functions: (a * b)(x) = a(b(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
        throw Error(ErrorKind::BadInput, "images do not form a bijection");
      seen[v] = true;
    }
  }

  static Perm identity(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    return Perm(std::move(img));
  }

  /// From 1-based disjoint cycles, e.g. {{1,2,3}} for (1 2 3).
  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const int a = cyc[i];
        if (a < 1 || a > n) throw Error(ErrorKind::BadInput, "cycle entry " + std::to_string(a) + " out of range");
        if (used[a - 1]) throw Error(ErrorKind::BadInput, "cycles are not disjoint");
        used[a - 1] = true;
        img[a - 1] = cyc[(i + 1) % cyc.size()] - 1;
      }
    }
    return Perm(std::move(img));
  }

  int size() const noexcept { return static_cast<int>(img_.size()); }
  const std::vector<int>& images() const noexcept { return img_; }
  int operator()(int i) const { return img_.at(static_cast<std::size_t>(i)); }
  /// Image of the 1-based point a.
  int apply1(int a) const { return img_.at(static_cast<std::size_t>(a - 1)) + 1; }

  bool is_identity() const noexcept {
    for (int i = 0; i < size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::BadInput, "composing permutations of different sizes");
    std::vector<int> img(b.img_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = a.img_[b.img_[i]];
    return Perm(std::move(img));
  }
  friend bool operator==(const Perm&, const Perm&) = default;

  Perm inverse() const {
    std::vector<int> img(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) img[img_[i]] = static_cast<int>(i);
    return Perm(std::move(img));
  }

  /// S^k for any integer k.
  Perm pow(long long k) const {
    const long long ord = order();
    long long e = ((k % ord) + ord) % ord;
    Perm result = identity(size());
    Perm base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  /// Disjoint cycles (0-based), each starting at its smallest element, sorted
  /// by that element. Fixed points are included.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(img_.size(), false);
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> cyc;
      for (int j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  /// Cycle lengths in non-increasing order (a partition of size()).
  std::vector<int> cycle_type() const {
    std::vector<int> t;
    for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
  }

  /// Least n >= 1 with S^n = Id (lcm of the cycle lengths).
  long long order() const {
    long long l = 1;
    for (const auto& c : cycles()) l = std::lcm(l, static_cast<long long>(c.size()));
    return l;
  }

 private:
  std::vector<int> img_;
};

/// Cycle notation with 1-based points, fixed points included: "(1 2 3)(4)".
inline std::string format_cycles(const Perm& p) {
  std::ostringstream os;
  for (const auto& cyc : p.cycles()) {
    os << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? " " : "") << cyc[i] + 1;
    os << ')';
  }
  return os.str();
}

/// Parses cycle notation on n points. Points not mentioned are fixed; commas
/// are accepted as separators, e.g. "(1,2,3)".
inline Perm parse_cycles(const std::string& text, int n) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "bad permutation '" + text + "': " + why);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<int> cyc;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a number");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      cyc.push_back(v);
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
  }
  return Perm::from_cycles(n, cycles);
}

}  // namespace skewbraid
