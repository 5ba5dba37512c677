// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "skewbraid/skewbraid.hpp"

using namespace skewbraid;
using oracle::cd;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::vector<std::string> admissible_presets() {
  std::vector<std::string> out;
  for (const auto& name : preset_names())
    if (name.find("-adm") != std::string::npos) out.push_back(name);
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string join(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Verdict permutations() {
  const std::vector<std::pair<std::string, std::vector<int>>> cases{
      {"d3-ex1-adm", {1, 1, 1}}, {"d3-ex2-adm", {3}}, {"d3-ex3-adm", {2, 1}}};
  std::string detail;
  bool ok = true;
  for (const auto& [name, type] : cases) {
    const Perm s = track_circle(preset(name), 1, 1).permutation;
    ok = ok && s.cycle_type() == type;
    detail += name + "=" + format_cycles(s) + " ";
  }
  ok = ok && format_cycles(track_circle(preset("d3-ex2-adm"), 1, 1).permutation) == "(1 2 3)";
  ok = ok && format_cycles(track_circle(preset("d3-ex3-adm"), 1, 1).permutation) == "(1)(2 3)";
  return {ok, detail};
}

Verdict components() {
  const std::vector<std::pair<std::string, std::vector<int>>> cases{
      {"d3-ex1-adm", {1, 1, 1}}, {"d3-ex2-adm", {3}}, {"d3-ex3-adm", {1, 2}}};
  std::string detail;
  bool ok = true;
  for (const auto& [name, windings] : cases) {
    const BraidGeometry g = track_circle(preset(name), 1, 1);
    std::vector<int> predicted;
    for (const auto& c : fixed_point_components(g.permutation)) predicted.push_back(c.winding);
    const std::vector<int> geometric = sorted(invariants(g).windings);
    ok = ok && geometric == windings && sorted(predicted) == windings;
    detail += name + " " + join(geometric) + " ";
  }
  return {ok, detail};
}

Verdict example_words() {
  bool ok = true;
  std::string detail;
  {
    const BraidGeometry g = track_circle(preset("d3-ex2-adm"), 1, 1);
    const ExtractedBraid e = extract_word(g);
    bool positive = e.word.letters.size() == 2;
    for (const Letter& l : e.word.letters) positive = positive && l.sign == 1;
    const BraidInvariants ref = word_invariants(parse_braid_word("s2 s1", 3)).fingerprint;
    ok = ok && positive && fingerprint_equal(word_invariants(e.word).fingerprint, ref) &&
         fingerprint_equal(invariants(g), ref);
    detail += "ex2 '" + format_word(e.word) + "' ";
  }
  for (const auto& [name, expected] : std::vector<std::pair<std::string, int>>{{"d3-ex1-adm", 6}, {"d3-ex3-adm", 3}}) {
    const BraidGeometry g = track_circle(preset(name), 1, 1);
    const PairwiseLinking pl = pairwise_linking(g);
    const ExtractedBraid e = extract_word(g);
    ok = ok && pl.total == expected && e.word.exponent_sum() == expected &&
         fingerprint_equal(invariants(g), word_invariants(e.word).fingerprint);
    detail += name + " linking " + std::to_string(pl.total) + " word '" + format_word(e.word) + "' ";
  }
  return {ok, detail};
}

Verdict img_recurrence() {
  TrackConfig cfg;
  cfg.steps = 1 << 14;
  int checks = 0;
  bool ok = true;
  std::string failures;
  for (const auto& name : admissible_presets()) {
    const SkewParam l = preset(name);
    const int d = l.degree();
    const int max_level = d == 2 ? 3 : 2;
    for (int n = 1; n <= max_level; ++n)
      for (int m = 1; m <= 2; ++m) {
        const LevelCheck lc = level_monodromy_check(l, n, m, cfg);
        ++checks;
        if (!lc.match) {
          ok = false;
          failures += " " + name + " n=" + std::to_string(n) + " m=" + std::to_string(m);
        }
      }
  }
  return {ok, std::to_string(checks) + " level checks at 2^14 steps" + failures};
}

Verdict quadratic() {
  struct Case {
    const char* name;
    int s, components, linking;
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : {Case{"d2-s0-adm", 0, 2, 0}, Case{"d2-s1-adm", 1, 1, 0}, Case{"d2-s2-adm", 2, 2, 1}}) {
    const SkewParam l = preset(c.name);
    const auto& row = l.rows()[0];
    const int s = quad_s(row[2], row[1], row[0]);
    const BraidGeometry g = track_circle(l, 1, 1);
    const BraidInvariants inv = invariants(g);
    const ExtractedBraid e = extract_word(g);
    BraidWord expected{2, std::vector<Letter>(static_cast<std::size_t>(c.s), Letter{1, 1})};
    bool here = s == c.s && inv.exponent_sum == c.s && inv.component_count == c.components &&
                format_word(e.word) == format_word(expected);
    if (c.components == 2) here = here && inv.linking_matrix[0][1] == c.linking;
    else here = here && inv.windings == std::vector<int>{2};
    ok = ok && here;
    detail += std::string(c.name) + " s=" + std::to_string(s) + " ";
  }
  return {ok, detail};
}

Verdict cab_surjectivity() {
  int realized = 0, total = 0;
  std::string failures;
  for (int d = 2; d <= 5; ++d)
    for (const CycleSpec& spec : cycle_type_specs(d)) {
      ++total;
      const ScaledParam sp = cycle_type_params_auto(spec);
      if (track_circle(sp.lambda, 1, 1).permutation.cycle_type() == spec.cycle_type()) ++realized;
      else failures += " d=" + std::to_string(d) + " " + join(spec.cycle_type());
    }
  return {total == 17 && realized == 17, std::to_string(realized) + "/" + std::to_string(total) + " realized" + failures};
}

Verdict oracle_equivalence() {
  std::mt19937_64 rng(7001);
  int tested = 0, agree = 0;
  for (int attempt = 0; attempt < 1000 && tested < 50; ++attempt) {
    const int d = 2 + attempt % 3;
    std::vector<cd> flat(static_cast<std::size_t>(dimension(d)));
    for (cd& v : flat) v = oracle::random_complex(rng, 1.0);
    SkewParam l;
    try {
      l = auto_scale([&](double t) { return SkewParam::from_flat(d, flat).scaled(t); }).lambda;
    } catch (const Error&) {
      continue;
    }
    const BraidGeometry g = track_circle(l, 1, 1);
    ++tested;
    if (extract_word(g).word.exponent_sum() == pairwise_linking(g).total) ++agree;
  }
  return {tested == 50 && agree == 50, std::to_string(agree) + "/" + std::to_string(tested) + " agree"};
}

Verdict escape_lemma() {
  const EscapeConfig cfg{.alpha = 1.5};
  bool ok = true;
  std::string detail;
  for (const auto& name : preset_names()) {
    SkewParam l = preset(name);
    const double r = escape_norm(l);
    if (r < 8.0) l = l.scaled(8.0 / r);
    const bool pass = escape_doubling_check(l, cfg, 10000);
    ok = ok && pass && escape_norm(l) >= 8.0 - 1e-12;
    if (!pass) detail += " " + name;
  }
  return {ok, std::to_string(preset_names().size()) + " presets x 10^4 trials" + detail};
}

Verdict discriminant() {
  std::mt19937_64 rng(9001);
  double worst_h = 0.0, worst_i = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3;
    std::vector<cd> flat(static_cast<std::size_t>(dimension(d)));
    for (cd& v : flat) v = oracle::random_complex(rng, 1.0);
    const SkewParam l = SkewParam::from_flat(d, flat);
    const cd t = oracle::random_complex(rng, 2.0);
    const cd z = oracle::on_circle(std::uniform_real_distribution<double>(0, 1)(rng)) *
                 std::uniform_real_distribution<double>(0.5, 1.5)(rng);

    const cd direct = critical_value_product(l, z);
    const cd scaled = critical_value_product(l.scaled(t), z);
    const cd expected = std::pow(t, d * (d - 1)) * direct;
    worst_h = std::max(worst_h, std::abs(scaled - expected) / std::abs(expected));

    const CPoly p = discriminant_in_z(l).poly;
    worst_i = std::max(worst_i, std::abs(p.eval(z) - direct) / std::abs(direct));
  }
  const EMembership e = e_membership(SkewParam::from_flat(2, {1, 1, 0}));
  const bool boundary = e.in_E && e.circle_roots.size() == 1 && std::abs(e.circle_roots[0] - cd(-1.0)) <= 1e-6;
  char buf[160];
  std::snprintf(buf, sizeof buf, "homogeneity %.2e, interpolation %.2e, boundary root %s", worst_h, worst_i,
                boundary ? "found" : "missing");
  return {worst_h <= 1e-8 && worst_i <= 1e-8 && boundary, buf};
}

Verdict green_exactness() {
  std::mt19937_64 rng(10001);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const cd w = oracle::random_complex(rng, 4.0);
    const cd z = oracle::on_circle(std::uniform_real_distribution<double>(0, 1)(rng));
    const GreenEstimate g = green_estimate(SkewParam::zero(d), z, w, {.alpha = 1.5});
    worst = std::max(worst, std::abs(g.value - std::max(0.0, std::log(std::abs(w)))));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.2e", worst);
  return {worst <= 1e-12, buf};
}

Verdict radial_invariance() {
  bool ok = true;
  std::string failures;
  for (const auto& name : admissible_presets()) {
    const SkewParam base = preset(name);
    std::vector<int> type;
    BraidInvariants ref;
    for (int k = 0; k < 8; ++k) {
      const double t = 1.0 + 15.0 * k / 7.0;
      const BraidGeometry g = track_circle(base.scaled(t), 1, 1);
      const BraidInvariants inv = invariants(g);
      if (k == 0) {
        type = g.permutation.cycle_type();
        ref = inv;
      } else if (g.permutation.cycle_type() != type || !fingerprint_equal(inv, ref)) {
        ok = false;
        failures += " " + name + " t=" + std::to_string(t);
      }
    }
  }
  return {ok, std::to_string(admissible_presets().size()) + " presets x 8 radii" + failures};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 degree-3 permutations", permutations},
      {"2 degree-3 components", components},
      {"3 example braid words", example_words},
      {"4 IMG recurrence", img_recurrence},
      {"5 quadratic classification", quadratic},
      {"6 cab surjectivity", cab_surjectivity},
      {"7 oracle equivalence", oracle_equivalence},
      {"8 escape lemma", escape_lemma},
      {"9 discriminant", discriminant},
      {"10 Green exactness", green_exactness},
      {"R radial invariance", radial_invariance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const Error& e) {
      v = {false, std::string(to_string(e.kind())) + ": " + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::printf("%s  %-28s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
