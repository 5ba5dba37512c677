#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "skewbraid/factory.hpp"
#include "skewbraid/monodromy.hpp"

using namespace skewbraid;
using oracle::cd;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::BadInput;
}

int nearest(const std::vector<cd>& pts, cd x) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i)
    if (std::abs(pts[i] - x) < std::abs(pts[best] - x)) best = i;
  return best;
}

}  // namespace

TEST(Labeling, SortedByArgumentThenModulus) {
  const auto r3 = labelled_base_roots(preset("d3-ex3"));
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_LE(std::abs(r3[0]), 1e-12);
  EXPECT_LE(std::abs(r3[1] - cd(4.0)), 1e-12);
  EXPECT_LE(std::abs(r3[2] - cd(-4.0)), 1e-12);

  const auto r2 = labelled_base_roots(preset("d3-ex2"));
  EXPECT_LE(std::abs(r2[0] - cd(2.0)), 1e-12);
  EXPECT_LE(std::abs(r2[1] - std::polar(2.0, 2.0 * std::numbers::pi / 3.0)), 1e-12);
}

TEST(TrackCircle, DegreeThreePermutations) {
  for (const std::string suffix : {"", "-adm"}) {
    EXPECT_TRUE(track_circle(preset("d3-ex1" + suffix), 1, 1).permutation.is_identity());
    EXPECT_EQ(format_cycles(track_circle(preset("d3-ex2" + suffix), 1, 1).permutation), "(1 2 3)");
    EXPECT_EQ(format_cycles(track_circle(preset("d3-ex3" + suffix), 1, 1).permutation), "(1)(2 3)");
  }
}

TEST(TrackCircle, StrandsFollowExplicitFormulas) {
  // w^3 - 8z^3: roots x_k e^{2 pi i t}. w^3 - 16zw: 0 and +-4 e^{i pi t}.
  const BraidGeometry g1 = track_circle(preset("d3-ex1"), 1, 1);
  for (const Strand& s : g1.strands)
    for (std::size_t k = 0; k < s.t.size(); k += 37)
      EXPECT_LE(std::abs(s.w[k] - g1.base_roots[s.start_index] * oracle::on_circle(s.t[k])), 1e-9);

  const BraidGeometry g3 = track_circle(preset("d3-ex3"), 1, 1);
  for (const Strand& s : g3.strands)
    for (std::size_t k = 0; k < s.t.size(); k += 37) {
      const cd expected = g3.base_roots[s.start_index] * std::polar(1.0, std::numbers::pi * s.t[k]);
      EXPECT_LE(std::abs(s.w[k] - expected), 1e-9);
    }
}

TEST(TrackCircle, GeometryInvariants) {
  const BraidGeometry g = track_circle(preset("d3-ex2-adm"), 2, 1);
  EXPECT_EQ(g.strands.size(), 9u);
  EXPECT_EQ(g.permutation.size(), 9);
  const std::vector<CPoly> chain(2, fiber_poly(preset("d3-ex2-adm"), 1.0).poly);
  for (const Strand& s : g.strands) {
    EXPECT_EQ(s.t.front(), 0.0);
    EXPECT_EQ(s.t.back(), 1.0);
    EXPECT_EQ(s.w.front(), g.base_roots[s.start_index]);
    // endpoint residual as a Newton step
    auto [v, dv] = detail::eval_chain(chain, s.w.back());
    EXPECT_LE(std::abs(v / dv), 1e-10 * std::max(1.0, std::abs(s.w.back())));
  }
  // consecutive samples stay below half the local separation
  for (std::size_t k = 0; k + 1 < g.strands[0].t.size(); ++k) {
    std::vector<cd> here;
    for (const Strand& s : g.strands) here.push_back(s.w[k]);
    const double sep = detail::min_separation(here);
    for (const Strand& s : g.strands) EXPECT_LT(std::abs(s.w[k + 1] - s.w[k]), 0.5 * sep);
  }
}

TEST(TrackCircle, DoublingStepsChangesNothing) {
  for (const auto& name : {"d3-ex2-adm", "d3-ex3-adm", "d2-s1-adm"}) {
    TrackConfig coarse, fine;
    fine.steps = 2 * coarse.steps;
    const BraidGeometry a = track_circle(preset(name), 1, 1, coarse);
    const BraidGeometry b = track_circle(preset(name), 1, 1, fine);
    EXPECT_EQ(a.permutation, b.permutation);
    for (std::size_t i = 0; i < a.strands.size(); ++i) {
      std::size_t j = 0;
      for (std::size_t k = 0; k < a.strands[i].t.size(); ++k) {
        while (j < b.strands[i].t.size() && b.strands[i].t[j] < a.strands[i].t[k]) ++j;
        if (j < b.strands[i].t.size() && b.strands[i].t[j] == a.strands[i].t[k]) {
          EXPECT_LT(std::abs(a.strands[i].w[k] - b.strands[i].w[j]), 10 * coarse.tol * 16.0) << name;
        }
      }
    }
  }
}

TEST(TrackCircle, TurnsAreAdditive) {
  const SkewParam l = preset("d3-ex3-adm");
  for (int level = 1; level <= 2; ++level) {
    const Perm p1 = track_circle(l, level, 1).permutation;
    const Perm p2 = track_circle(l, level, 2).permutation;
    const Perm p3 = track_circle(l, level, 3).permutation;
    EXPECT_EQ(p3, p2 * p1);
    EXPECT_EQ(p3, p1 * p2);
    EXPECT_TRUE(track_circle(l, level, 0).permutation.is_identity());
  }
}

TEST(TrackCircle, Preconditions) {
  EXPECT_EQ(kind_of([] { track_circle(SkewParam::zero(3), 1, 1); }), ErrorKind::NotAdmissible);
  EXPECT_EQ(kind_of([] { track_circle(preset("d2-s1-adm"), 7, 1); }), ErrorKind::SizeGuard);
  EXPECT_EQ(kind_of([] { track_circle(preset("d3-ex2-adm"), 4, 1); }), ErrorKind::SizeGuard);
}

TEST(TrackCircle, CollisionNearE) {
  // w^2 + 1 + z: the two roots meet over z = -1.
  TrackConfig cfg;
  cfg.require_admissible = false;
  const ErrorKind k = kind_of([&] { track_circle(SkewParam::from_flat(2, {1, 1, 0}), 1, 1, cfg); });
  EXPECT_TRUE(k == ErrorKind::StrandCollision || k == ErrorKind::NonConvergence) << to_string(k);
}

TEST(Coding, LevelOneIsTheLabeling) {
  const SkewParam l = preset("d3-ex2-adm");
  const LevelCoding c = code_level_n(l, 1);
  const auto base = labelled_base_roots(l);
  ASSERT_EQ(c.roots.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(c.words[j], Word{j + 1});
    EXPECT_LE(std::abs(c.roots[j] - base[j]), 1e-10);
  }
}

TEST(Coding, ShiftEquivariance) {
  for (const auto& name : {"d3-ex1-adm", "d3-ex2-adm", "d3-ex3-adm", "d2-s0-adm", "d2-s1-adm", "d2-s2-adm"}) {
    const SkewParam l = preset(name);
    const int d = l.degree();
    const CPoly q1 = fiber_poly(l, 1.0).poly;
    std::vector<LevelCoding> levels;
    for (int n = 1; n <= 3; ++n) levels.push_back(code_level_n(l, n));
    for (int n = 2; n <= 3; ++n) {
      const LevelCoding& cur = levels[n - 1];
      const LevelCoding& prev = levels[n - 2];
      ASSERT_EQ(cur.roots.size(), static_cast<std::size_t>(std::pow(d, n)));
      for (std::size_t i = 0; i < cur.roots.size(); ++i) {
        const Word prefix(cur.words[i].begin(), cur.words[i].end() - 1);
        EXPECT_EQ(nearest(prev.roots, q1.eval(cur.roots[i])), prev.index_of(prefix)) << name;
        // and the coded point is a root of the n-fold composition
        cd v = cur.roots[i];
        for (int k = 0; k < n; ++k) v = q1.eval(v);
        EXPECT_LT(std::abs(v), 1e-6 * std::pow(escape_norm(l), std::pow(d, n)));
      }
    }
  }
}

TEST(Coding, ZeroParameterRejected) {
  EXPECT_EQ(kind_of([] { code_level_n(SkewParam::zero(3), 2); }), ErrorKind::NotAdmissible);
}

TEST(ImgAction, Examples) {
  const Perm s3 = Perm::from_cycles(3, {{1, 2, 3}});
  const Perm s23 = Perm::from_cycles(3, {{2, 3}});
  EXPECT_EQ(img_action({2, 1, 3, 3}, 0, s3, 3), (Word{2, 1, 3, 3}));
  EXPECT_EQ(img_action({2, 1}, 1, s3, 3), (Word{2, 2}));
  EXPECT_EQ(img_action({2}, 1, s23, 3), (Word{3}));
  EXPECT_EQ(img_action({2, 1}, -1, s3, 3), (Word{2, 3}));
  EXPECT_EQ(kind_of([&] { img_action({4}, 1, s3, 3); }), ErrorKind::LetterOutOfRange);
  EXPECT_EQ(kind_of([&] { img_action({0, 1}, 1, s3, 3); }), ErrorKind::LetterOutOfRange);
}

TEST(LevelCheck, Examples) {
  const LevelCheck a = level_monodromy_check(preset("d2-s1-adm"), 2, 1);
  EXPECT_TRUE(a.match);
  const LevelCheck b = level_monodromy_check(preset("d3-ex2-adm"), 2, 1);
  EXPECT_TRUE(b.match);
  EXPECT_EQ(b.formula, b.numeric);
  for (const auto& name : {"d3-ex2-adm", "d3-ex3-adm", "d2-s1-adm"}) {
    const SkewParam l = preset(name);
    const int d = l.degree();
    const LevelCheck c = level_monodromy_check(l, 1, d);
    EXPECT_TRUE(c.match) << name;
    EXPECT_EQ(c.numeric, c.s.pow(d)) << name;
  }
  EXPECT_EQ(kind_of([] { level_monodromy_check(preset("d2-s1-adm"), 6, 1); }), ErrorKind::SizeGuard);
}

TEST(StrandCsv, HeaderAndRows) {
  const BraidGeometry g = track_circle(preset("d2-s1-adm"), 1, 1);
  std::ostringstream os;
  write_strands_csv(g, os);
  const std::string text = os.str();
  EXPECT_EQ(text.rfind("strand_id,t,re_w,im_w\n", 0), 0u);
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  EXPECT_EQ(lines, 1 + 2 * g.strands[0].t.size());
}
