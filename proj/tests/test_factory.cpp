#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "skewbraid/braid.hpp"
#include "skewbraid/factory.hpp"

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

// Direct evaluation of (w^fixed - R_0^fixed z^fixed) prod (w^{d_j} - R_j^{d_j} z).
cd product_form(const CycleSpec& s, cd z, cd w) {
  cd v = 1.0;
  std::size_t r = 0;
  if (s.fixed > 0) {
    const double r0 = s.radii[r++];
    v *= std::pow(w, s.fixed) - std::pow(r0 * z, s.fixed);
  }
  for (int len : s.cycles) {
    const double rj = s.radii[r++];
    v *= std::pow(w, len) - std::pow(rj, len) * z;
  }
  return v;
}

}  // namespace

TEST(CycleSpec, Validation) {
  EXPECT_EQ(kind_of([] { CycleSpec{3, 1, {1, 1}, {2, 3, 4}}.validate(); }), ErrorKind::SpecInvalid);
  EXPECT_EQ(kind_of([] { CycleSpec{4, 1, {2}, {2, 3}}.validate(); }), ErrorKind::SpecInvalid);
  EXPECT_EQ(kind_of([] { CycleSpec{4, 0, {2, 2}, {3, 3}}.validate(); }), ErrorKind::SpecInvalid);
  EXPECT_EQ(kind_of([] { CycleSpec{4, 0, {2, 2}, {2}}.validate(); }), ErrorKind::SpecInvalid);
  EXPECT_NO_THROW((CycleSpec{5, 0, {2, 3}, {2, 3}}.validate()));
}

TEST(CycleTypeParams, DegreeThreeCubics) {
  const SkewParam ex2 = cycle_type_params(CycleSpec{3, 0, {3}, {2.0}});
  const CPoly q2 = fiber_poly(ex2, cd(0.3, 0.7)).poly;
  EXPECT_NEAR(std::abs(q2[0] + 8.0 * cd(0.3, 0.7)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(q2[1]), 0.0, 1e-12);

  const SkewParam ex1 = cycle_type_params(CycleSpec{3, 3, {}, {2.0}});
  const cd z(0.6, -0.8);
  EXPECT_NEAR(std::abs(fiber_poly(ex1, z).poly[0] + 8.0 * z * z * z), 0.0, 1e-12);
}

TEST(CycleTypeParams, ExpansionRoundTrip) {
  std::mt19937_64 rng(61);
  for (int d = 2; d <= 5; ++d)
    for (const CycleSpec& s : cycle_type_specs(d)) {
      const SkewParam l = cycle_type_params(s);
      // the fixed = 1 case is compared after the shift w -> w + R_0 z / d
      for (int k = 0; k < 20; ++k) {
        const cd z = oracle::random_complex(rng, 1.2), w = oracle::random_complex(rng, 3.0);
        const cd shift = s.fixed == 1 ? s.radii[0] * z / static_cast<double>(d) : cd(0.0);
        const cd direct = product_form(s, z, w + shift);
        const cd via = fiber_poly(l, z).poly.eval(w);
        EXPECT_LE(std::abs(via - direct), 1e-10 * std::max(1.0, std::abs(direct)));
      }
    }
}

TEST(CycleTypeParams, ScaleMultipliesEntries) {
  const CycleSpec s{4, 1, {3}, {2, 3}};
  const SkewParam a = cycle_type_params(s, 1.0), b = cycle_type_params(s, 8.0);
  for (std::size_t i = 0; i < a.flat().size(); ++i) EXPECT_NEAR(std::abs(b.flat()[i] - 8.0 * a.flat()[i]), 0.0, 1e-12);
}

TEST(Partitions, SeventeenForDegreesTwoToFive) {
  std::size_t total = 0;
  const std::vector<std::size_t> per_degree{2, 3, 5, 7};
  for (int d = 2; d <= 5; ++d) {
    const auto specs = cycle_type_specs(d);
    EXPECT_EQ(specs.size(), per_degree[d - 2]);
    total += specs.size();
    std::set<std::vector<int>> types;
    for (const auto& s : specs) {
      EXPECT_NO_THROW(s.validate());
      types.insert(s.cycle_type());
    }
    EXPECT_EQ(types.size(), specs.size());
  }
  EXPECT_EQ(total, 17u);
}

TEST(Partitions, TrackedCycleTypeEqualsRequested) {
  for (int d = 2; d <= 5; ++d)
    for (const CycleSpec& s : cycle_type_specs(d)) {
      const ScaledParam sp = cycle_type_params_auto(s);
      EXPECT_TRUE(sp.report.admissible);
      EXPECT_EQ(track_circle(sp.lambda, 1, 1).permutation.cycle_type(), s.cycle_type())
          << "d=" << d << " fixed=" << s.fixed;
    }
}

TEST(QuadS, Examples) {
  EXPECT_EQ(quad_s(1, 0, 0), 2);
  EXPECT_EQ(quad_s(0, 1, 0), 1);
  EXPECT_EQ(quad_s(0, 0, 1), 0);
  EXPECT_EQ(kind_of([] { quad_s(0, 0, 0); }), ErrorKind::AllZero);
  EXPECT_EQ(kind_of([] { quad_s(0, 1, 1); }), ErrorKind::BoundaryRoot);
}

TEST(QuadS, CountsRootsInsideTheDisk) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const cd a = oracle::random_complex(rng, 2.0), b = oracle::random_complex(rng, 2.0),
             c = oracle::random_complex(rng, 2.0);
    const auto rs = roots(CPoly({c * c, b * b, a * a}));
    int inside = 0;
    bool boundary = false;
    for (cd z : rs) {
      inside += std::abs(z) < 1.0;
      boundary = boundary || std::abs(std::abs(z) - 1.0) < 1e-6;
    }
    if (!boundary) {
      EXPECT_EQ(quad_s(a, b, c), inside);
    }
  }
}

TEST(QuadS, TripleLaw) {
  // s(lambda) equals the tracked exponent sum; components and linking follow.
  struct Case {
    const char* name;
    int s, components, linking;
  };
  for (const Case& c : {Case{"d2-s0-adm", 0, 2, 0}, Case{"d2-s1-adm", 1, 1, 0}, Case{"d2-s2-adm", 2, 2, 1}}) {
    const SkewParam l = preset(c.name);
    const auto& row = l.rows()[0];
    EXPECT_EQ(quad_s(row[2], row[1], row[0]), c.s);
    const BraidInvariants inv = invariants(track_circle(l, 1, 1));
    EXPECT_EQ(inv.exponent_sum, c.s) << c.name;
    EXPECT_EQ(inv.component_count, c.components) << c.name;
    if (c.components == 2) {
      EXPECT_EQ(inv.linking_matrix[0][1], c.linking) << c.name;
    } else {
      EXPECT_EQ(inv.windings, (std::vector<int>{2})) << c.name;
    }
  }
}

TEST(Presets, ExactValues) {
  EXPECT_EQ(preset("d3-ex1").flat(), (std::vector<cd>{0, 0, 0, -2, 0, 0, 0}));
  EXPECT_EQ(preset("d3-ex2").flat(), (std::vector<cd>{0, -2, 0, 0, 0, 0, 0}));
  EXPECT_EQ(preset("d3-ex3").flat(), (std::vector<cd>{0, 0, 0, 0, 0, cd(0, 4), 0}));
  EXPECT_EQ(preset("d3-ex2-adm"), preset("d3-ex2").scaled(4.0));
  EXPECT_EQ(kind_of([] { preset("nope"); }), ErrorKind::UnknownPreset);
  for (const auto& name : preset_names())
    if (name.find("-adm") != std::string::npos) {
      EXPECT_TRUE(admissibility_certificate(preset(name)).admissible);
    }
}
