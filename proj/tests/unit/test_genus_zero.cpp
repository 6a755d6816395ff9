#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spherecx/genus_zero.hpp"
#include "spherecx/search.hpp"

using namespace spherecx;

namespace {

SpherePartition part(int s, std::vector<int> block) { return SpherePartition::from_block(s, block); }

}  // namespace

TEST(Signature, PantsSize) {
  EXPECT_EQ((ManifoldSignature{0, 6}).pants_size(), 3);
  EXPECT_EQ((ManifoldSignature{1, 2}).pants_size(), 2);
  EXPECT_EQ((ManifoldSignature{1, 1}).pants_size(), 1);
  EXPECT_EQ((ManifoldSignature{0, 3}).pants_size(), 0);
  EXPECT_EQ(to_string(ManifoldSignature{1, 3}), "(1,3)");
}

TEST(SpherePartition, CanonicalForm) {
  SpherePartition p = part(5, {3, 4});
  EXPECT_EQ(p.block(), (std::vector<int>{1, 2, 5}));
  EXPECT_EQ(p.complement(), (std::vector<int>{3, 4}));
  EXPECT_EQ(p.id(), "p:1,2,5|s=5");
  EXPECT_EQ(SpherePartition::parse(p.id()), p);
  EXPECT_THROW(part(5, {1}), std::invalid_argument);
  EXPECT_THROW(part(5, {1, 2, 3, 4}), std::invalid_argument);
  EXPECT_THROW(SpherePartition::parse("p:2,1|s=5"), std::invalid_argument);
  EXPECT_THROW(SpherePartition::parse("q:1,2|s=5"), std::invalid_argument);
  EXPECT_FALSE(SpherePartition::is_partition_id("z:0"));
}

TEST(SpherePartition, DisjointnessExamples) {
  EXPECT_TRUE(spheres_disjoint(part(5, {1, 2}), part(5, {3, 4})));
  EXPECT_FALSE(spheres_disjoint(part(5, {1, 2}), part(5, {2, 3})));
  EXPECT_TRUE(spheres_disjoint(part(6, {1, 2}), part(6, {1, 2, 3})));
  EXPECT_THROW(spheres_disjoint(part(5, {1, 2}), part(6, {1, 2})), std::invalid_argument);
  EXPECT_THROW(spheres_disjoint(part(5, {1, 2}), part(5, {1, 2})), std::invalid_argument);
}

TEST(GenusZero, BuildExamples) {
  FlagComplex s4 = build_genus_zero_complex(4);
  EXPECT_EQ(s4.size(), 3u);
  EXPECT_EQ(s4.edge_count(), 0u);
  FlagComplex s5 = build_genus_zero_complex(5);
  EXPECT_EQ(s5.size(), 10u);
  EXPECT_EQ(s5.edge_count(), 15u);
  EXPECT_TRUE(search_isomorphism(s5, catalog("petersen")).map);
  EXPECT_EQ(f_vector(build_genus_zero_complex(6), 2).counts, (std::vector<std::size_t>{25, 105, 105}));
  EXPECT_EQ(build_genus_zero_complex(3).size(), 0u);
  EXPECT_THROW(build_genus_zero_complex(2), std::invalid_argument);
}

TEST(GenusZero, VertexCountClosedForm) {
  for (int s = 4; s <= 10; ++s) {
    const std::size_t formula = (std::size_t{1} << (s - 1)) - static_cast<std::size_t>(s) - 1;
    EXPECT_EQ(build_genus_zero_complex(s).size(), formula) << s;
    EXPECT_EQ(oracle::partitions(s).size(), formula) << s;
  }
}

TEST(GenusZero, MatchesNaivePartitionModel) {
  for (int s = 4; s <= 8; ++s) {
    FlagComplex c = build_genus_zero_complex(s);
    auto blocks = oracle::partitions(s);
    ASSERT_EQ(blocks.size(), c.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      VertexIndex a = c.index(oracle::partition_id(blocks[i], s));
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        VertexIndex b = c.index(oracle::partition_id(blocks[j], s));
        EXPECT_EQ(c.adjacent(a, b), oracle::nested(blocks[i], blocks[j], s));
      }
    }
  }
}

TEST(GenusZero, DisjointnessSymmetric) {
  auto parts = all_partitions(7);
  for (const auto& p : parts) {
    for (const auto& q : parts) {
      if (p != q) EXPECT_EQ(spheres_disjoint(p, q), spheres_disjoint(q, p));
    }
  }
}

TEST(GenusZero, MaximalCliquesArePureAndLaminar) {
  for (int s = 4; s <= 8; ++s) {
    FlagComplex c = build_genus_zero_complex(s);
    auto parts = partitions_of(c);
    for (const Simplex& m : maximal_cliques(c)) {
      EXPECT_EQ(m.size(), static_cast<std::size_t>(s - 3));
      // Far sides pairwise nested or disjoint.
      for (VertexIndex a : m) {
        for (VertexIndex b : m) {
          if (a == b) continue;
          std::uint32_t x = parts[a].far_side_mask(), y = parts[b].far_side_mask();
          EXPECT_TRUE((x & y) == 0 || (x & y) == x || (x & y) == y);
        }
      }
    }
  }
}

TEST(Caterpillar, WindowExamples) {
  FlagComplex w1 = build_caterpillar_window(1);
  EXPECT_EQ(w1.size(), 6u);
  EXPECT_EQ(w1.edge_count(), 5u);
  EXPECT_TRUE(w1.is_forest());
  FlagComplex w0 = build_caterpillar_window(0);
  EXPECT_EQ(w0.size(), 2u);
  EXPECT_EQ(w0.edge_count(), 1u);
  EXPECT_THROW(build_caterpillar_window(-1), std::invalid_argument);
}

TEST(Caterpillar, DegreesAndTags) {
  FlagComplex w = build_caterpillar_window(7);
  for (VertexIndex v = 0; v < w.size(); ++v) {
    auto cv = CaterpillarVertex::parse(w.id(v));
    EXPECT_EQ(w.has_tag(v, "separating"), cv.separating());
    EXPECT_EQ(w.has_tag(v, "nonseparating"), !cv.separating());
    if (w.has_tag(v, "boundary-effect")) {
      EXPECT_TRUE(cv.spine);
      EXPECT_EQ(std::abs(cv.position), 7);
      continue;
    }
    EXPECT_EQ(w.degree(v), cv.spine ? 3u : 1u) << w.id(v);
  }
}

TEST(Caterpillar, AcyclicAndConnected) {
  for (int m = 0; m <= 50; ++m) {
    FlagComplex w = build_caterpillar_window(m);
    EXPECT_TRUE(w.is_forest());
    EXPECT_TRUE(w.is_connected());
  }
}

TEST(Caterpillar, IdealAdjacency) {
  CaterpillarVertex z0{true, 0}, z1{true, 1}, w0{false, 0}, w1{false, 1};
  EXPECT_TRUE(caterpillar_adjacent(z0, z1));
  EXPECT_TRUE(caterpillar_adjacent(z0, w0));
  EXPECT_FALSE(caterpillar_adjacent(z0, w1));
  EXPECT_FALSE(caterpillar_adjacent(w0, w1));
  EXPECT_FALSE(caterpillar_adjacent(z0, z0));
  EXPECT_EQ(CaterpillarVertex::parse("w:-3").id(), "w:-3");
  EXPECT_THROW(CaterpillarVertex::parse("x:1"), std::invalid_argument);
}

TEST(Catalog, Entries) {
  FlagComplex p = catalog("petersen");
  EXPECT_EQ(p.size(), 10u);
  EXPECT_EQ(p.edge_count(), 15u);
  for (VertexIndex v = 0; v < p.size(); ++v) EXPECT_EQ(p.degree(v), 3u);
  // Girth 5: no triangles and no 4-cycles.
  EXPECT_TRUE(cliques_by_size(p, 3)[2].empty());
  for (VertexIndex a = 0; a < p.size(); ++a) {
    for (VertexIndex b = a + 1; b < p.size(); ++b) {
      int common = 0;
      for (VertexIndex c = 0; c < p.size(); ++c) common += p.adjacent(a, c) && p.adjacent(b, c);
      EXPECT_LE(common, 1);
    }
  }
  FlagComplex k33 = catalog("k33");
  EXPECT_EQ(k33.size(), 6u);
  EXPECT_EQ(k33.edge_count(), 9u);
  EXPECT_EQ(catalog("m11").size(), 1u);
  EXPECT_EQ(catalog("m04").size(), 3u);
  EXPECT_EQ(catalog("k3").edge_count(), 3u);
  EXPECT_EQ(catalog("k13").edge_count(), 3u);
  EXPECT_THROW(catalog("nope"), std::invalid_argument);
  EXPECT_EQ(catalog_names().size(), 6u);
}

TEST(Laminar, RegionsOfSixLabelSystem) {
  std::vector<SpherePartition> sys{part(6, {1, 2}), part(6, {1, 2, 3}), part(6, {5, 6})};
  auto regions = laminar_regions(6, sys);
  ASSERT_EQ(regions.size(), 4u);
  for (const auto& r : regions) EXPECT_TRUE(r.is_pants());
  std::vector<SpherePartition> one{part(6, {1, 2})};
  auto r1 = laminar_regions(6, one);
  ASSERT_EQ(r1.size(), 2u);
  std::vector<int> counts{r1[0].boundary_count(), r1[1].boundary_count()};
  std::sort(counts.begin(), counts.end());
  EXPECT_EQ(counts, (std::vector<int>{3, 5}));
  std::vector<SpherePartition> crossing{part(6, {1, 2}), part(6, {2, 3})};
  EXPECT_THROW(laminar_regions(6, crossing), std::invalid_argument);
}
