#include "dirred/factor.hpp"

#include <gtest/gtest.h>

#include "dirred/errors.hpp"

namespace dirred {
namespace {

TEST(Factor, DefaultIsScalarOne) {
  const Factor f;
  EXPECT_TRUE(f.vars().empty());
  EXPECT_EQ(f.values(), std::vector<double>{1.0});
  EXPECT_EQ(Factor::scalar(0.25).values(), std::vector<double>{0.25});
}

TEST(Factor, ConstructorValidates) {
  EXPECT_THROW(Factor({0, 0}, {2, 2}, {1, 2, 3, 4}), InputError);
  EXPECT_THROW(Factor({0}, {0}, {}), InputError);
  EXPECT_THROW(Factor({0, 1}, {2, 3}, {1, 2, 3}), InputError);
}

TEST(Factor, LastVariableVariesFastest) {
  // f(a, b) = 10a + b over cards (2, 3).
  const Factor f({4, 7}, {2, 3}, {0, 1, 2, 10, 11, 12});
  const Factor r = f.reordered(std::vector<NodeId>{7, 4});
  EXPECT_EQ(r.vars(), (std::vector<NodeId>{7, 4}));
  EXPECT_EQ(r.values(), (std::vector<double>{0, 10, 1, 11, 2, 12}));
  EXPECT_EQ(r.reordered(std::vector<NodeId>{4, 7}), f);
}

TEST(Factor, SliceAndSum) {
  const Factor f({4, 7}, {2, 3}, {0, 1, 2, 10, 11, 12});
  EXPECT_EQ(f.sliced(4, 1).values(), (std::vector<double>{10, 11, 12}));
  EXPECT_EQ(f.sliced(7, 2).values(), (std::vector<double>{2, 12}));
  EXPECT_EQ(f.summed_out(4).values(), (std::vector<double>{10, 12, 14}));
  EXPECT_EQ(f.summed_out(7).values(), (std::vector<double>{3, 33}));
  EXPECT_DOUBLE_EQ(f.total(), 36.0);
  EXPECT_THROW(f.sliced(4, 2), InputError);
}

TEST(Factor, ProductBroadcasts) {
  const Factor a({0}, {2}, {0.2, 0.9});
  const Factor b({1}, {2}, {0.5, 0.25});
  const Factor ab = a * b;
  EXPECT_EQ(ab.vars(), (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(ab.values(), (std::vector<double>{0.1, 0.05, 0.45, 0.225}));

  const Factor c({1, 0}, {2, 2}, {1, 2, 3, 4});
  const Factor ac = a * c;
  EXPECT_EQ(ac.vars(), (std::vector<NodeId>{0, 1}));
  // ac(x0, x1) = a(x0) * c(x1, x0)
  EXPECT_EQ(ac.values(), (std::vector<double>{0.2 * 1, 0.2 * 3, 0.9 * 2, 0.9 * 4}));
  EXPECT_EQ((Factor::scalar(2.0) * a).values(), (std::vector<double>{0.4, 1.8}));
}

TEST(Factor, ProductRejectsCardinalityClash) {
  EXPECT_THROW(Factor({0}, {2}, {1, 1}) * Factor({0}, {3}, {1, 1, 1}), InputError);
}

TEST(Factor, Relabel) {
  Factor f({0, 2}, {2, 2}, {1, 2, 3, 4});
  f.relabel(std::vector<NodeId>{5, 0, 1});
  EXPECT_EQ(f.vars(), (std::vector<NodeId>{5, 1}));
  EXPECT_EQ(f.values(), (std::vector<double>{1, 2, 3, 4}));
}

TEST(Factor, CellCount) {
  EXPECT_EQ(cell_count(std::vector<std::size_t>{}), 1u);
  EXPECT_EQ(cell_count(std::vector<std::size_t>{2, 3, 3}), 18u);
}

}  // namespace
}  // namespace dirred
