#include <gtest/gtest.h>

#include "mhcat/coproducts.hpp"
#include "mhcat/random.hpp"

using namespace mhcat;

namespace {

ExtNonneg q(long n, long d = 1) { return ExtNonneg(n, d); }

const FinSpace X = FinSpace::of({"a", "b"});
const FinSpace Y = FinSpace::of({"u", "v", "w"});

TEST(Coproducts, Labels) {
  const FinSpace s = oplus(X, Y);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s.point(0).str(), "L:a");
  EXPECT_EQ(s.point(2).str(), "R:u");
  EXPECT_EQ(oplus(FinSpace::empty(), Y).size(), 3u);
}

TEST(Coproducts, Injections) {
  const Kernel il = injection(Side::left, X, Y), ir = injection(Side::right, X, Y);
  for (const Kernel* k : {&il, &ir}) {
    EXPECT_TRUE(is_normalized(*k));
    EXPECT_TRUE(is_copyable(*k));
  }
  EXPECT_EQ(il.at(Label::atom("b"), Label::parse("L:b")), q(1));
  EXPECT_EQ(ir.at(Label::atom("w"), Label::parse("R:w")), q(1));
  EXPECT_EQ(copair(il, ir), identity(oplus(X, Y)));
}

TEST(Coproducts, CopairOfNormalizedIsNormalized) {
  InstanceGenerator g(71);
  const FinSpace z = FinSpace::of({"p", "q"});
  for (int i = 0; i < 200; ++i) {
    const Kernel f = g.markov_kernel(X, z), h = g.markov_kernel(Y, z);
    const Kernel c = copair(f, h);
    ASSERT_TRUE(is_normalized(c));
    ASSERT_EQ(compose(c, injection(Side::left, X, Y)), f);
    ASSERT_EQ(compose(c, injection(Side::right, X, Y)), h);
  }
  EXPECT_THROW(copair(identity(X), identity(Y)), SpaceMismatch);
}

TEST(Coproducts, CopairIsTheOnlyFactorization) {
  // Any kernel out of X ⊕ Y is the copair of its restrictions.
  InstanceGenerator g(72);
  const FinSpace z = FinSpace::of({"p", "q", "r"});
  for (int i = 0; i < 200; ++i) {
    const Kernel h = g.markov_kernel(oplus(X, Y), z);
    ASSERT_EQ(copair(compose(h, injection(Side::left, X, Y)), compose(h, injection(Side::right, X, Y))), h);
  }
}

TEST(Coproducts, TensorIsAdditive) {
  InstanceGenerator g(73);
  for (int i = 0; i < 100; ++i) {
    const Kernel f = g.kernel(X, Y), h = g.kernel(X, Y);
    ASSERT_EQ(tensor(kernel_add(f, h), identity(X)), kernel_add(tensor(f, identity(X)), tensor(h, identity(X))));
  }
}

TEST(Distributivity, UnitSummands) {
  const FinSpace one = FinSpace::of({"u"}), other = FinSpace::of({"v"});
  const Isomorphism iso = distributivity_iso(X, one, other);
  EXPECT_EQ(iso.forward.dom().size(), 4u);
  EXPECT_EQ(iso.forward.at(Label::parse("L:(a,u)"), Label::parse("(a,L:u)")), q(1));
  EXPECT_EQ(iso.forward.at(Label::parse("R:(b,v)"), Label::parse("(b,R:v)")), q(1));
}

TEST(Distributivity, InversePairsUpToThreePoints) {
  for (std::size_t nx = 0; nx <= 3; ++nx)
    for (std::size_t ny = 0; ny <= 3; ++ny)
      for (std::size_t nz = 0; nz <= 3; ++nz) {
        const FinSpace x = InstanceGenerator::space(nx, "x");
        const FinSpace y = InstanceGenerator::space(ny, "y");
        const FinSpace z = InstanceGenerator::space(nz, "z");
        const Isomorphism iso = distributivity_iso(x, y, z);
        ASSERT_EQ(compose(iso.backward, iso.forward), identity(iso.forward.dom()));
        ASSERT_EQ(compose(iso.forward, iso.backward), identity(iso.forward.cod()));
        ASSERT_TRUE(is_normalized(iso.forward));
        ASSERT_TRUE(is_copyable(iso.forward));
        ASSERT_TRUE(is_normalized(iso.backward));
        for (std::size_t i = 0; i < iso.forward.rows(); ++i) {
          const Label from = iso.forward.dom().point(i);
          const auto [a, b] = from.untag().split();
          const Label target = Label::pair(a, from.kind() == Label::Kind::left ? Label::left(b) : Label::right(b));
          ASSERT_EQ(iso.forward.at(from, target), q(1));
        }
      }
}

TEST(Distributivity, InitialObject) {
  const Isomorphism iso = initial_iso(Y);
  EXPECT_EQ(iso.forward.rows(), 0u);
  EXPECT_EQ(iso.forward.cols(), 0u);
  EXPECT_EQ(iso.backward.rows(), 0u);
  EXPECT_EQ(compose(iso.backward, iso.forward), identity(FinSpace::empty()));
}

}  // namespace
