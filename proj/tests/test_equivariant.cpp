#include "steenrod/equivariant.hpp"
#include "steenrod/errors.hpp"
#include "steenrod/spaces.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace steenrod;
using test::share;

namespace {

ChainMap action_map(const CpComplex& A)
{
    ChainMap t;
    for (int k = 0; k <= A.top(); ++k)
        t.components.push_back(A.action(k));
    return t;
}

} // namespace

TEST(TotalComplex, CoboundarySquaresToZero)
{
    std::mt19937 rng(31);
    for (int p : {2, 3}) {
        const PrimeField F(p);
        std::vector<CpComplex> complexes;
        const PowerSpace P(share(bar_skeleton(2, 2)), p, 4);
        complexes.push_back(P.cp_complex(F));
        for (int trial = 0; trial < 5; ++trial) {
            const auto A = test::random_complex(F, rng, 3, 4);
            complexes.push_back(CpComplex::trivial(A));
            complexes.push_back(free_cp_complex(A));
        }
        for (const auto& A : complexes) {
            const TotalComplex T(A);
            for (int m = 0; m + 2 <= A.top(); ++m)
                EXPECT_TRUE(multiply(F, T.coboundary_matrix(m + 1), T.coboundary_matrix(m)).is_zero())
                    << "p=" << p << " m=" << m;
        }
    }
}

TEST(EquivariantCohomology, OrbitsOfTheZeroSphere)
{
    // (S^0)^p: two fixed points and (2^p - 2)/p free orbits
    for (int p : {2, 3}) {
        const PrimeField F(p);
        const PowerSpace P(share(sphere(0)), p, 5);
        const CpComplex cp = P.cp_complex(F);
        const std::size_t free_orbits = ((1u << p) - 2) / static_cast<std::size_t>(p);
        EXPECT_EQ(EquivariantCohomology(cp, 0).dim(), 2 + free_orbits);
        for (int m = 1; m <= 4; ++m)
            EXPECT_EQ(EquivariantCohomology(cp, m).dim(), 2u);
    }
}

TEST(EquivariantCohomology, TrivialActionMatchesKunnethCount)
{
    std::mt19937 rng(37);
    for (int p : {2, 3}) {
        const PrimeField F(p);
        for (int trial = 0; trial < 10; ++trial) {
            const auto A = test::random_complex(F, rng, 3, 5);
            const CpComplex cp = CpComplex::trivial(A);
            std::size_t running = 0;
            for (int m = 0; m + 1 <= A.top(); ++m) {
                running += Cohomology(A, m).dim();
                EXPECT_EQ(EquivariantCohomology(cp, m).dim(), running);
                EXPECT_EQ(KunnethLayout(A, m).dim(), running);
            }
        }
    }
}

TEST(EquivariantCohomology, FreeComplexIsOrdinaryCohomology)
{
    std::mt19937 rng(41);
    for (int p : {2, 3}) {
        const PrimeField F(p);
        for (int trial = 0; trial < 10; ++trial) {
            const auto A = test::random_complex(F, rng, 3, 4);
            const CpComplex free = free_cp_complex(A);
            EXPECT_TRUE(free.action_has_order_p());
            EXPECT_TRUE(free.action_commutes_with_boundary());
            for (int m = 0; m + 1 <= A.top(); ++m)
                EXPECT_EQ(EquivariantCohomology(free, m).dim(), Cohomology(A, m).dim());
        }
    }
}

TEST(EquivariantCohomology, RotationActsTrivially)
{
    for (int p : {2, 3}) {
        const PrimeField F(p);
        const PowerSpace P(share(bar_skeleton(2, 2)), p, 3);
        const CpComplex cp = P.cp_complex(F);
        const auto t = action_map(cp);
        for (int m = 0; m <= 2; ++m) {
            const EquivariantCohomology h(cp, m);
            EXPECT_EQ(induced_map(t, cp, cp, h, h), MatrixFp::identity(h.dim()));
        }
    }
}

TEST(EquivariantCohomology, CoordinatesOfRepresentatives)
{
    const PrimeField F(3);
    const PowerSpace P(share(bar_skeleton(3, 2)), 3, 3);
    const CpComplex cp = P.cp_complex(F);
    const EquivariantCohomology h(cp, 2);
    ASSERT_GT(h.dim(), 0u);
    for (std::size_t i = 0; i < h.dim(); ++i) {
        DenseVector e(h.dim(), 0);
        e[i] = 1;
        EXPECT_EQ(h.coordinates(h.representative(i)), e);
    }
    // a coboundary has zero class
    const TotalComplex& T = h.total();
    const auto cols = T.coboundary_columns(1);
    const auto c = T.split(2, cols.front());
    EXPECT_EQ(h.coordinates(c), DenseVector(h.dim(), 0));
    // a basis functional with nonzero coboundary is rejected
    const auto up = T.coboundary_columns(2);
    const auto hit = std::find_if(up.begin(), up.end(), [](const SparseVector& v) { return !v.empty(); });
    ASSERT_NE(hit, up.end());
    const auto bad = T.split(2, SparseVector::unit(static_cast<Index>(hit - up.begin())));
    EXPECT_FALSE(h.is_cocycle(bad));
}

TEST(Kunneth, RoundTrip)
{
    std::mt19937 rng(43);
    for (int p : {2, 3}) {
        const PrimeField F(p);
        const auto A = bar_skeleton(2, 3).chain_complex(F, 5);
        for (int m = 0; m <= 4; ++m) {
            const KunnethLayout L(A, m);
            for (int trial = 0; trial < 10; ++trial) {
                const auto flat = test::random_vector(F, rng, L.dim());
                const auto w = L.unflatten(flat);
                EXPECT_EQ(L.flatten(w), flat);
                EXPECT_EQ(L.extract(L.assemble(w)), w);
            }
        }
    }
}

TEST(Kunneth, CrossProductIndependentOfRepresentative)
{
    std::mt19937 rng(47);
    for (int p : {2, 3}) {
        const PrimeField F(p);
        for (int trial = 0; trial < 10; ++trial) {
            const auto A = test::random_complex(F, rng, 3, 5);
            const CpComplex cp = CpComplex::trivial(A);
            for (int i = 1; i <= 3; ++i)
                for (int j = 0; i + j + 1 <= A.top(); ++j) {
                    const EquivariantCohomology h(cp, i + j);
                    const auto f = test::random_cocycle(F, rng, A, i);
                    const auto g = test::random_vector(F, rng, A.dim(i - 1));
                    const auto f2 = add(F, f, A.boundary(i).apply_transpose(F, g));
                    EXPECT_EQ(h.coordinates(cross_product(A, j, i, f)), h.coordinates(cross_product(A, j, i, f2)));
                    EXPECT_TRUE(h.is_cocycle(cross_product(A, j, i, f)));
                }
        }
    }
}

TEST(Kunneth, ExtractRejectsNonCocycleComponents)
{
    const PrimeField F(3);
    const auto A = bar_skeleton(2, 2).chain_complex(F, 3);
    const KunnethLayout L(A, 1);
    EquivariantCochain c{1, {DenseVector(A.dim(1), 0), DenseVector(A.dim(0), 0)}};
    EXPECT_EQ(L.extract(c), L.zero());
    c.components[0][0] = 1; // d[1|1] = 2[1] over F_3
    EXPECT_THROW(L.extract(c), InvariantViolation);
}

TEST(Transfer, VanishesOnTrivialActions)
{
    std::mt19937 rng(53);
    for (int p : {2, 3}) {
        const PrimeField F(p);
        for (int trial = 0; trial < 10; ++trial) {
            const auto A = test::random_complex(F, rng, 3, 4);
            const CpComplex cp = CpComplex::trivial(A);
            for (int m = 0; m + 1 <= A.top(); ++m) {
                const EquivariantCohomology h(cp, m);
                const auto u = test::random_cocycle(F, rng, A, m);
                const auto c = transfer(F, cp, m, u);
                EXPECT_EQ(h.coordinates(c), DenseVector(h.dim(), 0));
                EXPECT_EQ(ReducedCohomology(cp, m).transfer_rank(), 0u);
            }
        }
    }
}

TEST(Transfer, FreeComplexesHaveNoReducedCohomology)
{
    std::mt19937 rng(59);
    for (int p : {2, 3}) {
        const PrimeField F(p);
        for (int trial = 0; trial < 10; ++trial) {
            const auto A = test::random_complex(F, rng, 3, 4);
            const CpComplex free = free_cp_complex(A);
            for (int m = 0; m + 1 <= A.top(); ++m)
                EXPECT_EQ(ReducedCohomology(free, m).dim(), 0u);
        }
    }
}

TEST(EquivariantCohomology, NeedsDegreeAboveM)
{
    const PrimeField F(2);
    const auto A = bar_skeleton(2, 2).chain_complex(F, 2);
    const CpComplex cp = CpComplex::trivial(A);
    EXPECT_THROW(EquivariantCohomology(cp, 2), TruncationError);
}
