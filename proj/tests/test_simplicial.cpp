#include "steenrod/errors.hpp"
#include "steenrod/simplicial.hpp"
#include "steenrod/spaces.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

using namespace steenrod;
using test::share;

namespace {

using Op = SimplicialOp;
using Kind = SimplicialOp::Kind;

// Rewrites a composite (outermost first) into s ... s d ... d using only the
// simplicial identities. The word may cancel to nothing.
void rewrite(std::vector<Op>& w)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
            const Op a = w[k], b = w[k + 1];
            if (a.kind == Kind::Face && b.kind == Kind::Degeneracy) {
                const int i = a.index, j = b.index;
                if (i == j || i == j + 1) {
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(k), w.begin() + static_cast<std::ptrdiff_t>(k) + 2);
                } else if (i < j) {
                    w[k] = {Kind::Degeneracy, j - 1};
                    w[k + 1] = {Kind::Face, i};
                } else {
                    w[k] = {Kind::Degeneracy, j};
                    w[k + 1] = {Kind::Face, i - 1};
                }
                changed = true;
                break;
            }
            if (a.kind == Kind::Degeneracy && b.kind == Kind::Degeneracy && a.index <= b.index) {
                w[k] = {Kind::Degeneracy, b.index + 1};
                w[k + 1] = {Kind::Degeneracy, a.index};
                changed = true;
                break;
            }
            if (a.kind == Kind::Face && b.kind == Kind::Face && a.index < b.index) {
                w[k] = {Kind::Face, b.index - 1};
                w[k + 1] = {Kind::Face, a.index};
                changed = true;
                break;
            }
        }
    }
}

SimplexRef rewrite_oracle(const FiniteSimplicialSet& X, GeneratorId g, std::vector<Op> ops)
{
    for (;;) {
        rewrite(ops);
        if (ops.empty() || ops.back().kind == Kind::Degeneracy) {
            std::uint32_t mask = 0;
            for (const auto& op : ops)
                mask |= 1u << op.index;
            return {g, mask, X.generator(g).dim + static_cast<int>(ops.size())};
        }
        const int j = ops.back().index;
        ops.pop_back();
        const SimplexRef f = X.generator(g).faces.at(static_cast<std::size_t>(j));
        for (int bit = 31; bit >= 0; --bit)
            if (f.degeneracies >> bit & 1u)
                ops.push_back({Kind::Degeneracy, bit});
        g = f.generator;
    }
}

std::vector<FiniteSimplicialSet> sample_spaces()
{
    std::vector<FiniteSimplicialSet> out;
    out.push_back(bar_skeleton(2, 3));
    out.push_back(bar_skeleton(3, 3));
    out.push_back(sphere(2));
    out.push_back(polygon(4));
    out.push_back(from_facets(4, {{0, 1, 2, 3}}));
    return out;
}

std::vector<std::size_t> cohomology_dims(const FiniteSimplicialSet& X, int p, int top)
{
    const PrimeField F(p);
    const auto C = X.chain_complex(F, top + 1);
    std::vector<std::size_t> dims;
    for (int n = 0; n <= top; ++n)
        dims.push_back(Cohomology(C, n).dim());
    return dims;
}

} // namespace

TEST(Normalize, TextbookIdentities)
{
    const auto X = bar_skeleton(2, 2);
    const GeneratorId g = *X.find("[1]");
    const std::vector<Op> d0s0{{Kind::Face, 0}, {Kind::Degeneracy, 0}};
    EXPECT_EQ(X.normalize(g, d0s0), X.nondegenerate(g));
    const std::vector<Op> s0s0{{Kind::Degeneracy, 0}, {Kind::Degeneracy, 0}};
    const std::vector<Op> s1s0{{Kind::Degeneracy, 1}, {Kind::Degeneracy, 0}};
    EXPECT_EQ(X.normalize(g, s0s0), X.normalize(g, s1s0));
    EXPECT_EQ(X.normalize(g, s1s0).word().indices, (std::vector<int>{1, 0}));
}

TEST(Normalize, MatchesRewritingOracle)
{
    std::mt19937 rng(99);
    for (const auto& X : sample_spaces()) {
        for (GeneratorId g = 0; g < X.generator_count(); ++g) {
            for (int trial = 0; trial < 60; ++trial) {
                std::vector<Op> ops;
                int dim = X.generator(g).dim;
                const int len = static_cast<int>(rng() % 6);
                // build innermost first so every operator is defined
                for (int k = 0; k < len; ++k) {
                    if (dim > 0 && rng() % 2) {
                        ops.insert(ops.begin(), {Kind::Face, static_cast<int>(rng() % (dim + 1))});
                        --dim;
                    } else if (dim < 6) {
                        ops.insert(ops.begin(), {Kind::Degeneracy, static_cast<int>(rng() % (dim + 1))});
                        ++dim;
                    }
                }
                EXPECT_EQ(X.normalize(g, ops), rewrite_oracle(X, g, ops)) << X.generator(g).name;
            }
        }
    }
}

TEST(SimplexTable, SimplicialIdentities)
{
    for (const auto& X : sample_spaces()) {
        const SimplexTable T(X, 5);
        for (int m = 2; m <= 5; ++m)
            for (std::size_t s = 0; s < T.size(m); ++s)
                for (int j = 1; j <= m; ++j)
                    for (int i = 0; i < j; ++i)
                        ASSERT_EQ(T.face(m - 1, T.face(m, s, j), i), T.face(m - 1, T.face(m, s, i), j - 1));
    }
}

TEST(SimplexTable, CountsDegenerateSimplices)
{
    // S^1 = one vertex and one edge: m + 1 simplices in degree m (s..s v plus m degeneracies of x)
    const SimplexTable T(sphere(1), 5);
    for (int m = 0; m <= 5; ++m)
        EXPECT_EQ(T.size(m), static_cast<std::size_t>(m == 0 ? 1 : m + 1));
}

TEST(Chains, BoundarySquaresToZero)
{
    for (int p : {2, 3, 5})
        for (const auto& X : sample_spaces())
            EXPECT_TRUE(X.chain_complex(PrimeField(p), 6).boundary_squares_to_zero());
}

TEST(Chains, KnownCohomology)
{
    using V = std::vector<std::size_t>;
    EXPECT_EQ(cohomology_dims(bar_skeleton(2, 3), 2, 3), (V{1, 1, 1, 1}));
    EXPECT_EQ(cohomology_dims(bar_skeleton(2, 3), 3, 3), (V{1, 0, 0, 1}));
    EXPECT_EQ(cohomology_dims(bar_skeleton(2, 2), 3, 2), (V{1, 0, 0}));
    EXPECT_EQ(cohomology_dims(bar_skeleton(3, 4), 3, 3), (V{1, 1, 1, 1}));
    EXPECT_EQ(cohomology_dims(bar_skeleton(3, 4), 2, 3), (V{1, 0, 0, 0}));
    // top degree of a skeleton: every cochain is a cocycle
    EXPECT_EQ(cohomology_dims(bar_skeleton(3, 3), 3, 3), (V{1, 1, 1, 6}));
    EXPECT_EQ(cohomology_dims(sphere(3), 2, 4), (V{1, 0, 0, 1, 0}));
    EXPECT_EQ(cohomology_dims(sphere(0), 2, 1), (V{2, 0}));
    EXPECT_EQ(cohomology_dims(polygon(5), 3, 2), (V{1, 1, 0}));
    // boundary of the 3-simplex
    EXPECT_EQ(cohomology_dims(from_facets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}), 2, 3), (V{1, 0, 1, 0}));
    EXPECT_EQ(cohomology_dims(point(), 7, 3), (V{1, 0, 0, 0}));
}

TEST(PowerSpace, TorusCounts)
{
    const PowerSpace P(share(sphere(1)), 2, 3);
    EXPECT_EQ(P.size(0), 1u);
    EXPECT_EQ(P.size(1), 3u);
    EXPECT_EQ(P.size(2), 2u);
    EXPECT_EQ(P.size(3), 0u);
}

TEST(PowerSpace, CountMatchesEnumeration)
{
    for (const auto& X : sample_spaces()) {
        const auto Xs = share(X);
        for (int p : {2, 3}) {
            const int top = p == 2 ? 4 : 3;
            const PowerSpace P(Xs, p, top);
            const SimplexTable& T = P.base_table();
            for (int m = 0; m <= top; ++m) {
                const std::size_t n = T.size(m);
                std::size_t count = 0;
                std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
                for (;;) {
                    std::uint32_t meet = ~0u;
                    for (auto i : idx)
                        meet &= T.simplex(m, i).degeneracies;
                    count += meet == 0;
                    int r = p - 1;
                    while (r >= 0 && ++idx[r] == n)
                        idx[r--] = 0;
                    if (r < 0)
                        break;
                }
                EXPECT_EQ(P.size(m), count);
            }
        }
    }
}

TEST(PowerSpace, RotationAndDiagonal)
{
    for (int p : {2, 3}) {
        const PrimeField F(p);
        const PowerSpace P(share(bar_skeleton(2, 2)), p, 3);
        const CpComplex cp = P.cp_complex(F);
        EXPECT_TRUE(cp.action_has_order_p());
        EXPECT_TRUE(cp.action_commutes_with_boundary());
        EXPECT_TRUE(cp.complex().boundary_squares_to_zero());

        const auto d = diagonal_chain(F, P);
        EXPECT_TRUE(commutes_with_boundary(d, P.base().chain_complex(F, 3), cp.complex()));
        EXPECT_TRUE(commutes_with_action(d, CpComplex::trivial(P.base().chain_complex(F, 3)), cp));
        // the edge [1] goes to ([1], ..., [1])
        const auto& T = P.base_table();
        const std::uint32_t e = static_cast<std::uint32_t>(T.index_of(P.base().nondegenerate(*P.base().find("[1]"))));
        const std::vector<std::uint32_t> tuple(static_cast<std::size_t>(p), e);
        const auto pos = P.find(1, tuple);
        ASSERT_TRUE(pos.has_value());
        EXPECT_EQ(d[1].at(*pos, 0), 1);
        EXPECT_EQ(d[1].row_data().size(), P.size(1));
        EXPECT_EQ(d[1].nonzeros(), 1u);
    }
}

TEST(PowerSpace, ResourceGuard)
{
    try {
        PowerSpace P(share(bar_skeleton(3, 3)), 3, 3, 1000);
        FAIL() << "guard did not trigger";
    } catch (const ResourceLimitExceeded& e) {
        EXPECT_NE(std::string(e.what()).find("desk-scale exceeded"), std::string::npos);
    }
    ::setenv("STEENROD_PRODUCT_LIMIT", "1234", 1);
    EXPECT_EQ(product_limit_from_env(), 1234u);
    ::setenv("STEENROD_PRODUCT_LIMIT", "junk", 1);
    EXPECT_EQ(product_limit_from_env(77), 77u);
    ::unsetenv("STEENROD_PRODUCT_LIMIT");
    EXPECT_EQ(product_limit_from_env(), kDefaultProductLimit);
}

TEST(Morphism, InducedMapsCompose)
{
    const PrimeField F(2);
    const auto C4 = share(polygon(4));
    const auto C2 = share(polygon(2));
    const auto RP1 = share(bar_skeleton(2, 1));
    const auto fold = parse_morphism(
        R"({"images": {"v0": {"gen": "v0"}, "v1": {"gen": "v1"}, "v2": {"gen": "v0"}, "v3": {"gen": "v1"},
                       "e0": {"gen": "e0"}, "e1": {"gen": "e1"}, "e2": {"gen": "e0"}, "e3": {"gen": "e1"}}})",
        C4, C2);
    const auto quotient = parse_morphism(
        R"({"images": {"v0": {"gen": "*"}, "v1": {"gen": "*"}, "e0": {"gen": "[1]"}, "e1": {"gen": "[1]"}}})", C2,
        RP1);
    const auto both = quotient.after(fold);
    const auto direct = compose(F, quotient.induced_chain_map(F, 3), fold.induced_chain_map(F, 3));
    const auto composite = both.induced_chain_map(F, 3);
    for (int k = 0; k <= 3; ++k)
        EXPECT_EQ(direct[k], composite[k]);
    EXPECT_TRUE(commutes_with_boundary(composite, C4->chain_complex(F, 3), RP1->chain_complex(F, 3)));

    const PowerSpace P4(C4, 2, 2), P1(RP1, 2, 2);
    const auto big = both.cartesian_power(F, P4, P1);
    EXPECT_TRUE(commutes_with_action(big, P4.cp_complex(F), P1.cp_complex(F)));
}

TEST(Morphism, RejectsNonSimplicialImages)
{
    const auto C2 = share(polygon(2));
    const auto RP1 = share(bar_skeleton(2, 1));
    // vertices fixed but edges rotated: faces no longer match
    const auto C3 = share(polygon(3));
    EXPECT_THROW(parse_morphism(R"({"images": {"v0": {"gen": "v0"}, "v1": {"gen": "v1"}, "v2": {"gen": "v2"},
                                               "e0": {"gen": "e1"}, "e1": {"gen": "e2"}, "e2": {"gen": "e0"}}})",
                                C3, C3),
                 InvalidInput);
    EXPECT_THROW(parse_morphism(R"({"images": {"v0": {"gen": "*"}, "v1": {"gen": "*"}, "e0": {"gen": "*"}}})", C2, RP1),
                 InvalidInput);
}

TEST(SpaceDocuments, ParseAndReject)
{
    const auto X = parse_space(R"({"cap": 1, "generators": [["v"], ["x"]],
                                   "faces": {"x": [{"gen": "v"}, {"gen": "v"}]}})");
    EXPECT_EQ(X.count_in_dim(1), 1u);
    EXPECT_EQ(parse_space(R"({"builtin": "bar_skeleton", "q": 3, "dim": 2})").count_in_dim(2), 4u);
    EXPECT_EQ(parse_space(R"({"vertices": 3, "facets": [[0, 1, 2]]})").count_in_dim(1), 3u);
    EXPECT_THROW(parse_space("{not json"), InvalidInput);
    EXPECT_THROW(parse_space(R"({"builtin": "klein"})"), InvalidInput);
    // d_0 d_1 y = d_0 d_0 y fails: a triangle whose edges do not close up
    EXPECT_THROW(parse_space(R"({"cap": 2, "generators": [["a", "b"], ["e", "f"], ["y"]],
                                 "faces": {"e": [{"gen": "b"}, {"gen": "a"}], "f": [{"gen": "a"}, {"gen": "a"}],
                                           "y": [{"gen": "f"}, {"gen": "e"}, {"gen": "f"}]}})"),
                 InvalidInput);
    EXPECT_THROW(parse_space(R"({"cap": 1, "generators": [["v"], ["x"]], "faces": {"x": [{"gen": "v"}]}})"), InvalidInput);
}

TEST(SpaceDocuments, MapDocumentFromFile)
{
    const auto doc = load_map_document(test::data_dir() / "quotient_plus_collapse.json");
    ASSERT_EQ(doc.maps.size(), 2u);
    EXPECT_EQ(doc.source->count_in_dim(1), 2u);
    EXPECT_EQ(doc.target->count_in_dim(1), 1u);
}
