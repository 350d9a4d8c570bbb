// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "steenrod/classical.hpp"
#include "steenrod/diagonal.hpp"
#include "steenrod/errors.hpp"
#include "steenrod/resolution.hpp"
#include "steenrod/spaces.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>

using namespace steenrod;
using test::share;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream note;
    int checks = 0;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok && passed) {
            passed = false;
            note << "first failure: " << what;
        }
    }
};

struct Space {
    std::string name;
    std::shared_ptr<const FiniteSimplicialSet> X;
    int p;
    int budget;
};

std::vector<Space> acceptance_spaces()
{
    return {
        {"RP^2 model", share(bar_skeleton(2, 2)), 2, 7},
        {"RP^3 model", share(bar_skeleton(2, 3)), 2, 7},
        {"B(Z/3) 4-skeleton", share(bar_skeleton(3, 4)), 3, 4},
    };
}

DenseVector unit(std::size_t dim, std::size_t i)
{
    DenseVector u(dim, 0);
    u[i] = 1;
    return u;
}

std::string show(const DenseVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(int(v[i]));
    return s + ")";
}

// Engines are expensive to warm up; share one per space across criteria.
std::map<std::string, std::unique_ptr<DiagonalEngine>> engines;

const DiagonalEngine& engine(const Space& s)
{
    auto& e = engines[s.name];
    if (!e)
        e = std::make_unique<DiagonalEngine>(PrimeField(s.p), s.X,
                                             EngineOptions{.degree_cap = s.budget, .cache = true});
    return *e;
}

void criterion_oracle_agreement(Outcome& o)
{
    for (const auto& s : acceptance_spaces()) {
        if (s.p != 2)
            continue;
        const PrimeField F(2);
        const auto& E = engine(s);
        for (int n = 0; n <= 3; ++n)
            for (std::size_t i = 0; i < E.cohomology(n).dim(); ++i) {
                const auto u = unit(E.cohomology(n).dim(), i);
                for (int k = 0; k <= n; ++k)
                    o.expect(E.sigma(n, u, k) == classical_sigma(F, s.X, n, u, k, s.budget),
                             s.name + " x" + std::to_string(n) + "_" + std::to_string(i) + " k=" + std::to_string(k));
            }
    }
    o.note << o.checks << " (class, k) pairs on RP^2 and RP^3 models, n <= 3";
}

void criterion_known_values(Outcome& o)
{
    const auto spaces = acceptance_spaces();
    const DenseVector one{1}, zero{0}, none{};
    const auto& rp2 = engine(spaces[0]);
    o.expect(rp2.sigma(1, one, 0) == one, "RP^2 Sq^0 x = x");
    o.expect(rp2.sigma(1, one, 1) == one && rp2.cohomology(2).dim() == 1, "RP^2 Sq^1 x = x^2");
    for (int k = 2; k <= 4; ++k)
        o.expect(is_zero(rp2.sigma(1, one, k)), "RP^2 Sq^" + std::to_string(k) + " x = 0");
    const auto& rp3 = engine(spaces[1]);
    o.expect(rp3.sigma(1, one, 1) == one, "RP^3 Sq^1 x = x^2");
    o.expect(rp3.sigma(2, one, 0) == one, "RP^3 Sq^0 x^2 = x^2");
    // Sq^1 x^2 = 2 x^3 = 0 and Sq^2 x^2 = x^4 = 0 in RP^3
    o.expect(rp3.sigma(2, one, 1) == zero, "RP^3 Sq^1 x^2 = 0");
    o.expect(rp3.sigma(2, one, 2) == none, "RP^3 Sq^2 x^2 = 0");
    o.expect(rp3.sigma(3, one, 0) == one, "RP^3 Sq^0 x^3 = x^3");
    o.expect(rp3.sigma(3, one, 1) == none, "RP^3 Sq^1 x^3 = 0");
    o.note << "Sq^0 x = x, Sq^1 x = x^2, Sq^1 x^2 = 0";
}

// beta u from an integral lift: (delta lift(u)) / p reduced mod p, as a class in H^{n+1}.
DenseVector integral_bockstein(const FiniteSimplicialSet& X, const ChainComplex& C, int n, const DenseVector& cocycle)
{
    const PrimeField& F = C.field();
    const int p = F.p();
    DenseVector out(C.dim(n + 1), 0);
    for (GeneratorId g : X.generators_in_dim(n + 1)) {
        long long total = 0;
        const auto& faces = X.generator(g).faces;
        for (int i = 0; i <= n + 1; ++i) {
            const SimplexRef& f = faces[static_cast<std::size_t>(i)];
            if (f.degenerate())
                continue;
            const long long v = cocycle[X.basis_index(f.generator)];
            total += (i % 2 ? -v : v);
        }
        if (total % p != 0)
            throw InvariantViolation("integral lift: coboundary not divisible by p");
        out[X.basis_index(g)] = F.from_int(total / p);
    }
    const Cohomology H(C, n + 1);
    const auto c = H.coordinates(out);
    if (!c)
        throw InvariantViolation("integral lift: Bockstein is not a cocycle");
    return *c;
}

void criterion_odd_prime(Outcome& o)
{
    const auto t0 = std::chrono::steady_clock::now();
    const Space s = acceptance_spaces()[2];
    const PrimeField F(3);
    const auto& E = engine(s);
    o.expect(E.cohomology(1).dim() == 1, "H^1 is one-dimensional");
    const DenseVector u{1};
    o.expect(E.sigma(1, u, 0) == u, "sigma(u, 0) = u");
    const auto s1 = E.sigma(1, u, 1);
    o.expect(s1 == classical_sigma(F, s.X, 1, u, 1, s.budget), "sigma(u, 1) = classical_sigma(u, 1)");
    const auto chains = s.X->chain_complex(F, 3);
    const auto beta = integral_bockstein(*s.X, chains, 1, Cohomology(chains, 1).representatives()[0].to_dense(chains.dim(1)));
    DenseVector minus_beta = beta;
    for (auto& c : minus_beta)
        c = F.neg(c);
    o.expect(s1 == minus_beta, "sigma(u, 1) = -beta u; sigma gives " + show(s1) + ", beta u = " + show(beta));
    for (int k = 2; k <= 4; ++k)
        o.expect(is_zero(E.sigma(1, u, k)), "sigma(u, " + std::to_string(k) + ") = 0");
    o.expect(kDefaultProductLimit >= 100000, "guard threshold at least 1e5");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(secs < 900, "runtime under 15 minutes");
    char buf[160];
    std::snprintf(buf, sizeof buf, "Sigma^1 u = %s = -beta u, %.1f s", show(s1).c_str(), secs);
    o.note << buf;
}

void criterion_uniqueness(Outcome& o)
{
    for (const auto& s : acceptance_spaces()) {
        const auto& E = engine(s);
        for (int m = 0; m + 1 <= s.budget; ++m)
            o.expect(E.uniqueness_check(m), s.name + " m=" + std::to_string(m));
    }
    o.note << o.checks << " (space, m) pairs, m + 1 <= degree budget (7, 7, 4)";
}

void criterion_unique_solve(Outcome& o)
{
    for (const auto& s : acceptance_spaces()) {
        const auto& E = engine(s);
        for (int n = 0; s.p * n + 1 <= s.budget; ++n)
            for (std::size_t i = 0; i < E.cohomology(n).dim(); ++i) {
                const std::string what = s.name + " x" + std::to_string(n) + "_" + std::to_string(i);
                try {
                    const auto r = E.solve_class(n, unit(E.cohomology(n).dim(), i));
                    o.expect(r.w.v[n] == unit(E.cohomology(n).dim(), i), what);
                } catch (const InvariantViolation& e) {
                    o.expect(false, what + ": " + e.what());
                }
            }
    }
    o.note << o.checks << " basis classes";
}

void criterion_naturality(Outcome& o)
{
    struct Case {
        std::string file;
        int p;
        int n_max;
    };
    const std::vector<Case> cases{
        {"quotient.json", 2, 1},               // S^1 (2 vertices) -> RP^1
        {"quotient.json", 3, 1},
        {"wrap3.json", 2, 1},                  // degree 3 onto the one-vertex circle
        {"wrap3.json", 3, 1},
        {"quotient_plus_collapse.json", 2, 1}, // linear combination
        {"rotate_plus_constant.json", 3, 1},   // rotation + 2 * constant
        {"rp2_in_rp3.json", 2, 3},
        {"z3_skeleton_inclusion.json", 3, 1},
    };
    auto run = [&](const std::string& label, const PrimeField& F,
                   const std::vector<std::pair<SimplicialMorphism, Coeff>>& maps, int n_max) {
        const int p = F.p();
        for (int n = 0; n <= n_max; ++n)
            for (int k = 0; k <= (p - 1) * n; ++k) {
                const auto r = naturality_check(F, maps, n, k, {.degree_cap = p * n + 1});
                o.expect(r.ok(), label + " p=" + std::to_string(p) + " n=" + std::to_string(n) +
                                     " k=" + std::to_string(k) + (r.failures.empty() ? "" : ": " + r.failures[0]));
            }
    };
    for (const auto& c : cases) {
        const PrimeField F(c.p);
        const auto doc = load_map_document(test::data_dir() / c.file);
        std::vector<std::pair<SimplicialMorphism, Coeff>> maps;
        for (const auto& [m, w] : doc.maps)
            maps.emplace_back(m, F.from_int(w));
        run(c.file, F, maps, c.n_max);
    }
    // composite C_4 -> C_2 -> RP^1
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
    for (int p : {2, 3})
        run("composite quotient", PrimeField(p), {{quotient.after(fold), 1}}, 1);
    o.note << o.checks << " (map, p, n, k) cases";
}

void criterion_lemmas(Outcome& o)
{
    for (int p : {2, 3}) {
        const PrimeField F(p);
        std::mt19937 rng(static_cast<unsigned>(7000 + p));
        const std::string at = " over F_" + std::to_string(p) + " trial ";
        for (int trial = 0; trial < 20; ++trial) {
            const std::string tag = at + std::to_string(trial);
            const int n = 1 + trial % (p == 2 ? 2 : 1);
            const auto A = test::random_complex(F, rng, n + 1, p * n + 1, 2);
            const auto f = test::random_cocycle(F, rng, A, n);
            const auto g = test::random_vector(F, rng, A.dim(n - 1));
            o.expect(theta_representative_independent(F, A, p, n, f, g), "theta class" + tag);
            o.expect(reduced_theta_linear(F, A, p, n, f, test::random_cocycle(F, rng, A, n)), "theta~ additive" + tag);

            const auto B = test::random_complex(F, rng, 3, 4);
            const CpComplex free = free_cp_complex(B);
            const CpComplex trivial = CpComplex::trivial(B);
            for (int m = 0; m + 1 <= B.top(); ++m) {
                o.expect(ReducedCohomology(free, m).dim() == 0, "free acyclic" + tag);
                const EquivariantCohomology h(trivial, m);
                const auto u = test::random_cocycle(F, rng, B, m);
                o.expect(is_zero(*h.coordinates(transfer(F, trivial, m, u))), "transfer zero" + tag);
            }

            const int summands = 2 + trial % 2;
            const int top = summands == 2 ? 3 : 2;
            std::vector<ChainComplex> parts;
            for (int r = 0; r < summands; ++r)
                parts.push_back(test::random_complex(F, rng, top, top, 2));
            o.expect(reduced_sum_to_product(F, parts, p, top), "sum to product" + tag);
        }
    }
    o.note << "20 random complexes per property over F_2 and F_3, " << o.checks << " checks";
}

void criterion_structure(Outcome& o)
{
    for (int p : {2, 3, 5}) {
        const auto report = PeriodicResolution(PrimeField(p), 9).verify_exactness();
        o.expect(report.ok(), "resolution exact through degree 8 at p=" + std::to_string(p));
    }
    struct Small {
        FiniteSimplicialSet X;
        int p;
        int top;
    };
    std::vector<Small> cases;
    cases.push_back({bar_skeleton(2, 2), 2, 5});
    cases.push_back({bar_skeleton(2, 3), 2, 5});
    cases.push_back({bar_skeleton(3, 2), 3, 3});
    for (auto& c : cases) {
        const PrimeField F(c.p);
        const auto X = share(std::move(c.X));
        const auto C = X->chain_complex(F, c.top);
        o.expect(C.boundary_squares_to_zero(), "dd = 0 on C(X)");
        const PowerSpace XP(X, c.p, c.top);
        const CpComplex cp = XP.cp_complex(F);
        o.expect(cp.complex().boundary_squares_to_zero(), "dd = 0 on C(X^p)");
        o.expect(cp.action_has_order_p(), "t^p = id");
        o.expect(cp.action_commutes_with_boundary(), "t d = d t");
        const TotalComplex T(cp);
        for (int m = 0; m + 2 <= c.top; ++m)
            o.expect(multiply(F, T.coboundary_matrix(m + 1), T.coboundary_matrix(m)).is_zero(),
                     "delta delta = 0 in degree " + std::to_string(m));
        const ChainMap d = diagonal_chain(F, XP);
        o.expect(commutes_with_boundary(d, C, cp.complex()), "d# is a chain map");
        o.expect(commutes_with_action(d, CpComplex::trivial(C), cp), "d# is equivariant");
        const TensorPower P(C, c.p, c.top);
        const CpComplex Pcp = P.cp_complex();
        o.expect(Pcp.action_has_order_p(), "t^p = id on the tensor power");
        const ChainMap xi = shuffle_cross(F, P, XP);
        o.expect(commutes_with_boundary(xi, Pcp.complex(), cp.complex()), "xi is a chain map");
        o.expect(commutes_with_action(xi, Pcp, cp), "xi is equivariant");
    }
    o.note << o.checks << " matrix identities";
}

void criterion_linearity(Outcome& o)
{
    for (const auto& s : acceptance_spaces()) {
        const PrimeField F(s.p);
        const auto& E = engine(s);
        for (int n = 0; s.p * n + 1 <= s.budget; ++n) {
            const auto classes = test::all_vectors(F, E.cohomology(n).dim());
            for (const auto& u : classes)
                for (const auto& v : classes)
                    for (int k = 0; k <= (s.p - 1) * n; ++k)
                        o.expect(E.sigma(n, add(F, u, v), k) == add(F, E.sigma(n, u, k), E.sigma(n, v, k)),
                                 s.name + " n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    o.note << o.checks << " (u, u', k) triples";
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"oracle agreement", criterion_oracle_agreement},
        {"known values at p = 2", criterion_known_values},
        {"odd prime smoke test", criterion_odd_prime},
        {"uniqueness of presentation", criterion_uniqueness},
        {"existence and uniqueness of the solve", criterion_unique_solve},
        {"naturality", criterion_naturality},
        {"lemma suite", criterion_lemmas},
        {"structural invariants", criterion_structure},
        {"linearity", criterion_linearity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.passed = false;
            o.note << " exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.passed;
        std::printf("criterion %zu %-40s %s  [%.1fs] %s\n", i + 1, criteria[i].first.c_str(), o.passed ? "PASS" : "FAIL",
                    secs, o.note.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
