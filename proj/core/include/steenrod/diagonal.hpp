#pragma once

// Steenrod operations from the diagonal alone. For u in H^n(X) the image of
// h^{pn}_{C_p}(d#) : h^{pn}_{C_p}(C(X^p)) -> h^{pn}_{C_p}(C(X)), written in
// Kunneth coordinates sum_i e_{pn-i} x v_i, contains exactly one w with v_i = 0
// for i < n and v_n = u; then Sigma^k u = v_{n+k}.

#include "steenrod/equivariant.hpp"
#include "steenrod/simplicial.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace steenrod {

/// Sq^k for p = 2; for odd p, (-1)^s P^s when k = 2(p-1)s, (-1)^{s+1} bP^s when
/// k = 2(p-1)s + 1, and 0 otherwise.
struct OperationName {
    int p = 2;
    int k = 0;

    enum class Kind { Square, Power, BocksteinPower, Zero };
    Kind kind() const noexcept;
    /// s for Power / BocksteinPower, k for Square.
    int index() const noexcept;
    /// +1 or -1 in front of the named operation.
    int sign() const noexcept;
    /// e.g. "Sq^2", "-P^1", "bP^0", "0".
    std::string render() const;
};

struct EngineOptions {
    /// Largest chain degree any computation may build. Sigma on H^n needs pn + 1.
    int degree_cap = 8;
    std::size_t product_limit = kDefaultProductLimit;
    /// Keep image subspaces across calls.
    bool cache = false;
};

/// Im h^m(d#) in flat Kunneth coordinates over the layout's H^0 .. H^m blocks.
struct DiagonalImage {
    int degree = 0;
    KunnethLayout layout;
    SubspaceFp span;
};

struct SteenrodSolve {
    int n = 0;
    DenseVector u;
    KunnethVector w;
    std::size_t image_dim = 0;
};

class DiagonalEngine {
public:
    DiagonalEngine(const PrimeField& F, std::shared_ptr<const FiniteSimplicialSet> X, EngineOptions options = {});

    const PrimeField& field() const noexcept { return field_; }
    const FiniteSimplicialSet& space() const noexcept { return *X_; }
    const EngineOptions& options() const noexcept { return options_; }

    /// Chains of X through degree `top` (cached).
    const ChainComplex& chains(int top) const;
    /// H^n(X) with its fixed representative basis.
    const Cohomology& cohomology(int n) const;

    /// Needs chain degree m + 1 within the cap.
    std::shared_ptr<const DiagonalImage> image(int m) const;

    /// The unique w in the image with v_{<n} = 0 and v_n = u. Throws InvariantViolation
    /// on no or multiple solutions.
    SteenrodSolve solve_class(int n, const DenseVector& u) const;

    /// Sigma^k u in H^{n+k}(X).
    DenseVector sigma(int n, const DenseVector& u, int k) const;

    /// The image vectors whose components v_i, i <= m/p, all vanish form the zero subspace.
    bool uniqueness_check(int m) const;

    struct TableRow {
        int n;
        std::size_t class_index;
        int k;
        OperationName name;
        DenseVector result;
    };
    /// Sigma^k on every basis class of H^n, n <= n_max, for every k with n + k <= pn.
    std::vector<TableRow> operation_table(int n_max) const;

private:
    void require_degree(int chain_degree, const std::string& what) const;

    PrimeField field_;
    std::shared_ptr<const FiniteSimplicialSet> X_;
    EngineOptions options_;
    mutable std::map<int, ChainComplex> chains_;
    mutable std::map<int, Cohomology> cohomology_;
    mutable std::map<int, std::shared_ptr<const DiagonalImage>> images_;
};

struct NaturalityReport {
    bool diagram_commutes = false;
    bool equivariant = false;
    /// f^* Sigma^k u = Sigma^k f^* u for every basis class u of H^n(Y).
    bool operations_commute = false;
    std::vector<std::string> failures;

    bool ok() const noexcept { return diagram_commutes && equivariant && operations_commute; }
};

/// For maps a_i : X -> Y with weights l_i, f = sum l_i a_i# and F = sum l_i (a_i^p)#.
/// Checks F d_X# = d_Y# f, F equivariant, and f^* Sigma^k = Sigma^k f^* on H^n(Y).
NaturalityReport naturality_check(const PrimeField& F, const std::vector<std::pair<SimplicialMorphism, Coeff>>& maps,
                                  int n, int k, const EngineOptions& options = {});

} // namespace steenrod
