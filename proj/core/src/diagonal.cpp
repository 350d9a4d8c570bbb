#include "steenrod/diagonal.hpp"

#include "steenrod/errors.hpp"

#include <sstream>

namespace steenrod {

OperationName::Kind OperationName::kind() const noexcept
{
    if (p == 2)
        return Kind::Square;
    const int period = 2 * (p - 1);
    if (k % period == 0)
        return Kind::Power;
    if (k % period == 1)
        return Kind::BocksteinPower;
    return Kind::Zero;
}

int OperationName::index() const noexcept
{
    switch (kind()) {
    case Kind::Square:
        return k;
    case Kind::Power:
        return k / (2 * (p - 1));
    case Kind::BocksteinPower:
        return (k - 1) / (2 * (p - 1));
    case Kind::Zero:
        break;
    }
    return 0;
}

int OperationName::sign() const noexcept
{
    switch (kind()) {
    case Kind::Power:
        return index() % 2 ? -1 : 1;
    case Kind::BocksteinPower:
        return index() % 2 ? 1 : -1;
    default:
        return 1;
    }
}

std::string OperationName::render() const
{
    const std::string s = std::to_string(index());
    const std::string prefix = sign() < 0 ? "-" : "";
    switch (kind()) {
    case Kind::Square:
        return "Sq^" + s;
    case Kind::Power:
        return prefix + "P^" + s;
    case Kind::BocksteinPower:
        return prefix + "βP^" + s;
    case Kind::Zero:
        break;
    }
    return "0";
}

// ---------------------------------------------------------------------------

DiagonalEngine::DiagonalEngine(const PrimeField& F, std::shared_ptr<const FiniteSimplicialSet> X, EngineOptions options)
    : field_(F), X_(std::move(X)), options_(options)
{
    if (!X_)
        throw ContractViolation("DiagonalEngine needs a space");
}

void DiagonalEngine::require_degree(int chain_degree, const std::string& what) const
{
    if (chain_degree > options_.degree_cap)
        throw TruncationError(what + " needs chains through degree " + std::to_string(chain_degree) +
                              " but the cap is " + std::to_string(options_.degree_cap) + "; raise cap");
}

const ChainComplex& DiagonalEngine::chains(int top) const
{
    auto it = chains_.find(top);
    if (it == chains_.end())
        it = chains_.emplace(top, X_->chain_complex(field_, top)).first;
    return it->second;
}

const Cohomology& DiagonalEngine::cohomology(int n) const
{
    auto it = cohomology_.find(n);
    if (it == cohomology_.end())
        it = cohomology_.emplace(n, Cohomology(chains(n + 1), n)).first;
    return it->second;
}

std::shared_ptr<const DiagonalImage> DiagonalEngine::image(int m) const
{
    require_degree(m + 1, "the diagonal image in degree " + std::to_string(m));
    if (auto it = images_.find(m); it != images_.end())
        return it->second;
    const auto& F = field_;
    const PowerSpace XP(X_, F.p(), m + 1, options_.product_limit);
    const CpComplex XPcp = XP.cp_complex(F);
    const EquivariantCohomology h(XPcp, m);
    const ChainMap d = diagonal_chain(F, XP);

    auto out = std::make_shared<DiagonalImage>();
    out->degree = m;
    out->layout = KunnethLayout(chains(m + 1), m);
    std::vector<SparseVector> vectors;
    for (std::size_t i = 0; i < h.dim(); ++i) {
        const auto w = out->layout.extract(pullback(F, d, h.representative(i)));
        vectors.push_back(SparseVector::from_dense(out->layout.flatten(w)));
    }
    out->span = SubspaceFp::span(F, out->layout.dim(), vectors);
    if (options_.cache)
        images_.emplace(m, out);
    return out;
}

SteenrodSolve DiagonalEngine::solve_class(int n, const DenseVector& u) const
{
    const auto& F = field_;
    if (n < 0)
        throw ContractViolation("negative degree");
    if (u.size() != cohomology(n).dim())
        throw ContractViolation("class has the wrong number of coordinates for H^" + std::to_string(n));
    const int m = F.p() * n;
    const auto img = image(m);
    const auto& layout = img->layout;
    const std::size_t constrained = layout.offset(n + 1);
    const auto& basis = img->span.basis();

    std::vector<Triplet> t;
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (const auto& e : basis[r].entries())
            if (e.index < constrained)
                t.push_back({e.index, static_cast<Index>(r), e.value});
    const MatrixFp C = MatrixFp::from_triplets(F, constrained, basis.size(), std::move(t));
    DenseVector target(constrained, 0);
    std::copy(u.begin(), u.end(), target.begin() + static_cast<std::ptrdiff_t>(layout.offset(n)));

    const auto c = solve(F, C, target);
    if (!c)
        throw InvariantViolation("no class w in the diagonal image has v_i = 0 for i < " + std::to_string(n) +
                                 " and v_" + std::to_string(n) + " = u");
    const SubspaceFp ker = kernel(F, C);
    if (ker.dim() != 0) {
        std::ostringstream os;
        os << "multiple classes w solve the constraints in degree " << m << "; kernel vector:";
        for (const auto& e : ker.basis().front().entries())
            os << ' ' << e.index << ':' << int(e.value);
        throw InvariantViolation(os.str());
    }
    SparseVector flat;
    for (std::size_t r = 0; r < basis.size(); ++r)
        flat = axpy(F, (*c)[r], basis[r], flat);

    SteenrodSolve out;
    out.n = n;
    out.u = u;
    out.w = layout.unflatten(flat.to_dense(layout.dim()));
    out.image_dim = basis.size();
    return out;
}

DenseVector DiagonalEngine::sigma(int n, const DenseVector& u, int k) const
{
    if (k < 0)
        throw ContractViolation("negative operation degree");
    const int p = field_.p();
    if (n + k > p * n)
        return DenseVector(cohomology(n + k).dim(), 0);
    const auto s = solve_class(n, u);
    for (int i = n + 1; i <= p * n; ++i)
        if (OperationName{p, i - n}.kind() == OperationName::Kind::Zero && !is_zero(s.w.v[i]))
            throw InvariantViolation("component v_" + std::to_string(i) + " should vanish at p = " + std::to_string(p));
    return s.w.v[n + k];
}

bool DiagonalEngine::uniqueness_check(int m) const
{
    const auto img = image(m);
    const std::size_t low = img->layout.offset(m / field_.p() + 1);
    std::vector<SparseVector> projected;
    for (const auto& v : img->span.basis()) {
        std::vector<Entry> entries;
        for (const auto& e : v.entries())
            if (e.index < low)
                entries.push_back(e);
        projected.emplace_back(std::move(entries));
    }
    return SubspaceFp::span(field_, low, projected).dim() == img->span.dim();
}

std::vector<DiagonalEngine::TableRow> DiagonalEngine::operation_table(int n_max) const
{
    const int p = field_.p();
    std::vector<TableRow> rows;
    for (int n = 0; n <= n_max && p * n + 1 <= options_.degree_cap; ++n) {
        const auto& H = cohomology(n);
        for (std::size_t i = 0; i < H.dim(); ++i) {
            DenseVector u(H.dim(), 0);
            u[i] = 1;
            const auto s = solve_class(n, u);
            for (int k = 0; n + k <= p * n; ++k)
                rows.push_back({n, i, k, OperationName{p, k}, s.w.v[n + k]});
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------

namespace {

ChainMap weighted_sum(const PrimeField& F, const std::vector<ChainMap>& parts, const std::vector<Coeff>& weights)
{
    std::vector<std::pair<Coeff, const ChainMap*>> terms;
    for (std::size_t i = 0; i < parts.size(); ++i)
        terms.emplace_back(weights[i], &parts[i]);
    return linear_combination(F, terms);
}

DenseVector pull_class(const PrimeField& F, const ChainMap& f, int degree, const Cohomology& target_H,
                       const Cohomology& source_H, const DenseVector& coords)
{
    const auto rep = target_H.representative(coords);
    const auto pulled = source_H.coordinates(f[degree].apply_transpose(F, rep));
    if (!pulled)
        throw InvariantViolation("pullback of a cocycle is not a cocycle");
    return *pulled;
}

} // namespace

NaturalityReport naturality_check(const PrimeField& F, const std::vector<std::pair<SimplicialMorphism, Coeff>>& maps,
                                  int n, int k, const EngineOptions& options)
{
    if (maps.empty())
        throw ContractViolation("naturality_check needs at least one map");
    const auto X = maps.front().first.source_ptr();
    const auto Y = maps.front().first.target_ptr();
    for (const auto& [a, w] : maps)
        if (a.source_ptr() != X || a.target_ptr() != Y)
            throw ContractViolation("naturality_check: maps must share source and target");
    if (n < 0 || k < 0)
        throw ContractViolation("naturality_check: negative degree");
    const int p = F.p();
    const int top = std::max(p * n + 1, n + k + 1);
    if (top > options.degree_cap)
        throw TruncationError("naturality check needs chains through degree " + std::to_string(top) +
                              " but the cap is " + std::to_string(options.degree_cap) + "; raise cap");

    NaturalityReport report;
    const PowerSpace XP(X, p, top, options.product_limit);
    const PowerSpace YP(Y, p, top, options.product_limit);
    std::vector<ChainMap> small, big;
    std::vector<Coeff> weights;
    for (const auto& [a, w] : maps) {
        small.push_back(a.induced_chain_map(F, top));
        big.push_back(a.cartesian_power(F, XP, YP));
        weights.push_back(w);
    }
    const ChainMap f = weighted_sum(F, small, weights);
    const ChainMap Fp = weighted_sum(F, big, weights);

    const ChainMap lhs = compose(F, Fp, diagonal_chain(F, XP));
    const ChainMap rhs = compose(F, diagonal_chain(F, YP), f);
    report.diagram_commutes = true;
    for (int d = 0; d <= top; ++d)
        if (!(lhs[d] == rhs[d])) {
            report.diagram_commutes = false;
            report.failures.push_back("F d_X# != d_Y# f in degree " + std::to_string(d));
        }
    const CpComplex XPcp = XP.cp_complex(F);
    const CpComplex YPcp = YP.cp_complex(F);
    report.equivariant = commutes_with_action(Fp, XPcp, YPcp) &&
                         commutes_with_boundary(Fp, XPcp.complex(), YPcp.complex());
    if (!report.equivariant)
        report.failures.push_back("F is not an equivariant chain map");
    if (!report.diagram_commutes || !report.equivariant)
        return report;

    const DiagonalEngine EX(F, X, options);
    const DiagonalEngine EY(F, Y, options);
    report.operations_commute = true;
    const auto& HYn = EY.cohomology(n);
    for (std::size_t i = 0; i < HYn.dim(); ++i) {
        DenseVector u(HYn.dim(), 0);
        u[i] = 1;
        const DenseVector left =
            pull_class(F, f, n + k, EY.cohomology(n + k), EX.cohomology(n + k), EY.sigma(n, u, k));
        const DenseVector right = EX.sigma(n, pull_class(F, f, n, HYn, EX.cohomology(n), u), k);
        if (left != right) {
            report.operations_commute = false;
            report.failures.push_back("f^* Sigma^" + std::to_string(k) + " != Sigma^" + std::to_string(k) +
                                      " f^* on basis class " + std::to_string(i) + " of H^" + std::to_string(n));
        }
    }
    return report;
}

} // namespace steenrod
