#include "steenrod/classical.hpp"

#include "steenrod/errors.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace steenrod {

TensorPower::TensorPower(const ChainComplex& A, int p, int top, std::size_t limit) : A_(&A), p_(p), top_(top)
{
    if (p < 1)
        throw ContractViolation("tensor power must be positive");
    if (A.top() < top)
        throw TruncationError("tensor power through degree " + std::to_string(top) +
                              " needs the base through the same degree; raise cap");
    for (int d = 0; d <= top; ++d) {
        cell_offset_.push_back(cell_degree_.size());
        cell_degree_.insert(cell_degree_.end(), A.dim(d), d);
    }
    cell_offset_.push_back(cell_degree_.size());

    tuples_.resize(static_cast<std::size_t>(top) + 1);
    std::vector<std::uint32_t> current(static_cast<std::size_t>(p));
    for (int m = 0; m <= top; ++m) {
        auto& out = tuples_[m];
        std::size_t count = 0;
        // Depth-first over positions, cells in increasing order: output is lexicographic.
        auto recurse = [&](auto&& self, int r, int remaining) -> void {
            if (r == p) {
                if (remaining == 0) {
                    if (++count > limit)
                        throw ResourceLimitExceeded("desk-scale exceeded: tensor power degree " + std::to_string(m) +
                                                    " has more than " + std::to_string(limit) + " basis elements");
                    out.insert(out.end(), current.begin(), current.end());
                }
                return;
            }
            const auto end = cell_offset_[static_cast<std::size_t>(remaining) + 1];
            for (std::uint32_t c = 0; c < end; ++c) {
                current[r] = c;
                self(self, r + 1, remaining - cell_degree_[c]);
            }
        };
        recurse(recurse, 0, m);
    }
}

std::span<const std::uint32_t> TensorPower::tuple(int m, std::size_t idx) const
{
    const auto& t = tuples_.at(m);
    return std::span<const std::uint32_t>(t.data() + idx * static_cast<std::size_t>(p_), static_cast<std::size_t>(p_));
}

std::optional<std::size_t> TensorPower::find(int m, std::span<const std::uint32_t> cells) const
{
    std::size_t lo = 0, hi = size(m);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto t = tuple(m, mid);
        if (std::lexicographical_compare(t.begin(), t.end(), cells.begin(), cells.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size(m)) {
        const auto t = tuple(m, lo);
        if (std::equal(t.begin(), t.end(), cells.begin(), cells.end()))
            return lo;
    }
    return std::nullopt;
}

ChainComplex TensorPower::chain_complex() const
{
    const auto& F = A_->field();
    std::vector<MatrixFp> faces(static_cast<std::size_t>(top_) + 1); // faces[k].row(b) = d(b) for b in A_k
    for (int k = 1; k <= top_; ++k)
        faces[k] = A_->boundary(k).transpose();
    std::vector<std::size_t> dims;
    std::vector<MatrixFp> boundaries(1);
    for (int m = 0; m <= top_; ++m)
        dims.push_back(size(m));
    std::vector<std::uint32_t> image(static_cast<std::size_t>(p_));
    for (int m = 1; m <= top_; ++m) {
        std::vector<Triplet> t;
        for (std::size_t j = 0; j < size(m); ++j) {
            const auto x = tuple(m, j);
            std::copy(x.begin(), x.end(), image.begin());
            int before = 0;
            for (int r = 0; r < p_; ++r) {
                const int d = cell_degree(x[r]);
                if (d > 0) {
                    const Coeff sign = F.sign(before);
                    for (const auto& e : faces[d].row(cell_index(x[r])).entries()) {
                        image[r] = cell(d - 1, e.index);
                        const auto row = find(m - 1, image);
                        if (!row)
                            throw InvariantViolation("tensor boundary left the basis");
                        t.push_back({static_cast<Index>(*row), static_cast<Index>(j), F.mul(sign, e.value)});
                    }
                    image[r] = x[r];
                }
                before += d;
            }
        }
        boundaries.push_back(MatrixFp::from_triplets(F, dims[m - 1], dims[m], std::move(t)));
    }
    return ChainComplex(F, std::move(dims), std::move(boundaries));
}

MatrixFp TensorPower::rotation(int m) const
{
    const auto& F = A_->field();
    std::vector<Triplet> t;
    std::vector<std::uint32_t> rotated(static_cast<std::size_t>(p_));
    for (std::size_t j = 0; j < size(m); ++j) {
        const auto x = tuple(m, j);
        rotated[0] = x[p_ - 1];
        int rest = 0;
        for (int r = 1; r < p_; ++r) {
            rotated[r] = x[r - 1];
            rest += cell_degree(x[r - 1]);
        }
        const auto row = find(m, rotated);
        if (!row)
            throw InvariantViolation("rotation left the tensor basis");
        t.push_back({static_cast<Index>(*row), static_cast<Index>(j), F.sign(cell_degree(x[p_ - 1]) * rest)});
    }
    return MatrixFp::from_triplets(F, size(m), size(m), std::move(t));
}

CpComplex TensorPower::cp_complex() const
{
    std::vector<MatrixFp> action;
    for (int m = 0; m <= top_; ++m)
        action.push_back(rotation(m));
    return CpComplex(chain_complex(), std::move(action));
}

ChainMap tensor_power_map(const PrimeField& F, const TensorPower& source, const TensorPower& target,
                          const std::vector<std::size_t>& offsets)
{
    if (source.p() != target.p())
        throw ContractViolation("tensor_power_map: powers differ");
    const int top = std::min(source.top(), target.top());
    if (static_cast<int>(offsets.size()) <= top)
        throw ContractViolation("tensor_power_map: need an offset per degree");
    ChainMap out;
    std::vector<std::uint32_t> image(static_cast<std::size_t>(source.p()));
    for (int m = 0; m <= top; ++m) {
        std::vector<Triplet> t;
        for (std::size_t j = 0; j < source.size(m); ++j) {
            const auto x = source.tuple(m, j);
            for (int r = 0; r < source.p(); ++r) {
                const int d = source.cell_degree(x[r]);
                image[r] = target.cell(d, offsets[d] + source.cell_index(x[r]));
            }
            const auto row = target.find(m, image);
            if (!row)
                throw ContractViolation("tensor_power_map: image tuple not in the target");
            t.push_back({static_cast<Index>(*row), static_cast<Index>(j), 1});
        }
        out.components.push_back(MatrixFp::from_triplets(F, target.size(m), source.size(m), std::move(t)));
    }
    return out;
}

EquivariantCochain theta(const PrimeField& F, const TensorPower& P, int n, const DenseVector& f)
{
    const int p = P.p();
    const int m = p * n;
    if (m > P.top())
        throw TruncationError("theta needs the tensor power through degree " + std::to_string(m) + "; raise cap");
    if (f.size() != P.base().dim(n))
        throw ContractViolation("theta: cochain has the wrong length");
    EquivariantCochain c;
    c.degree = m;
    for (int j = 0; j <= m; ++j)
        c.components.emplace_back(P.size(m - j), 0);
    const Coeff sign = F.sign(static_cast<long long>(n) * p * (p - 1) / 2);
    auto& comp = c.components[0];
    for (std::size_t j = 0; j < P.size(m); ++j) {
        const auto x = P.tuple(m, j);
        Coeff v = sign;
        for (int r = 0; r < p && v; ++r)
            v = P.cell_degree(x[r]) == n ? F.mul(v, f[P.cell_index(x[r])]) : Coeff{0};
        comp[j] = v;
    }
    return c;
}

std::vector<ShuffleTerm> shuffle_terms(const PrimeField& F, const std::vector<int>& degrees)
{
    const int p = static_cast<int>(degrees.size());
    int k = 0;
    for (int d : degrees) {
        if (d < 0)
            throw ContractViolation("shuffle_terms: negative degree");
        k += d;
    }
    if (k > 31)
        throw ContractViolation("shuffle_terms: total degree too large");
    const std::uint32_t all = k == 0 ? 0u : (k == 32 ? ~0u : (1u << k) - 1);
    std::vector<ShuffleTerm> out;
    std::vector<int> left = degrees;
    std::vector<int> placed(static_cast<std::size_t>(p), 0);
    std::vector<std::uint32_t> sets(static_cast<std::size_t>(p), 0);
    auto recurse = [&](auto&& self, int x, long long inversions) -> void {
        if (x == k) {
            ShuffleTerm term;
            for (int r = 0; r < p; ++r)
                term.masks.push_back(all & ~sets[r]);
            term.sign = F.sign(inversions);
            out.push_back(std::move(term));
            return;
        }
        int later = 0; // elements placed so far in factors after r
        for (int r = p - 1; r >= 0; --r) {
            if (left[r] > 0) {
                --left[r];
                ++placed[r];
                sets[r] |= 1u << x;
                self(self, x + 1, inversions + later);
                sets[r] &= ~(1u << x);
                --placed[r];
                ++left[r];
            }
            later += placed[r];
        }
    };
    recurse(recurse, 0, 0);
    // Enumeration above runs factors from the last one; sort for a fixed order.
    std::sort(out.begin(), out.end(), [](const ShuffleTerm& a, const ShuffleTerm& b) { return a.masks < b.masks; });
    return out;
}

ChainMap shuffle_cross(const PrimeField& F, const TensorPower& P, const PowerSpace& power)
{
    const auto& X = power.base();
    const int p = P.p();
    if (power.p() != p)
        throw ContractViolation("shuffle_cross: powers differ");
    const int top = std::min(P.top(), power.max_dim());
    for (int d = 0; d <= top; ++d)
        if (P.base().dim(d) != X.count_in_dim(d))
            throw ContractViolation("shuffle_cross: tensor power is not built on the chains of this space");
    std::map<std::vector<int>, std::vector<ShuffleTerm>> cache;
    ChainMap out;
    std::vector<int> degrees(static_cast<std::size_t>(p));
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(p));
    for (int m = 0; m <= top; ++m) {
        std::vector<Triplet> t;
        for (std::size_t j = 0; j < P.size(m); ++j) {
            const auto x = P.tuple(m, j);
            for (int r = 0; r < p; ++r)
                degrees[r] = P.cell_degree(x[r]);
            auto it = cache.find(degrees);
            if (it == cache.end())
                it = cache.emplace(degrees, shuffle_terms(F, degrees)).first;
            for (const auto& term : it->second) {
                for (int r = 0; r < p; ++r) {
                    const GeneratorId g = X.generators_in_dim(degrees[r])[P.cell_index(x[r])];
                    coords[r] = static_cast<std::uint32_t>(power.base_table().index_of(SimplexRef{g, term.masks[r], m}));
                }
                const auto row = power.find(m, coords);
                if (!row)
                    throw InvariantViolation("shuffle term is degenerate");
                t.push_back({static_cast<Index>(*row), static_cast<Index>(j), term.sign});
            }
        }
        out.components.push_back(MatrixFp::from_triplets(F, power.size(m), P.size(m), std::move(t)));
    }
    return out;
}

Coeff steenrod_number(const PrimeField& F, int n)
{
    if (n < 0)
        throw ContractViolation("steenrod_number: negative degree");
    if (F.p() == 2)
        return 1;
    const int q = (F.p() - 1) / 2;
    Coeff factorial = 1;
    for (int i = 2; i <= q; ++i)
        factorial = F.mul(factorial, F.from_int(i));
    Coeff out = F.sign(static_cast<long long>(q) * n * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        out = F.mul(out, factorial);
    return out;
}

ClassicalResult classical_phi(const PrimeField& F, std::shared_ptr<const FiniteSimplicialSet> X, int n,
                              const DenseVector& u, int degree_cap, std::size_t limit)
{
    if (n < 0)
        throw ContractViolation("negative degree");
    const int p = F.p();
    const int m = p * n;
    if (m + 1 > degree_cap)
        throw TruncationError("the classical construction on H^" + std::to_string(n) + " needs chains through degree " +
                              std::to_string(m + 1) + " but the cap is " + std::to_string(degree_cap) + "; raise cap");
    const ChainComplex A = X->chain_complex(F, m + 1);
    const Cohomology Hn(A, n);
    if (u.size() != Hn.dim())
        throw ContractViolation("class has the wrong number of coordinates for H^" + std::to_string(n));

    const TensorPower P(A, p, m + 1, limit);
    const CpComplex Pcp = P.cp_complex();
    const PowerSpace XP(X, p, m + 1, limit);
    const CpComplex XPcp = XP.cp_complex(F);
    const EquivariantCohomology hP(Pcp, m);
    const EquivariantCohomology hXP(XPcp, m);

    const auto theta_coords = hP.coordinates(theta(F, P, n, Hn.representative(u)));
    if (!theta_coords)
        throw InvariantViolation("theta of a cocycle is not a cocycle");
    const MatrixFp xi_star = induced_map(shuffle_cross(F, P, XP), Pcp, XPcp, hP, hXP, false);
    if (xi_star.rows() != xi_star.cols() || rank(F, xi_star) != xi_star.rows())
        throw InvariantViolation("the shuffle map does not induce an isomorphism on h^" + std::to_string(m));
    DenseVector rhs = *theta_coords;
    const Coeff scale = F.inv(steenrod_number(F, n));
    for (auto& c : rhs)
        c = F.mul(c, scale);
    const auto c = solve(F, xi_star, rhs);
    if (!c)
        throw InvariantViolation("no class Psi solves the shuffle equation");

    ClassicalResult out;
    out.n = n;
    out.psi = hXP.combination(*c);
    const KunnethLayout layout(A, m);
    out.phi = layout.extract(pullback(F, diagonal_chain(F, XP), out.psi));
    return out;
}

DenseVector classical_sigma(const PrimeField& F, std::shared_ptr<const FiniteSimplicialSet> X, int n,
                            const DenseVector& u, int k, int degree_cap, std::size_t limit)
{
    if (k < 0)
        throw ContractViolation("negative operation degree");
    const int p = F.p();
    if (n + k > p * n) {
        const ChainComplex A = X->chain_complex(F, n + k + 1);
        return DenseVector(Cohomology(A, n + k).dim(), 0);
    }
    const auto result = classical_phi(F, std::move(X), n, u, degree_cap, limit);
    for (int i = 0; i < n; ++i)
        if (!is_zero(result.phi.v[i]))
            throw InvariantViolation("classical construction: phi_" + std::to_string(i) + " is not zero");
    if (result.phi.v[n] != u)
        throw InvariantViolation("classical construction: phi_" + std::to_string(n) + " differs from u");
    return result.phi.v[n + k];
}

// ---------------------------------------------------------------------------

namespace {

DenseVector theta_coordinates(const PrimeField& F, const TensorPower& P, const EquivariantCohomology& h, int n,
                              const DenseVector& f)
{
    const auto coords = h.coordinates(theta(F, P, n, f));
    if (!coords)
        throw ContractViolation("theta of a non-cocycle");
    return *coords;
}

} // namespace

bool theta_representative_independent(const PrimeField& F, const ChainComplex& A, int p, int n, const DenseVector& f,
                                      const DenseVector& g)
{
    const int m = p * n;
    const TensorPower P(A, p, m + 1);
    const CpComplex cp = P.cp_complex();
    const EquivariantCohomology h(cp, m);
    const DenseVector dg = n > 0 ? A.boundary(n).apply_transpose(F, g) : DenseVector(A.dim(n), 0);
    return theta_coordinates(F, P, h, n, f) == theta_coordinates(F, P, h, n, add(F, f, dg));
}

DenseVector reduced_theta(const PrimeField& F, const ChainComplex& A, int p, int n, const DenseVector& f)
{
    const int m = p * n;
    const TensorPower P(A, p, m + 1);
    const CpComplex cp = P.cp_complex();
    const ReducedCohomology r(cp, m);
    return r.project(theta_coordinates(F, P, r.equivariant(), n, f));
}

bool reduced_theta_linear(const PrimeField& F, const ChainComplex& A, int p, int n, const DenseVector& f,
                          const DenseVector& g)
{
    const int m = p * n;
    const TensorPower P(A, p, m + 1);
    const CpComplex cp = P.cp_complex();
    const ReducedCohomology r(cp, m);
    auto tilde = [&](const DenseVector& v) { return r.project(theta_coordinates(F, P, r.equivariant(), n, v)); };
    return tilde(add(F, f, g)) == add(F, tilde(f), tilde(g));
}

ChainComplex direct_sum(const std::vector<ChainComplex>& summands)
{
    if (summands.empty())
        throw ContractViolation("direct_sum of nothing");
    const auto& F = summands.front().field();
    int top = summands.front().top();
    for (const auto& A : summands)
        top = std::min(top, A.top());
    std::vector<std::size_t> dims(static_cast<std::size_t>(top) + 1, 0);
    for (const auto& A : summands)
        for (int k = 0; k <= top; ++k)
            dims[k] += A.dim(k);
    std::vector<MatrixFp> boundaries(1);
    for (int k = 1; k <= top; ++k) {
        std::vector<Triplet> t;
        std::size_t row0 = 0, col0 = 0;
        for (const auto& A : summands) {
            const auto& d = A.boundary(k);
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (const auto& e : d.row(r).entries())
                    t.push_back({static_cast<Index>(row0 + r), static_cast<Index>(col0 + e.index), e.value});
            row0 += A.dim(k - 1);
            col0 += A.dim(k);
        }
        boundaries.push_back(MatrixFp::from_triplets(F, dims[k - 1], dims[k], std::move(t)));
    }
    return ChainComplex(F, std::move(dims), std::move(boundaries));
}

bool reduced_sum_to_product(const PrimeField& F, const std::vector<ChainComplex>& summands, int p, int top)
{
    const ChainComplex S = direct_sum(summands);
    if (S.top() < top)
        throw TruncationError("summands are not built through the requested degree");
    const TensorPower PS(S, p, top);
    const CpComplex PScp = PS.cp_complex();

    std::vector<std::unique_ptr<TensorPower>> powers;
    std::vector<std::unique_ptr<CpComplex>> complexes;
    std::vector<ChainMap> inclusions;
    std::vector<std::size_t> offsets(static_cast<std::size_t>(top) + 1, 0);
    for (const auto& A : summands) {
        powers.push_back(std::make_unique<TensorPower>(A, p, top));
        complexes.push_back(std::make_unique<CpComplex>(powers.back()->cp_complex()));
        inclusions.push_back(tensor_power_map(F, *powers.back(), PS, offsets));
        for (int k = 0; k <= top; ++k)
            offsets[k] += A.dim(k);
    }

    for (int m = 0; m + 1 <= top; ++m) {
        const ReducedCohomology rS(PScp, m);
        std::vector<SparseVector> rows;
        for (std::size_t i = 0; i < summands.size(); ++i) {
            const ReducedCohomology ri(*complexes[i], m);
            const MatrixFp h = induced_map(inclusions[i], *complexes[i], PScp, ri.equivariant(), rS.equivariant());
            const MatrixFp r = reduced_induced_map(F, h, ri, rS);
            rows.insert(rows.end(), r.row_data().begin(), r.row_data().end());
        }
        const MatrixFp stacked = MatrixFp::from_rows(rS.dim(), std::move(rows));
        if (stacked.rows() != stacked.cols() || rank(F, stacked) != stacked.rows())
            return false;
    }
    return true;
}

} // namespace steenrod
