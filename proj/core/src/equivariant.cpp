#include "steenrod/equivariant.hpp"

#include "steenrod/errors.hpp"

#include <string>

namespace steenrod {

namespace {

MatrixFp power_sum(const PrimeField& F, const MatrixFp& t)
{
    // 1 + t + ... + t^{p-1}
    MatrixFp power = MatrixFp::identity(t.rows());
    MatrixFp sum = power;
    for (int k = 1; k < F.p(); ++k) {
        power = multiply(F, t, power);
        sum = add(F, sum, power);
    }
    return sum;
}

MatrixFp inverse_minus_one(const PrimeField& F, const MatrixFp& t)
{
    // t^{-1} - 1 = t^{p-1} - 1
    MatrixFp power = MatrixFp::identity(t.rows());
    for (int k = 1; k < F.p(); ++k)
        power = multiply(F, t, power);
    return add(F, power, MatrixFp::identity(t.rows()), F.neg(1));
}

} // namespace

TotalComplex::TotalComplex(const CpComplex& A) : A_(&A)
{
    const auto& F = A.field();
    // The coboundary out of degree m reads the twists on A_{<= m}; A_top never needs them.
    for (int k = 0; k < A.top(); ++k) {
        if (A.trivial_action()) {
            // t = 1: t^{-1} - 1 = 0 and N = p = 0.
            twist_odd_.emplace_back(A.dim(k), A.dim(k));
            twist_even_.emplace_back(A.dim(k), A.dim(k));
        } else {
            twist_odd_.push_back(inverse_minus_one(F, A.action(k)));
            twist_even_.push_back(power_sum(F, A.action(k)));
        }
    }
}

std::size_t TotalComplex::dim(int m) const
{
    std::size_t d = 0;
    for (int j = 0; j <= m; ++j)
        d += A_->dim(m - j);
    return d;
}

std::size_t TotalComplex::offset(int m, int j) const
{
    if (j < 0 || j > m + 1)
        throw ContractViolation("resolution index out of range");
    std::size_t d = 0;
    for (int i = 0; i < j; ++i)
        d += A_->dim(m - i);
    return d;
}

std::vector<SparseVector> TotalComplex::coboundary_columns(int m) const
{
    if (m + 1 > A_->top())
        throw TruncationError("equivariant coboundary in degree " + std::to_string(m) + " needs chains through degree " +
                              std::to_string(m + 1) + "; raise cap");
    const auto& F = field();
    std::vector<SparseVector> columns;
    columns.reserve(dim(m));
    for (int j = 0; j <= m; ++j) {
        const int deg = m - j;
        const Coeff sign = F.sign(j);
        const MatrixFp& d = A_->boundary(deg + 1);
        const MatrixFp& twist = (j + 1) % 2 ? twist_odd_[deg] : twist_even_[deg];
        const Index same = static_cast<Index>(offset(m + 1, j));
        const Index next = static_cast<Index>(offset(m + 1, j + 1));
        for (std::size_t b = 0; b < A_->dim(deg); ++b) {
            std::vector<Entry> entries;
            for (const auto& e : d.row(b).entries())
                entries.push_back({same + e.index, F.mul(sign, e.value)});
            for (const auto& e : twist.row(b).entries())
                entries.push_back({next + e.index, e.value});
            columns.emplace_back(std::move(entries));
        }
    }
    return columns;
}

MatrixFp TotalComplex::coboundary_matrix(int m) const
{
    const auto columns = coboundary_columns(m);
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& e : columns[c].entries())
            t.push_back({e.index, static_cast<Index>(c), e.value});
    return MatrixFp::from_triplets(field(), dim(m + 1), dim(m), std::move(t));
}

SparseVector TotalComplex::flatten(const EquivariantCochain& c) const
{
    if (static_cast<int>(c.components.size()) != c.degree + 1)
        throw ContractViolation("equivariant cochain needs degree + 1 components");
    std::vector<Entry> entries;
    std::size_t base = 0;
    for (int j = 0; j <= c.degree; ++j) {
        const auto& comp = c.components[j];
        if (comp.size() != A_->dim(c.degree - j))
            throw ContractViolation("component " + std::to_string(j) + " has the wrong length");
        for (std::size_t i = 0; i < comp.size(); ++i)
            if (comp[i])
                entries.push_back({static_cast<Index>(base + i), comp[i]});
        base += comp.size();
    }
    return SparseVector(std::move(entries));
}

EquivariantCochain TotalComplex::split(int m, const SparseVector& v) const
{
    EquivariantCochain c = zero(m);
    std::size_t j = 0, base = 0;
    for (const auto& e : v.entries()) {
        while (j <= static_cast<std::size_t>(m) && e.index >= base + c.components[j].size())
            base += c.components[j++].size();
        if (j > static_cast<std::size_t>(m))
            throw ContractViolation("flat cochain index out of range");
        c.components[j][e.index - base] = e.value;
    }
    return c;
}

EquivariantCochain TotalComplex::zero(int m) const
{
    EquivariantCochain c;
    c.degree = m;
    for (int j = 0; j <= m; ++j)
        c.components.emplace_back(A_->dim(m - j), 0);
    return c;
}

// ---------------------------------------------------------------------------

EquivariantCohomology::EquivariantCohomology(const CpComplex& A, int m) : degree_(m), total_(A)
{
    if (m < 0)
        throw ContractViolation("negative degree");
    if (A.top() < m + 1)
        throw TruncationError("h^" + std::to_string(m) + " needs chains through degree " + std::to_string(m + 1) +
                              "; raise cap");
    const auto upper = total_.coboundary_columns(m);
    const auto lower = m > 0 ? total_.coboundary_columns(m - 1) : std::vector<SparseVector>{};
    basis_ = CocycleBasis::compute(A.field(), total_.dim(m), lower, upper);
}

EquivariantCochain EquivariantCohomology::representative(std::size_t i) const
{
    return total_.split(degree_, basis_.representatives().at(i));
}

EquivariantCochain EquivariantCohomology::combination(std::span<const Coeff> coords) const
{
    if (coords.size() != dim())
        throw ContractViolation("class coordinates have the wrong length");
    const auto& F = total_.field();
    SparseVector acc;
    for (std::size_t i = 0; i < coords.size(); ++i)
        acc = axpy(F, coords[i], basis_.representatives()[i], acc);
    return total_.split(degree_, acc);
}

std::optional<DenseVector> EquivariantCohomology::coordinates(const EquivariantCochain& c) const
{
    if (c.degree != degree_)
        throw ContractViolation("cochain degree does not match the cohomology degree");
    return basis_.class_coordinates(total_.field(), total_.flatten(c));
}

// ---------------------------------------------------------------------------

EquivariantCochain pullback(const PrimeField& F, const ChainMap& f, const EquivariantCochain& phi)
{
    if (f.top() < phi.degree)
        throw TruncationError("chain map is not built through degree " + std::to_string(phi.degree) + "; raise cap");
    EquivariantCochain out;
    out.degree = phi.degree;
    for (int j = 0; j <= phi.degree; ++j)
        out.components.push_back(f[phi.degree - j].apply_transpose(F, phi.components[j]));
    return out;
}

MatrixFp induced_map(const ChainMap& f, const CpComplex& A, const CpComplex& B, const EquivariantCohomology& hA,
                     const EquivariantCohomology& hB, bool check)
{
    const auto& F = A.field();
    if (hA.degree() != hB.degree())
        throw ContractViolation("induced_map: degrees differ");
    if (check) {
        if (!commutes_with_boundary(f, A.complex(), B.complex()))
            throw ContractViolation("induced_map: the chain map does not commute with the boundary");
        if (!commutes_with_action(f, A, B))
            throw ContractViolation("induced_map: the chain map is not equivariant");
    }
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < hB.dim(); ++c) {
        const auto coords = hA.coordinates(pullback(F, f, hB.representative(c)));
        if (!coords)
            throw InvariantViolation("pullback of an equivariant cocycle is not a cocycle");
        for (std::size_t r = 0; r < coords->size(); ++r)
            if ((*coords)[r])
                t.push_back({static_cast<Index>(r), static_cast<Index>(c), (*coords)[r]});
    }
    return MatrixFp::from_triplets(F, hA.dim(), hB.dim(), std::move(t));
}

EquivariantCochain cross_product(const ChainComplex& A, int j, int i, const DenseVector& upsilon)
{
    if (j < 0 || i < 0)
        throw ContractViolation("cross_product: negative degree");
    if (upsilon.size() != A.dim(i))
        throw ContractViolation("cross_product: cochain has the wrong length");
    EquivariantCochain c;
    c.degree = i + j;
    for (int k = 0; k <= c.degree; ++k)
        c.components.emplace_back(A.dim(c.degree - k), 0);
    c.components[j] = upsilon;
    return c;
}

// ---------------------------------------------------------------------------

KunnethLayout::KunnethLayout(const ChainComplex& A, int m) : A_(&A), degree_(m)
{
    if (A.top() < m + 1)
        throw TruncationError("Kunneth coordinates in degree " + std::to_string(m) + " need chains through degree " +
                              std::to_string(m + 1) + "; raise cap");
    offsets_.push_back(0);
    for (int i = 0; i <= m; ++i) {
        H_.emplace_back(A, i);
        offsets_.push_back(offsets_.back() + H_.back().dim());
    }
}

KunnethVector KunnethLayout::extract(const EquivariantCochain& c) const
{
    if (c.degree != degree_)
        throw ContractViolation("Kunneth extraction: degree mismatch");
    KunnethVector w;
    w.degree = degree_;
    for (int i = 0; i <= degree_; ++i) {
        auto coords = H_[i].coordinates(c.components[degree_ - i]);
        if (!coords)
            throw InvariantViolation("component " + std::to_string(degree_ - i) +
                                     " of an equivariant cocycle over a trivial action is not a cocycle");
        w.v.push_back(std::move(*coords));
    }
    return w;
}

EquivariantCochain KunnethLayout::assemble(const KunnethVector& w) const
{
    if (w.degree != degree_ || static_cast<int>(w.v.size()) != degree_ + 1)
        throw ContractViolation("Kunneth vector has the wrong shape");
    EquivariantCochain c;
    c.degree = degree_;
    c.components.resize(static_cast<std::size_t>(degree_) + 1);
    for (int i = 0; i <= degree_; ++i)
        c.components[degree_ - i] = H_[i].representative(w.v[i]);
    return c;
}

DenseVector KunnethLayout::flatten(const KunnethVector& w) const
{
    if (w.degree != degree_ || static_cast<int>(w.v.size()) != degree_ + 1)
        throw ContractViolation("Kunneth vector has the wrong shape");
    DenseVector flat;
    flat.reserve(dim());
    for (int i = 0; i <= degree_; ++i) {
        if (w.v[i].size() != H_[i].dim())
            throw ContractViolation("Kunneth block has the wrong length");
        flat.insert(flat.end(), w.v[i].begin(), w.v[i].end());
    }
    return flat;
}

KunnethVector KunnethLayout::unflatten(std::span<const Coeff> flat) const
{
    if (flat.size() != dim())
        throw ContractViolation("flat Kunneth vector has the wrong length");
    KunnethVector w;
    w.degree = degree_;
    for (int i = 0; i <= degree_; ++i)
        w.v.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                         flat.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
    return w;
}

KunnethVector KunnethLayout::zero() const
{
    return unflatten(DenseVector(dim(), 0));
}

// ---------------------------------------------------------------------------

EquivariantCochain transfer(const PrimeField& F, const CpComplex& A, int m, const DenseVector& upsilon)
{
    if (upsilon.size() != A.dim(m))
        throw ContractViolation("transfer: cochain has the wrong length");
    EquivariantCochain c;
    c.degree = m;
    for (int j = 0; j <= m; ++j)
        c.components.emplace_back(A.dim(m - j), 0);
    c.components[0] = power_sum(F, A.action(m)).apply_transpose(F, upsilon);
    return c;
}

ReducedCohomology::ReducedCohomology(const CpComplex& A, int m) : h_(A, m)
{
    const auto& F = A.field();
    const Cohomology H(A.complex(), m);
    std::vector<SparseVector> images;
    for (const auto& rep : H.representatives()) {
        const auto coords = h_.coordinates(transfer(F, A, m, rep.to_dense(A.dim(m))));
        if (!coords)
            throw InvariantViolation("transfer of a cocycle is not a cocycle");
        images.push_back(SparseVector::from_dense(*coords));
    }
    quotient_ = QuotientSpace(F, SubspaceFp::full(h_.dim()), SubspaceFp::span(F, h_.dim(), images));
}

DenseVector ReducedCohomology::project(std::span<const Coeff> h_coords) const
{
    const PrimeField F = h_.total().field();
    return *quotient_.coordinates(F, SparseVector::from_dense(h_coords));
}

DenseVector ReducedCohomology::lift(std::size_t i) const
{
    return quotient_.representatives().at(i).to_dense(h_.dim());
}

MatrixFp reduced_induced_map(const PrimeField& F, const MatrixFp& h_map, const ReducedCohomology& rA,
                             const ReducedCohomology& rB)
{
    if (h_map.rows() != rA.equivariant().dim() || h_map.cols() != rB.equivariant().dim())
        throw ContractViolation("reduced_induced_map: matrix shape does not match");
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < rB.dim(); ++c) {
        const auto col = rA.project(h_map.apply(F, rB.lift(c)));
        for (std::size_t r = 0; r < col.size(); ++r)
            if (col[r])
                t.push_back({static_cast<Index>(r), static_cast<Index>(c), col[r]});
    }
    return MatrixFp::from_triplets(F, rA.dim(), rB.dim(), std::move(t));
}

CpComplex free_cp_complex(const ChainComplex& A)
{
    const auto& F = A.field();
    const auto p = static_cast<std::size_t>(F.p());
    std::vector<std::size_t> dims;
    std::vector<MatrixFp> boundaries(1);
    std::vector<MatrixFp> action;
    for (int k = 0; k <= A.top(); ++k) {
        dims.push_back(A.dim(k) * p);
        std::vector<Triplet> t;
        for (std::size_t a = 0; a < A.dim(k); ++a)
            for (std::size_t g = 0; g < p; ++g)
                t.push_back({static_cast<Index>(a * p + (g + 1) % p), static_cast<Index>(a * p + g), 1});
        action.push_back(MatrixFp::from_triplets(F, dims.back(), dims.back(), std::move(t)));
        if (k == 0)
            continue;
        std::vector<Triplet> d;
        const auto& bd = A.boundary(k);
        for (std::size_t r = 0; r < bd.rows(); ++r)
            for (const auto& e : bd.row(r).entries())
                for (std::size_t g = 0; g < p; ++g)
                    d.push_back({static_cast<Index>(r * p + g), static_cast<Index>(e.index * p + g), e.value});
        boundaries.push_back(MatrixFp::from_triplets(F, dims[k - 1], dims[k], std::move(d)));
    }
    return CpComplex(ChainComplex(F, std::move(dims), std::move(boundaries)), std::move(action));
}

} // namespace steenrod
