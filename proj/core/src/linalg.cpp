#include "steenrod/linalg.hpp"

#include "steenrod/errors.hpp"

#include <algorithm>
#include <string>

namespace steenrod {

SparseVector::SparseVector(std::vector<Entry> entries) : entries_(std::move(entries))
{
#ifndef NDEBUG
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (entries_[k].value == 0 || (k > 0 && entries_[k - 1].index >= entries_[k].index))
            throw ContractViolation("SparseVector entries must be strictly increasing and nonzero");
    }
#endif
}

SparseVector SparseVector::from_dense(std::span<const Coeff> dense)
{
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0)
            out.push_back({static_cast<Index>(i), dense[i]});
    return SparseVector(std::move(out));
}

DenseVector SparseVector::to_dense(std::size_t dim) const
{
    DenseVector out(dim, 0);
    for (const auto& e : entries_) {
        if (e.index >= dim)
            throw ContractViolation("sparse vector index out of range");
        out[e.index] = e.value;
    }
    return out;
}

Coeff SparseVector::at(Index i) const noexcept
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index v) { return e.index < v; });
    return (it != entries_.end() && it->index == i) ? it->value : Coeff{0};
}

Index SparseVector::last_index() const
{
    if (entries_.empty())
        throw ContractViolation("last_index of zero vector");
    return entries_.back().index;
}

Index SparseVector::first_index() const
{
    if (entries_.empty())
        throw ContractViolation("first_index of zero vector");
    return entries_.front().index;
}

void SparseVector::scale(const PrimeField& F, Coeff a)
{
    if (a == 0) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_)
        e.value = F.mul(e.value, a);
}

SparseVector axpy(const PrimeField& F, Coeff a, const SparseVector& x, const SparseVector& y)
{
    if (a == 0 || x.empty())
        return y;
    std::vector<Entry> out;
    out.reserve(x.size() + y.size());
    const auto& xs = x.entries();
    const auto& ys = y.entries();
    std::size_t i = 0, j = 0;
    while (i < xs.size() || j < ys.size()) {
        if (j == ys.size() || (i < xs.size() && xs[i].index < ys[j].index)) {
            out.push_back({xs[i].index, F.mul(a, xs[i].value)});
            ++i;
        } else if (i == xs.size() || ys[j].index < xs[i].index) {
            out.push_back(ys[j]);
            ++j;
        } else {
            const Coeff v = F.add(ys[j].value, F.mul(a, xs[i].value));
            if (v != 0)
                out.push_back({ys[j].index, v});
            ++i;
            ++j;
        }
    }
    return SparseVector(std::move(out));
}

// ---------------------------------------------------------------------------

MatrixFp::MatrixFp(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

MatrixFp MatrixFp::identity(std::size_t n)
{
    MatrixFp m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i] = SparseVector::unit(static_cast<Index>(i));
    return m;
}

MatrixFp MatrixFp::from_triplets(const PrimeField& F, std::size_t rows, std::size_t cols,
                                 std::vector<Triplet> triplets)
{
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    MatrixFp m(rows, cols);
    std::size_t k = 0;
    while (k < triplets.size()) {
        const Index r = triplets[k].row;
        if (r >= rows)
            throw ContractViolation("triplet row out of range");
        std::vector<Entry> entries;
        while (k < triplets.size() && triplets[k].row == r) {
            const Index c = triplets[k].col;
            if (c >= cols)
                throw ContractViolation("triplet column out of range");
            long long sum = 0;
            while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c)
                sum += triplets[k++].value;
            const Coeff v = F.from_int(sum);
            if (v != 0)
                entries.push_back({c, v});
        }
        m.data_[r] = SparseVector(std::move(entries));
    }
    return m;
}

MatrixFp MatrixFp::from_dense(const PrimeField& F, const std::vector<std::vector<long long>>& rows,
                              std::size_t cols)
{
    MatrixFp m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ContractViolation("ragged dense matrix");
        DenseVector d(cols);
        for (std::size_t c = 0; c < cols; ++c)
            d[c] = F.from_int(rows[r][c]);
        m.data_[r] = SparseVector::from_dense(d);
    }
    return m;
}

MatrixFp MatrixFp::from_rows(std::size_t cols, std::vector<SparseVector> rows)
{
    MatrixFp m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    for (const auto& r : rows)
        if (!r.empty() && r.last_index() >= cols)
            throw ContractViolation("row entry beyond column count");
    m.data_ = std::move(rows);
    return m;
}

void MatrixFp::set_row(std::size_t r, SparseVector v)
{
    if (r >= rows_ || (!v.empty() && v.last_index() >= cols_))
        throw ContractViolation("set_row out of range");
    data_[r] = std::move(v);
}

Coeff MatrixFp::at(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw ContractViolation("matrix index out of range");
    return data_[r].at(static_cast<Index>(c));
}

std::size_t MatrixFp::nonzeros() const noexcept
{
    std::size_t n = 0;
    for (const auto& r : data_)
        n += r.size();
    return n;
}

MatrixFp MatrixFp::transpose() const
{
    std::vector<std::vector<Entry>> cols(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r].entries())
            cols[e.index].push_back({static_cast<Index>(r), e.value});
    MatrixFp t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
        t.data_[c] = SparseVector(std::move(cols[c]));
    return t;
}

DenseVector MatrixFp::apply(const PrimeField& F, std::span<const Coeff> x) const
{
    if (x.size() != cols_)
        throw ContractViolation("apply: dimension mismatch");
    DenseVector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        int acc = 0;
        for (const auto& e : data_[r].entries())
            acc += e.value * x[e.index];
        out[r] = F.from_int(acc);
    }
    return out;
}

DenseVector MatrixFp::apply_transpose(const PrimeField& F, std::span<const Coeff> y) const
{
    if (y.size() != rows_)
        throw ContractViolation("apply_transpose: dimension mismatch");
    DenseVector out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (y[r] == 0)
            continue;
        for (const auto& e : data_[r].entries())
            out[e.index] = F.add(out[e.index], F.mul(y[r], e.value));
    }
    return out;
}

std::vector<std::vector<Coeff>> MatrixFp::to_dense() const
{
    std::vector<std::vector<Coeff>> out;
    out.reserve(rows_);
    for (const auto& r : data_)
        out.push_back(r.to_dense(cols_));
    return out;
}

MatrixFp multiply(const PrimeField& F, const MatrixFp& a, const MatrixFp& b)
{
    if (a.cols() != b.rows())
        throw ContractViolation("multiply: dimension mismatch");
    MatrixFp out(a.rows(), b.cols());
    DenseVector acc(b.cols(), 0);
    std::vector<bool> seen(b.cols(), false);
    std::vector<Index> touched;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        touched.clear();
        for (const auto& ea : a.row(r).entries()) {
            for (const auto& eb : b.row(ea.index).entries()) {
                if (!seen[eb.index]) {
                    seen[eb.index] = true;
                    touched.push_back(eb.index);
                }
                acc[eb.index] = F.add(acc[eb.index], F.mul(ea.value, eb.value));
            }
        }
        std::sort(touched.begin(), touched.end());
        std::vector<Entry> entries;
        for (Index c : touched) {
            if (acc[c] != 0)
                entries.push_back({c, acc[c]});
            acc[c] = 0;
            seen[c] = false;
        }
        out.set_row(r, SparseVector(std::move(entries)));
    }
    return out;
}

MatrixFp add(const PrimeField& F, const MatrixFp& a, const MatrixFp& b, Coeff scale)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContractViolation("add: dimension mismatch");
    MatrixFp out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        out.set_row(r, axpy(F, scale, b.row(r), a.row(r)));
    return out;
}

// ---------------------------------------------------------------------------

RrefResult rref(const PrimeField& F, const MatrixFp& m)
{
    const std::size_t n = m.rows();
    std::vector<SparseVector> echelon;
    std::vector<SparseVector> combos;
    std::vector<Index> pivot_col;
    std::vector<std::int32_t> slot(m.cols(), -1);
    std::vector<SparseVector> relations;

    for (std::size_t r = 0; r < n; ++r) {
        SparseVector v = m.row(r);
        SparseVector comb = SparseVector::unit(static_cast<Index>(r));
        // Echelon rows vanish on the other pivot columns, so one pass over the
        // original entries clears every pivot column.
        for (const auto& e : m.row(r).entries()) {
            const std::int32_t k = slot[e.index];
            if (k < 0)
                continue;
            const Coeff f = F.neg(e.value);
            v = axpy(F, f, echelon[k], v);
            comb = axpy(F, f, combos[k], comb);
        }
        if (v.empty()) {
            relations.push_back(std::move(comb));
            continue;
        }
        const Index c0 = v.first_index();
        const Coeff s = F.inv(v.at(c0));
        v.scale(F, s);
        comb.scale(F, s);
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            const Coeff x = echelon[k].at(c0);
            if (x == 0)
                continue;
            echelon[k] = axpy(F, F.neg(x), v, echelon[k]);
            combos[k] = axpy(F, F.neg(x), comb, combos[k]);
        }
        slot[c0] = static_cast<std::int32_t>(echelon.size());
        echelon.push_back(std::move(v));
        combos.push_back(std::move(comb));
        pivot_col.push_back(c0);
    }

    std::vector<std::size_t> order(echelon.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_col[a] < pivot_col[b]; });

    RrefResult out{MatrixFp(n, m.cols()), {}, MatrixFp(n, n)};
    std::size_t row = 0;
    for (std::size_t k : order) {
        out.reduced.set_row(row, echelon[k]);
        out.transform.set_row(row, combos[k]);
        out.pivots.push_back(pivot_col[k]);
        ++row;
    }
    for (auto& rel : relations)
        out.transform.set_row(row++, std::move(rel));
    return out;
}

std::size_t rank(const PrimeField& F, const MatrixFp& m)
{
    return rref(F, m).pivots.size();
}

SubspaceFp SubspaceFp::span(const PrimeField& F, std::size_t ambient_dim, std::span<const SparseVector> vectors)
{
    std::vector<SparseVector> rows(vectors.begin(), vectors.end());
    auto r = rref(F, MatrixFp::from_rows(ambient_dim, std::move(rows)));
    SubspaceFp s(ambient_dim);
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
        s.basis_.push_back(r.reduced.row(k));
    s.pivots_ = std::move(r.pivots);
    return s;
}

SubspaceFp SubspaceFp::full(std::size_t ambient_dim)
{
    SubspaceFp s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        s.basis_.push_back(SparseVector::unit(static_cast<Index>(i)));
        s.pivots_.push_back(static_cast<Index>(i));
    }
    return s;
}

SparseVector SubspaceFp::reduce(const PrimeField& F, const SparseVector& v) const
{
    if (!v.empty() && v.last_index() >= ambient_)
        throw ContractViolation("vector outside the ambient space");
    SparseVector out = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Coeff x = v.at(pivots_[k]);
        if (x != 0)
            out = axpy(F, F.neg(x), basis_[k], out);
    }
    return out;
}

bool SubspaceFp::contains(const PrimeField& F, const SparseVector& v) const
{
    return reduce(F, v).empty();
}

std::optional<DenseVector> SubspaceFp::coordinates(const PrimeField& F, const SparseVector& v) const
{
    if (!contains(F, v))
        return std::nullopt;
    DenseVector out(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k)
        out[k] = v.at(pivots_[k]);
    return out;
}

SubspaceFp kernel(const PrimeField& F, const MatrixFp& m)
{
    const auto r = rref(F, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (Index c : r.pivots)
        is_pivot[c] = true;
    std::vector<SparseVector> vectors;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Entry> entries{{static_cast<Index>(f), 1}};
        for (std::size_t k = 0; k < r.pivots.size(); ++k) {
            const Coeff x = r.reduced.row(k).at(static_cast<Index>(f));
            if (x != 0)
                entries.push_back({r.pivots[k], F.neg(x)});
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
        vectors.emplace_back(std::move(entries));
    }
    return SubspaceFp::span(F, m.cols(), vectors);
}

SubspaceFp image(const PrimeField& F, const MatrixFp& m)
{
    const auto t = m.transpose();
    return SubspaceFp::span(F, m.rows(), t.row_data());
}

std::optional<DenseVector> solve(const PrimeField& F, const MatrixFp& m, std::span<const Coeff> b)
{
    if (b.size() != m.rows())
        throw ContractViolation("solve: right-hand side has wrong length");
    const auto r = rref(F, m);
    const DenseVector c = r.transform.apply(F, b);
    for (std::size_t k = r.pivots.size(); k < c.size(); ++k)
        if (c[k] != 0)
            return std::nullopt;
    DenseVector x(m.cols(), 0);
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
        x[r.pivots[k]] = c[k];
    return x;
}

SubspaceFp subspace_sum(const PrimeField& F, const SubspaceFp& s, const SubspaceFp& t)
{
    if (s.ambient_dim() != t.ambient_dim())
        throw ContractViolation("subspace_sum: ambient dimension mismatch");
    std::vector<SparseVector> all = s.basis();
    all.insert(all.end(), t.basis().begin(), t.basis().end());
    return SubspaceFp::span(F, s.ambient_dim(), all);
}

bool subspace_contains(const PrimeField& F, const SubspaceFp& s, const SubspaceFp& t)
{
    if (s.ambient_dim() != t.ambient_dim())
        throw ContractViolation("subspace_contains: ambient dimension mismatch");
    for (const auto& v : t.basis())
        if (!s.contains(F, v))
            return false;
    return true;
}

QuotientSpace::QuotientSpace(const PrimeField& F, SubspaceFp whole, SubspaceFp sub)
    : whole_(std::move(whole)), sub_(std::move(sub))
{
    if (!subspace_contains(F, whole_, sub_))
        throw ContractViolation("quotient: sub is not contained in whole");
    std::vector<SparseVector> reduced;
    for (const auto& v : whole_.basis())
        reduced.push_back(sub_.reduce(F, v));
    complement_ = SubspaceFp::span(F, whole_.ambient_dim(), reduced);
}

std::optional<DenseVector> QuotientSpace::coordinates(const PrimeField& F, const SparseVector& v) const
{
    if (!whole_.contains(F, v))
        return std::nullopt;
    return complement_.coordinates(F, sub_.reduce(F, v));
}

// ---------------------------------------------------------------------------

namespace {

/// Dense accumulator with a max-heap of touched indices.
class WorkingColumn {
public:
    WorkingColumn(const PrimeField& F, std::size_t dim) : F_(F), dense_(dim, 0) {}

    void add(const SparseVector& v, Coeff a)
    {
        for (const auto& e : v.entries()) {
            dense_[e.index] = F_.add(dense_[e.index], F_.mul(a, e.value));
            heap_.push_back(e.index);
            std::push_heap(heap_.begin(), heap_.end());
        }
    }

    std::optional<Index> pivot()
    {
        while (!heap_.empty()) {
            const Index top = heap_.front();
            if (dense_[top] != 0)
                return top;
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.pop_back();
        }
        return std::nullopt;
    }

    Coeff at(Index i) const { return dense_[i]; }

    SparseVector extract()
    {
        std::vector<Entry> out;
        while (!heap_.empty()) {
            const Index top = heap_.front();
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.pop_back();
            if (dense_[top] != 0) {
                out.push_back({top, dense_[top]});
                dense_[top] = 0;
            }
        }
        std::reverse(out.begin(), out.end());
        return SparseVector(std::move(out));
    }

private:
    const PrimeField& F_;
    DenseVector dense_;
    std::vector<Index> heap_;
};

struct ColumnReduction {
    std::vector<SparseVector> reduced;                    // empty when zero or skipped
    std::vector<std::vector<std::pair<Index, Coeff>>> adds; // column -> (earlier column, factor)
    std::vector<bool> zero;                               // reduced to zero (not skipped)
};

std::size_t target_dim(std::span<const SparseVector> columns)
{
    std::size_t d = 0;
    for (const auto& c : columns)
        if (!c.empty())
            d = std::max<std::size_t>(d, c.last_index() + 1);
    return d;
}

ColumnReduction reduce_columns(const PrimeField& F, std::span<const SparseVector> columns,
                               const std::vector<bool>& skip)
{
    const std::size_t rows = target_dim(columns);
    ColumnReduction out;
    out.reduced.resize(columns.size());
    out.adds.resize(columns.size());
    out.zero.assign(columns.size(), false);
    std::vector<std::int32_t> owner(rows, -1);
    WorkingColumn work(F, rows);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (!skip.empty() && skip[i])
            continue;
        work.add(columns[i], 1);
        while (auto piv = work.pivot()) {
            const std::int32_t k = owner[*piv];
            if (k < 0)
                break;
            const auto& rk = out.reduced[k];
            const Coeff f = F.neg(F.div(work.at(*piv), rk.entries().back().value));
            work.add(rk, f);
            out.adds[i].emplace_back(static_cast<Index>(k), f);
        }
        SparseVector r = work.extract();
        if (r.empty()) {
            out.zero[i] = true;
        } else {
            owner[r.last_index()] = static_cast<std::int32_t>(i);
            out.reduced[i] = std::move(r);
        }
    }
    return out;
}

} // namespace

CocycleBasis CocycleBasis::compute(const PrimeField& F, std::size_t dim, std::span<const SparseVector> lower,
                                   std::span<const SparseVector> upper)
{
    if (upper.size() != dim)
        throw ContractViolation("CocycleBasis: need one coboundary column per basis element");
    CocycleBasis out;
    out.dim_ = dim;
    out.pivot_owner_.assign(dim, -1);

    std::vector<bool> cleared(dim, false);
    if (!lower.empty()) {
        if (target_dim(lower) > dim)
            throw ContractViolation("CocycleBasis: lower coboundary leaves the degree");
        auto low = reduce_columns(F, lower, {});
        for (auto& r : low.reduced) {
            if (r.empty())
                continue;
            const Index piv = r.last_index();
            cleared[piv] = true;
            out.pivot_owner_[piv] = static_cast<std::int32_t>(2 * out.boundaries_.size());
            out.boundaries_.push_back(std::move(r));
        }
    }

    auto up = reduce_columns(F, upper, cleared);
    std::vector<int> coef(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!up.zero[i])
            continue;
        // V_i = e_i + sum factor * V_k, with every k < i.
        coef[i] = 1;
        std::vector<Entry> entries;
        for (std::size_t idx = i + 1; idx-- > 0;) {
            if (coef[idx] == 0)
                continue;
            const Coeff c = static_cast<Coeff>(coef[idx]);
            coef[idx] = 0;
            entries.push_back({static_cast<Index>(idx), c});
            for (const auto& [k, f] : up.adds[idx])
                coef[k] = F.add(static_cast<Coeff>(coef[k]), F.mul(c, f));
        }
        std::reverse(entries.begin(), entries.end());
        out.pivot_owner_[i] = static_cast<std::int32_t>(2 * out.essential_.size() + 1);
        out.essential_.emplace_back(std::move(entries));
    }
    return out;
}

std::optional<DenseVector> CocycleBasis::class_coordinates(const PrimeField& F, const SparseVector& cochain) const
{
    if (!cochain.empty() && cochain.last_index() >= dim_)
        throw ContractViolation("class_coordinates: cochain has the wrong degree");
    DenseVector coords(essential_.size(), 0);
    WorkingColumn work(F, dim_);
    work.add(cochain, 1);
    while (auto piv = work.pivot()) {
        const std::int32_t owner = pivot_owner_[*piv];
        if (owner < 0) {
            work.extract();
            return std::nullopt;
        }
        const bool essential = owner & 1;
        const auto& v = essential ? essential_[owner / 2] : boundaries_[owner / 2];
        const Coeff f = F.div(work.at(*piv), v.entries().back().value);
        if (essential)
            coords[owner / 2] = f;
        work.add(v, F.neg(f));
    }
    return coords;
}

bool is_zero(std::span<const Coeff> v) noexcept
{
    return std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; });
}

DenseVector add(const PrimeField& F, std::span<const Coeff> a, std::span<const Coeff> b, Coeff scale)
{
    if (a.size() != b.size())
        throw ContractViolation("dense add: length mismatch");
    DenseVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = F.add(a[i], F.mul(scale, b[i]));
    return out;
}

} // namespace steenrod
