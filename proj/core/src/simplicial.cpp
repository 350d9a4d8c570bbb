#include "steenrod/simplicial.hpp"

#include "steenrod/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace steenrod {

namespace {

using Surjection = std::vector<int>;

/// eta : [m] -> [m - popcount(mask)] repeating at the mask positions.
Surjection surjection(std::uint32_t mask, int m)
{
    Surjection eta(static_cast<std::size_t>(m) + 1);
    eta[0] = 0;
    for (int x = 0; x < m; ++x)
        eta[x + 1] = eta[x] + (((mask >> x) & 1u) ? 0 : 1);
    return eta;
}

std::uint32_t mask_of(const Surjection& c)
{
    std::uint32_t mask = 0;
    for (std::size_t x = 0; x + 1 < c.size(); ++x)
        if (c[x] == c[x + 1])
            mask |= 1u << x;
    return mask;
}

std::uint64_t key(const SimplexRef& s)
{
    return (static_cast<std::uint64_t>(s.generator) << 32) | s.degeneracies;
}

} // namespace

DegeneracyWord DegeneracyWord::from_mask(std::uint32_t mask)
{
    DegeneracyWord w;
    for (int i = 31; i >= 0; --i)
        if ((mask >> i) & 1u)
            w.indices.push_back(i);
    return w;
}

std::uint32_t DegeneracyWord::mask() const
{
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const int i = indices[k];
        if (i < 0 || i > FiniteSimplicialSet::kMaxDim || (k > 0 && indices[k - 1] <= i))
            throw InvalidInput("degeneracy word must be strictly decreasing and nonnegative");
        mask |= 1u << i;
    }
    return mask;
}

// ---------------------------------------------------------------------------

FiniteSimplicialSet::FiniteSimplicialSet(std::vector<Generator> generators)
{
    const std::size_t n = generators.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (const auto& g : generators)
        if (g.dim < 0 || g.dim > kMaxDim)
            throw InvalidInput("generator '" + g.name + "' has unsupported dimension " + std::to_string(g.dim));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return generators[a].dim < generators[b].dim; });
    std::vector<GeneratorId> new_id(n);
    for (std::size_t k = 0; k < n; ++k)
        new_id[order[k]] = static_cast<GeneratorId>(k);

    generators_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Generator g = std::move(generators[order[k]]);
        for (auto& f : g.faces) {
            if (f.generator >= n)
                throw InvalidInput("face of '" + g.name + "' refers to an unknown generator");
            f.generator = new_id[f.generator];
        }
        generators_.push_back(std::move(g));
    }

    for (GeneratorId id = 0; id < n; ++id) {
        const auto& g = generators_[id];
        if (g.name.empty())
            throw InvalidInput("generator names must be nonempty");
        if (!names_.emplace(g.name, id).second)
            throw InvalidInput("duplicate generator name '" + g.name + "'");
        cap_ = std::max(cap_, g.dim);
        if (static_cast<int>(by_dim_.size()) <= g.dim)
            by_dim_.resize(static_cast<std::size_t>(g.dim) + 1);
        basis_index_.push_back(by_dim_[g.dim].size());
        by_dim_[g.dim].push_back(id);
    }
    validate();
}

void FiniteSimplicialSet::validate() const
{
    for (const auto& g : generators_) {
        const std::size_t want = g.dim == 0 ? 0 : static_cast<std::size_t>(g.dim) + 1;
        if (g.faces.size() != want)
            throw InvalidInput("generator '" + g.name + "' needs " + std::to_string(want) + " faces");
        for (const auto& f : g.faces) {
            const auto& target = generators_[f.generator];
            if (f.dim != g.dim - 1 || target.dim > f.dim)
                throw InvalidInput("face of '" + g.name + "' has the wrong dimension");
            if (std::popcount(f.degeneracies) != f.dim - target.dim ||
                (f.dim < 32 && (f.degeneracies >> f.dim) != 0))
                throw InvalidInput("face of '" + g.name + "' has an invalid degeneracy word");
        }
    }
    // d_i d_j = d_{j-1} d_i for i < j
    for (GeneratorId id = 0; id < generators_.size(); ++id) {
        const auto& g = generators_[id];
        if (g.dim < 2)
            continue;
        const SimplexRef s = nondegenerate(id);
        for (int j = 1; j <= g.dim; ++j)
            for (int i = 0; i < j; ++i)
                if (face(face(s, j), i) != face(face(s, i), j - 1))
                    throw InvalidInput("simplicial identity d_" + std::to_string(i) + " d_" + std::to_string(j) +
                                       " = d_" + std::to_string(j - 1) + " d_" + std::to_string(i) +
                                       " fails on '" + g.name + "'");
    }
}

const std::vector<GeneratorId>& FiniteSimplicialSet::generators_in_dim(int dim) const
{
    static const std::vector<GeneratorId> none;
    if (dim < 0 || dim >= static_cast<int>(by_dim_.size()))
        return none;
    return by_dim_[dim];
}

std::optional<GeneratorId> FiniteSimplicialSet::find(const std::string& name) const
{
    auto it = names_.find(name);
    if (it == names_.end())
        return std::nullopt;
    return it->second;
}

SimplexRef FiniteSimplicialSet::nondegenerate(GeneratorId id) const
{
    return SimplexRef{id, 0, generator(id).dim};
}

SimplexRef FiniteSimplicialSet::face(const SimplexRef& s, int i) const
{
    const int m = s.dim;
    if (m < 1 || i < 0 || i > m)
        throw ContractViolation("face d_" + std::to_string(i) + " undefined in dimension " + std::to_string(m));
    const Surjection eta = surjection(s.degeneracies, m);
    const int v = eta[i];
    const bool sole = (i == 0 || eta[i - 1] != v) && (i == m || eta[i + 1] != v);
    Surjection g;
    g.reserve(static_cast<std::size_t>(m));
    for (int x = 0; x <= m; ++x)
        if (x != i)
            g.push_back(eta[x]);
    if (!sole)
        return SimplexRef{s.generator, mask_of(g), m - 1};

    // The face misses vertex v of the generator: go through d_v sigma.
    const SimplexRef& f = generator(s.generator).faces[v];
    for (auto& y : g)
        if (y > v)
            --y;
    const Surjection zeta = surjection(f.degeneracies, f.dim);
    for (auto& y : g)
        y = zeta[y];
    return SimplexRef{f.generator, mask_of(g), m - 1};
}

SimplexRef FiniteSimplicialSet::degeneracy(const SimplexRef& s, int j) const
{
    const int m = s.dim;
    if (j < 0 || j > m || m + 1 > kMaxDim)
        throw ContractViolation("degeneracy s_" + std::to_string(j) + " undefined in dimension " + std::to_string(m));
    const Surjection eta = surjection(s.degeneracies, m);
    Surjection c(static_cast<std::size_t>(m) + 2);
    for (int x = 0; x <= m + 1; ++x)
        c[x] = eta[x <= j ? x : x - 1];
    return SimplexRef{s.generator, mask_of(c), m + 1};
}

SimplexRef FiniteSimplicialSet::normalize(GeneratorId id, std::span<const SimplicialOp> ops) const
{
    SimplexRef s = nondegenerate(id);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        s = it->kind == SimplicialOp::Kind::Face ? face(s, it->index) : degeneracy(s, it->index);
    return s;
}

ChainComplex FiniteSimplicialSet::chain_complex(const PrimeField& F, int top) const
{
    std::vector<std::size_t> dims;
    std::vector<MatrixFp> boundaries(1);
    for (int k = 0; k <= top; ++k)
        dims.push_back(count_in_dim(k));
    for (int k = 1; k <= top; ++k) {
        std::vector<Triplet> t;
        for (GeneratorId id : generators_in_dim(k)) {
            const SimplexRef s = nondegenerate(id);
            for (int i = 0; i <= k; ++i) {
                const SimplexRef f = face(s, i);
                if (!f.degenerate())
                    t.push_back({static_cast<Index>(basis_index(f.generator)), static_cast<Index>(basis_index(id)),
                                 (i % 2) ? -1 : 1});
            }
        }
        boundaries.push_back(MatrixFp::from_triplets(F, dims[k - 1], dims[k], std::move(t)));
    }
    return ChainComplex(F, std::move(dims), std::move(boundaries));
}

std::string FiniteSimplicialSet::describe(const SimplexRef& s) const
{
    std::ostringstream os;
    for (int i : s.word().indices)
        os << "s_" << i << ' ';
    os << generator(s.generator).name;
    return os.str();
}

// ---------------------------------------------------------------------------

SimplexTable::SimplexTable(const FiniteSimplicialSet& X, int max_dim)
{
    if (max_dim > FiniteSimplicialSet::kMaxDim)
        throw TruncationError("simplex table dimension too large");
    simplices_.resize(static_cast<std::size_t>(max_dim) + 1);
    lookup_.resize(simplices_.size());
    faces_.resize(simplices_.size());
    for (int m = 0; m <= max_dim; ++m) {
        auto& list = simplices_[m];
        for (GeneratorId id = 0; id < X.generator_count(); ++id) {
            const int d = X.generator(id).dim;
            if (d > m)
                break;
            const int k = m - d;
            if (k == 0) {
                list.push_back({id, 0, m});
                continue;
            }
            // k-element subsets of {0..m-1} in increasing mask order (Gosper).
            std::uint64_t mask = (1ull << k) - 1;
            const std::uint64_t limit = 1ull << m;
            while (mask < limit) {
                list.push_back({id, static_cast<std::uint32_t>(mask), m});
                const std::uint64_t c = mask & (~mask + 1);
                const std::uint64_t r = mask + c;
                mask = (((r ^ mask) >> 2) / c) | r;
            }
        }
        for (std::size_t idx = 0; idx < list.size(); ++idx)
            lookup_[m].emplace(key(list[idx]), static_cast<std::uint32_t>(idx));
        if (m == 0)
            continue;
        auto& faces = faces_[m];
        faces.resize(list.size() * static_cast<std::size_t>(m + 1));
        for (std::size_t idx = 0; idx < list.size(); ++idx)
            for (int i = 0; i <= m; ++i)
                faces[idx * (m + 1) + i] = static_cast<std::uint32_t>(index_of(X.face(list[idx], i)));
    }
}

std::size_t SimplexTable::index_of(const SimplexRef& s) const
{
    if (s.dim < 0 || s.dim > max_dim())
        throw TruncationError("simplex of dimension " + std::to_string(s.dim) + " is outside the table");
    auto it = lookup_[s.dim].find(key(s));
    if (it == lookup_[s.dim].end())
        throw ContractViolation("simplex not found in table");
    return it->second;
}

// ---------------------------------------------------------------------------

std::size_t product_limit_from_env(std::size_t fallback)
{
    if (const char* env = std::getenv("STEENROD_PRODUCT_LIMIT")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return fallback;
}

PowerSpace::PowerSpace(std::shared_ptr<const FiniteSimplicialSet> base, int p, int max_dim, std::size_t limit)
    : base_(std::move(base)), table_(*base_, max_dim), p_(p), max_dim_(max_dim)
{
    if (p < 1)
        throw ContractViolation("power must be positive");
    tuples_.resize(static_cast<std::size_t>(max_dim) + 1);
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(p), 0);
    for (int m = 0; m <= max_dim; ++m) {
        const std::size_t n = table_.size(m);
        auto& out = tuples_[m];
        if (n == 0)
            continue;
        std::fill(coords.begin(), coords.end(), 0);
        std::size_t count = 0;
        while (true) {
            std::uint32_t common = ~0u;
            for (int r = 0; r < p; ++r)
                common &= table_.simplex(m, coords[r]).degeneracies;
            if (common == 0) {
                if (++count > limit)
                    throw ResourceLimitExceeded("desk-scale exceeded: X^" + std::to_string(p) + " has more than " +
                                                std::to_string(limit) + " nondegenerate simplices in degree " +
                                                std::to_string(m) + " (raise --limit or STEENROD_PRODUCT_LIMIT)");
                out.insert(out.end(), coords.begin(), coords.end());
            }
            int r = p - 1;
            while (r >= 0 && ++coords[r] == n)
                coords[r--] = 0;
            if (r < 0)
                break;
        }
    }
}

std::span<const std::uint32_t> PowerSpace::tuple(int m, std::size_t idx) const
{
    const auto& t = tuples_.at(m);
    return std::span<const std::uint32_t>(t.data() + idx * static_cast<std::size_t>(p_), static_cast<std::size_t>(p_));
}

std::optional<std::size_t> PowerSpace::find(int m, std::span<const std::uint32_t> coords) const
{
    if (m < 0 || m > max_dim_)
        throw TruncationError("degree " + std::to_string(m) + " of X^p is not built; raise cap");
    std::size_t lo = 0, hi = size(m);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto t = tuple(m, mid);
        if (std::lexicographical_compare(t.begin(), t.end(), coords.begin(), coords.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size(m)) {
        const auto t = tuple(m, lo);
        if (std::equal(t.begin(), t.end(), coords.begin(), coords.end()))
            return lo;
    }
    return std::nullopt;
}

ChainComplex PowerSpace::chain_complex(const PrimeField& F) const
{
    std::vector<std::size_t> dims;
    std::vector<MatrixFp> boundaries(1);
    for (int m = 0; m <= max_dim_; ++m)
        dims.push_back(size(m));
    std::vector<std::uint32_t> face(static_cast<std::size_t>(p_));
    for (int m = 1; m <= max_dim_; ++m) {
        std::vector<Triplet> t;
        t.reserve(size(m) * static_cast<std::size_t>(m + 1));
        for (std::size_t j = 0; j < size(m); ++j) {
            const auto x = tuple(m, j);
            for (int i = 0; i <= m; ++i) {
                std::uint32_t common = ~0u;
                for (int r = 0; r < p_; ++r) {
                    face[r] = table_.face(m, x[r], i);
                    common &= table_.simplex(m - 1, face[r]).degeneracies;
                }
                if (common != 0)
                    continue;
                const auto row = find(m - 1, face);
                if (!row)
                    throw InvariantViolation("face of a product simplex not enumerated");
                t.push_back({static_cast<Index>(*row), static_cast<Index>(j), (i % 2) ? -1 : 1});
            }
        }
        boundaries.push_back(MatrixFp::from_triplets(F, dims[m - 1], dims[m], std::move(t)));
    }
    return ChainComplex(F, std::move(dims), std::move(boundaries));
}

MatrixFp PowerSpace::rotation_chain(const PrimeField& F, int m) const
{
    std::vector<Triplet> t;
    std::vector<std::uint32_t> rotated(static_cast<std::size_t>(p_));
    for (std::size_t j = 0; j < size(m); ++j) {
        const auto x = tuple(m, j);
        rotated[0] = x[p_ - 1];
        for (int r = 1; r < p_; ++r)
            rotated[r] = x[r - 1];
        const auto row = find(m, rotated);
        if (!row)
            throw InvariantViolation("rotation left the nondegenerate basis");
        t.push_back({static_cast<Index>(*row), static_cast<Index>(j), 1});
    }
    return MatrixFp::from_triplets(F, size(m), size(m), std::move(t));
}

CpComplex PowerSpace::cp_complex(const PrimeField& F) const
{
    std::vector<MatrixFp> action;
    for (int m = 0; m <= max_dim_; ++m)
        action.push_back(rotation_chain(F, m));
    return CpComplex(chain_complex(F), std::move(action));
}

ChainMap diagonal_chain(const PrimeField& F, const PowerSpace& power)
{
    const auto& X = power.base();
    ChainMap out;
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(power.p()));
    for (int m = 0; m <= power.max_dim(); ++m) {
        std::vector<Triplet> t;
        for (GeneratorId id : X.generators_in_dim(m)) {
            const auto idx = static_cast<std::uint32_t>(power.base_table().index_of(X.nondegenerate(id)));
            std::fill(coords.begin(), coords.end(), idx);
            const auto row = power.find(m, coords);
            if (!row)
                throw InvariantViolation("diagonal of a nondegenerate simplex is degenerate");
            t.push_back({static_cast<Index>(*row), static_cast<Index>(X.basis_index(id)), 1});
        }
        out.components.push_back(MatrixFp::from_triplets(F, power.size(m), X.count_in_dim(m), std::move(t)));
    }
    return out;
}

// ---------------------------------------------------------------------------

SimplicialMorphism::SimplicialMorphism(std::shared_ptr<const FiniteSimplicialSet> source,
                                       std::shared_ptr<const FiniteSimplicialSet> target,
                                       std::vector<SimplexRef> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_->generator_count())
        throw InvalidInput("morphism needs one image per source generator");
    for (GeneratorId id = 0; id < images_.size(); ++id) {
        const auto& img = images_[id];
        const auto& g = source_->generator(id);
        if (img.generator >= target_->generator_count() || img.dim != g.dim ||
            std::popcount(img.degeneracies) != img.dim - target_->generator(img.generator).dim ||
            (img.dim < 32 && (img.degeneracies >> img.dim) != 0))
            throw InvalidInput("image of '" + g.name + "' is not a simplex of the right dimension");
    }
    for (GeneratorId id = 0; id < images_.size(); ++id) {
        const auto& g = source_->generator(id);
        for (int i = 0; g.dim > 0 && i <= g.dim; ++i)
            if (apply(source_->face(source_->nondegenerate(id), i)) != target_->face(images_[id], i))
                throw InvalidInput("morphism does not commute with d_" + std::to_string(i) + " on '" + g.name + "'");
    }
}

SimplexRef SimplicialMorphism::apply(const SimplexRef& s) const
{
    const SimplexRef& img = images_.at(s.generator);
    const Surjection eta = surjection(s.degeneracies, s.dim);
    const Surjection zeta = surjection(img.degeneracies, img.dim);
    Surjection c(eta.size());
    for (std::size_t x = 0; x < eta.size(); ++x)
        c[x] = zeta[eta[x]];
    return SimplexRef{img.generator, mask_of(c), s.dim};
}

SimplicialMorphism SimplicialMorphism::after(const SimplicialMorphism& first) const
{
    if (first.target_.get() != source_.get())
        throw ContractViolation("composing morphisms with mismatched spaces");
    std::vector<SimplexRef> images;
    for (const auto& img : first.images_)
        images.push_back(apply(img));
    return SimplicialMorphism(first.source_, target_, std::move(images));
}

ChainMap SimplicialMorphism::induced_chain_map(const PrimeField& F, int top) const
{
    ChainMap out;
    for (int k = 0; k <= top; ++k) {
        std::vector<Triplet> t;
        for (GeneratorId id : source_->generators_in_dim(k)) {
            const SimplexRef img = images_[id];
            if (!img.degenerate())
                t.push_back({static_cast<Index>(target_->basis_index(img.generator)),
                             static_cast<Index>(source_->basis_index(id)), 1});
        }
        out.components.push_back(
            MatrixFp::from_triplets(F, target_->count_in_dim(k), source_->count_in_dim(k), std::move(t)));
    }
    return out;
}

ChainMap SimplicialMorphism::cartesian_power(const PrimeField& F, const PowerSpace& source_power,
                                             const PowerSpace& target_power) const
{
    if (&source_power.base() != source_.get() || &target_power.base() != target_.get() ||
        source_power.p() != target_power.p())
        throw ContractViolation("cartesian_power: power spaces do not match the morphism");
    const int p = source_power.p();
    const int top = std::min(source_power.max_dim(), target_power.max_dim());
    ChainMap out;
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(p));
    for (int m = 0; m <= top; ++m) {
        std::vector<Triplet> t;
        for (std::size_t j = 0; j < source_power.size(m); ++j) {
            const auto x = source_power.tuple(m, j);
            std::uint32_t common = ~0u;
            for (int r = 0; r < p; ++r) {
                const SimplexRef img = apply(source_power.base_table().simplex(m, x[r]));
                common &= img.degeneracies;
                coords[r] = static_cast<std::uint32_t>(target_power.base_table().index_of(img));
            }
            if (common != 0)
                continue;
            const auto row = target_power.find(m, coords);
            if (!row)
                throw InvariantViolation("power map image not enumerated");
            t.push_back({static_cast<Index>(*row), static_cast<Index>(j), 1});
        }
        out.components.push_back(MatrixFp::from_triplets(F, target_power.size(m), source_power.size(m), std::move(t)));
    }
    return out;
}

} // namespace steenrod
