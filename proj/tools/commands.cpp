#include "commands.hpp"

#include "steenrod/classical.hpp"
#include "steenrod/diagonal.hpp"
#include "steenrod/errors.hpp"
#include "steenrod/spaces.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace steenrod::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Common {
    std::string space;
    int prime = 2;
    int cap = 0;
    long long limit = 0;
    bool json = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_space = true)
{
    if (with_space)
        cmd->add_option("--space", c.space, "space document: a JSON file or inline JSON")->required();
    cmd->add_option("--prime", c.prime, "prime p (2..13)")->default_val(2);
    cmd->add_option("--cap", c.cap, "largest chain degree a computation may build (0 = derived from the request)");
    cmd->add_option("--limit", c.limit, "product-basis guard (default: STEENROD_PRODUCT_LIMIT or 2000000)");
    cmd->add_flag("--json", c.json, "print a JSON report");
}

std::size_t product_limit(const Common& c)
{
    return c.limit > 0 ? static_cast<std::size_t>(c.limit) : product_limit_from_env();
}

std::shared_ptr<const FiniteSimplicialSet> load(const std::string& source)
{
    const auto first = source.find_first_not_of(" \t\n");
    if (first != std::string::npos && source[first] == '{')
        return std::make_shared<const FiniteSimplicialSet>(parse_space(source));
    return std::make_shared<const FiniteSimplicialSet>(load_space(source));
}

json space_summary(const FiniteSimplicialSet& X)
{
    json counts = json::array();
    for (int d = 0; d <= X.cap(); ++d)
        counts.push_back(X.count_in_dim(d));
    return {{"dimension", X.cap()}, {"generators_per_dim", counts}};
}

// setw counts bytes; pad by code points so "β" lines up.
std::string pad(const std::string& s, std::size_t width)
{
    std::size_t chars = 0;
    for (unsigned char c : s)
        chars += (c & 0xC0) != 0x80;
    return s + std::string(width > chars ? width - chars : 0, ' ');
}

std::string render_class(const PrimeField& F, int n, std::span<const Coeff> coords)
{
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!coords[i])
            continue;
        const int c = F.centered(coords[i]);
        if (any)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << '-';
        if (std::abs(c) != 1)
            os << std::abs(c) << '*';
        os << 'x' << n << '_' << i;
        any = true;
    }
    return any ? os.str() : "0";
}

json coords_json(std::span<const Coeff> v)
{
    json out = json::array();
    for (Coeff c : v)
        out.push_back(int(c));
    return out;
}

std::pair<int, std::size_t> parse_selector(const std::string& s)
{
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos)
            throw std::invalid_argument(s);
        std::size_t used = 0;
        const int d = std::stoi(s.substr(0, colon), &used);
        if (used != colon)
            throw std::invalid_argument(s);
        const std::string rest = s.substr(colon + 1);
        const long long i = std::stoll(rest, &used);
        if (used != rest.size() || d < 0 || i < 0)
            throw std::invalid_argument(s);
        return {d, static_cast<std::size_t>(i)};
    } catch (const std::logic_error&) {
        throw InvalidInput("class selector must look like d:i, got '" + s + "'");
    }
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void print_json(std::ostream& out, const json& report)
{
    out << report.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_cohomology(const Common& c, int n_max, std::ostream& out)
{
    const auto t0 = Clock::now();
    const PrimeField F(c.prime);
    const auto X = load(c.space);
    if (n_max < 0)
        n_max = X->cap();
    const ChainComplex A = X->chain_complex(F, n_max + 1);
    json betti = json::array();
    for (int n = 0; n <= n_max; ++n)
        betti.push_back(Cohomology(A, n).dim());
    json report = {{"command", "cohomology"}, {"prime", c.prime}, {"space", space_summary(*X)}, {"betti", betti}};
    if (c.json) {
        report["elapsed_seconds"] = seconds_since(t0);
        print_json(out, report);
        return kOk;
    }
    out << "prime: " << c.prime << '\n';
    out << "generators per dimension:";
    for (const auto& v : report["space"]["generators_per_dim"])
        out << ' ' << v.get<std::size_t>();
    out << "\n\n n  dim H^n\n";
    for (int n = 0; n <= n_max; ++n)
        out << std::setw(2) << n << "  " << betti[n].get<std::size_t>() << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------

struct SteenrodArgs {
    std::string method = "diagonal";
    std::string selector;
    int k = -1;
    int n_max = -1;
};

int cmd_steenrod(const Common& c, const SteenrodArgs& a, std::ostream& out)
{
    const auto t0 = Clock::now();
    const PrimeField F(c.prime);
    const int p = F.p();
    const auto X = load(c.space);
    const bool use_diagonal = a.method != "classical";
    const bool use_classical = a.method != "diagonal";

    std::vector<std::pair<int, std::size_t>> classes;
    int n_top = a.n_max >= 0 ? a.n_max : X->cap();
    if (!a.selector.empty()) {
        classes.push_back(parse_selector(a.selector));
        n_top = classes.front().first;
    }
    EngineOptions options;
    options.degree_cap = c.cap > 0 ? c.cap : p * n_top + 1;
    options.product_limit = product_limit(c);
    const DiagonalEngine engine(F, X, options);
    if (a.selector.empty()) {
        for (int n = 0; n <= n_top && p * n + 1 <= options.degree_cap; ++n)
            for (std::size_t i = 0; i < engine.cohomology(n).dim(); ++i)
                classes.emplace_back(n, i);
    } else if (classes.front().second >= engine.cohomology(classes.front().first).dim()) {
        throw InvalidInput("class " + a.selector + " does not exist: dim H^" + std::to_string(classes.front().first) +
                           " = " + std::to_string(engine.cohomology(classes.front().first).dim()));
    }

    json rows = json::array();
    bool agree_all = true;
    for (const auto& [n, i] : classes) {
        DenseVector u(engine.cohomology(n).dim(), 0);
        u[i] = 1;
        const int k_lo = a.k >= 0 ? a.k : 0;
        const int k_hi = a.k >= 0 ? a.k : (p - 1) * n;
        std::optional<KunnethVector> diag, classic;
        if (use_diagonal && k_lo <= (p - 1) * n)
            diag = engine.solve_class(n, u).w;
        if (use_classical && k_lo <= (p - 1) * n) {
            auto r = classical_phi(F, X, n, u, options.degree_cap, options.product_limit);
            for (int j = 0; j < n; ++j)
                if (!is_zero(r.phi.v[j]))
                    throw InvariantViolation("classical construction: phi_" + std::to_string(j) + " is not zero");
            if (r.phi.v[n] != u)
                throw InvariantViolation("classical construction: phi_n differs from u");
            classic = std::move(r.phi);
        }
        for (int k = k_lo; k <= k_hi; ++k) {
            const bool unstable = n + k > p * n;
            const std::size_t target_dim = engine.cohomology(n + k).dim();
            json row = {{"degree", n}, {"class", i}, {"k", k}, {"operation", OperationName{p, k}.render()}};
            std::optional<DenseVector> dv, cv;
            if (use_diagonal)
                dv = unstable ? DenseVector(target_dim, 0) : diag->v[n + k];
            if (use_classical)
                cv = unstable ? DenseVector(target_dim, 0) : classic->v[n + k];
            if (dv)
                row["diagonal"] = coords_json(*dv);
            if (cv)
                row["classical"] = coords_json(*cv);
            if (dv && cv) {
                row["agree"] = *dv == *cv;
                agree_all = agree_all && *dv == *cv;
            }
            rows.push_back(std::move(row));
        }
    }

    json report = {{"command", "steenrod"},
                   {"prime", p},
                   {"method", a.method},
                   {"degree_cap", options.degree_cap},
                   {"space", space_summary(*X)},
                   {"operations", rows}};
    if (use_diagonal && use_classical)
        report["agreement"] = agree_all;
    if (c.json) {
        report["elapsed_seconds"] = seconds_since(t0);
        print_json(out, report);
        return agree_all ? kOk : kCheckFailed;
    }
    out << "prime: " << p << "   method: " << a.method << "   degree cap: " << options.degree_cap << "\n\n";
    out << std::left << std::setw(10) << "class" << std::setw(4) << "k" << std::setw(10) << "operation";
    if (use_diagonal)
        out << std::setw(18) << "diagonal";
    if (use_classical)
        out << std::setw(18) << "classical";
    if (use_diagonal && use_classical)
        out << "agree";
    out << '\n';
    for (const auto& row : rows) {
        const int n = row["degree"];
        const int k = row["k"];
        const auto cls = "x" + std::to_string(n) + "_" + std::to_string(row["class"].get<std::size_t>());
        out << std::setw(10) << cls << std::setw(4) << k << pad(row["operation"].get<std::string>(), 10);
        for (const char* key : {"diagonal", "classical"})
            if (row.contains(key)) {
                const auto v = row[key].get<std::vector<int>>();
                DenseVector d(v.begin(), v.end());
                out << pad(render_class(F, n + k, d), 17) << ' ';
            }
        if (row.contains("agree"))
            out << (row["agree"].get<bool>() ? "yes" : "NO");
        out << '\n';
    }
    if (use_diagonal && use_classical)
        out << "\nagreement: " << (agree_all ? "all classes agree" : "DISAGREEMENT") << '\n';
    return agree_all ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Check> lemma_suite(const PrimeField& F, const FiniteSimplicialSet& X, int cap)
{
    const int p = F.p();
    std::vector<Check> checks;
    const ChainComplex A = X.chain_complex(F, cap);
    const CpComplex trivial = CpComplex::trivial(A);
    std::mt19937 rng(20240613u);
    auto random_cochain = [&](std::size_t dim) {
        DenseVector v(dim);
        for (auto& c : v)
            c = static_cast<Coeff>(rng() % static_cast<unsigned>(p));
        return v;
    };

    for (int n = 0; p * n + 1 <= cap; ++n) {
        const Cohomology H(A, n);
        for (std::size_t i = 0; i < H.dim(); ++i) {
            const DenseVector f = H.representatives()[i].to_dense(A.dim(n));
            const DenseVector g = random_cochain(n > 0 ? A.dim(n - 1) : 0);
            checks.push_back({"theta class", theta_representative_independent(F, A, p, n, f, g),
                              "theta(f) ~ theta(f + dg) for f = x" + std::to_string(n) + "_" + std::to_string(i)});
            for (std::size_t j = i; j < H.dim(); ++j) {
                const DenseVector h = H.representatives()[j].to_dense(A.dim(n));
                checks.push_back({"theta~ additive", reduced_theta_linear(F, A, p, n, f, h),
                                  "theta~ additive on x" + std::to_string(n) + "_" + std::to_string(i) + ", x" +
                                      std::to_string(n) + "_" + std::to_string(j)});
            }
        }
    }

    const CpComplex free = free_cp_complex(A);
    for (int m = 0; m + 1 <= cap; ++m) {
        const ReducedCohomology r(free, m);
        checks.push_back({"free acyclic", r.dim() == 0,
                          "h~^" + std::to_string(m) + " of the free complex has dimension " + std::to_string(r.dim())});
        const ReducedCohomology t(trivial, m);
        checks.push_back({"transfer zero", t.transfer_rank() == 0,
                          "transfer rank " + std::to_string(t.transfer_rank()) + " in degree " + std::to_string(m)});
    }

    const int small = std::min(cap, 3);
    const ChainComplex As = A.truncated(small);
    checks.push_back({"sum to product", reduced_sum_to_product(F, {As, As}, p, small), "two summands through degree " +
                                                                                       std::to_string(small - 1)});
    const int tiny = std::min(cap, 2);
    const ChainComplex At = A.truncated(tiny);
    checks.push_back({"sum to product", reduced_sum_to_product(F, {At, At, At}, p, tiny),
                      "three summands through degree " + std::to_string(tiny - 1)});
    return checks;
}

std::vector<Check> uniqueness_suite(const DiagonalEngine& engine)
{
    const int p = engine.field().p();
    std::vector<Check> checks;
    for (int m = 0; m + 1 <= engine.options().degree_cap; ++m)
        checks.push_back({"unique presentation", engine.uniqueness_check(m),
                          "image in degree " + std::to_string(m) + " meets the low-degree kernel trivially"});
    for (int n = 0; p * n + 1 <= engine.options().degree_cap; ++n)
        for (std::size_t i = 0; i < engine.cohomology(n).dim(); ++i) {
            DenseVector u(engine.cohomology(n).dim(), 0);
            u[i] = 1;
            bool ok = true;
            std::string detail = "unique w for x" + std::to_string(n) + "_" + std::to_string(i);
            try {
                engine.solve_class(n, u);
            } catch (const InvariantViolation& e) {
                ok = false;
                detail = e.what();
            }
            checks.push_back({"unique solve", ok, detail});
        }
    return checks;
}

std::vector<Check> naturality_suite(const PrimeField& F, const MapDocument& doc, int n, int k, int cap,
                                    std::size_t limit)
{
    std::vector<std::pair<SimplicialMorphism, Coeff>> maps;
    for (const auto& [a, w] : doc.maps)
        maps.emplace_back(a, F.from_int(w));
    EngineOptions options;
    options.degree_cap = cap > 0 ? cap : F.p() * n + 1;
    options.product_limit = limit;
    std::vector<Check> checks;
    const int k_lo = k >= 0 ? k : 0;
    const int k_hi = k >= 0 ? k : (F.p() - 1) * n;
    for (int kk = k_lo; kk <= k_hi; ++kk) {
        const auto r = naturality_check(F, maps, n, kk, options);
        std::string detail = "f^* Sigma^" + std::to_string(kk) + " = Sigma^" + std::to_string(kk) + " f^* on H^" +
                             std::to_string(n);
        for (const auto& f : r.failures)
            detail += "; " + f;
        checks.push_back({"naturality", r.ok(), detail});
    }
    return checks;
}

int report_checks(const std::string& suite, int p, const std::vector<Check>& checks, bool as_json,
                  Clock::time_point t0, std::ostream& out)
{
    bool all = true;
    json items = json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        items.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    if (as_json) {
        print_json(out, {{"command", "verify"},
                         {"suite", suite},
                         {"prime", p},
                         {"checks", items},
                         {"passed", all},
                         {"elapsed_seconds", seconds_since(t0)}});
        return all ? kOk : kCheckFailed;
    }
    out << "suite: " << suite << "   prime: " << p << "\n\n";
    for (const auto& c : checks)
        out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(20) << c.name << c.detail << '\n';
    out << '\n' << (all ? "all checks passed" : "some checks FAILED") << '\n';
    return all ? kOk : kCheckFailed;
}

struct VerifyArgs {
    std::string suite;
    std::string maps;
    int n = 1;
    int k = -1;
};

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out)
{
    const auto t0 = Clock::now();
    const PrimeField F(c.prime);
    if (a.suite == "naturality") {
        if (a.maps.empty())
            throw InvalidInput("the naturality suite needs --maps");
        const auto doc = load_map_document(a.maps);
        return report_checks(a.suite, F.p(), naturality_suite(F, doc, a.n, a.k, c.cap, product_limit(c)), c.json, t0,
                             out);
    }
    if (c.space.empty())
        throw InvalidInput("--space is required for the " + a.suite + " suite");
    const auto X = load(c.space);
    const int cap = c.cap > 0 ? c.cap : F.p() + 1;
    if (a.suite == "lemmas")
        return report_checks(a.suite, F.p(), lemma_suite(F, *X, cap), c.json, t0, out);
    EngineOptions options;
    options.degree_cap = cap;
    options.product_limit = product_limit(c);
    options.cache = true;
    return report_checks(a.suite, F.p(), uniqueness_suite(DiagonalEngine(F, X, options)), c.json, t0, out);
}

struct NaturalityArgs {
    std::string maps;
    std::string weights;
    int n = 1;
    int k = -1;
};

int cmd_naturality(const Common& c, const NaturalityArgs& a, std::ostream& out)
{
    const auto t0 = Clock::now();
    const PrimeField F(c.prime);
    auto doc = load_map_document(a.maps);
    if (!a.weights.empty()) {
        std::vector<long long> w;
        std::stringstream ss(a.weights);
        std::string item;
        while (std::getline(ss, item, ','))
            try {
                w.push_back(std::stoll(item));
            } catch (const std::logic_error&) {
                throw InvalidInput("weights must be a comma separated list of integers");
            }
        if (w.size() != doc.maps.size())
            throw InvalidInput("need one weight per map");
        for (std::size_t i = 0; i < w.size(); ++i)
            doc.maps[i].second = w[i];
    }
    return report_checks("naturality", F.p(), naturality_suite(F, doc, a.n, a.k, c.cap, product_limit(c)), c.json, t0,
                         out);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Steenrod operations on finite simplicial sets from the diagonal and the cyclic action"};
    app.require_subcommand(1);

    Common common;
    int n_max = -1;
    auto* coh = app.add_subcommand("cohomology", "dimensions of H^n(X; F_p)");
    add_common(coh, common);
    coh->add_option("--n-max", n_max, "largest degree (default: dimension of the space)");

    SteenrodArgs st;
    auto* ste = app.add_subcommand("steenrod", "Sigma^k on cohomology classes");
    add_common(ste, common);
    ste->add_option("--method", st.method, "diagonal, classical or both")
        ->check(CLI::IsMember({"diagonal", "classical", "both"}));
    ste->add_option("--class", st.selector, "class d:i (basis element i of H^d); default all classes");
    ste->add_option("--k", st.k, "operation degree; default all valid k");
    ste->add_option("--n-max", st.n_max, "largest class degree when no --class is given");

    VerifyArgs ver;
    auto* verc = app.add_subcommand("verify", "property suites");
    add_common(verc, common, false);
    verc->add_option("--space", common.space, "space document (lemmas, uniqueness)");
    verc->add_option("--suite", ver.suite, "lemmas, uniqueness or naturality")
        ->required()
        ->check(CLI::IsMember({"lemmas", "uniqueness", "naturality"}));
    verc->add_option("--maps", ver.maps, "map document (naturality)");
    verc->add_option("--n", ver.n, "class degree (naturality)");
    verc->add_option("--k", ver.k, "operation degree (naturality); default all");

    NaturalityArgs nat;
    auto* natc = app.add_subcommand("naturality", "f^* Sigma^k = Sigma^k f^* for a combination of maps");
    add_common(natc, common, false);
    natc->add_option("--maps", nat.maps, "map document")->required();
    natc->add_option("--weights", nat.weights, "comma separated weights overriding the document");
    natc->add_option("--n", nat.n, "class degree");
    natc->add_option("--k", nat.k, "operation degree; default all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*coh)
            return cmd_cohomology(common, n_max, out);
        if (*ste)
            return cmd_steenrod(common, st, out);
        if (*verc)
            return cmd_verify(common, ver, out);
        return cmd_naturality(common, nat, out);
    } catch (const InvalidInput& e) {
        err << "error: invalid input: " << e.what() << '\n';
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const ResourceLimitExceeded& e) {
        err << "error: " << e.what() << '\n';
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kBadInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace steenrod::cli
