#include "steenrod/spaces.hpp"

#include "steenrod/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace steenrod {

using json = nlohmann::json;
using Generator = FiniteSimplicialSet::Generator;

FiniteSimplicialSet point()
{
    return FiniteSimplicialSet({Generator{"*", 0, {}}});
}

FiniteSimplicialSet bar_skeleton(int q, int dim)
{
    if (q < 2 || q > 64)
        throw InvalidInput("bar_skeleton needs 2 <= q <= 64");
    if (dim < 0 || dim > FiniteSimplicialSet::kMaxDim)
        throw InvalidInput("bar_skeleton dimension out of range");
    std::size_t total = 0, layer = 1;
    for (int m = 0; m <= dim; ++m, layer *= static_cast<std::size_t>(q - 1))
        if ((total += layer) > 1'000'000)
            throw ResourceLimitExceeded("bar_skeleton: too many simplices");

    std::map<std::vector<int>, GeneratorId> ids;
    std::vector<std::vector<int>> bars{{}};
    for (int m = 1; m <= dim; ++m) {
        std::vector<int> bar(static_cast<std::size_t>(m), 1);
        while (true) {
            bars.push_back(bar);
            int r = m - 1;
            while (r >= 0 && ++bar[r] == q)
                bar[r--] = 1;
            if (r < 0)
                break;
        }
    }
    for (std::size_t i = 0; i < bars.size(); ++i)
        ids.emplace(bars[i], static_cast<GeneratorId>(i));

    auto as_simplex = [&](const std::vector<int>& raw) {
        std::vector<int> kept;
        std::uint32_t mask = 0;
        for (std::size_t pos = 0; pos < raw.size(); ++pos) {
            if (raw[pos] == 0)
                mask |= 1u << pos; // a zero entry at position pos+1 is s_pos
            else
                kept.push_back(raw[pos]);
        }
        return SimplexRef{ids.at(kept), mask, static_cast<int>(raw.size())};
    };

    std::vector<Generator> gens;
    for (const auto& bar : bars) {
        Generator g;
        g.dim = static_cast<int>(bar.size());
        std::ostringstream name;
        if (bar.empty()) {
            name << '*';
        } else {
            name << '[';
            for (std::size_t i = 0; i < bar.size(); ++i)
                name << (i ? "|" : "") << bar[i];
            name << ']';
        }
        g.name = name.str();
        const int m = g.dim;
        for (int i = 0; m > 0 && i <= m; ++i) {
            std::vector<int> f;
            if (i == 0) {
                f.assign(bar.begin() + 1, bar.end());
            } else if (i == m) {
                f.assign(bar.begin(), bar.end() - 1);
            } else {
                f.assign(bar.begin(), bar.begin() + i - 1);
                f.push_back((bar[i - 1] + bar[i]) % q);
                f.insert(f.end(), bar.begin() + i + 1, bar.end());
            }
            g.faces.push_back(as_simplex(f));
        }
        gens.push_back(std::move(g));
    }
    return FiniteSimplicialSet(std::move(gens));
}

FiniteSimplicialSet sphere(int n)
{
    if (n < 0 || n > FiniteSimplicialSet::kMaxDim)
        throw InvalidInput("sphere dimension out of range");
    if (n == 0)
        return FiniteSimplicialSet({Generator{"a", 0, {}}, Generator{"b", 0, {}}});
    const SimplexRef collapsed{0, (1u << (n - 1)) - 1, n - 1};
    return FiniteSimplicialSet(
        {Generator{"v", 0, {}}, Generator{"x", n, std::vector<SimplexRef>(static_cast<std::size_t>(n) + 1, collapsed)}});
}

FiniteSimplicialSet polygon(int d)
{
    if (d < 1)
        throw InvalidInput("polygon needs at least one edge");
    std::vector<Generator> gens;
    for (int i = 0; i < d; ++i)
        gens.push_back({"v" + std::to_string(i), 0, {}});
    for (int i = 0; i < d; ++i) {
        const auto head = static_cast<GeneratorId>((i + 1) % d);
        const auto tail = static_cast<GeneratorId>(i);
        gens.push_back({"e" + std::to_string(i), 1, {SimplexRef{head, 0, 0}, SimplexRef{tail, 0, 0}}});
    }
    return FiniteSimplicialSet(std::move(gens));
}

FiniteSimplicialSet from_facets(int vertices, const std::vector<std::vector<int>>& facets)
{
    if (vertices < 0)
        throw InvalidInput("negative vertex count");
    std::set<std::vector<int>> faces;
    for (int v = 0; v < vertices; ++v)
        faces.insert({v});
    for (auto facet : facets) {
        std::sort(facet.begin(), facet.end());
        if (std::adjacent_find(facet.begin(), facet.end()) != facet.end())
            throw InvalidInput("facet repeats a vertex");
        if (facet.empty() || facet.front() < 0 || facet.back() >= vertices)
            throw InvalidInput("facet vertex out of range");
        if (facet.size() > static_cast<std::size_t>(FiniteSimplicialSet::kMaxDim) + 1 || facet.size() > 20)
            throw InvalidInput("facet too large");
        const auto k = static_cast<std::uint32_t>(facet.size());
        for (std::uint32_t sub = 1; sub < (1u << k); ++sub) {
            std::vector<int> face;
            for (std::uint32_t b = 0; b < k; ++b)
                if ((sub >> b) & 1u)
                    face.push_back(facet[b]);
            faces.insert(std::move(face));
        }
    }
    std::vector<std::vector<int>> ordered(faces.begin(), faces.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::map<std::vector<int>, GeneratorId> ids;
    for (std::size_t i = 0; i < ordered.size(); ++i)
        ids.emplace(ordered[i], static_cast<GeneratorId>(i));

    std::vector<Generator> gens;
    for (const auto& face : ordered) {
        Generator g;
        g.dim = static_cast<int>(face.size()) - 1;
        for (std::size_t i = 0; i < face.size(); ++i)
            g.name += (i ? "." : "") + std::to_string(face[i]);
        for (std::size_t i = 0; g.dim > 0 && i < face.size(); ++i) {
            std::vector<int> sub = face;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
            g.faces.push_back(SimplexRef{ids.at(sub), 0, g.dim - 1});
        }
        gens.push_back(std::move(g));
    }
    return FiniteSimplicialSet(std::move(gens));
}

// ---------------------------------------------------------------------------

namespace {

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

template <typename T>
T get_field(const json& doc, const char* key)
{
    if (!doc.contains(key))
        throw InvalidInput(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput(std::string("field '") + key + "' has the wrong type");
    }
}

/// {"gen": name, "word": [i_k, ..., i_1]} against a named generator list.
SimplexRef parse_simplex(const json& ref, const std::map<std::string, std::pair<std::size_t, int>>& names)
{
    if (!ref.is_object())
        throw InvalidInput("simplex reference must be an object");
    const auto gen = get_field<std::string>(ref, "gen");
    const auto it = names.find(gen);
    if (it == names.end())
        throw InvalidInput("unknown generator '" + gen + "'");
    DegeneracyWord word;
    if (ref.contains("word"))
        word.indices = get_field<std::vector<int>>(ref, "word");
    const std::uint32_t mask = word.mask();
    const int dim = it->second.second + static_cast<int>(word.indices.size());
    if (mask >> std::min(dim, 31))
        throw InvalidInput("degeneracy index too large for the simplex on '" + gen + "'");
    return SimplexRef{static_cast<GeneratorId>(it->second.first), mask, dim};
}

FiniteSimplicialSet parse_raw(const json& doc)
{
    const int cap = get_field<int>(doc, "cap");
    const auto layers = get_field<std::vector<std::vector<std::string>>>(doc, "generators");
    if (cap < 0 || cap > FiniteSimplicialSet::kMaxDim)
        throw InvalidInput("cap out of range");
    if (static_cast<int>(layers.size()) > cap + 1)
        throw InvalidInput("generators listed above the cap");
    std::map<std::string, std::pair<std::size_t, int>> names;
    std::vector<Generator> gens;
    for (std::size_t d = 0; d < layers.size(); ++d)
        for (const auto& name : layers[d]) {
            if (!names.emplace(name, std::pair{gens.size(), static_cast<int>(d)}).second)
                throw InvalidInput("duplicate generator name '" + name + "'");
            gens.push_back({name, static_cast<int>(d), {}});
        }
    const json faces = doc.contains("faces") ? doc.at("faces") : json::object();
    if (!faces.is_object())
        throw InvalidInput("'faces' must be an object");
    for (auto it = faces.begin(); it != faces.end(); ++it) {
        auto found = names.find(it.key());
        if (found == names.end())
            throw InvalidInput("faces given for unknown generator '" + it.key() + "'");
        if (!it.value().is_array())
            throw InvalidInput("faces of '" + it.key() + "' must be a list");
        auto& g = gens[found->second.first];
        for (const auto& ref : it.value())
            g.faces.push_back(parse_simplex(ref, names));
    }
    return FiniteSimplicialSet(std::move(gens));
}

FiniteSimplicialSet parse_builtin(const json& doc)
{
    const auto kind = get_field<std::string>(doc, "builtin");
    if (kind == "point")
        return point();
    if (kind == "bar_skeleton")
        return bar_skeleton(get_field<int>(doc, "q"), get_field<int>(doc, "dim"));
    if (kind == "sphere")
        return sphere(get_field<int>(doc, "n"));
    if (kind == "polygon")
        return polygon(get_field<int>(doc, "d"));
    throw InvalidInput("unknown builtin space '" + kind + "'");
}

FiniteSimplicialSet parse_space_json(const json& doc)
{
    if (!doc.is_object())
        throw InvalidInput("space document must be a JSON object");
    if (doc.contains("builtin"))
        return parse_builtin(doc);
    if (doc.contains("facets"))
        return from_facets(get_field<int>(doc, "vertices"), get_field<std::vector<std::vector<int>>>(doc, "facets"));
    return parse_raw(doc);
}

SimplicialMorphism parse_morphism_json(const json& doc, std::shared_ptr<const FiniteSimplicialSet> source,
                                       std::shared_ptr<const FiniteSimplicialSet> target)
{
    if (!doc.is_object() || !doc.contains("images") || !doc.at("images").is_object())
        throw InvalidInput("map needs an 'images' object");
    std::map<std::string, std::pair<std::size_t, int>> target_names;
    for (GeneratorId id = 0; id < target->generator_count(); ++id)
        target_names.emplace(target->generator(id).name, std::pair{std::size_t{id}, target->generator(id).dim});
    std::vector<std::optional<SimplexRef>> images(source->generator_count());
    const auto& given = doc.at("images");
    for (auto it = given.begin(); it != given.end(); ++it) {
        const auto id = source->find(it.key());
        if (!id)
            throw InvalidInput("image given for unknown source generator '" + it.key() + "'");
        images[*id] = parse_simplex(it.value(), target_names);
    }
    std::vector<SimplexRef> out;
    for (GeneratorId id = 0; id < images.size(); ++id) {
        if (!images[id])
            throw InvalidInput("no image for source generator '" + source->generator(id).name + "'");
        out.push_back(*images[id]);
    }
    return SimplicialMorphism(std::move(source), std::move(target), std::move(out));
}

} // namespace

FiniteSimplicialSet parse_space(const std::string& json_text)
{
    return parse_space_json(parse_json(json_text));
}

FiniteSimplicialSet load_space(const std::filesystem::path& path)
{
    return parse_space(read_file(path));
}

SimplicialMorphism parse_morphism(const std::string& json_text, std::shared_ptr<const FiniteSimplicialSet> source,
                                  std::shared_ptr<const FiniteSimplicialSet> target)
{
    return parse_morphism_json(parse_json(json_text), std::move(source), std::move(target));
}

MapDocument parse_map_document(const std::string& json_text, const std::filesystem::path& base_dir)
{
    const json doc = parse_json(json_text);
    if (!doc.is_object())
        throw InvalidInput("map document must be a JSON object");
    auto space = [&](const char* key) {
        if (!doc.contains(key))
            throw InvalidInput(std::string("map document is missing '") + key + "'");
        const json& s = doc.at(key);
        if (s.is_string())
            return std::make_shared<const FiniteSimplicialSet>(load_space(base_dir / s.get<std::string>()));
        return std::make_shared<const FiniteSimplicialSet>(parse_space_json(s));
    };
    MapDocument out;
    out.source = space("source");
    out.target = space("target");
    if (!doc.contains("maps") || !doc.at("maps").is_array() || doc.at("maps").empty())
        throw InvalidInput("map document needs a nonempty 'maps' list");
    for (const auto& m : doc.at("maps")) {
        const long long weight = m.contains("weight") ? get_field<long long>(m, "weight") : 1;
        out.maps.emplace_back(parse_morphism_json(m, out.source, out.target), weight);
    }
    return out;
}

MapDocument load_map_document(const std::filesystem::path& path)
{
    return parse_map_document(read_file(path), path.parent_path());
}

} // namespace steenrod
