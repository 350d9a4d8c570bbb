#pragma once

// Built-in simplicial set models and the JSON documents that describe spaces and maps.

#include "steenrod/simplicial.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace steenrod {

FiniteSimplicialSet point();

/// d-skeleton of the reduced bar construction of Z/q: one nondegenerate
/// m-simplex [g_1|...|g_m] for every tuple of nonzero residues. For q = 2 this
/// is the minimal model of RP^d.
FiniteSimplicialSet bar_skeleton(int q, int dim);

/// Delta^n / boundary: a vertex and one n-simplex (two vertices for n = 0).
FiniteSimplicialSet sphere(int n);

/// Circle with d vertices v0..v{d-1} and edges e_i : v_i -> v_{i+1 mod d}.
FiniteSimplicialSet polygon(int d);

/// Ordered simplicial complex given by facets; every face becomes a generator
/// named by its sorted vertex list, e.g. "0.2.3".
FiniteSimplicialSet from_facets(int vertices, const std::vector<std::vector<int>>& facets);

/// Parses a space document (raw simplicial set, facet list or builtin).
FiniteSimplicialSet parse_space(const std::string& json_text);
FiniteSimplicialSet load_space(const std::filesystem::path& path);

/// {"images": {"source name": {"gen": "target name", "word": [..]}, ...}}
SimplicialMorphism parse_morphism(const std::string& json_text, std::shared_ptr<const FiniteSimplicialSet> source,
                                  std::shared_ptr<const FiniteSimplicialSet> target);

/// {"source": space, "target": space, "maps": [{"images": {...}, "weight": w}, ...]}
/// where each space is an inline document or a path relative to base_dir.
struct MapDocument {
    std::shared_ptr<const FiniteSimplicialSet> source;
    std::shared_ptr<const FiniteSimplicialSet> target;
    std::vector<std::pair<SimplicialMorphism, long long>> maps;
};

MapDocument parse_map_document(const std::string& json_text, const std::filesystem::path& base_dir = {});
MapDocument load_map_document(const std::filesystem::path& path);

} // namespace steenrod
