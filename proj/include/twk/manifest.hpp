#pragma once

#include "twk/cohomology.hpp"
#include "twk/dgres.hpp"
#include "twk/equivariant.hpp"
#include "twk/twisted.hpp"

#include <string>

namespace twk {

struct ManifestOptions {
    int weight_window = -1;  // default picked by assemble_hom
    int probes = 8;
    std::uint64_t seed = 1;
};

struct NamedTwMorphism {
    std::string from, to;
    TwCochain u;
};

/// Parsed manifest: a cover and/or a group action plus named objects.
struct Manifest {
    CoverPtr cover;
    ActionPtr action;
    std::map<std::string, TwPerfComplex> twisted;
    std::map<std::string, std::map<std::pair<int, int>, Scalar>> line_units;
    std::map<std::string, SimplexObj> simplex;
    std::map<std::string, EquivariantComplex> equivariant;
    std::map<std::string, NamedTwMorphism> morphisms;
    ManifestOptions options;

    bool has_object(const std::string& name) const;
};

/// Throws std::invalid_argument with a location message on any schema,
/// reference or literal error.
Manifest parse_manifest(const std::string& json_text);
Manifest parse_manifest_file(const std::string& path);

/// Serialization used for counterexample fragments and roundtrips.
std::string cover_to_json(const RingedCover& cover);
std::string twisted_to_json(const TwPerfComplex& t, const std::string& name);
std::string cochain_to_json(const TwCochain& u, const std::string& name);

}  // namespace twk
