#pragma once

#include <filesystem>
#include <string>

#include "eqgeo/group.hpp"

namespace eqgeo {

// Builds a backend from its JSON definition. Accepted kinds: finite,
// fgabelian, qmodz, field_q, semidirect, product, and preset (named
// constructions such as {"kind": "preset", "name": "dihedral_split", "n": 3}).
// Nested groups may be given inline or as a path relative to base_dir.
GroupPtr group_from_json(const json& j, const std::filesystem::path& base_dir = {});
GroupPtr load_group(const std::filesystem::path& path);

// FNV-1a of the canonical JSON dump; identifies a group inside certificates.
std::string group_hash(const GroupBackend& g);

json read_json_file(const std::filesystem::path& path);

}  // namespace eqgeo
