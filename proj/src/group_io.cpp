#include "eqgeo/group_io.hpp"

#include <fstream>
#include <sstream>

#include "eqgeo/backends.hpp"
#include "eqgeo/errors.hpp"

namespace eqgeo {

namespace fs = std::filesystem;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("group definition lacks '") + key + "'");
  return j.at(key);
}

GroupPtr resolve(const json& j, const fs::path& base_dir) {
  if (j.is_string()) return load_group(base_dir / j.get<std::string>());
  return group_from_json(j, base_dir);
}

void apply_aliases(GroupBackend& g, const json& j) {
  if (!j.contains("aliases")) return;
  std::map<std::string, Element> aliases;
  for (const auto& [name, lit] : j.at("aliases").items()) aliases[name] = g.parse_element(lit.get<std::string>());
  g.set_aliases(std::move(aliases));
}

template <class T>
std::shared_ptr<T> with_aliases(std::shared_ptr<T> g, const json& j) {
  apply_aliases(*g, j);
  return g;
}

GroupPtr preset(const json& j) {
  auto name = require(j, "name").get<std::string>();
  std::size_t n = j.value("n", std::size_t{0});
  if (name == "cyclic") return make_cyclic(n, j.value("generator", std::string("a")));
  if (name == "dihedral") return make_dihedral(n);
  if (name == "symmetric3") return make_symmetric3();
  if (name == "dihedral_split") return make_dihedral_split(n);
  if (name == "negation_split") return make_negation_split(n);
  throw ValidationError("unknown preset '" + name + "'");
}

}  // namespace

GroupPtr group_from_json(const json& j, const fs::path& base_dir) {
  try {
    const auto kind = require(j, "kind").get<std::string>();
    if (kind == "finite") {
      auto names = require(j, "names").get<std::vector<std::string>>();
      auto table = require(j, "table").get<std::vector<std::vector<std::uint32_t>>>();
      auto gens = j.value("generators", std::vector<std::string>{});
      return with_aliases(std::make_shared<FiniteGroup>(std::move(names), std::move(table), std::move(gens)), j);
    }
    if (kind == "fgabelian") {
      auto rank = j.value("rank", std::size_t{0});
      auto torsion = j.value("torsion", std::vector<std::int64_t>{});
      return with_aliases(std::make_shared<FgAbelianGroup>(rank, std::move(torsion)), j);
    }
    if (kind == "qmodz") return with_aliases(std::make_shared<QmodZGroup>(), j);
    if (kind == "field_q") return with_aliases(std::make_shared<FieldAdditiveGroup>(), j);
    if (kind == "semidirect") {
      auto top = std::dynamic_pointer_cast<const FiniteGroup>(resolve(require(j, "T"), base_dir));
      if (!top) throw ValidationError("semidirect T must be a finite group");
      auto normal = resolve(require(j, "H"), base_dir);
      SemidirectAction action;
      const auto& a = require(j, "action");
      if (normal->kind() == "finite")
        action.permutations = a.get<std::vector<std::vector<std::uint32_t>>>();
      else
        action.matrices = a.get<std::vector<std::vector<std::vector<std::int64_t>>>>();
      return with_aliases(std::make_shared<SemidirectGroup>(top, normal, std::move(action)), j);
    }
    if (kind == "product") {
      return with_aliases(
          std::make_shared<ProductGroup>(resolve(require(j, "left"), base_dir), resolve(require(j, "right"), base_dir)),
          j);
    }
    if (kind == "preset") return preset(j);
    throw ValidationError("unknown group kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed group definition: ") + e.what());
  }
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

GroupPtr load_group(const fs::path& path) { return group_from_json(read_json_file(path), path.parent_path()); }

std::string group_hash(const GroupBackend& g) { return hex64(fnv1a(g.to_json().dump())); }

}  // namespace eqgeo
