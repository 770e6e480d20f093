#pragma once

// JSON files: groups, modules, maps, certificates and witness bundles.

#include <optional>
#include <string>

#include "json.hpp"

#include "stmod/ar.hpp"

namespace stmod::io {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, PrimeField f, std::optional<std::size_t> rows = {},
                        std::optional<std::size_t> cols = {});

json group_to_json(const Group& g);
// An object {"name", "order", "cayley"} or a named spec string.
GroupPtr group_from_json(const json& j);
// A path to a group file, or a named spec.
GroupPtr load_group(const std::string& spec_or_path);

json module_to_json(const Module& m);
// "group" may be omitted when a group is supplied.
Module module_from_json(const json& j, const GroupPtr& group = nullptr);
// A path, or a standard spec ("trivial", "jordan:2", ...) over group with prime p.
Module load_module(const std::string& spec_or_path, const GroupPtr& group, std::optional<int> p);

json map_to_json(const ModuleMap& f);
// "domain"/"codomain" may be omitted when supplied.
ModuleMap map_from_json(const json& j, const std::optional<Module>& domain = {},
                        const std::optional<Module>& codomain = {});
ModuleMap load_map(const std::string& path, const std::optional<Module>& domain = {},
                   const std::optional<Module>& codomain = {});

json certificate_to_json(const GhostCertificate& c, bool with_classes = true);
json window_to_json(const WindowReport& r);
json eventual_to_json(const EventualReport& r);
json chain_to_json(const GhostSubspaceChain& c);
json witness_to_json(const StrongGhostWitness& w);
json periodicity_to_json(const PeriodicityWitness& w);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace stmod::io
