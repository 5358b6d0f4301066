#pragma once

#include <map>
#include <string>

#include "diagbase/diag_group.hpp"
#include "diagbase/simple_group.hpp"

namespace testsupport {

inline const std::vector<diagbase::SimpleGroupSpec>& catalog() {
    static const auto specs = diagbase::load_catalog_file(diagbase::default_catalog_path());
    return specs;
}

inline const diagbase::CatalogGroup& group(const std::string& name) {
    static std::map<std::string, diagbase::CatalogGroup> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, diagbase::materialize(catalog(), name)).first;
    return it->second;
}

inline diagbase::DiagTypeGroup make(const std::string& t, std::size_t k, const std::string& out, const std::string& top) {
    const auto& cg = group(t);
    return diagbase::build_group(cg, k, diagbase::parse_out_part(out, *cg.aut), diagbase::TopGroup::parse(top, k));
}

}  // namespace testsupport
