#pragma once

#include <string>

#include "lerw/lattice.hpp"

namespace lerw {

// Domain files are JSON objects {"vertices": [[x, y], ...]} with integer coordinates.
LatticeDomain parse_domain_json(const std::string& text, bool require_origin = true);
LatticeDomain read_domain_file(const std::string& path, bool require_origin = true);
std::string domain_to_json(const LatticeDomain& A);

}  // namespace lerw
