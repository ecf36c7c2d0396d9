#include "lerw/domain_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lerw {

LatticeDomain parse_domain_json(const std::string& text, bool require_origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw Error(ErrorCode::ParseError, "expected an object with a \"vertices\" array");
  }
  std::vector<Point> pts;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
      throw Error(ErrorCode::ParseError, "each vertex must be an [x, y] pair of integers");
    }
    pts.push_back({v[0].get<int>(), v[1].get<int>()});
  }
  return LatticeDomain::validate(std::move(pts), require_origin);
}

LatticeDomain read_domain_file(const std::string& path, bool require_origin) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open domain file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_domain_json(buf.str(), require_origin);
}

std::string domain_to_json(const LatticeDomain& A) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (const Point p : A.vertices()) doc["vertices"].push_back({p.x, p.y});
  return doc.dump();
}

}  // namespace lerw
