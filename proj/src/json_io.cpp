#include "tropfan/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tropfan/errors.hpp"

namespace tropfan {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

// Only integral JSON numbers are accepted; 1.0 and 1e3 are rejected so the
// formats stay exact.
Int int_field(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  throw SchemaError(where + " must be an integer");
}

long long to_json_int(const Int& v) {
  static const Int lo(std::numeric_limits<long long>::min());
  static const Int hi(std::numeric_limits<long long>::max());
  if (v < lo || v > hi)
    throw MalformedInputError("value exceeds the JSON integer range");
  return v.convert_to<long long>();
}

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional,
                  const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + " must be a JSON object");
  for (const char* k : required)
    if (!j.contains(k))
      throw SchemaError(what + " is missing field '" + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known)
      throw SchemaError(what + " has unknown field '" + it.key() + "'");
  }
}

std::vector<LatticeVector> parse_rays(const json& rays, std::size_t n,
                                      bool normalize_rays) {
  if (!rays.is_array()) throw SchemaError("'rays' must be an array");
  std::vector<LatticeVector> out;
  out.reserve(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const json& r = rays[i];
    std::string where = "ray " + std::to_string(i);
    if (!r.is_array())
      throw SchemaError(where + " must be an array of integers");
    if (r.size() != n)
      throw SchemaError(where + " has length " + std::to_string(r.size()) +
                        ", expected " + std::to_string(n));
    IntVec c(n);
    for (std::size_t k = 0; k < n; ++k)
      c[k] = int_field(r[k], where + " entry " + std::to_string(k));
    LatticeVector v(std::move(c));
    if (v.is_zero()) throw SchemaError(where + " is zero");
    LatticeVector prim = primitive(v);
    if (!(prim == v)) {
      if (!normalize_rays) throw SchemaError(where + " is not primitive");
      v = std::move(prim);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

WeightedFan parse_fan(const std::string& text, bool normalize_rays) {
  json j = parse_text(text);
  require_keys(j, {"cones", "n", "rays", "weights"}, {"dim"}, "fan");

  Int n_raw = int_field(j["n"], "'n'");
  if (n_raw < 1) throw SchemaError("'n' must be a positive integer");
  std::size_t n = n_raw.convert_to<std::size_t>();

  std::vector<LatticeVector> rays = parse_rays(j["rays"], n, normalize_rays);

  const json& cones = j["cones"];
  if (!cones.is_array()) throw SchemaError("'cones' must be an array");
  std::size_t cone_size = 0;
  std::vector<std::vector<std::size_t>> clist;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const json& c = cones[i];
    std::string where = "cone " + std::to_string(i);
    if (!c.is_array()) throw SchemaError(where + " must be an array");
    if (c.size() != 1 && c.size() != 2)
      throw SchemaError(where + " has " + std::to_string(c.size()) +
                        " generators, expected 1 or 2");
    if (cone_size == 0) cone_size = c.size();
    if (c.size() != cone_size)
      throw SchemaError("cones mix sizes 1 and 2");
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < c.size(); ++k) {
      Int v = int_field(c[k], where + " entry " + std::to_string(k));
      if (v < 0 || v >= Int(rays.size()))
        throw SchemaError(where + " references ray " + v.str() +
                          " which does not exist");
      idx.push_back(v.convert_to<std::size_t>());
    }
    if (idx.size() == 2 && idx[0] == idx[1])
      throw SchemaError(where + " repeats a ray");
    clist.push_back(std::move(idx));
  }

  const json& weights = j["weights"];
  if (!weights.is_array()) throw SchemaError("'weights' must be an array");
  if (weights.size() != clist.size())
    throw SchemaError("weights length " + std::to_string(weights.size()) +
                      " does not match cone count " +
                      std::to_string(clist.size()));
  std::vector<Int> wlist;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    Int w = int_field(weights[i], "weight " + std::to_string(i));
    if (w < 1)
      throw SchemaError("weight " + std::to_string(i) +
                        " must be a positive integer");
    wlist.push_back(std::move(w));
  }

  std::size_t dim = cone_size;
  if (clist.empty()) {
    if (!j.contains("dim"))
      throw SchemaError("fan with no cones needs an explicit 'dim'");
    Int d = int_field(j["dim"], "'dim'");
    if (d != 1 && d != 2) throw SchemaError("'dim' must be 1 or 2");
    dim = d.convert_to<std::size_t>();
  } else if (j.contains("dim")) {
    Int d = int_field(j["dim"], "'dim'");
    if (d != Int(dim))
      throw SchemaError("'dim' disagrees with the cone sizes");
  }

  if (dim == 1) {
    // make_fan_1d expects cones in ray order; honour the file's cone list
    // instead so the round trip is exact.
    WeightedFan f;
    f.n = n;
    f.dim = 1;
    f.rays = std::move(rays);
    f.cones = std::move(clist);
    f.weights = std::move(wlist);
    return f;
  }
  return make_fan_2d(n, std::move(rays), std::move(clist), std::move(wlist));
}

TRFunction parse_function(const std::string& text) {
  json j = parse_text(text);
  require_keys(j, {"functionals"}, {}, "function");
  const json& fs = j["functionals"];
  if (!fs.is_array() || fs.empty())
    throw SchemaError("'functionals' must be a non-empty array");
  std::vector<LinearFunctional> out;
  std::size_t n = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const json& l = fs[i];
    std::string where = "functional " + std::to_string(i);
    if (!l.is_array() || l.empty())
      throw SchemaError(where + " must be a non-empty array of integers");
    if (n == 0) n = l.size();
    if (l.size() != n)
      throw SchemaError(where + " has length " + std::to_string(l.size()) +
                        ", expected " + std::to_string(n));
    IntVec c(n);
    for (std::size_t k = 0; k < n; ++k)
      c[k] = int_field(l[k], where + " entry " + std::to_string(k));
    out.emplace_back(std::move(c));
  }
  return TRFunction(std::move(out));
}

std::string serialize(const WeightedFan& f) {
  json j;
  j["n"] = static_cast<long long>(f.n);
  json rays = json::array();
  for (const auto& r : f.rays) {
    json row = json::array();
    for (std::size_t k = 0; k < r.dim(); ++k) row.push_back(to_json_int(r[k]));
    rays.push_back(std::move(row));
  }
  j["rays"] = std::move(rays);
  json cones = json::array();
  for (const auto& c : f.cones) {
    json row = json::array();
    for (std::size_t idx : c) row.push_back(static_cast<long long>(idx));
    cones.push_back(std::move(row));
  }
  j["cones"] = std::move(cones);
  json weights = json::array();
  for (const auto& w : f.weights) weights.push_back(to_json_int(w));
  j["weights"] = std::move(weights);
  if (f.cones.empty()) j["dim"] = static_cast<long long>(f.dim);
  return j.dump();
}

std::string serialize(const TRFunction& t) {
  json j;
  json fs = json::array();
  for (const auto& l : t.functionals) {
    json row = json::array();
    for (std::size_t k = 0; k < l.dim(); ++k) row.push_back(to_json_int(l[k]));
    fs.push_back(std::move(row));
  }
  j["functionals"] = std::move(fs);
  return j.dump();
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

WeightedFan load_fan(const std::string& path, bool normalize_rays) {
  return parse_fan(slurp(path), normalize_rays);
}

TRFunction load_function(const std::string& path) {
  return parse_function(slurp(path));
}

}  // namespace tropfan
