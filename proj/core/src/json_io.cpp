#include "blockip/io.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace blockip {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

void check_lengths(const IPInstance& inst, const char* who) {
  const auto rows = static_cast<std::size_t>(inst.rows());
  const auto cols = static_cast<std::size_t>(inst.cols());
  if (inst.rhs.size() != rows || inst.lower.size() != cols ||
      inst.upper.size() != cols || inst.objective.size() != cols)
    throw std::invalid_argument(std::string(who) +
                                ": instance vectors do not match the matrix "
                                "dimensions");
}

std::string bound_string(const Bound& b, bool is_lower) {
  if (b) return b->get_str();
  return is_lower ? "-inf" : "+inf";
}

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw SchemaError(field + ": " + why);
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) fail(name, "missing field");
  return *it;
}

Index field_index(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    fail(name, "expected a nonnegative integer");
  return static_cast<Index>(v.get<long long>());
}

Int parse_value(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a decimal string");
  const std::string s = v.get<std::string>();
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    fail(where, "not a decimal integer: '" + s + "'");
  }
}

Bound parse_bound(const json& v, const std::string& where, bool is_lower) {
  if (!v.is_string()) fail(where, "expected a decimal string or inf sentinel");
  const std::string s = v.get<std::string>();
  if (s == (is_lower ? "-inf" : "+inf")) return std::nullopt;
  if (s == "-inf" || s == "+inf")
    fail(where, "inf sentinel on the wrong side: '" + s + "'");
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    fail(where, "not a decimal integer: '" + s + "'");
  }
}

}  // namespace

std::string emit_json(const InstanceDocument& doc) {
  const IPInstance& inst = doc.instance;
  check_lengths(inst, "emit_json");

  ordered_json j;
  j["format"] = "blockip-instance";
  j["version"] = 1;
  j["rows"] = inst.rows();
  j["cols"] = inst.cols();
  j["entries"] = ordered_json::array();
  for (const auto& [pos, v] : inst.a.entries())
    j["entries"].push_back(
        ordered_json::array({pos.first, pos.second, v.get_str()}));
  j["rhs"] = ordered_json::array();
  for (const Int& v : inst.rhs) j["rhs"].push_back(v.get_str());
  j["lower"] = ordered_json::array();
  for (const Bound& b : inst.lower) j["lower"].push_back(bound_string(b, true));
  j["upper"] = ordered_json::array();
  for (const Bound& b : inst.upper) j["upper"].push_back(bound_string(b, false));
  j["objective"] = ordered_json::array();
  for (const Int& v : inst.objective) j["objective"].push_back(v.get_str());
  if (inst.profile) {
    ordered_json p;
    p["kind"] = inst.profile->kind == StructureKind::MultiStage ? "multi-stage"
                                                                : "tree-fold";
    p["sigma"] = inst.profile->sigma;
    j["profile"] = std::move(p);
  }
  if (doc.provenance) {
    ordered_json p;
    p["source"] = doc.provenance->source;
    p["params"] = ordered_json::object();
    for (const auto& [k, v] : doc.provenance->params) p["params"][k] = v;
    p["certificate"] = doc.provenance->certificate;
    j["provenance"] = std::move(p);
  }
  return j.dump(2) + "\n";
}

std::string emit_json(const IPInstance& inst) {
  return emit_json(InstanceDocument{inst, std::nullopt});
}

InstanceDocument parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("document: expected a JSON object");

  const json& format = field(j, "format");
  if (!format.is_string() || format.get<std::string>() != "blockip-instance")
    fail("format", "expected \"blockip-instance\"");
  const json& version = field(j, "version");
  if (!version.is_number_integer() || version.get<long long>() != 1)
    fail("version", "unsupported version (expected 1)");

  const Index rows = field_index(j, "rows");
  const Index cols = field_index(j, "cols");

  InstanceDocument doc;
  IPInstance& inst = doc.instance;
  inst.a = IntMatrix(rows, cols);

  const json& entries = field(j, "entries");
  if (!entries.is_array()) fail("entries", "expected an array");
  std::set<std::pair<Index, Index>> seen;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = "entries[" + std::to_string(k) + "]";
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 3)
      fail(where, "expected [row, col, \"value\"]");
    if (!e[0].is_number_integer() || !e[1].is_number_integer())
      fail(where, "row and column must be integers");
    const Index r = static_cast<Index>(e[0].get<long long>());
    const Index c = static_cast<Index>(e[1].get<long long>());
    if (r < 1 || r > rows || c < 1 || c > cols)
      fail(where, "position (" + std::to_string(r) + ", " + std::to_string(c) +
                      ") out of range");
    if (!seen.insert({r, c}).second) fail(where, "duplicate position");
    Int value = parse_value(e[2], where + ".value");
    if (value == 0) fail(where + ".value", "explicit zero entry");
    inst.a.set(r, c, std::move(value));
  }

  auto parse_int_vector = [&](const char* name, std::size_t want) {
    const json& arr = field(j, name);
    if (!arr.is_array() || arr.size() != want)
      fail(name, "expected an array of length " + std::to_string(want));
    std::vector<Int> out;
    out.reserve(want);
    for (std::size_t k = 0; k < arr.size(); ++k)
      out.push_back(
          parse_value(arr[k], std::string(name) + "[" + std::to_string(k) + "]"));
    return out;
  };
  auto parse_bound_vector = [&](const char* name, bool is_lower) {
    const json& arr = field(j, name);
    if (!arr.is_array() || arr.size() != static_cast<std::size_t>(cols))
      fail(name, "expected an array of length " + std::to_string(cols));
    std::vector<Bound> out;
    out.reserve(arr.size());
    for (std::size_t k = 0; k < arr.size(); ++k)
      out.push_back(parse_bound(
          arr[k], std::string(name) + "[" + std::to_string(k) + "]", is_lower));
    return out;
  };

  inst.rhs = parse_int_vector("rhs", static_cast<std::size_t>(rows));
  inst.lower = parse_bound_vector("lower", true);
  inst.upper = parse_bound_vector("upper", false);
  inst.objective = parse_int_vector("objective", static_cast<std::size_t>(cols));

  if (j.contains("profile") && !j["profile"].is_null()) {
    const json& p = j["profile"];
    if (!p.is_object()) fail("profile", "expected an object");
    const json& kind = field(p, "kind");
    if (!kind.is_string()) fail("profile.kind", "expected a string");
    const std::string kind_s = kind.get<std::string>();
    StructureKind sk;
    if (kind_s == "multi-stage")
      sk = StructureKind::MultiStage;
    else if (kind_s == "tree-fold")
      sk = StructureKind::TreeFold;
    else
      fail("profile.kind", "unknown kind '" + kind_s + "'");
    const json& sigma = field(p, "sigma");
    if (!sigma.is_array() || sigma.empty())
      fail("profile.sigma", "expected a non-empty array");
    std::vector<Index> sizes;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      if (!sigma[k].is_number_integer() || sigma[k].get<long long>() < 1)
        fail("profile.sigma[" + std::to_string(k) + "]",
             "expected an integer >= 1");
      sizes.push_back(static_cast<Index>(sigma[k].get<long long>()));
    }
    inst.profile = BlockProfile(sk, std::move(sizes));
  }

  if (j.contains("provenance") && !j["provenance"].is_null()) {
    const json& p = j["provenance"];
    if (!p.is_object()) fail("provenance", "expected an object");
    Provenance prov;
    const json& source = field(p, "source");
    if (!source.is_string()) fail("provenance.source", "expected a string");
    prov.source = source.get<std::string>();
    const json& params = field(p, "params");
    if (!params.is_object()) fail("provenance.params", "expected an object");
    for (const auto& [k, v] : params.items()) {
      if (!v.is_string())
        fail("provenance.params." + k, "expected a string value");
      prov.params[k] = v.get<std::string>();
    }
    const json& cert = field(p, "certificate");
    if (!cert.is_string()) fail("provenance.certificate", "expected a string");
    prov.certificate = cert.get<std::string>();
    doc.provenance = std::move(prov);
  }
  return doc;
}

}  // namespace blockip
