#include "blockip/io.hpp"

#include <stdexcept>
#include <string>

namespace blockip {

namespace {

std::string pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s + " ";
  return s + std::string(width - s.size(), ' ');
}

std::string data_line(const std::string& a, const std::string& b,
                      const std::string& value) {
  return "    " + pad(a, 10) + pad(b, 10) + value + "\n";
}

}  // namespace

std::string emit_mps(const IPInstance& inst) {
  const auto cols = static_cast<std::size_t>(inst.cols());
  if (inst.rhs.size() != static_cast<std::size_t>(inst.rows()) ||
      inst.lower.size() != cols || inst.upper.size() != cols ||
      inst.objective.size() != cols)
    throw std::invalid_argument(
        "emit_mps: instance vectors do not match the matrix dimensions");
  for (Index c = 1; c <= inst.cols(); ++c) {
    if (!inst.lower[static_cast<std::size_t>(c - 1)] ||
        !inst.upper[static_cast<std::size_t>(c - 1)])
      throw std::invalid_argument(
          "emit_mps: variable " + std::to_string(c) +
          " has an infinite bound; MPS export needs finite boxes");
  }

  std::string out;
  out += "NAME          BLOCKIP\n";
  out += "ROWS\n";
  out += " N  COST\n";
  for (Index r = 1; r <= inst.rows(); ++r)
    out += " E  R" + std::to_string(r) + "\n";

  out += "COLUMNS\n";
  out += "    MARKER                 'MARKER'                 'INTORG'\n";
  for (Index c = 1; c <= inst.cols(); ++c) {
    const std::string name = "C" + std::to_string(c);
    out += data_line(name, "COST",
                     inst.objective[static_cast<std::size_t>(c - 1)].get_str());
    for (Index r = 1; r <= inst.rows(); ++r) {
      const Int& v = inst.a.at(r, c);
      if (v == 0) continue;
      out += data_line(name, "R" + std::to_string(r), v.get_str());
    }
  }
  out += "    MARKER                 'MARKER'                 'INTEND'\n";

  out += "RHS\n";
  for (Index r = 1; r <= inst.rows(); ++r) {
    const Int& v = inst.rhs[static_cast<std::size_t>(r - 1)];
    if (v == 0) continue;
    out += data_line("RHS", "R" + std::to_string(r), v.get_str());
  }

  out += "BOUNDS\n";
  for (Index c = 1; c <= inst.cols(); ++c) {
    const std::string name = "C" + std::to_string(c);
    out += " LI " + pad("BND", 10) + pad(name, 10) +
           inst.lower[static_cast<std::size_t>(c - 1)]->get_str() + "\n";
    out += " UI " + pad("BND", 10) + pad(name, 10) +
           inst.upper[static_cast<std::size_t>(c - 1)]->get_str() + "\n";
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace blockip
