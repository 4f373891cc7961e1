#pragma once

#include <map>
#include <optional>
#include <string>

#include "blockip/instance.hpp"

namespace blockip {

/// Thrown by parse_json on malformed documents; the message names the
/// offending field or byte position.
class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Optional provenance block recorded alongside generated instances: the
/// source problem, its parameters and a summary of the witness maps.
struct Provenance {
  std::string source;
  std::map<std::string, std::string> params;
  std::string certificate;

  bool operator==(const Provenance& other) const {
    return source == other.source && params == other.params &&
           certificate == other.certificate;
  }
};

/// Serialized unit: instance plus optional provenance.
struct InstanceDocument {
  IPInstance instance;
  std::optional<Provenance> provenance;
};

/// Versioned JSON encoding (format "blockip-instance", version 1).  Matrix
/// entries are 1-based (row, column, value) triples with decimal-string
/// values, so arbitrary-precision entries survive unchanged; absent bounds
/// serialize as "-inf"/"+inf".  Deterministic output (sorted entries,
/// fixed field order).
std::string emit_json(const InstanceDocument& doc);
std::string emit_json(const IPInstance& inst);

/// Parses and validates a document produced by emit_json (or compatible).
/// Throws SchemaError with a field diagnostic on violations.
InstanceDocument parse_json(const std::string& text);

/// Fixed-format MPS export: rows R1..Rm (type E), columns C1..Cn inside
/// INTORG/INTEND integer markers, dummy objective row COST, RHS entries for
/// nonzero components, LI/UI bound records.  Export only; finite bounds
/// required (throws std::invalid_argument otherwise).
std::string emit_mps(const IPInstance& inst);

}  // namespace blockip
