#pragma once

#include <iosfwd>
#include <string>

#include "revsyn/circuit.hpp"

namespace revsyn {

/// Thrown with a 1-based line number when a circuit document is malformed.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Line-oriented text format: header `lines <l>`, then one gate per line
/// `<kind> <a> <b> <c>`; `#` starts a comment.
std::string serialize(const Circuit& circuit);
Circuit parse_circuit(const std::string& text);

Circuit load_circuit_file(const std::string& path);
void save_circuit_file(const Circuit& circuit, const std::string& path);

/// RevLib-style `.real` document using the t1/t2/t3/f3 gate codes.
/// SWAP is emitted as three t2 gates; IDENTITY gates are omitted.
std::string export_real(const Circuit& circuit);

/// Import is limited to the gate codes export_real produces.
Circuit import_real(const std::string& text);

}  // namespace revsyn
