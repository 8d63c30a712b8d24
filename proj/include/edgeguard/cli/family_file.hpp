#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "edgeguard/family.hpp"

namespace edgeguard::cli {

/// A family file: the family itself plus, optionally, the ε-scaling record
/// used by margin mode. The scaled entries of `family` are normally the
/// template evaluated at `epsilon`, but that is not enforced.
struct FamilyFile {
  UncertainFamily family;
  std::optional<ScaledFamily> scaled;
  std::optional<double> epsilon;
};

/// Malformed input. `location` is a JSON pointer ("/B/0/1/2") or a
/// "line L, column C" position for syntax errors.
class FileError : public std::runtime_error {
 public:
  FileError(std::string location, const std::string& message);
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

FamilyFile parse_family_file(const std::string& text);
FamilyFile read_family_file(const std::filesystem::path& path);

/// Canonical text: fixed key order, one matrix row per line, integral
/// values without a fraction. parse then emit reproduces it byte for byte.
std::string emit_family_file(const FamilyFile& file);

/// An interval polynomial as a JSON array of numbers and [lo, hi] pairs.
IntervalPolynomial parse_interval_polynomial(const std::string& text);

}  // namespace edgeguard::cli
