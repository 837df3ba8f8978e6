#pragma once

#include <iosfwd>
#include <string>

#include "wgnls/field.hpp"

namespace wgnls {

struct StoredField {
  Field field;
  double alpha;
};

// "WGNLS1" | u8 d | u64 Nx | u64 Ny | f64 Lx | f64 alpha | (re, im) f64 ...
// Everything little-endian.
void write_field(std::ostream& os, const Field& u, double alpha);
void write_field(const std::string& path, const Field& u, double alpha);
StoredField read_field(std::istream& is);
StoredField read_field(const std::string& path);

}  // namespace wgnls
