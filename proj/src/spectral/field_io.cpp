#include "wgnls/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "wgnls/error.hpp"

namespace wgnls {

namespace {

constexpr char kMagic[6] = {'W', 'G', 'N', 'L', 'S', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw Error("read_field: truncated stream");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_field(std::ostream& os, const Field& u, double alpha) {
  const Grid& g = u.grid();
  os.write(kMagic, 6);
  const char d = static_cast<char>(g.d());
  os.write(&d, 1);
  put_u64(os, g.Nx());
  put_u64(os, g.Ny());
  put_f64(os, g.Lx());
  put_f64(os, alpha);
  for (const auto& z : u.values()) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
  if (!os) throw Error("write_field: stream error");
}

void write_field(const std::string& path, const Field& u, double alpha) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_field: cannot open " + path);
  write_field(os, u, alpha);
}

StoredField read_field(std::istream& is) {
  char magic[6];
  if (!is.read(magic, 6) || std::memcmp(magic, kMagic, 6) != 0)
    throw Error("read_field: bad magic");
  char d = 0;
  if (!is.read(&d, 1)) throw Error("read_field: truncated stream");
  const auto nx = get_u64(is);
  const auto ny = get_u64(is);
  const double lx = get_f64(is);
  const double alpha = get_f64(is);
  const Grid g = make_grid(d, lx, nx, ny);
  std::vector<cplx> v(g.size());
  for (auto& z : v) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    z = {re, im};
  }
  return {Field(g, std::move(v)), alpha};
}

StoredField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_field: cannot open " + path);
  return read_field(is);
}

}  // namespace wgnls
