#include "brls/grid_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace brls {

namespace {

constexpr char kMagic[4] = {'B', 'R', 'G', '1'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  std::uint8_t bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T get_le(const std::uint8_t* p) {
  std::uint8_t bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::velocity: return "velocity";
    case GridKind::reflectivity: return "reflectivity";
    case GridKind::image: return "image";
    case GridKind::gather: return "gather";
  }
  return "unknown";
}

GridFile GridFile::from_grid(const Grid2D& grid, GridKind kind) {
  GridFile f;
  f.kind = kind;
  f.n1 = static_cast<std::uint64_t>(grid.nz());
  f.n2 = static_cast<std::uint64_t>(grid.nx());
  f.d1 = grid.dz();
  f.d2 = grid.dx();
  f.o1 = grid.origin_z();
  f.o2 = grid.origin_x();
  f.payload.reserve(static_cast<std::size_t>(grid.size()));
  for (double v : grid.values()) f.payload.push_back(static_cast<float>(v));
  return f;
}

Grid2D GridFile::to_grid() const {
  Grid2D g(static_cast<Index>(n1), static_cast<Index>(n2), d1, d2);
  g.set_origin(o1, o2);
  auto values = g.values();
  for (std::size_t i = 0; i < payload.size(); ++i) values[i] = payload[i];
  return g;
}

std::vector<std::uint8_t> encode_grid_file(const GridFile& file) {
  if (file.payload.size() != file.n1 * file.n2)
    throw GridFileError("encode_grid_file: payload size does not match n1*n2");
  std::vector<std::uint8_t> out;
  out.reserve(GridFile::header_size + 4 * file.payload.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  put_le(out, file.n1);
  put_le(out, file.n2);
  put_le(out, file.d1);
  put_le(out, file.d2);
  put_le(out, file.o1);
  put_le(out, file.o2);
  put_le(out, static_cast<std::uint32_t>(file.kind));
  for (float v : file.payload) put_le(out, v);
  return out;
}

GridFile decode_grid_file(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < GridFile::header_size) throw GridFileError("grid file: truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw GridFileError("grid file: bad magic (expected BRG1)");
  const std::uint8_t* p = bytes.data() + 4;
  GridFile f;
  f.n1 = get_le<std::uint64_t>(p);
  f.n2 = get_le<std::uint64_t>(p + 8);
  f.d1 = get_le<double>(p + 16);
  f.d2 = get_le<double>(p + 24);
  f.o1 = get_le<double>(p + 32);
  f.o2 = get_le<double>(p + 40);
  const auto kind = get_le<std::uint32_t>(p + 48);
  if (kind > 3) throw GridFileError("grid file: unknown kind tag " + std::to_string(kind));
  f.kind = static_cast<GridKind>(kind);
  for (double v : {f.d1, f.d2, f.o1, f.o2}) {
    if (!std::isfinite(v)) throw GridFileError("grid file: non-finite header value");
  }
  if (f.n1 == 0 || f.n2 == 0) throw GridFileError("grid file: empty grid");
  if (f.n2 > (bytes.size() / 4) / f.n1) throw GridFileError("grid file: payload shorter than n1*n2");
  const std::uint64_t count = f.n1 * f.n2;
  if (bytes.size() != GridFile::header_size + 4 * count)
    throw GridFileError("grid file: payload length does not match n1*n2*4 bytes");
  f.payload.resize(static_cast<std::size_t>(count));
  const std::uint8_t* data = bytes.data() + GridFile::header_size;
  for (std::size_t i = 0; i < f.payload.size(); ++i) f.payload[i] = get_le<float>(data + 4 * i);
  return f;
}

void write_grid_file(const std::filesystem::path& path, const GridFile& file) {
  const auto bytes = encode_grid_file(file);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GridFileError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw GridFileError("failed writing " + path.string());
}

GridFile read_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GridFileError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_grid_file(bytes);
  } catch (const GridFileError& e) {
    throw GridFileError(path.string() + ": " + e.what());
  }
}

}  // namespace brls
