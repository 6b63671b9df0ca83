#include "nematic/snapshot_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "nematic/errors.hpp"

namespace nematic {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return v;
  }
}

template <class T>
void put(std::ostream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is, const std::filesystem::path& path) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw FormatError("truncated snapshot header in " + path.string());
  }
  return to_little(v);
}

template <std::size_t N>
void write_impl(const std::filesystem::path& path, const GridField<N>& f, const char* magic) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(magic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().n()));
  put<double>(os, f.grid().box_len());
  put<double>(os, f.time());
  for (std::size_t c = 0; c < N; ++c) {
    if constexpr (std::endian::native == std::endian::little) {
      os.write(reinterpret_cast<const char*>(f.plane(c).data()),
               static_cast<std::streamsize>(f.size() * sizeof(double)));
    } else {
      for (double v : f.plane(c)) put<double>(os, v);
    }
  }
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw MissingInput("cannot open snapshot " + path.string());
  return is;
}

std::string read_magic(std::istream& is, const std::filesystem::path& path) {
  char magic[4];
  if (!is.read(magic, 4)) throw FormatError("empty or truncated snapshot " + path.string());
  return std::string(magic, 4);
}

template <std::size_t N>
GridField<N> read_body(std::istream& is, const std::filesystem::path& path) {
  const auto n = get<std::uint32_t>(is, path);
  const auto box = get<double>(is, path);
  const auto time = get<double>(is, path);
  GridSpec grid = [&] {
    try {
      return GridSpec(static_cast<int>(n), box);
    } catch (const std::invalid_argument& e) {
      throw FormatError("bad grid in " + path.string() + ": " + e.what());
    }
  }();
  GridField<N> f(grid, time);
  for (std::size_t c = 0; c < N; ++c) {
    auto plane = f.plane(c);
    if (!is.read(reinterpret_cast<char*>(plane.data()),
                 static_cast<std::streamsize>(plane.size() * sizeof(double)))) {
      throw FormatError("truncated snapshot payload in " + path.string());
    }
    if constexpr (std::endian::native == std::endian::big) {
      for (double& v : plane) v = to_little(v);
    }
  }
  return f;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const TensorField& f) { write_impl(path, f, "QTF1"); }
void write_snapshot(const std::filesystem::path& path, const ScalarField& f) { write_impl(path, f, "QSF1"); }

TensorField read_tensor_snapshot(const std::filesystem::path& path) {
  auto is = open_for_read(path);
  if (read_magic(is, path) != "QTF1") throw FormatError(path.string() + " is not a QTF1 tensor snapshot");
  return read_body<5>(is, path);
}

ScalarField read_scalar_snapshot(const std::filesystem::path& path) {
  auto is = open_for_read(path);
  if (read_magic(is, path) != "QSF1") throw FormatError(path.string() + " is not a QSF1 scalar snapshot");
  return read_body<1>(is, path);
}

SnapshotKind snapshot_kind(const std::filesystem::path& path) {
  auto is = open_for_read(path);
  const auto magic = read_magic(is, path);
  if (magic == "QTF1") return SnapshotKind::Tensor;
  if (magic == "QSF1") return SnapshotKind::Scalar;
  throw FormatError(path.string() + " has unknown snapshot magic '" + magic + "'");
}

TensorField read_snapshot_as_tensor(const std::filesystem::path& path) {
  auto is = open_for_read(path);
  const auto magic = read_magic(is, path);
  if (magic == "QTF1") return read_body<5>(is, path);
  if (magic == "QSF1") return uniaxial_lift(read_body<1>(is, path));
  throw FormatError(path.string() + " has unknown snapshot magic '" + magic + "'");
}

}  // namespace nematic
