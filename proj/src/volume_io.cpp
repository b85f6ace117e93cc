#include "bondmatcher/volume_io.hpp"

#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "raw volume io assumes a little-endian host");

namespace bondmatcher {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;
  std::string path;

  bool next(std::string& out) {
    if (!std::getline(in, out)) return false;
    ++line_no;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw VolumeParseError(path, line_no, what);
  }
};

}  // namespace

CubeVolume load_cube(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw VolumeParseError(path, 0, "cannot open file");
  LineReader rd{in, 0, path};
  std::string line;

  CubeVolume vol;
  if (!rd.next(line)) rd.fail("missing first comment line");
  vol.comment = line;
  if (!rd.next(line)) rd.fail("missing second comment line");

  if (!rd.next(line)) rd.fail("missing atom-count line");
  long natoms_raw = 0;
  Eigen::Vector3d origin;
  {
    std::istringstream ls(line);
    if (!(ls >> natoms_raw >> origin.x() >> origin.y() >> origin.z()))
      rd.fail("malformed atom-count line: expected count and origin");
  }

  Eigen::Vector3i dims;
  Eigen::Vector3d spacing;
  int sign_seen = 0;
  for (int ax = 0; ax < 3; ++ax) {
    if (!rd.next(line)) rd.fail("missing axis line");
    std::istringstream ls(line);
    long count = 0;
    Eigen::Vector3d axis;
    if (!(ls >> count >> axis.x() >> axis.y() >> axis.z()))
      rd.fail("malformed axis line: expected count and vector");
    if (count == 0) rd.fail("axis voxel count is zero");
    const int sign = count > 0 ? 1 : -1;
    if (sign_seen == 0)
      sign_seen = sign;
    else if (sign != sign_seen)
      rd.fail("mixed voxel-count signs; unit convention is ambiguous");
    dims[ax] = static_cast<int>(count > 0 ? count : -count);
    for (int k = 0; k < 3; ++k)
      if (k != ax && std::abs(axis[k]) > 1e-12)
        rd.fail("axis vector is not axis-aligned");
    if (!(axis[ax] > 0.0)) rd.fail("axis step must be positive");
    spacing[ax] = axis[ax];
  }

  // Positive counts follow the Bohr convention; negative counts mean the
  // header is already in Angstrom and is taken verbatim.
  const double unit = sign_seen > 0 ? kBohrToAngstrom : 1.0;
  vol.grid.dims = dims;
  vol.grid.spacing = spacing * unit;
  vol.grid.origin = origin * unit;

  const long natoms = natoms_raw < 0 ? -natoms_raw : natoms_raw;
  for (long i = 0; i < natoms; ++i) {
    if (!rd.next(line)) rd.fail("missing atom line");
    std::istringstream ls(line);
    Atom a;
    Eigen::Vector3d p;
    if (!(ls >> a.atomic_number >> a.charge >> p.x() >> p.y() >> p.z()))
      rd.fail("malformed atom line");
    a.position = p * unit;
    vol.atoms.push_back(a);
  }

  if (natoms_raw < 0) {
    // Cube files with a negative atom count carry one extra line listing
    // data-set ids; only a single scalar per point is supported.
    if (!rd.next(line)) rd.fail("missing data-set id line");
    std::istringstream ls(line);
    long nsets = 0;
    if (!(ls >> nsets)) rd.fail("malformed data-set id line");
    if (nsets != 1) rd.fail("only single-valued cube files are supported");
  }

  const std::int64_t total = vol.grid.vertex_count();
  vol.grid.values.resize(total);
  std::int64_t got = 0;
  while (got < total) {
    if (!rd.next(line))
      rd.fail("too few values: expected " + std::to_string(total) + ", got " +
              std::to_string(got));
    std::istringstream ls(line);
    double v;
    while (ls >> v) {
      if (got == total) rd.fail("too many values");
      // Cube order is z fastest; grid order is x fastest.
      const std::int64_t z = got % dims.z();
      const std::int64_t y = (got / dims.z()) % dims.y();
      const std::int64_t x = got / (static_cast<std::int64_t>(dims.y()) * dims.z());
      vol.grid.values[x + dims.x() * (y + static_cast<std::int64_t>(dims.y()) * z)] = v;
      ++got;
    }
    if (!ls.eof()) rd.fail("malformed value line");
  }
  while (rd.next(line)) {
    std::istringstream ls(line);
    double v;
    if (ls >> v) rd.fail("too many values");
  }

  try {
    vol.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw VolumeParseError(path, rd.line_no, e.what());
  }
  return vol;
}

void save_cube(const std::string& path, const ScalarGrid& grid,
               const AtomList& atoms, const std::string& comment) {
  grid.validate();
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  const double inv = 1.0 / kBohrToAngstrom;
  std::fprintf(f, "%s\n", comment.empty() ? "bondmatcher volume" : comment.c_str());
  std::fprintf(f, "scalar field, x outer loop, z inner loop\n");
  std::fprintf(f, "%5zu %.15E %.15E %.15E\n", atoms.size(),
               grid.origin.x() * inv, grid.origin.y() * inv,
               grid.origin.z() * inv);
  for (int ax = 0; ax < 3; ++ax) {
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    axis[ax] = grid.spacing[ax] * inv;
    std::fprintf(f, "%5d %.15E %.15E %.15E\n", grid.dims[ax], axis.x(),
                 axis.y(), axis.z());
  }
  for (const Atom& a : atoms)
    std::fprintf(f, "%5d %.15E %.15E %.15E %.15E\n", a.atomic_number, a.charge,
                 a.position.x() * inv, a.position.y() * inv,
                 a.position.z() * inv);
  std::int64_t col = 0;
  for (std::int64_t x = 0; x < grid.dims.x(); ++x)
    for (std::int64_t y = 0; y < grid.dims.y(); ++y)
      for (std::int64_t z = 0; z < grid.dims.z(); ++z) {
        const double v =
            grid.values[x + grid.dims.x() *
                                (y + static_cast<std::int64_t>(grid.dims.y()) * z)];
        std::fprintf(f, " %.15E", v);
        if (++col % 6 == 0) std::fprintf(f, "\n");
      }
  if (col % 6 != 0) std::fprintf(f, "\n");
  std::fclose(f);
}

namespace {

constexpr char kRawMagic[8] = {'B', 'M', 'G', 'R', 'I', 'D', '1', '\n'};

}  // namespace

ScalarGrid load_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VolumeParseError(path, 0, "cannot open file");
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kRawMagic, 8) != 0)
    throw VolumeParseError(path, 0, "not a BMGRID1 volume");
  std::uint64_t dims[3];
  double spacing[3], origin[3];
  if (!in.read(reinterpret_cast<char*>(dims), sizeof dims) ||
      !in.read(reinterpret_cast<char*>(spacing), sizeof spacing) ||
      !in.read(reinterpret_cast<char*>(origin), sizeof origin))
    throw VolumeParseError(path, 0, "truncated header");
  ScalarGrid g;
  for (int ax = 0; ax < 3; ++ax) {
    if (dims[ax] == 0 || dims[ax] > (1u << 30))
      throw VolumeParseError(path, 0, "unreasonable dimension in header");
    g.dims[ax] = static_cast<int>(dims[ax]);
    g.spacing[ax] = spacing[ax];
    g.origin[ax] = origin[ax];
  }
  g.values.resize(g.vertex_count());
  if (!in.read(reinterpret_cast<char*>(g.values.data()),
               g.values.size() * sizeof(double)))
    throw VolumeParseError(path, 0, "truncated value block");
  char extra;
  if (in.read(&extra, 1))
    throw VolumeParseError(path, 0, "trailing bytes after value block");
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw VolumeParseError(path, 0, e.what());
  }
  return g;
}

void save_raw(const std::string& path, const ScalarGrid& grid) {
  grid.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kRawMagic, 8);
  std::uint64_t dims[3];
  double spacing[3], origin[3];
  for (int ax = 0; ax < 3; ++ax) {
    dims[ax] = static_cast<std::uint64_t>(grid.dims[ax]);
    spacing[ax] = grid.spacing[ax];
    origin[ax] = grid.origin[ax];
  }
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  out.write(reinterpret_cast<const char*>(spacing), sizeof spacing);
  out.write(reinterpret_cast<const char*>(origin), sizeof origin);
  out.write(reinterpret_cast<const char*>(grid.values.data()),
            grid.values.size() * sizeof(double));
  if (!out) throw std::runtime_error("failed writing " + path);
}

ScalarGrid load_volume(const std::string& path) {
  if (path.size() >= 5 && path.rfind(".cube") == path.size() - 5)
    return load_cube(path).grid;
  if (path.size() >= 7 && path.rfind(".bmgrid") == path.size() - 7)
    return load_raw(path);
  throw VolumeParseError(path, 0, "unknown volume extension (.cube or .bmgrid)");
}

}  // namespace bondmatcher
