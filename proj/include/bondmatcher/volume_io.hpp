#ifndef BONDMATCHER_VOLUME_IO_HPP
#define BONDMATCHER_VOLUME_IO_HPP

#include <stdexcept>
#include <string>

#include "bondmatcher/grid.hpp"

namespace bondmatcher {

/// Parse failure in a volume file; remembers which line went wrong.
class VolumeParseError : public std::runtime_error {
 public:
  VolumeParseError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line),
        detail_(what) {}

  const std::string& path() const { return path_; }
  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string path_;
  int line_;
  std::string detail_;
};

struct CubeVolume {
  ScalarGrid grid;
  AtomList atoms;
  std::string comment;
};

/// Reads a Gaussian cube file. Positive voxel counts mean the header is in
/// Bohr and lengths are converted to Angstrom; negative counts mean the file
/// is already in Angstrom and values are taken as-is. Axis vectors must be
/// axis-aligned. Values are reordered from the cube layout (z fastest) to
/// the grid layout (x fastest).
CubeVolume load_cube(const std::string& path);

/// Writes a cube file in the Bohr convention (positive voxel counts), with
/// enough digits for a faithful round trip through load_cube.
void save_cube(const std::string& path, const ScalarGrid& grid,
               const AtomList& atoms, const std::string& comment = "");

/// Raw little-endian volume: "BMGRID1\n", dims as 3 u64, spacing and origin
/// as 3 f64 each (Angstrom), then dims.x*dims.y*dims.z f64 values, x fastest.
ScalarGrid load_raw(const std::string& path);
void save_raw(const std::string& path, const ScalarGrid& grid);

/// Dispatch on extension: ".cube" via load_cube, ".bmgrid" via load_raw.
ScalarGrid load_volume(const std::string& path);

inline constexpr double kBohrToAngstrom = 0.529177210903;

}  // namespace bondmatcher

#endif
