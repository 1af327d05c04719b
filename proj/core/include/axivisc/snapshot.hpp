#pragma once

#include <filesystem>

#include "axivisc/grid.hpp"

namespace axivisc {

/// A field together with the simulation time it was taken at.
struct Snapshot {
  ScalarField field;
  double time = 0.0;
};

/// On-disk layout for a snapshot stem `S`:
///   S.hdr  text header, `key = value` per line, keys n_r, n_z, r_max, z_min,
///          z_max, role, time (reals printed with 17 significant digits)
///   S.bin  n_r * n_z little-endian IEEE-754 doubles, row-major, r slow
///
/// `path` may be the stem or either of the two files. Both files are written
/// to a temporary name first and then renamed into place.
void write_snapshot(const std::filesystem::path& path, const ScalarField& field,
                    double time);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Strips a trailing .hdr or .bin.
std::filesystem::path snapshot_stem(const std::filesystem::path& path);

/// Writes `contents` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace axivisc
