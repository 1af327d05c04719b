#include "axivisc/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace axivisc {

namespace fs = std::filesystem;

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t out = 0;
    for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return out;
  }
  return v;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::map<std::string, std::string>& kv, const std::string& key,
                  const fs::path& file) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::runtime_error(file.string() + ": missing header key '" + key + "'");
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != it->second.size())
    throw std::runtime_error(file.string() + ": bad value for '" + key + "'");
  return v;
}

int parse_count(const std::map<std::string, std::string>& kv, const std::string& key,
                const fs::path& file) {
  const double v = parse_real(kv, key, file);
  if (v != static_cast<int>(v))
    throw std::runtime_error(file.string() + ": '" + key + "' is not an integer");
  return static_cast<int>(v);
}

}  // namespace

fs::path snapshot_stem(const fs::path& path) {
  const auto ext = path.extension();
  if (ext == ".hdr" || ext == ".bin") {
    fs::path stem = path;
    stem.replace_extension();
    return stem;
  }
  return path;
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_snapshot(const fs::path& path, const ScalarField& field, double time) {
  const fs::path stem = snapshot_stem(path);
  const GridSpec& g = field.grid();

  std::ostringstream hdr;
  hdr << "n_r = " << g.n_r() << '\n'
      << "n_z = " << g.n_z() << '\n'
      << "r_max = " << format_real(g.r_max()) << '\n'
      << "z_min = " << format_real(g.z_min()) << '\n'
      << "z_max = " << format_real(g.z_max()) << '\n'
      << "role = " << to_string(field.role()) << '\n'
      << "time = " << format_real(time) << '\n';

  std::string bin(g.size() * sizeof(double), '\0');
  auto values = field.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::uint64_t le = to_little_endian(std::bit_cast<std::uint64_t>(values[k]));
    std::memcpy(bin.data() + k * sizeof(double), &le, sizeof le);
  }

  fs::path bin_path = stem;
  bin_path += ".bin";
  fs::path hdr_path = stem;
  hdr_path += ".hdr";
  write_file_atomic(bin_path, bin);
  write_file_atomic(hdr_path, hdr.str());
}

Snapshot read_snapshot(const fs::path& path) {
  const fs::path stem = snapshot_stem(path);
  fs::path hdr_path = stem;
  hdr_path += ".hdr";
  fs::path bin_path = stem;
  bin_path += ".bin";

  std::ifstream hdr(hdr_path);
  if (!hdr) throw std::runtime_error("cannot open " + hdr_path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(hdr, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(hdr_path.string() + ": malformed line '" + line + "'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  const GridSpec grid(parse_real(kv, "r_max", hdr_path), parse_real(kv, "z_min", hdr_path),
                      parse_real(kv, "z_max", hdr_path), parse_count(kv, "n_r", hdr_path),
                      parse_count(kv, "n_z", hdr_path));
  auto role_it = kv.find("role");
  if (role_it == kv.end())
    throw std::runtime_error(hdr_path.string() + ": missing header key 'role'");
  const FieldRole role = role_from_string(role_it->second);
  const double time = parse_real(kv, "time", hdr_path);

  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + bin_path.string());
  std::string raw((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());
  if (raw.size() != grid.size() * sizeof(double))
    throw std::runtime_error(bin_path.string() + ": expected " +
                             std::to_string(grid.size() * sizeof(double)) + " bytes, found " +
                             std::to_string(raw.size()));
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::uint64_t le = 0;
    std::memcpy(&le, raw.data() + k * sizeof(double), sizeof le);
    values[k] = std::bit_cast<double>(to_little_endian(le));
  }
  return Snapshot{ScalarField(grid, role, std::move(values)), time};
}

}  // namespace axivisc
