#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "axivisc/snapshot.hpp"

using namespace axivisc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("axivisc_snapshot_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ScalarField random_field(const GridSpec& g, FieldRole role, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  ScalarField f(g, role);
  for (double& v : f.values()) v = dist(rng) * 1e3;
  return f;
}

}  // namespace

TEST(Snapshot, RoundTripIsExact) {
  const fs::path dir = temp_dir("roundtrip");
  const GridSpec g = make_grid(2.0, -2.0, 2.0, 12, 20);
  const ScalarField f = random_field(g, FieldRole::omega_theta, 7);
  const double t = 0.1 + 1.0 / 3.0;
  write_snapshot(dir / "w", f, t);
  for (const fs::path p : {dir / "w", dir / "w.hdr", dir / "w.bin"}) {
    const Snapshot s = read_snapshot(p);
    EXPECT_EQ(s.time, t);
    EXPECT_EQ(s.field.role(), FieldRole::omega_theta);
    EXPECT_TRUE(s.field.grid() == g);
    ASSERT_EQ(s.field.values().size(), f.values().size());
    for (std::size_t k = 0; k < f.values().size(); ++k)
      EXPECT_EQ(s.field.values()[k], f.values()[k]);
  }
}

TEST(Snapshot, BinaryIsLittleEndianRowMajor) {
  const fs::path dir = temp_dir("layout");
  const GridSpec g = make_grid(1.0, 0.0, 1.0, 4, 5);
  ScalarField f(g, FieldRole::q_omega_over_r);
  f(1, 2) = 1.0;  // flat index 1 * 5 + 2 = 7
  write_snapshot(dir / "q", f, 0.0);
  std::ifstream in(dir / "q.bin", std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
  ASSERT_EQ(bytes.size(), 20u * 8u);
  // 1.0 = 0x3FF0000000000000, little-endian: last byte of the word is 0x3F.
  EXPECT_EQ(bytes[7 * 8 + 7], 0x3F);
  EXPECT_EQ(bytes[7 * 8 + 6], 0xF0);
  for (int b = 0; b < 6; ++b) EXPECT_EQ(bytes[7 * 8 + b], 0);
}

TEST(Snapshot, HeaderListsGeometry) {
  const fs::path dir = temp_dir("header");
  write_snapshot(dir / "s", ScalarField(make_grid(2.0, -1.5, 2.5, 6, 8), FieldRole::derived), 0.25);
  std::ifstream in(dir / "s.hdr");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string h = ss.str();
  for (const char* key : {"n_r = 6", "n_z = 8", "r_max = 2", "z_min = -1.5", "z_max = 2.5",
                          "role = derived", "time = 0.25"})
    EXPECT_NE(h.find(key), std::string::npos) << key;
}

TEST(Snapshot, TruncatedBinaryIsRejected) {
  const fs::path dir = temp_dir("truncated");
  write_snapshot(dir / "s", ScalarField(make_grid(1.0, 0.0, 1.0, 4, 4), FieldRole::derived), 0.0);
  fs::resize_file(dir / "s.bin", 8 * 15);
  EXPECT_THROW(read_snapshot(dir / "s"), std::runtime_error);
  EXPECT_THROW(read_snapshot(dir / "missing"), std::runtime_error);
}

TEST(Snapshot, StemStripsExtensions) {
  EXPECT_EQ(snapshot_stem("a/b/q_0001.hdr"), fs::path("a/b/q_0001"));
  EXPECT_EQ(snapshot_stem("a/b/q_0001.bin"), fs::path("a/b/q_0001"));
  EXPECT_EQ(snapshot_stem("a/b/q_0001"), fs::path("a/b/q_0001"));
}

TEST(Snapshot, AtomicWriteReplacesContents) {
  const fs::path dir = temp_dir("atomic");
  write_file_atomic(dir / "x.txt", "first");
  write_file_atomic(dir / "x.txt", "second");
  std::ifstream in(dir / "x.txt");
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "second");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1);
}
