#include <gtest/gtest.h>

#include <sstream>

#include "dfo/generators.hpp"
#include "dfo/snapshot.hpp"
#include "dfo/verifier.hpp"
#include "fixtures.hpp"

using namespace dfo;

namespace {

std::string bytes_of(const Oracle& o) {
  std::ostringstream out(std::ios::binary);
  save_snapshot(out, o);
  return out.str();
}

std::unique_ptr<Oracle> load_bytes(const std::string& b) {
  std::istringstream in(b, std::ios::binary);
  return load_snapshot(in);
}

}  // namespace

TEST(Snapshot, RoundTripAnswersIdentically) {
  Graph g = make_gnp(14, 0.25, 3);
  auto o = dfo::testing::build(g, 3);
  auto back = load_bytes(bytes_of(*o));
  EXPECT_EQ(back->registry().size(), o->registry().size());
  EXPECT_EQ(back->graph().perturbation, o->graph().perturbation);
  EXPECT_EQ(back->config().seed, o->config().seed);

  VerifyLimits lim;
  VerificationReport a = verify_exhaustive(*o, lim);
  VerificationReport b = verify_exhaustive(*back, lim);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(b.matches, b.queries);
}

TEST(Snapshot, ByteIdenticalAcrossBuilds) {
  Graph g = make_gnp(16, 0.2, 5);
  const std::string a = bytes_of(*dfo::testing::build(g, 9));
  const std::string b = bytes_of(*dfo::testing::build(g, 9));
  EXPECT_EQ(a, b);
  // Saving a loaded snapshot reproduces it.
  EXPECT_EQ(bytes_of(*load_bytes(a)), a);
}

TEST(Snapshot, CorruptionIsRejected) {
  const std::string good = bytes_of(*dfo::testing::build(dfo::testing::c5()));
  EXPECT_THROW(load_bytes(""), SnapshotError);
  EXPECT_THROW(load_bytes(good.substr(0, good.size() / 2)), SnapshotError);
  EXPECT_THROW(load_bytes(good + "x"), SnapshotError);

  std::string magic = good;
  magic[0] = 'X';
  EXPECT_THROW(load_bytes(magic), SnapshotError);

  for (std::size_t pos : {std::size_t{20}, good.size() / 2, good.size() - 12}) {
    std::string flipped = good;
    flipped[pos] = static_cast<char>(flipped[pos] ^ 0x10);
    EXPECT_THROW(load_bytes(flipped), SnapshotError) << pos;
  }
}

TEST(Snapshot, FileRoundTrip) {
  const std::string path = ::testing::TempDir() + "/dfo_snapshot_test.bin";
  auto o = dfo::testing::build(dfo::testing::k4());
  save_snapshot_file(path, *o);
  auto back = load_snapshot_file(path);
  EXPECT_EQ(back->query(0, 1, FaultSet{0, 1}).distance, 2);
  EXPECT_THROW(load_snapshot_file(path + ".missing"), SnapshotError);
}
