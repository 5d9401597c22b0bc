#include "doctest.h"
#include "kmclust/partition.hpp"
#include "kmclust/rng.hpp"

using namespace kmclust;

TEST_CASE("single machine hosts everything") {
  PartitionMap pm = random_partition(4, 1, 42);
  for (VertexId v = 0; v < 4; ++v) CHECK(pm.host[v] == 0);
  CHECK(pm.hosted[0].size() == 4);
}

TEST_CASE("assignment replays the seeded generator draw by draw") {
  PartitionMap pm = random_partition(1000, 10, 7);
  Rng replay = derive_rng(7, "partition");
  std::vector<int> counts(10, 0);
  for (VertexId v = 0; v < 1000; ++v) {
    MachineId m = static_cast<MachineId>(replay.below(10));
    CHECK(pm.host[v] == m);
    ++counts[m];
  }
  for (MachineId m = 0; m < 10; ++m)
    CHECK(static_cast<int>(pm.hosted[m].size()) == counts[m]);
}

TEST_CASE("two vertices on five machines leave at least three empty") {
  PartitionMap pm = random_partition(2, 5, 123);
  int empty = 0;
  for (const auto& h : pm.hosted)
    if (h.empty()) ++empty;
  CHECK(empty >= 3);
}

TEST_CASE("identical (n, k, seed) gives identical partitions") {
  for (std::uint64_t seed : {3u, 99u, 12345u}) {
    PartitionMap a = random_partition(200, 7, seed);
    PartitionMap b = random_partition(200, 7, seed);
    CHECK(a.host == b.host);
  }
  PartitionMap a = random_partition(200, 7, 1);
  PartitionMap b = random_partition(200, 7, 2);
  CHECK(a.host != b.host);
}

TEST_CASE("hosted sets partition the vertices") {
  PartitionMap pm = random_partition(77, 6, 5);
  std::vector<int> seen(77, 0);
  for (MachineId m = 0; m < pm.k; ++m)
    for (VertexId v : pm.hosted[m]) {
      CHECK(pm.host[v] == m);
      ++seen[v];
    }
  for (int s : seen) CHECK(s == 1);
}

TEST_CASE("invalid machine counts rejected") {
  CHECK_THROWS_AS(random_partition(5, 0, 1), std::invalid_argument);
}
