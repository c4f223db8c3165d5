#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "repocorpus/parallel.hpp"

using namespace repocorpus;

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (std::size_t workers : {1u, 2u, 8u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, ZeroCount) {
  bool called = false;
  parallel_for(0, 4, [&](std::size_t) { called = true; });
  EXPECT_FALSE(called);
}

TEST(ParallelFor, PropagatesException) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 37) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}
