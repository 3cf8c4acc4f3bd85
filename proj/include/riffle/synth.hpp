#pragma once

#include <cstdint>
#include <vector>

#include "riffle/profile.hpp"

namespace riffle {

struct ClusterRequest {
  int alpha = 1;
  long long size = 0;
};

struct SyntheticProfile {
  Profile profile;
  std::vector<int> j1;  // planted block: the first d1 items
  int d1 = 0;
  int d2 = 0;
  std::vector<ClusterRequest> planted;
  std::vector<std::vector<long long>> planted_ids;  // voter ids per request
};

// Plants one coherent cluster per request: each voter's J1 score set is a
// uniformly chosen d1-subset of {0..d-1} summing to T = alpha-1 + d1(d1-1)/2,
// with within-block orderings uniform. Deterministic in the seed.
// Throws InfeasibleAlpha when alpha is outside 1..d1*d2+1.
SyntheticProfile generate_synthetic(int d1, int d2, const std::vector<ClusterRequest>& clusters,
                                    std::uint64_t seed);

// n uniform random ballots on d items.
Profile random_profile(long long n, int d, std::uint64_t seed);

// One uniform random ballot appended as extra rows; used for noise voters.
std::vector<int> random_ballot_row(int d, SplitMix64& rng);

}  // namespace riffle
