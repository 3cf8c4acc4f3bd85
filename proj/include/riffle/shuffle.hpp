#pragma once

#include <vector>

#include "riffle/profile.hpp"

namespace riffle {

// How one ballot riffles the item blocks: the sorted scores it gives to
// the block J1, their sum T, and the scores that crossed over from the
// other block (those outside {0,...,d1-1}).
struct ShuffleType {
  std::vector<int> scores_j1;
  long long T = 0;
  std::vector<int> crossed;
};

ShuffleType shuffle_type(const std::vector<int>& row, const std::vector<int>& j1, int d);

// Voters grouped by their J1 score set, ordered by (T, lexicographic set).
struct ShuffleCensus {
  struct Entry {
    std::vector<int> scores_j1;
    long long T = 0;
    long long count = 0;
  };
  std::vector<Entry> entries;
  int cluster_alpha = 0;  // 0 when not attached to a cluster
  long long total = 0;
};

ShuffleCensus shuffle_census(const Profile& p, const std::vector<long long>& voters,
                             const std::vector<int>& j1);

// The identity behind reading a census off the marginals table: for every
// score s, the number of voters whose J1 set contains s must equal
// sum_{j in J1} M(s, j).
struct MarginalsCensusReport {
  bool consistent = true;
  int failing_score = -1;
  std::vector<long long> from_marginals;
  std::vector<long long> from_census;
};

MarginalsCensusReport marginals_census_check(const MarginalsTable& m, const ShuffleCensus& census,
                                             const std::vector<int>& j1);

}  // namespace riffle
