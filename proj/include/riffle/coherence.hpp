#pragma once

#include <optional>
#include <vector>

#include "riffle/numeric.hpp"
#include "riffle/profile.hpp"
#include "riffle/tca.hpp"

namespace riffle {

// Bounds on the first-axis voter scores for an item split of sizes d1, d2:
// at most d1*d2+1 distinct values, extremes +-2*d1*d2/(d(d-1)), adjacent
// values 4/(d(d-1)) apart.
struct LatticeBounds {
  int d1 = 0;
  int d2 = 0;
  long long max_clusters = 0;
  Rat f_max;
  Rat f_min;
  Rat gap;
};

LatticeBounds lattice_bounds(int d1, int d2);

struct VoterCluster {
  int alpha = 0;
  std::vector<long long> voter_ids;
  long long f1_numerator = 0;  // over d(d-1)
};

// The lattice of voter clusters on the first axis. Empty clusters are
// omitted; alpha indices are preserved. j1 holds the items with u = -1.
struct ClusterPartition {
  std::vector<int> j1;
  std::vector<int> j2;
  LatticeBounds bounds;
  std::vector<VoterCluster> clusters;  // nonempty, ascending alpha

  const VoterCluster* find(int alpha) const;
};

// Assigns every voter to its cluster via the exact f1 numerator
// 2*d1*d2 - 4*(alpha-1). Throws OffLattice if a numerator falls off the
// lattice, which would signal an implementation fault rather than data.
ClusterPartition partition_by_first_axis(const Profile& p, const TcaAxis& axis);

struct CoherencyVerdict {
  int alpha = 0;
  bool coherent = false;
  Rat sub_delta;        // first dispersion of the subprofile
  Rat sub_f_nega;       // nega row score of the subprofile
  Rat theoretical_f;    // lattice value under the parent's (d1, d2)
  std::optional<long long> witness;  // first voter off the theoretical value
  int sub_d1 = 0;       // subprofile's own optimal split, for diagnostics
  int sub_d2 = 0;
};

// Full TCA (enumeration) of an arbitrary claimed cluster: coherent iff all
// voters' own-subprofile f1 scores are equal, delta1 = |f1(nega)|, and the
// common value equals the lattice value for alpha under the parent's
// (d1, d2). All comparisons exact.
CoherencyVerdict test_subprofile(const Profile& sub, int alpha, int d1, int d2,
                                 const TcaOptions& opts = {});

// Same test applied to cluster alpha of a partition. Throws EmptyCluster.
CoherencyVerdict coherency_test(const Profile& p, const ClusterPartition& part, int alpha,
                                const TcaOptions& opts = {});

// Cross = 1 - delta1 / (2*d1*d2 / (d(d-1))). Throws OutOfRange when delta1
// is negative or exceeds the theoretical maximum.
Rat crossing_index(const Rat& delta1, int d1, int d2, int d);

}  // namespace riffle
