#pragma once

#include <string>
#include <utility>
#include <vector>

#include "riffle/coherence.hpp"
#include "riffle/numeric.hpp"
#include "riffle/profile.hpp"
#include "riffle/shuffle.hpp"
#include "riffle/tca.hpp"

namespace riffle {

struct GroupCluster {
  int alpha = 0;
  std::vector<long long> voter_ids;
  Rat delta1;
  Rat cross;
  long long T = 0;
  ShuffleCensus census;
  MarginalsTable marginals;

  long long size() const { return static_cast<long long>(voter_ids.size()); }
};

// A maximal prefix of coherent clusters extracted in one peeling pass.
// delta1 and cross are the size-weighted averages of the cluster values.
struct CoherentGroup {
  int index = 0;
  std::vector<GroupCluster> clusters;
  std::vector<int> j1;
  std::vector<int> j2;
  BordaScale beta;
  Rat delta1;
  Rat cross;
  long long size = 0;

  std::vector<long long> voter_ids() const;
};

struct ClusterCandidate {
  int alpha = 0;
  long long size = 0;
  bool coherent = false;
  Rat sub_delta;
  Rat theoretical_f;
};

struct PeelIteration {
  int iteration = 0;
  long long profile_size = 0;
  int d1 = 0;
  int d2 = 0;
  Rat delta1;
  long long tie_count = 1;  // >1 means the axis tie-break had to choose
  std::vector<ClusterCandidate> candidates;
  bool retained = false;
  std::string stop_reason;
};

struct PeelResult {
  std::vector<CoherentGroup> groups;
  std::vector<long long> noisy;
  std::vector<PeelIteration> trace;
};

struct PeelOptions {
  Rat min_group_frac = Rat(1, 100);
  int max_iters = 20;
  EngineChoice engine = EngineChoice::kAuto;
  TcaOptions tca;
  RestartPolicy restarts;
};

// One peeling pass: first-axis TCA, cluster lattice, coherency tests in
// increasing alpha over the nonempty clusters, group = the maximal prefix
// of coherent ones. Throws NoCoherentPrefix when the very first cluster
// fails, in which case the caller routes the profile to the noisy pool.
std::pair<CoherentGroup, Profile> extract_coherent_group(const Profile& p,
                                                         const PeelOptions& opts = {},
                                                         PeelIteration* trace = nullptr);

// Repeats extraction until a group falls under min_group_frac of the
// original sample (that group and the rest become the noisy group), the
// remainder empties, no coherent prefix exists, or max_iters passes.
PeelResult peel(const Profile& p, const PeelOptions& opts = {});

// Per-group report data: items in descending Borda order, bucket ranking
// from overlapping 95% intervals, g1 as the affine map of the scale.
struct GroupSummary {
  int group_index = 0;
  long long size = 0;
  double percent = 0.0;
  std::vector<int> item_order;            // item indices, beta descending
  std::vector<std::vector<int>> buckets;  // bucket ranking over item indices
  std::vector<Rat> g1;                    // 2*beta/(d-1) - 1 per item
};

GroupSummary group_summary(const CoherentGroup& g, const Profile& parent, long long total_n);

}  // namespace riffle
