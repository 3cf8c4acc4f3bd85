#include <algorithm>
#include <map>

#include "riffle/coherence.hpp"
#include "riffle/errors.hpp"

namespace riffle {

LatticeBounds lattice_bounds(int d1, int d2) {
  if (d1 < 1 || d2 < 1) throw OutOfRange("d1 and d2 must be at least 1");
  const int d = d1 + d2;
  LatticeBounds b;
  b.d1 = d1;
  b.d2 = d2;
  b.max_clusters = static_cast<long long>(d1) * d2 + 1;
  b.f_max = Rat(2LL * d1 * d2, static_cast<long long>(d) * (d - 1));
  b.f_min = -b.f_max;
  b.gap = Rat(4, static_cast<long long>(d) * (d - 1));
  return b;
}

const VoterCluster* ClusterPartition::find(int alpha) const {
  for (const auto& c : clusters)
    if (c.alpha == alpha) return &c;
  return nullptr;
}

ClusterPartition partition_by_first_axis(const Profile& p, const TcaAxis& axis) {
  const int d = p.d();
  ClusterPartition part;
  for (int j = 0; j < d; ++j) {
    if (axis.u[j] < 0)
      part.j1.push_back(j);
    else
      part.j2.push_back(j);
  }
  const int d1 = static_cast<int>(part.j1.size());
  const int d2 = static_cast<int>(part.j2.size());
  if (d1 == 0 || d2 == 0) throw OffLattice("first axis did not split the items");
  part.bounds = lattice_bounds(d1, d2);

  const Int top = Int(2) * d1 * d2;  // numerator of f_max over d(d-1)
  std::vector<Int> nums = axis.voter_f_numerators(d);
  std::map<int, VoterCluster> by_alpha;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    Int offset = top - nums[i];
    if (offset < 0 || offset % 4 != 0)
      throw OffLattice("voter score numerator off the cluster lattice");
    Int alpha_big = offset / 4 + 1;
    if (alpha_big > part.bounds.max_clusters)
      throw OffLattice("cluster index exceeds d1*d2+1");
    int alpha = alpha_big.convert_to<int>();
    auto& cluster = by_alpha[alpha];
    cluster.alpha = alpha;
    cluster.f1_numerator = nums[i].convert_to<long long>();
    cluster.voter_ids.push_back(p.row_ids[i]);
  }
  for (auto& [alpha, cluster] : by_alpha) part.clusters.push_back(std::move(cluster));
  return part;
}

CoherencyVerdict test_subprofile(const Profile& sub, int alpha, int d1, int d2,
                                 const TcaOptions& opts) {
  if (alpha < 1) throw OutOfRange("alpha must be at least 1");
  const int d = sub.d();
  CoherencyVerdict verdict;
  verdict.alpha = alpha;
  verdict.theoretical_f =
      Rat(2LL * d1 * d2 - 4LL * (alpha - 1), static_cast<long long>(d) * (d - 1));

  NegaTable nt = reverse_and_nega(sub);
  CorrespondenceMatrix cm = build_correspondence(nt);
  ResidualMatrix rm = residual(cm);
  TcaAxis axis = first_axis_enumerate(rm, opts);

  verdict.sub_delta = axis.delta;
  verdict.sub_f_nega = axis.f_nega();
  for (int j = 0; j < d; ++j) (axis.u[j] < 0 ? verdict.sub_d1 : verdict.sub_d2)++;

  bool all_equal = true;
  for (std::size_t i = 0; i + 1 < axis.f.size(); ++i) {
    if (axis.f[i] != verdict.theoretical_f) {
      all_equal = false;
      verdict.witness = sub.row_ids[i];
      break;
    }
  }
  Rat abs_nega = verdict.sub_f_nega < 0 ? Rat(-verdict.sub_f_nega) : verdict.sub_f_nega;
  verdict.coherent =
      all_equal && verdict.sub_delta == abs_nega && abs_nega == verdict.theoretical_f;
  return verdict;
}

CoherencyVerdict coherency_test(const Profile& p, const ClusterPartition& part, int alpha,
                                const TcaOptions& opts) {
  const VoterCluster* cluster = part.find(alpha);
  if (cluster == nullptr || cluster->voter_ids.empty()) throw EmptyCluster(alpha);
  return test_subprofile(subset(p, cluster->voter_ids), alpha, part.bounds.d1, part.bounds.d2,
                         opts);
}

Rat crossing_index(const Rat& delta1, int d1, int d2, int d) {
  Rat max_delta(2LL * d1 * d2, static_cast<long long>(d) * (d - 1));
  if (delta1 < 0 || delta1 > max_delta)
    throw OutOfRange("delta1 outside [0, 2*d1*d2/(d(d-1))]");
  return Rat(1) - delta1 / max_delta;
}

}  // namespace riffle
