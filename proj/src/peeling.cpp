#include <algorithm>
#include <unordered_set>

#include "riffle/errors.hpp"
#include "riffle/peeling.hpp"

namespace riffle {

std::vector<long long> CoherentGroup::voter_ids() const {
  std::vector<long long> ids;
  for (const auto& c : clusters) ids.insert(ids.end(), c.voter_ids.begin(), c.voter_ids.end());
  return ids;
}

std::pair<CoherentGroup, Profile> extract_coherent_group(const Profile& p, const PeelOptions& opts,
                                                         PeelIteration* trace) {
  NegaTable nt = reverse_and_nega(p);
  CorrespondenceMatrix cm = build_correspondence(nt);
  ResidualMatrix rm = residual(cm);
  TcaAxis axis = first_axis(rm, opts.engine, opts.tca, opts.restarts);
  ClusterPartition part = partition_by_first_axis(p, axis);

  if (trace != nullptr) {
    trace->profile_size = p.n();
    trace->d1 = part.bounds.d1;
    trace->d2 = part.bounds.d2;
    trace->delta1 = axis.delta;
    trace->tie_count = axis.tie_count;
  }

  CoherentGroup group;
  group.j1 = part.j1;
  group.j2 = part.j2;
  const int d = p.d();
  const long long d1 = part.bounds.d1;

  // Maximal prefix over the nonempty clusters in increasing alpha; the
  // first incoherent one ends the group.
  for (const auto& cluster : part.clusters) {
    Profile sub = subset(p, cluster.voter_ids);
    CoherencyVerdict verdict =
        test_subprofile(sub, cluster.alpha, part.bounds.d1, part.bounds.d2, opts.tca);
    if (trace != nullptr)
      trace->candidates.push_back({cluster.alpha, static_cast<long long>(cluster.voter_ids.size()),
                                   verdict.coherent, verdict.sub_delta, verdict.theoretical_f});
    if (!verdict.coherent) break;

    GroupCluster gc;
    gc.alpha = cluster.alpha;
    gc.voter_ids = cluster.voter_ids;
    gc.delta1 = verdict.sub_delta;
    gc.cross = crossing_index(verdict.sub_delta, part.bounds.d1, part.bounds.d2, d);
    gc.T = d1 * (d1 - 1) / 2 + (cluster.alpha - 1);
    gc.census = shuffle_census(p, cluster.voter_ids, part.j1);
    gc.census.cluster_alpha = cluster.alpha;
    gc.marginals = first_order_marginals(sub);
    group.size += gc.size();
    group.clusters.push_back(std::move(gc));
  }
  if (group.clusters.empty()) throw NoCoherentPrefix();

  // Group statistics are the size-weighted averages of the
  // cluster values; the Borda scale over the union realizes 2a.
  group.delta1 = Rat(0);
  group.cross = Rat(0);
  for (const auto& gc : group.clusters) {
    Rat weight(gc.size(), group.size);
    group.delta1 += weight * gc.delta1;
    group.cross += weight * gc.cross;
  }
  std::vector<long long> member_ids = group.voter_ids();
  group.beta = borda_scale(subset(p, member_ids));

  std::unordered_set<long long> taken(member_ids.begin(), member_ids.end());
  std::vector<long long> rest;
  for (long long id : p.row_ids)
    if (!taken.count(id)) rest.push_back(id);

  Profile remainder;
  if (!rest.empty()) remainder = subset(p, rest);
  remainder.items = p.items;
  return {std::move(group), std::move(remainder)};
}

PeelResult peel(const Profile& p, const PeelOptions& opts) {
  PeelResult result;
  const long long n0 = p.n();
  Profile remaining = p;
  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    if (remaining.n() == 0) break;
    PeelIteration record;
    record.iteration = iter;
    CoherentGroup group;
    Profile remainder;
    try {
      std::tie(group, remainder) = extract_coherent_group(remaining, opts, &record);
    } catch (const NoCoherentPrefix&) {
      record.profile_size = remaining.n();
      record.stop_reason = "no coherent prefix; remainder becomes the noisy group";
      result.trace.push_back(std::move(record));
      result.noisy.insert(result.noisy.end(), remaining.row_ids.begin(), remaining.row_ids.end());
      return result;
    }

    if (Rat(group.size) < opts.min_group_frac * n0) {
      record.retained = false;
      record.stop_reason = "group below the minimum fraction; lumped into the noisy group";
      result.trace.push_back(std::move(record));
      auto ids = group.voter_ids();
      result.noisy.insert(result.noisy.end(), ids.begin(), ids.end());
      result.noisy.insert(result.noisy.end(), remainder.row_ids.begin(), remainder.row_ids.end());
      return result;
    }

    group.index = static_cast<int>(result.groups.size()) + 1;
    record.retained = true;
    result.trace.push_back(std::move(record));
    result.groups.push_back(std::move(group));
    remaining = std::move(remainder);
  }
  if (remaining.n() > 0) {
    PeelIteration record;
    record.iteration = static_cast<int>(result.trace.size()) + 1;
    record.profile_size = remaining.n();
    record.stop_reason = "max iterations reached; remainder becomes the noisy group";
    result.trace.push_back(std::move(record));
    result.noisy.insert(result.noisy.end(), remaining.row_ids.begin(), remaining.row_ids.end());
  }
  return result;
}

GroupSummary group_summary(const CoherentGroup& g, const Profile& parent, long long total_n) {
  const int d = parent.d();
  GroupSummary s;
  s.group_index = g.index;
  s.size = g.size;
  s.percent = 100.0 * static_cast<double>(g.size) / static_cast<double>(total_n);

  s.item_order.resize(d);
  for (int j = 0; j < d; ++j) s.item_order[j] = j;
  std::sort(s.item_order.begin(), s.item_order.end(), [&](int a, int b) {
    if (g.beta.beta[a] != g.beta.beta[b]) return g.beta.beta[a] > g.beta.beta[b];
    return a < b;
  });

  s.g1.resize(d);
  for (int j = 0; j < d; ++j) s.g1[j] = Rat(2) * g.beta.beta[j] / (d - 1) - 1;

  // Bucket ranking: merge items whose 95% intervals overlap, transitively
  // (connected components of the interval overlap graph).
  std::vector<double> lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    double center = to_double(g.beta.beta[j]);
    lo[j] = center - 1.96 * g.beta.stderrs[j];
    hi[j] = center + 1.96 * g.beta.stderrs[j];
  }
  std::vector<int> root(d);
  for (int j = 0; j < d; ++j) root[j] = j;
  auto find = [&](int j) {
    while (root[j] != j) j = root[j] = root[root[j]];
    return j;
  };
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (hi[a] >= lo[b] && hi[b] >= lo[a]) root[find(a)] = find(b);
  for (int pos = 0; pos < d; ++pos) {
    int j = s.item_order[pos];
    if (pos > 0 && find(j) == find(s.buckets.back().front()))
      s.buckets.back().push_back(j);
    else
      s.buckets.push_back({j});
  }
  return s;
}

}  // namespace riffle
