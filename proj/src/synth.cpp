#include <numeric>
#include <utility>

#include "riffle/errors.hpp"
#include "riffle/synth.hpp"

namespace riffle {

namespace {

// ways[v][k][t] = number of k-subsets of {v,...,d-1} with sum t.
struct SubsetCounter {
  int d;
  int k_max;
  int t_max;
  std::vector<unsigned long long> table;

  SubsetCounter(int d_, int k_max_, int t_max_)
      : d(d_), k_max(k_max_), t_max(t_max_), table((d + 1) * (k_max + 1) * (t_max + 1), 0) {
    at(d, 0, 0) = 1;
    for (int v = d - 1; v >= 0; --v)
      for (int k = 0; k <= k_max; ++k)
        for (int t = 0; t <= t_max; ++t) {
          unsigned long long ways = at(v + 1, k, t);
          if (k > 0 && t >= v) ways += at(v + 1, k - 1, t - v);
          at(v, k, t) = ways;
        }
  }

  unsigned long long& at(int v, int k, int t) {
    return table[(static_cast<std::size_t>(v) * (k_max + 1) + k) * (t_max + 1) + t];
  }

  // Uniform k-subset of {0..d-1} with the given sum.
  std::vector<int> unrank(int k, int t, unsigned long long index) {
    std::vector<int> subset;
    int v = 0;
    while (k > 0) {
      unsigned long long with_v = (t >= v) ? at(v + 1, k - 1, t - v) : 0;
      if (index < with_v) {
        subset.push_back(v);
        t -= v;
        --k;
      } else {
        index -= with_v;
      }
      ++v;
    }
    return subset;
  }
};

}  // namespace

SyntheticProfile generate_synthetic(int d1, int d2, const std::vector<ClusterRequest>& clusters,
                                    std::uint64_t seed) {
  if (d1 < 1 || d2 < 1) throw InfeasibleAlpha("d1 and d2 must be at least 1");
  const int d = d1 + d2;
  const long long lattice = static_cast<long long>(d1) * d2 + 1;
  const int t_min = d1 * (d1 - 1) / 2;

  SyntheticProfile out;
  out.d1 = d1;
  out.d2 = d2;
  out.planted = clusters;
  for (int j = 0; j < d1; ++j) out.j1.push_back(j);

  SplitMix64 rng(seed);
  SubsetCounter counter(d, d1, d * (d - 1) / 2);
  std::vector<std::vector<int>> rows;
  long long next_id = 0;
  for (const auto& req : clusters) {
    if (req.alpha < 1 || req.alpha > lattice)
      throw InfeasibleAlpha("alpha " + std::to_string(req.alpha) + " outside 1.." +
                            std::to_string(lattice));
    if (req.size < 1) throw InfeasibleAlpha("cluster size must be positive");
    const int t_target = t_min + (req.alpha - 1);
    unsigned long long total = counter.at(0, d1, t_target);
    if (total == 0)
      throw InfeasibleAlpha("no score set of size " + std::to_string(d1) + " sums to " +
                            std::to_string(t_target));

    std::vector<long long> ids;
    for (long long v = 0; v < req.size; ++v) {
      std::vector<int> j1_scores = counter.unrank(d1, t_target, rng.below(total));
      std::vector<bool> used(d, false);
      for (int s : j1_scores) used[s] = true;
      std::vector<int> j2_scores;
      for (int s = 0; s < d; ++s)
        if (!used[s]) j2_scores.push_back(s);
      shuffle_in_place(j1_scores, rng);
      shuffle_in_place(j2_scores, rng);
      std::vector<int> row(d);
      for (int j = 0; j < d1; ++j) row[j] = j1_scores[j];
      for (int j = 0; j < d2; ++j) row[d1 + j] = j2_scores[j];
      rows.push_back(std::move(row));
      ids.push_back(next_id++);
    }
    out.planted_ids.push_back(std::move(ids));
  }
  out.profile = make_profile(std::move(rows), default_item_labels(d));
  return out;
}

std::vector<int> random_ballot_row(int d, SplitMix64& rng) {
  std::vector<int> row(d);
  std::iota(row.begin(), row.end(), 0);
  shuffle_in_place(row, rng);
  return row;
}

Profile random_profile(long long n, int d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<int>> rows;
  rows.reserve(n);
  for (long long i = 0; i < n; ++i) rows.push_back(random_ballot_row(d, rng));
  return make_profile(std::move(rows), default_item_labels(d));
}

}  // namespace riffle
