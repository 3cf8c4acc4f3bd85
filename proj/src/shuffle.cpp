#include <algorithm>
#include <map>
#include <unordered_set>

#include "riffle/errors.hpp"
#include "riffle/shuffle.hpp"

namespace riffle {

ShuffleType shuffle_type(const std::vector<int>& row, const std::vector<int>& j1, int d) {
  if (j1.empty() || static_cast<int>(j1.size()) >= d)
    throw OutOfRange("J1 must be a nonempty proper subset of the items");
  ShuffleType st;
  st.scores_j1.reserve(j1.size());
  for (int j : j1) {
    st.scores_j1.push_back(row[j]);
    st.T += row[j];
  }
  std::sort(st.scores_j1.begin(), st.scores_j1.end());
  const int d1 = static_cast<int>(j1.size());
  for (int s : st.scores_j1)
    if (s >= d1) st.crossed.push_back(s);
  return st;
}

ShuffleCensus shuffle_census(const Profile& p, const std::vector<long long>& voters,
                             const std::vector<int>& j1) {
  if (voters.empty()) throw EmptyProfile();
  std::unordered_set<long long> wanted(voters.begin(), voters.end());
  std::map<std::pair<long long, std::vector<int>>, long long> counts;
  ShuffleCensus census;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (!wanted.count(p.row_ids[i])) continue;
    ShuffleType st = shuffle_type(p.rows[i], j1, p.d());
    counts[{st.T, std::move(st.scores_j1)}] += 1;
    census.total += 1;
  }
  for (auto& [key, count] : counts)
    census.entries.push_back({key.second, key.first, count});
  return census;
}

MarginalsCensusReport marginals_census_check(const MarginalsTable& m, const ShuffleCensus& census,
                                             const std::vector<int>& j1) {
  const int d = static_cast<int>(m.counts.size());
  MarginalsCensusReport report;
  report.from_marginals.assign(d, 0);
  report.from_census.assign(d, 0);
  for (int s = 0; s < d; ++s)
    for (int j : j1) report.from_marginals[s] += m.counts[s][j];
  for (const auto& entry : census.entries)
    for (int s : entry.scores_j1) report.from_census[s] += entry.count;
  for (int s = 0; s < d; ++s) {
    if (report.from_marginals[s] != report.from_census[s]) {
      report.consistent = false;
      report.failing_score = s;
      break;
    }
  }
  return report;
}

}  // namespace riffle
