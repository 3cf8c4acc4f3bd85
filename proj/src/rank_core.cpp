#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "riffle/errors.hpp"
#include "riffle/profile.hpp"

namespace riffle {

namespace {

bool is_permutation_of_iota(const std::vector<int>& row) {
  std::vector<bool> seen(row.size(), false);
  for (int s : row) {
    if (s < 0 || s >= static_cast<int>(row.size()) || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

}  // namespace

Profile make_profile(std::vector<std::vector<int>> rows, std::vector<std::string> items,
                     std::vector<long long> row_ids) {
  if (rows.empty()) throw EmptyProfile();
  const int d = static_cast<int>(items.size());
  if (d < 2) throw InputError("need at least 2 items");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw InvalidBallot(static_cast<long long>(i), "wrong length");
    if (!is_permutation_of_iota(rows[i]))
      throw InvalidBallot(static_cast<long long>(i), "scores are not a permutation of 0..d-1");
  }
  if (row_ids.empty()) {
    row_ids.resize(rows.size());
    std::iota(row_ids.begin(), row_ids.end(), 0LL);
  } else if (row_ids.size() != rows.size()) {
    throw InputError("row_ids length does not match row count");
  }
  return Profile{std::move(items), std::move(rows), std::move(row_ids)};
}

Profile encode_profile(const std::vector<Preference>& prefs, std::vector<std::string> items) {
  if (prefs.empty()) throw EmptyProfile();
  const int d = static_cast<int>(items.size());
  std::vector<std::vector<int>> rows;
  for (std::size_t b = 0; b < prefs.size(); ++b) {
    const auto& pref = prefs[b];
    if (static_cast<int>(pref.ordering.size()) != d)
      throw InvalidBallot(static_cast<long long>(b), "ordering length differs from item count");
    if (pref.multiplicity < 1)
      throw InvalidBallot(static_cast<long long>(b), "multiplicity must be positive");
    std::vector<int> row(d, -1);
    for (int pos = 0; pos < d; ++pos) {
      int item = pref.ordering[pos];
      if (item < 0 || item >= d || row[item] != -1)
        throw InvalidBallot(static_cast<long long>(b), "ordering is not a permutation of the items");
      row[item] = d - 1 - pos;  // the j-th most preferred item scores d-j
    }
    for (long long c = 0; c < pref.multiplicity; ++c) rows.push_back(row);
  }
  return make_profile(std::move(rows), std::move(items));
}

std::vector<std::vector<int>> decode_orderings(const Profile& p) {
  std::vector<std::vector<int>> out;
  out.reserve(p.rows.size());
  const int d = p.d();
  for (const auto& row : p.rows) {
    std::vector<int> ordering(d);
    for (int j = 0; j < d; ++j) ordering[d - 1 - row[j]] = j;
    out.push_back(std::move(ordering));
  }
  return out;
}

Profile subset(const Profile& p, const std::vector<long long>& ids) {
  std::unordered_set<long long> wanted(ids.begin(), ids.end());
  std::vector<std::vector<int>> rows;
  std::vector<long long> kept;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (wanted.count(p.row_ids[i])) {
      rows.push_back(p.rows[i]);
      kept.push_back(p.row_ids[i]);
    }
  }
  if (rows.empty()) throw EmptyProfile();
  return Profile{p.items, std::move(rows), std::move(kept)};
}

std::vector<std::vector<int>> reverse_scores(const Profile& p) {
  const int d = p.d();
  auto rev = p.rows;
  for (auto& row : rev)
    for (auto& s : row) s = d - 1 - s;
  return rev;
}

NegaTable reverse_and_nega(const Profile& p) {
  const int d = p.d();
  const long long n = p.n();
  std::vector<long long> nega(d, 0);
  for (const auto& row : p.rows)
    for (int j = 0; j < d; ++j) nega[j] += d - 1 - row[j];
  return NegaTable{p, std::move(nega), n * d * (d - 1)};
}

BordaScale borda_scale(const Profile& p) {
  const int d = p.d();
  const long long n = p.n();
  std::vector<long long> colsum(d, 0);
  for (const auto& row : p.rows)
    for (int j = 0; j < d; ++j) colsum[j] += row[j];

  BordaScale scale;
  scale.beta.reserve(d);
  scale.stderrs.assign(d, 0.0);
  for (int j = 0; j < d; ++j) scale.beta.emplace_back(colsum[j], n);
  if (n > 1) {
    for (int j = 0; j < d; ++j) {
      // sum of squared deviations, exact: n * sum(r^2) - (sum r)^2 over n
      long long sumsq = 0;
      for (const auto& row : p.rows) sumsq += static_cast<long long>(row[j]) * row[j];
      Rat ss = Rat(sumsq) - Rat(colsum[j]) * Rat(colsum[j], n);
      Rat var = ss / (n - 1);
      scale.stderrs[j] = std::sqrt(to_double(var) / static_cast<double>(n));
    }
  }
  return scale;
}

MarginalsTable first_order_marginals(const Profile& p) {
  const int d = p.d();
  MarginalsTable m;
  m.counts.assign(d, std::vector<long long>(d, 0));
  for (const auto& row : p.rows)
    for (int j = 0; j < d; ++j) m.counts[row[j]][j] += 1;
  return m;
}

std::vector<Rat> borda_scale_from_marginals(const MarginalsTable& m, long long n) {
  const int d = static_cast<int>(m.counts.size());
  std::vector<Rat> beta(d);
  for (int j = 0; j < d; ++j) {
    long long acc = 0;
    for (int s = 0; s < d; ++s) acc += static_cast<long long>(s) * m.counts[s][j];
    beta[j] = Rat(acc, n);
  }
  return beta;
}

std::string ordering_string(const Profile& p, std::size_t row) {
  const int d = p.d();
  bool single = true;
  for (const auto& label : p.items) single = single && label.size() == 1;
  std::vector<int> ordering(d);
  for (int j = 0; j < d; ++j) ordering[d - 1 - p.rows[row][j]] = j;
  std::string out;
  for (int pos = 0; pos < d; ++pos) {
    if (!single && pos > 0) out += "-";
    out += p.items[ordering[pos]];
  }
  return out;
}

std::vector<std::string> default_item_labels(int d) {
  std::vector<std::string> items(d);
  for (int j = 0; j < d; ++j) {
    if (d <= 26)
      items[j] = std::string(1, static_cast<char>('a' + j));
    else
      items[j] = "x" + std::to_string(j);
  }
  return items;
}

}  // namespace riffle
