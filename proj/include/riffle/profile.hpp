#pragma once

#include <string>
#include <vector>

#include "riffle/numeric.hpp"

namespace riffle {

// One ballot: a linear ordering of all d items, most preferred first,
// possibly repeated `multiplicity` times.
struct Preference {
  std::vector<int> ordering;
  long long multiplicity = 1;
};

// A voting profile: n ballots Borda-coded as rows of scores. Row i gives
// item j the score d-1-k when item j sits at position k of ballot i, so
// every row is a permutation of {0,...,d-1}.
struct Profile {
  std::vector<std::string> items;
  std::vector<std::vector<int>> rows;
  std::vector<long long> row_ids;  // stable voter ids, survive subsetting

  int d() const { return static_cast<int>(items.size()); }
  long long n() const { return static_cast<long long>(rows.size()); }
};

// The profile plus the nega row (column sums of the reverse scores) that
// anchors the negative pole of the first axis.
struct NegaTable {
  Profile profile;
  std::vector<long long> nega;
  long long t = 0;  // grand total n*d*(d-1)
};

// counts[s][j] = number of voters giving item j the Borda score s.
// Every row and column sums to n.
struct MarginalsTable {
  std::vector<std::vector<long long>> counts;
};

// Per-item mean Borda score (exact) and its standard error
// (sample standard deviation / sqrt(n); 0 when n == 1).
struct BordaScale {
  std::vector<Rat> beta;
  std::vector<double> stderrs;
};

// Validates rows and fills default row ids 0..n-1.
Profile make_profile(std::vector<std::vector<int>> rows, std::vector<std::string> items,
                     std::vector<long long> row_ids = {});

Profile encode_profile(const std::vector<Preference>& prefs, std::vector<std::string> items);

// Inverse of encode_profile: per-row item indices, most preferred first.
std::vector<std::vector<int>> decode_orderings(const Profile& p);

// Rows whose id is in `ids`, in original row order; items unchanged.
Profile subset(const Profile& p, const std::vector<long long>& ids);

std::vector<std::vector<int>> reverse_scores(const Profile& p);

NegaTable reverse_and_nega(const Profile& p);

BordaScale borda_scale(const Profile& p);

MarginalsTable first_order_marginals(const Profile& p);

// Borda scale recomputed from the marginals table, sum_s s*M(s,j)/n.
std::vector<Rat> borda_scale_from_marginals(const MarginalsTable& m, long long n);

// Ordering string for display, e.g. "CAEBD" for single-letter labels.
std::string ordering_string(const Profile& p, std::size_t row);

std::vector<std::string> default_item_labels(int d);

}  // namespace riffle
