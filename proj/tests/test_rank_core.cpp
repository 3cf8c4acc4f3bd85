#include "doctest.h"

#include "riffle/errors.hpp"
#include "riffle/profile.hpp"
#include "riffle/synth.hpp"
#include "test_support.hpp"

using namespace riffle;
using riffle::testing::toy_profile;

TEST_CASE("toy profile encodes Borda scores") {
  Profile p = toy_profile();
  CHECK(p.items == std::vector<std::string>{"C", "B", "A"});
  CHECK(p.rows == std::vector<std::vector<int>>{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {1, 2, 0}});
}

TEST_CASE("smallest profile: single ballot on two items") {
  Profile p = encode_profile({{{0, 1}, 1}}, {"A", "B"});
  CHECK(p.rows == std::vector<std::vector<int>>{{1, 0}});
}

TEST_CASE("encode rejects bad ballots") {
  CHECK_THROWS_AS(encode_profile({{{0, 0, 2}, 1}}, {"a", "b", "c"}), InvalidBallot);
  CHECK_THROWS_AS(encode_profile({{{0, 1, 3}, 1}}, {"a", "b", "c"}), InvalidBallot);
  CHECK_THROWS_AS(encode_profile({}, {"a", "b"}), EmptyProfile);
  CHECK_THROWS_AS(encode_profile({{{0, 1}, 0}}, {"a", "b"}), InvalidBallot);
}

TEST_CASE("multiplicity expands to repeated rows") {
  Profile p = encode_profile({{{1, 0}, 3}}, {"a", "b"});
  CHECK(p.n() == 3);
  for (const auto& row : p.rows) CHECK(row == std::vector<int>{0, 1});
}

TEST_CASE("reverse scores and nega row of the toy profile") {
  Profile p = toy_profile();
  NegaTable nt = reverse_and_nega(p);
  CHECK(nt.nega == std::vector<long long>{6, 3, 3});
  CHECK(nt.t == 4 * 3 * 2);
  auto rev = reverse_scores(p);
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    for (int j = 0; j < p.d(); ++j) CHECK(p.rows[i][j] + rev[i][j] == p.d() - 1);
}

TEST_CASE("single-ballot nega is the reversed row") {
  Profile p = encode_profile({{{2, 0, 1, 3}, 1}}, default_item_labels(4));
  NegaTable nt = reverse_and_nega(p);
  for (int j = 0; j < 4; ++j) CHECK(nt.nega[j] == 3 - p.rows[0][j]);
}

TEST_CASE("toy Borda scale") {
  BordaScale scale = borda_scale(toy_profile());
  CHECK(scale.beta == std::vector<Rat>{Rat(1, 2), Rat(5, 4), Rat(5, 4)});
}

TEST_CASE("identical ballots have zero standard error") {
  Profile p = encode_profile({{{0, 2, 1}, 5}}, {"a", "b", "c"});
  BordaScale scale = borda_scale(p);
  for (int j = 0; j < 3; ++j) {
    CHECK(scale.beta[j] == Rat(p.rows[0][j]));
    CHECK(scale.stderrs[j] == 0.0);
  }
}

TEST_CASE("toy first-order marginals") {
  MarginalsTable m = first_order_marginals(toy_profile());
  CHECK(m.counts == std::vector<std::vector<long long>>{{2, 1, 1}, {2, 1, 1}, {0, 2, 2}});
}

TEST_CASE("single ballot yields a permutation matrix") {
  Profile p = encode_profile({{{1, 2, 0}, 1}}, {"a", "b", "c"});
  MarginalsTable m = first_order_marginals(p);
  for (int s = 0; s < 3; ++s) {
    long long row = 0, col = 0;
    for (int j = 0; j < 3; ++j) {
      row += m.counts[s][j];
      col += m.counts[j][s];
    }
    CHECK(row == 1);
    CHECK(col == 1);
  }
}

TEST_CASE("random profiles satisfy the score identities") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitMix64 init(seed * 977 + 3);
    int d = 2 + static_cast<int>(init.next() % 9);
    long long n = 1 + static_cast<long long>(init.next() % 200);
    Profile p = random_profile(n, d, seed);
    (void)n;

    long long row_target = static_cast<long long>(d) * (d - 1) / 2;
    for (const auto& row : p.rows) {
      long long sum = 0;
      for (int s : row) sum += s;
      CHECK(sum == row_target);
    }

    NegaTable nt = reverse_and_nega(p);
    long long nega_total = 0;
    for (long long v : nt.nega) nega_total += v;
    CHECK(nega_total == p.n() * d * (d - 1) / 2);

    MarginalsTable m = first_order_marginals(p);
    for (int s = 0; s < d; ++s) {
      long long rowsum = 0, colsum = 0;
      for (int j = 0; j < d; ++j) {
        rowsum += m.counts[s][j];
        colsum += m.counts[j][s];
      }
      CHECK(rowsum == p.n());
      CHECK(colsum == p.n());
    }

    BordaScale scale = borda_scale(p);
    CHECK(borda_scale_from_marginals(m, p.n()) == scale.beta);

    Rat beta_sum(0);
    for (const auto& b : scale.beta) beta_sum += b;
    CHECK(beta_sum == Rat(static_cast<long long>(d) * (d - 1) / 2));
  }
}

TEST_CASE("encode then decode round-trips orderings") {
  std::vector<Preference> prefs = {{{3, 0, 2, 1}, 1}, {{1, 3, 0, 2}, 1}};
  Profile p = encode_profile(prefs, default_item_labels(4));
  auto orderings = decode_orderings(p);
  CHECK(orderings[0] == prefs[0].ordering);
  CHECK(orderings[1] == prefs[1].ordering);
}

TEST_CASE("subset keeps ids and row order") {
  Profile p = toy_profile();
  Profile sub = subset(p, {3, 1});
  CHECK(sub.row_ids == std::vector<long long>{1, 3});
  CHECK(sub.rows == std::vector<std::vector<int>>{{1, 0, 2}, {1, 2, 0}});
  CHECK_THROWS_AS(subset(p, {99}), EmptyProfile);
}
