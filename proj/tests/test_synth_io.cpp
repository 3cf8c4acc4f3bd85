#include <sstream>

#include "doctest.h"

#include "riffle/errors.hpp"
#include "riffle/io.hpp"
#include "riffle/peeling.hpp"
#include "riffle/synth.hpp"
#include "test_support.hpp"

using namespace riffle;
using namespace riffle::testing;

TEST_CASE("two planted voters reproduce the hand-worked sub-cluster") {
  SyntheticProfile synth = generate_synthetic(1, 2, {{1, 2}}, 1);
  CHECK(synth.profile.n() == 2);
  CoherencyVerdict verdict = test_subprofile(synth.profile, 1, 1, 2);
  CHECK(verdict.coherent);
  CHECK(verdict.sub_delta == Rat(2, 3));
}

TEST_CASE("planted voters honour the requested T") {
  SyntheticProfile synth = generate_synthetic(4, 6, {{5, 30}}, 9);
  for (const auto& row : synth.profile.rows) {
    long long T = 0;
    for (int j : synth.j1) T += row[j];
    CHECK(T == 6 + 4);  // d1(d1-1)/2 + alpha - 1
  }
}

TEST_CASE("infeasible cluster requests are rejected") {
  CHECK_THROWS_AS(generate_synthetic(4, 6, {{0, 5}}, 1), InfeasibleAlpha);
  CHECK_THROWS_AS(generate_synthetic(4, 6, {{26, 5}}, 1), InfeasibleAlpha);
  CHECK_THROWS_AS(generate_synthetic(4, 6, {{1, 0}}, 1), InfeasibleAlpha);
}

TEST_CASE("generation is deterministic in the seed") {
  SyntheticProfile a = generate_synthetic(3, 5, {{2, 12}, {4, 7}}, 123);
  SyntheticProfile b = generate_synthetic(3, 5, {{2, 12}, {4, 7}}, 123);
  SyntheticProfile c = generate_synthetic(3, 5, {{2, 12}, {4, 7}}, 124);
  CHECK(a.profile.rows == b.profile.rows);
  CHECK(a.profile.rows != c.profile.rows);
}

TEST_CASE("order-lines parsing with counts and comments") {
  std::istringstream in(
      "# toy ballots\n"
      "10 3 1 0 2\n"
      "2 0 1 3   # exactly d tokens: a plain ordering, not a count\n"
      "3 3 1 2 0\n");
  Profile p = parse_order_lines(in);
  CHECK(p.d() == 4);
  CHECK(p.n() == 10 + 1 + 3);
  CHECK(p.items == std::vector<std::string>{"j1", "j2", "j3", "j4"});
  CHECK(p.rows[10] == std::vector<int>{2, 1, 3, 0});
  CHECK(p.rows[11] == std::vector<int>{0, 2, 1, 3});
  CHECK(p.rows[11] == p.rows[13]);
}

TEST_CASE("order-lines tolerates the sushi3 dialect") {
  std::istringstream in(
      "5000\n"
      "0 10 0 1 2 3 4 5 6 7 8 9\n"
      "1 10 9 8 7 6 5 4 3 2 1 0\n");
  Profile p = parse_order_lines(in);
  CHECK(p.d() == 10);
  CHECK(p.n() == 2);
  CHECK(p.rows[0] == std::vector<int>{9, 8, 7, 6, 5, 4, 3, 2, 1, 0});
  CHECK(p.rows[1] == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("order-lines errors carry line numbers") {
  std::istringstream dup("0 1 2\n1 1 2\n");
  CHECK_THROWS_WITH_AS(parse_order_lines(dup), doctest::Contains("line 2"), NonPermutationRow);

  std::istringstream wrong_d("0 1 2\n0 1\n");
  CHECK_THROWS_AS(parse_order_lines(wrong_d), DimensionMismatch);

  std::istringstream junk("0 1 x\n");
  CHECK_THROWS_AS(parse_order_lines(junk), ParseError);

  std::istringstream empty("# nothing here\n");
  CHECK_THROWS_AS(parse_order_lines(empty), EmptyProfile);
}

TEST_CASE("csv-borda parses and validates") {
  std::istringstream in("C,B,A\n0,1,2\n1,0,2\n");
  Profile p = parse_csv(in, DatasetFormat::kCsvBorda);
  CHECK(p.items == std::vector<std::string>{"C", "B", "A"});
  CHECK(p.rows == std::vector<std::vector<int>>{{0, 1, 2}, {1, 0, 2}});

  std::istringstream bad("C,B,A\n0,1,1\n");
  CHECK_THROWS_AS(parse_csv(bad, DatasetFormat::kCsvBorda), NonPermutationRow);
}

TEST_CASE("csv-rankings converts rank positions to scores") {
  // Rank 1 = most preferred, so item with rank 1 scores d-1.
  std::istringstream in("x,y,z\n1,2,3\n3,1,2\n");
  Profile p = parse_csv(in, DatasetFormat::kCsvRankings);
  CHECK(p.rows == std::vector<std::vector<int>>{{2, 1, 0}, {0, 2, 1}});

  std::istringstream zero_based("x,y,z\n0,1,2\n2,0,1\n");
  Profile q = parse_csv(zero_based, DatasetFormat::kCsvRankings);
  CHECK(q.rows == p.rows);

  std::istringstream mixed("x,y,z\n1,2,3\n0,1,2\n");
  CHECK_THROWS_AS(parse_csv(mixed, DatasetFormat::kCsvRankings), NonPermutationRow);
}

TEST_CASE("csv-borda round-trips through write and reparse") {
  SyntheticProfile synth = generate_synthetic(2, 3, {{1, 8}, {2, 5}}, 55);
  std::string text = write_csv_borda(synth.profile);
  std::istringstream in(text);
  Profile back = parse_csv(in, DatasetFormat::kCsvBorda);
  CHECK(back.items == synth.profile.items);
  CHECK(back.rows == synth.profile.rows);
  CHECK(back.row_ids == synth.profile.row_ids);
}

TEST_CASE("planted structure is recovered by the full pipeline") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SplitMix64 init(seed * 7919 + 1);
    int d1 = 2 + static_cast<int>(init.next() % 3);
    int d2 = d1 + static_cast<int>(init.next() % 3);
    // Clusters stay within the half-crossing band (Cross <= 50%), the range
    // in which a planted partition remains the optimal one.
    int max_alpha = d1 * d2 / 4 + 1;
    int count = std::min(2 + static_cast<int>(init.next() % 3), max_alpha);
    std::vector<ClusterRequest> requests;
    for (int k = 0; k < count; ++k)
      requests.push_back({k + 1, 10 + static_cast<long long>(init.next() % 30)});
    SyntheticProfile synth = generate_synthetic(d1, d2, requests, seed + 900);

    PeelResult result = peel(synth.profile);
    REQUIRE(result.groups.size() == 1);
    const CoherentGroup& g = result.groups[0];
    REQUIRE(g.clusters.size() == requests.size());
    for (std::size_t k = 0; k < requests.size(); ++k) {
      CHECK(g.clusters[k].alpha == requests[k].alpha);
      CHECK(g.clusters[k].size() == requests[k].size);
      auto ids = g.clusters[k].voter_ids;
      std::sort(ids.begin(), ids.end());
      CHECK(ids == synth.planted_ids[k]);
    }
    CHECK(result.noisy.empty());
  }
}
