#include "doctest.h"

#include "riffle/coherence.hpp"
#include "riffle/errors.hpp"
#include "riffle/synth.hpp"
#include "test_support.hpp"

using namespace riffle;
using namespace riffle::testing;

TEST_CASE("cluster lattice bounds") {
  LatticeBounds b = lattice_bounds(4, 6);
  CHECK(b.max_clusters == 25);
  CHECK(b.f_max == Rat(48, 90));
  CHECK(b.f_min == Rat(-48, 90));
  CHECK(b.gap == Rat(4, 90));
  CHECK((b.f_max - b.f_min) / b.gap == Rat(24));

  LatticeBounds tiny = lattice_bounds(1, 1);
  CHECK(tiny.max_clusters == 2);
  CHECK(tiny.f_max == 1);
  CHECK(tiny.gap == 2);

  LatticeBounds square = lattice_bounds(5, 5);
  CHECK(square.max_clusters == 26);
  CHECK(square.f_max == Rat(50, 90));
}

TEST_CASE("toy partition on the first axis") {
  Profile p = toy_profile();
  TcaAxis axis = toy_first_axis();
  ClusterPartition part = partition_by_first_axis(p, axis);
  CHECK(part.j1 == std::vector<int>{0});  // item C
  CHECK(part.j2 == std::vector<int>{1, 2});
  REQUIRE(part.clusters.size() == 2);
  CHECK(part.clusters[0].alpha == 1);
  CHECK(part.clusters[0].voter_ids == std::vector<long long>{0, 2});
  CHECK(part.clusters[0].f1_numerator == 4);
  CHECK(part.clusters[1].alpha == 2);
  CHECK(part.clusters[1].voter_ids == std::vector<long long>{1, 3});
  CHECK(part.clusters[1].f1_numerator == 0);
}

TEST_CASE("identical ballots collapse to the top cluster") {
  Profile p = encode_profile({{{0, 2, 4, 1, 3}, 5}}, default_item_labels(5));
  TcaAxis axis = first_axis_enumerate(residual_of(p));
  ClusterPartition part = partition_by_first_axis(p, axis);
  REQUIRE(part.clusters.size() == 1);
  CHECK(part.clusters[0].alpha == 1);
  CHECK(Rat(part.clusters[0].f1_numerator, 20) == part.bounds.f_max);
}

TEST_CASE("cluster lattice law and T correspondence on random profiles") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SplitMix64 init(seed * 131 + 17);
    int d = 3 + static_cast<int>(init.next() % 6);
    long long n = 10 + static_cast<long long>(init.next() % 91);
    Profile p = random_profile(n, d, seed + 6000);
    TcaAxis axis = first_axis_enumerate(residual_of(p));
    ClusterPartition part = partition_by_first_axis(p, axis);  // throws OffLattice on violation

    const long long d1 = part.bounds.d1;
    const long long top = 2LL * d1 * part.bounds.d2;
    long long seen = 0;
    for (const auto& cluster : part.clusters) {
      CHECK(cluster.f1_numerator <= top);
      CHECK(cluster.f1_numerator >= -top);
      CHECK(cluster.f1_numerator == top - 4 * (cluster.alpha - 1));
      for (long long id : cluster.voter_ids) {
        long long T = 0;
        for (std::size_t i = 0; i < p.rows.size(); ++i)
          if (p.row_ids[i] == id)
            for (int j : part.j1) T += p.rows[i][j];
        CHECK(cluster.alpha == T - d1 * (d1 - 1) / 2 + 1);
      }
      seen += static_cast<long long>(cluster.voter_ids.size());
    }
    CHECK(seen == n);
  }
}

TEST_CASE("toy cluster coherency verdicts") {
  Profile p = toy_profile();
  ClusterPartition part = partition_by_first_axis(p, toy_first_axis());

  CoherencyVerdict top = coherency_test(p, part, 1);
  CHECK(top.coherent);
  CHECK(top.sub_delta == Rat(2, 3));
  CHECK(top.sub_f_nega == Rat(-2, 3));
  CHECK(top.theoretical_f == Rat(2, 3));
  CHECK_FALSE(top.witness.has_value());

  CoherencyVerdict second = coherency_test(p, part, 2);
  CHECK_FALSE(second.coherent);
  CHECK(second.theoretical_f == 0);
  CHECK(second.witness.has_value());

  CHECK_THROWS_AS(coherency_test(p, part, 3), EmptyCluster);
}

TEST_CASE("dispersion dominates the nega score on any subprofile") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Profile p = random_profile(8, 5, seed + 7000);
    TcaAxis axis = first_axis_enumerate(residual_of(p));
    Rat abs_nega = axis.f_nega() < 0 ? Rat(-axis.f_nega()) : axis.f_nega();
    CHECK(axis.delta >= abs_nega);
  }
}

TEST_CASE("coherent clusters require positive parent scores") {
  SyntheticProfile synth = generate_synthetic(2, 3, {{1, 12}, {2, 12}, {3, 12}}, 42);
  const Profile& p = synth.profile;
  TcaAxis axis = first_axis_enumerate(residual_of(p));
  ClusterPartition part = partition_by_first_axis(p, axis);
  for (const auto& cluster : part.clusters) {
    CoherencyVerdict verdict = coherency_test(p, part, cluster.alpha);
    if (verdict.coherent) CHECK(cluster.f1_numerator > 0);
  }
}

TEST_CASE("generated clusters are coherent; an off-T voter breaks them") {
  struct Config {
    int d1, d2, alpha;
  };
  for (Config cfg : {Config{1, 2, 1}, Config{2, 3, 2}, Config{4, 6, 3}, Config{5, 5, 4}}) {
    SyntheticProfile synth =
        generate_synthetic(cfg.d1, cfg.d2, {{cfg.alpha, 20}}, 100 + cfg.alpha);
    const Profile& p = synth.profile;
    CoherencyVerdict verdict = test_subprofile(p, cfg.alpha, cfg.d1, cfg.d2);
    CHECK(verdict.coherent);
    CHECK(verdict.sub_delta == verdict.theoretical_f);

    // One extra voter whose T differs by one flips the verdict.
    SyntheticProfile extra =
        generate_synthetic(cfg.d1, cfg.d2, {{cfg.alpha + 1, 1}}, 999);
    auto rows = p.rows;
    rows.push_back(extra.profile.rows[0]);
    Profile tainted = make_profile(std::move(rows), p.items);
    CoherencyVerdict broken = test_subprofile(tainted, cfg.alpha, cfg.d1, cfg.d2);
    CHECK_FALSE(broken.coherent);
    CHECK(broken.witness.has_value());
  }
}

TEST_CASE("crossing index values") {
  CHECK(crossing_index(Rat(48, 90), 4, 6, 10) == 0);
  for (int alpha = 1; alpha <= 7; ++alpha) {
    Rat delta(48 - 4 * (alpha - 1), 90);
    CHECK(crossing_index(delta, 4, 6, 10) == Rat(alpha - 1, 12));
  }
  // The incoherent-cluster arithmetic: delta = 0.2354 under a (5,5) split.
  Rat cross = crossing_index(Rat(2354, 10000), 5, 5, 10);
  CHECK(cross == Rat(288140, 500000));
  CHECK(to_double(cross) == doctest::Approx(0.5763).epsilon(1e-4));
  CHECK_THROWS_AS(crossing_index(Rat(49, 90), 4, 6, 10), OutOfRange);
  CHECK_THROWS_AS(crossing_index(Rat(-1, 90), 4, 6, 10), OutOfRange);
}
