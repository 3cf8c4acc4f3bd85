#include <algorithm>

#include "doctest.h"

#include "riffle/errors.hpp"
#include "riffle/report.hpp"
#include "riffle/synth.hpp"
#include "test_support.hpp"

using namespace riffle;
using namespace riffle::testing;

TEST_CASE("toy report shows exact cluster fractions") {
  ReportBundle b = analyze(toy_profile());
  std::string text = render_report(b, ReportStyle::kText);
  CHECK(text.find("2/3") != std::string::npos);
  CHECK(text.find("cohG(1)") != std::string::npos);
  CHECK(text.find("J1 = {C}") != std::string::npos);
  std::string md = render_report(b, ReportStyle::kMarkdown);
  CHECK(md.find("## cohG(1)") != std::string::npos);
}

TEST_CASE("empty noisy group is reported as zero voters") {
  SyntheticProfile synth = generate_synthetic(2, 3, {{1, 25}}, 2);
  ReportBundle b = analyze(synth.profile);
  std::string text = render_report(b, ReportStyle::kText);
  CHECK(text.find("noisyG: 0 voters") != std::string::npos);
}

TEST_CASE("report names noisy voters by original id") {
  PeelOptions opts;
  opts.max_iters = 1;
  ReportBundle b = analyze(toy_profile(), opts);
  std::string text = render_report(b, ReportStyle::kText);
  CHECK(text.find("ids: 1, 3") != std::string::npos);
}

TEST_CASE("svg maps are deterministic byte for byte") {
  SyntheticProfile synth = generate_synthetic(2, 3, {{1, 12}, {2, 9}}, 6);
  ReportBundle b = analyze(synth.profile);
  std::string one = render_svg_map(b, MapKind::kVoters);
  ReportBundle b2 = analyze(synth.profile);
  std::string two = render_svg_map(b2, MapKind::kVoters);
  CHECK(one == two);
  CHECK(one.find("<svg") != std::string::npos);
  CHECK(one.find("voters (f1, f2)") != std::string::npos);
  std::string items = render_svg_map(b, MapKind::kItems);
  CHECK(items.find("items (g1, g2)") != std::string::npos);
}

TEST_CASE("a coherent cluster plots on a single first-axis column") {
  SyntheticProfile synth = generate_synthetic(3, 4, {{2, 20}}, 14);
  ReportBundle b = analyze(synth.profile);
  REQUIRE(b.voters_map.available);
  for (const auto& marker : b.voters_map.markers)
    CHECK(marker.x == b.voters_map.markers.front().x);
}

TEST_CASE("identical ballots collapse to one labeled marker") {
  Profile p = encode_profile({{{2, 0, 1}, 162}, {{0, 1, 2}, 1}}, {"C", "A", "E"});
  ReportBundle b = analyze(p);
  REQUIRE(b.voters_map.available);
  bool found = false;
  for (const auto& marker : b.voters_map.markers)
    if (marker.count == 162) {
      found = true;
      CHECK(marker.label == "ECA");  // ordering string: E > C > A
    }
  CHECK(found);
  std::string svg = render_svg_map(b, MapKind::kVoters);
  CHECK(svg.find("162") != std::string::npos);
}

TEST_CASE("two items cannot give a second axis") {
  Profile p = encode_profile({{{0, 1}, 2}, {{1, 0}, 3}}, {"A", "B"});
  ReportBundle b = analyze(p);
  CHECK_FALSE(b.voters_map.available);
  CHECK_THROWS_AS(render_svg_map(b, MapKind::kVoters), MissingAxis);
}
