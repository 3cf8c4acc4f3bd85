#pragma once

#include <string>
#include <vector>

#include "riffle/peeling.hpp"
#include "riffle/profile.hpp"

namespace riffle {

struct MapMarker {
  Rat x;
  Rat y;
  std::string label;
  long long count = 1;
};

struct MapData {
  bool available = false;
  std::string note;
  std::vector<MapMarker> markers;
};

// Everything a rendering needs: the peel, per-group summaries, per-cluster
// tables, and the (f1,f2)/(g1,g2) map coordinates of the analyzed profile.
struct ReportBundle {
  Profile profile;
  PeelResult peel;
  std::vector<GroupSummary> summaries;
  MapData voters_map;  // (f1, f2); identical coordinates collapse to one marker
  MapData items_map;   // (g1, g2)
};

ReportBundle analyze(const Profile& p, const PeelOptions& opts = {});

enum class ReportStyle { kText, kMarkdown };

std::string render_report(const ReportBundle& b, ReportStyle style);

enum class MapKind { kVoters, kItems };

// Deterministic SVG 1.1 scatter of the requested map; throws MissingAxis
// when the second axis does not exist (rank bound < 2).
std::string render_svg_map(const ReportBundle& b, MapKind which);

}  // namespace riffle
