#include <map>
#include <sstream>
#include <utility>

#include "riffle/errors.hpp"
#include "riffle/report.hpp"

namespace riffle {

namespace {

std::string percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", x);
  return buf;
}

std::string fraction_and_decimal(const Rat& x) {
  return format_fraction(x) + " (" + format_decimal(x, 4) + ")";
}

std::string item_set(const Profile& p, const std::vector<int>& items) {
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ", ";
    out += p.items[items[k]];
  }
  return out + "}";
}

std::string score_set(const std::vector<int>& scores) {
  std::string out = "{";
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(scores[k]);
  }
  return out + "}";
}

std::string id_list(const std::vector<long long>& ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(ids[k]);
  }
  return out;
}

MapData build_voters_map(const Profile& p, const std::vector<TcaAxis>& axes) {
  MapData map;
  if (axes.size() < 2) {
    map.note = "second axis unavailable (rank bound below 2)";
    return map;
  }
  map.available = true;
  std::map<std::pair<Rat, Rat>, std::vector<std::size_t>> bins;
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    bins[{axes[0].f[i], axes[1].f[i]}].push_back(i);
  for (const auto& [coords, members] : bins) {
    bool uniform = true;
    for (std::size_t m : members) uniform = uniform && p.rows[m] == p.rows[members.front()];
    MapMarker marker;
    marker.x = coords.first;
    marker.y = coords.second;
    marker.count = static_cast<long long>(members.size());
    marker.label = uniform ? ordering_string(p, members.front()) : "mixed";
    map.markers.push_back(std::move(marker));
  }
  return map;
}

MapData build_items_map(const Profile& p, const std::vector<TcaAxis>& axes) {
  MapData map;
  if (axes.size() < 2) {
    map.note = "second axis unavailable (rank bound below 2)";
    return map;
  }
  map.available = true;
  for (int j = 0; j < p.d(); ++j)
    map.markers.push_back({axes[0].g[j], axes[1].g[j], p.items[j], 1});
  return map;
}

}  // namespace

ReportBundle analyze(const Profile& p, const PeelOptions& opts) {
  ReportBundle b;
  b.profile = p;
  b.peel = peel(p, opts);
  for (const auto& g : b.peel.groups) b.summaries.push_back(group_summary(g, p, p.n()));

  NegaTable nt = reverse_and_nega(p);
  CorrespondenceMatrix cm = build_correspondence(nt);
  std::vector<TcaAxis> axes =
      leading_axes(cm, 2, opts.tca, opts.engine, opts.restarts);
  b.voters_map = build_voters_map(p, axes);
  b.items_map = build_items_map(p, axes);
  return b;
}

std::string render_report(const ReportBundle& b, ReportStyle style) {
  const Profile& p = b.profile;
  const bool md = style == ReportStyle::kMarkdown;
  std::ostringstream os;
  auto heading = [&](const std::string& text) {
    if (md)
      os << "## " << text << "\n\n";
    else
      os << text << "\n" << std::string(text.size(), '-') << "\n";
  };

  if (md) os << "# ";
  os << "Coherent-group analysis\n";
  if (!md) os << std::string(23, '=') << "\n";
  os << "\n";
  os << "Profile: n=" << p.n() << " voters, d=" << p.d() << " items ";
  std::vector<int> all_items(p.d());
  for (int j = 0; j < p.d(); ++j) all_items[j] = j;
  os << item_set(p, all_items) << "\n";
  os << "Retained groups: " << b.peel.groups.size() << "; noisy voters: " << b.peel.noisy.size()
     << "\n\n";

  for (std::size_t gi = 0; gi < b.peel.groups.size(); ++gi) {
    const CoherentGroup& g = b.peel.groups[gi];
    const GroupSummary& s = b.summaries[gi];
    heading("cohG(" + std::to_string(g.index) + ")");
    os << "size " << g.size << " (" << percent(s.percent) << "), " << g.clusters.size()
       << " coherent cluster(s)\n";
    os << "delta1 = " << fraction_and_decimal(g.delta1) << "\n";
    os << "Cross(cohG(" << g.index << ")) = " << percent(100.0 * to_double(g.cross)) << "\n";
    os << "J1 = " << item_set(p, g.j1) << "; J2 = " << item_set(p, g.j2) << "\n\n";

    os << "Borda scale (best first):\n";
    for (int j : s.item_order) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "  %-24s %8s +- %.3f\n", p.items[j].c_str(),
                    format_decimal(g.beta.beta[j], 2).c_str(), g.beta.stderrs[j]);
      os << buf;
    }
    os << "Bucket ranking: ";
    for (std::size_t bi = 0; bi < s.buckets.size(); ++bi) {
      if (bi > 0) os << " ≻ ";  // succeeds-sign between buckets
      if (s.buckets[bi].size() == 1) {
        os << p.items[s.buckets[bi][0]];
      } else {
        os << item_set(p, s.buckets[bi]);
      }
    }
    os << "\n\n";

    os << "Clusters:\n";
    os << "  alpha  size  delta1            T  Cross\n";
    for (const auto& c : g.clusters) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "  %-6d %-5lld %-16s %-2lld %s\n", c.alpha,
                    static_cast<long long>(c.size()), fraction_and_decimal(c.delta1).c_str(), c.T,
                    fraction_and_decimal(c.cross).c_str());
      os << buf;
    }
    os << "Shuffle census (scores given to J1):\n";
    for (const auto& c : g.clusters) {
      for (const auto& e : c.census.entries) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "  alpha %-3d %-20s T=%-3lld count %lld\n", c.alpha,
                      score_set(e.scores_j1).c_str(), e.T, e.count);
        os << buf;
      }
    }
    os << "\n";
  }

  heading("noisyG");
  os << "noisyG: " << b.peel.noisy.size() << " voters";
  if (p.n() > 0)
    os << " (" << percent(100.0 * static_cast<double>(b.peel.noisy.size()) /
                          static_cast<double>(p.n()))
       << ")";
  os << "\n";
  if (!b.peel.noisy.empty()) os << "ids: " << id_list(b.peel.noisy) << "\n";
  os << "\n";

  heading("Trace");
  for (const auto& it : b.peel.trace) {
    os << "iteration " << it.iteration << ": n=" << it.profile_size;
    if (it.d1 > 0) {
      os << ", split d1=" << it.d1 << " d2=" << it.d2
         << ", delta1 = " << fraction_and_decimal(it.delta1);
      if (it.tie_count > 1)
        os << "  [tie-break applied among " << it.tie_count << " maximizing sign patterns]";
    }
    os << "\n";
    for (const auto& c : it.candidates) {
      os << "  alpha " << c.alpha << ": size " << c.size << ", "
         << (c.coherent ? "coherent" : "incoherent") << ", delta1 = "
         << fraction_and_decimal(c.sub_delta)
         << ", theoretical = " << fraction_and_decimal(c.theoretical_f) << "\n";
    }
    if (!it.stop_reason.empty()) os << "  stop: " << it.stop_reason << "\n";
  }
  return os.str();
}

}  // namespace riffle
