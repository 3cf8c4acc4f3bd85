// riffle: coherent-group analysis of rank data.
//
//   riffle analyze FILE   full peel into coherent groups plus report
//   riffle tca FILE       first taxicab axis only
//   riffle census FILE    riffle-shuffle census of a voter subset
//   riffle synth          synthetic profile generator
//   riffle map FILE       SVG map of voters or items
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riffle/coherence.hpp"
#include "riffle/errors.hpp"
#include "riffle/io.hpp"
#include "riffle/peeling.hpp"
#include "riffle/report.hpp"
#include "riffle/synth.hpp"

namespace {

using namespace riffle;

Rat rat_from_string(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(Int(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  int places = static_cast<int>(text.size() - dot - 1);
  Int den = 1;
  for (int k = 0; k < places; ++k) den *= 10;
  return Rat(Int(digits), den);
}

std::vector<long long> parse_id_list(const std::string& spec) {
  std::vector<long long> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    if (auto dash = part.find('-'); dash != std::string::npos && dash > 0) {
      long long lo = std::stoll(part.substr(0, dash));
      long long hi = std::stoll(part.substr(dash + 1));
      for (long long v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(std::stoll(part));
    }
  }
  return out;
}

std::vector<int> parse_item_list(const std::string& spec, const Profile& p) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    bool matched = false;
    for (int j = 0; j < p.d(); ++j)
      if (p.items[j] == part) {
        out.push_back(j);
        matched = true;
        break;
      }
    if (!matched) {
      try {
        int j = std::stoi(part);
        if (j < 0 || j >= p.d()) throw InputError("item index " + part + " out of range");
        out.push_back(j);
      } catch (const std::invalid_argument&) {
        throw InputError("unknown item '" + part + "'");
      }
    }
  }
  return out;
}

struct CommonFlags {
  std::string format = "auto";
  std::string engine = "auto";
  int restarts = 64;
  std::uint64_t seed = kDefaultSeed;
  int enum_limit = 24;

  PeelOptions peel_options() const {
    PeelOptions opts;
    opts.engine = engine == "enumerate"  ? EngineChoice::kEnumerate
                  : engine == "ascent"   ? EngineChoice::kAscent
                                         : EngineChoice::kAuto;
    opts.tca.enumeration_limit = enum_limit;
    opts.restarts.max_row_seeds = restarts;
    opts.restarts.seed = seed;
    return opts;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "input format")
      ->check(CLI::IsMember({"auto", "order-lines", "csv-rankings", "csv-borda"}));
  cmd->add_option("--engine", flags.engine, "axis engine (auto = enumerate when d fits)")
      ->check(CLI::IsMember({"auto", "enumerate", "ascent"}));
  cmd->add_option("--restarts", flags.restarts, "row seeds for the ascent engine");
  cmd->add_option("--seed", flags.seed, "seed for ascent restarts");
  cmd->add_option("--enum-limit", flags.enum_limit, "max d for complete enumeration");
}

Profile load(const std::string& path, const CommonFlags& flags) {
  return parse_dataset({path, format_from_name(flags.format)});
}

std::string set_string(const Profile& p, const std::vector<int>& items) {
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ", ";
    out += p.items[items[k]];
  }
  return out + "}";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
}

int cmd_analyze(const std::string& file, const CommonFlags& flags, const std::string& frac,
                int max_iters, const std::string& style, const std::string& out_dir) {
  Profile p = load(file, flags);
  PeelOptions opts = flags.peel_options();
  opts.min_group_frac = rat_from_string(frac);
  opts.max_iters = max_iters;
  ReportBundle bundle = analyze(p, opts);
  ReportStyle report_style = style == "markdown" ? ReportStyle::kMarkdown : ReportStyle::kText;
  std::string report = render_report(bundle, report_style);
  if (out_dir.empty()) {
    std::cout << report;
  } else {
    std::filesystem::create_directories(out_dir);
    std::filesystem::path dir(out_dir);
    write_file(dir / (style == "markdown" ? "report.md" : "report.txt"), report);
    if (bundle.voters_map.available) {
      write_file(dir / "voters.svg", render_svg_map(bundle, MapKind::kVoters));
      write_file(dir / "items.svg", render_svg_map(bundle, MapKind::kItems));
    }
    std::cout << "wrote " << out_dir << "\n";
  }
  return 0;
}

int cmd_tca(const std::string& file, const CommonFlags& flags) {
  Profile p = load(file, flags);
  PeelOptions opts = flags.peel_options();
  NegaTable nt = reverse_and_nega(p);
  CorrespondenceMatrix cm = build_correspondence(nt);
  ResidualMatrix rm = residual(cm);
  TcaAxis axis = first_axis(rm, opts.engine, opts.tca, opts.restarts);
  ClusterPartition part = partition_by_first_axis(p, axis);

  std::cout << "n = " << p.n() << ", d = " << p.d() << ", t = " << nt.t
            << ", rank bound = " << cm.rank_bound << "\n";
  std::cout << "delta1 = " << format_fraction(axis.delta) << " ("
            << format_decimal(axis.delta, 4) << ")\n";
  std::cout << "method = " << (axis.method == TcaMethod::kEnumerate ? "enumerate" : "ascent");
  if (axis.method == TcaMethod::kAscent) std::cout << ", restarts = " << axis.restarts_used;
  if (axis.tie_count > 1) std::cout << ", ties at max = " << axis.tie_count;
  std::cout << "\n";
  std::cout << "J1 = " << set_string(p, part.j1) << " (d1 = " << part.bounds.d1 << ")\n";
  std::cout << "J2 = " << set_string(p, part.j2) << " (d2 = " << part.bounds.d2 << ")\n";
  std::cout << "f1 range " << format_fraction(part.bounds.f_min) << " .. "
            << format_fraction(part.bounds.f_max) << ", gap " << format_fraction(part.bounds.gap)
            << ", lattice size " << part.bounds.max_clusters << "\n";
  std::cout << "clusters (alpha, f1, size):\n";
  const long long dd = static_cast<long long>(p.d()) * (p.d() - 1);
  for (const auto& c : part.clusters)
    std::cout << "  " << c.alpha << "  " << c.f1_numerator << "/" << dd << "  "
              << c.voter_ids.size() << "\n";
  std::cout << "item scores g1:\n";
  for (int j = 0; j < p.d(); ++j)
    std::cout << "  " << p.items[j] << "  " << format_fraction(axis.g[j]) << " ("
              << format_decimal(axis.g[j], 4) << ")\n";
  return 0;
}

int cmd_census(const std::string& file, const CommonFlags& flags, const std::string& voters_spec,
               const std::string& j1_spec) {
  Profile p = load(file, flags);
  std::vector<long long> voters = voters_spec.empty() ? p.row_ids : parse_id_list(voters_spec);
  Profile sub = subset(p, voters);

  std::vector<int> j1;
  if (j1_spec.empty()) {
    PeelOptions opts = flags.peel_options();
    TcaAxis axis = first_axis(residual(build_correspondence(reverse_and_nega(sub))), opts.engine,
                              opts.tca, opts.restarts);
    j1 = partition_by_first_axis(sub, axis).j1;
    std::cout << "J1 (from first axis) = " << set_string(p, j1) << "\n";
  } else {
    j1 = parse_item_list(j1_spec, p);
    std::cout << "J1 = " << set_string(p, j1) << "\n";
  }

  ShuffleCensus census = shuffle_census(p, voters, j1);
  std::cout << "voters: " << census.total << "\n";
  std::cout << "scores given to J1   T   count\n";
  for (const auto& e : census.entries) {
    std::string scores = "{";
    for (std::size_t k = 0; k < e.scores_j1.size(); ++k) {
      if (k > 0) scores += ",";
      scores += std::to_string(e.scores_j1[k]);
    }
    scores += "}";
    std::cout << "  " << scores << "  " << e.T << "  " << e.count << "\n";
  }
  MarginalsCensusReport report = marginals_census_check(first_order_marginals(sub), census, j1);
  if (report.consistent) {
    std::cout << "marginals check: consistent\n";
  } else {
    std::cout << "marginals check: INCONSISTENT at score " << report.failing_score << "\n";
    return 2;
  }
  return 0;
}

int cmd_synth(int d1, int d2, const std::string& clusters_spec, double noise_frac,
              std::uint64_t seed, const std::string& out_path) {
  std::vector<ClusterRequest> requests;
  std::stringstream ss(clusters_spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string::npos)
      throw InputError("cluster spec entries look like alpha:size, got '" + part + "'");
    requests.push_back({std::stoi(part.substr(0, colon)), std::stoll(part.substr(colon + 1))});
  }
  if (requests.empty()) throw InputError("no clusters requested");

  SyntheticProfile synth = generate_synthetic(d1, d2, requests, seed);
  auto rows = synth.profile.rows;
  if (noise_frac > 0) {
    auto count = static_cast<long long>(noise_frac * static_cast<double>(rows.size()) + 0.5);
    SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (long long k = 0; k < count; ++k) rows.push_back(random_ballot_row(d1 + d2, rng));
  }
  Profile p = make_profile(std::move(rows), synth.profile.items);
  std::string csv = write_csv_borda(p);
  if (out_path.empty() || out_path == "-")
    std::cout << csv;
  else
    write_file(out_path, csv);
  return 0;
}

int cmd_map(const std::string& file, const CommonFlags& flags, const std::string& which,
            const std::string& out_path) {
  Profile p = load(file, flags);
  ReportBundle bundle = analyze(p, flags.peel_options());
  std::string svg = render_svg_map(bundle, which == "items" ? MapKind::kItems : MapKind::kVoters);
  if (out_path.empty() || out_path == "-")
    std::cout << svg;
  else
    write_file(out_path, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent-group analysis of rank data by taxicab correspondence analysis"};
  app.require_subcommand(1);

  std::string file, frac = "0.01", style = "text", out_dir, voters_spec, j1_spec;
  std::string which = "voters", clusters_spec, out_path;
  int max_iters = 20, d1 = 0, d2 = 0;
  double noise_frac = 0.0;
  CommonFlags flags;
  std::uint64_t synth_seed = 1;

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "peel into coherent groups and report");
  analyze_cmd->add_option("file", file, "dataset path")->required();
  add_common(analyze_cmd, flags);
  analyze_cmd->add_option("--min-group-frac", frac,
                          "smallest retained group, fraction of n (decimal or a/b)");
  analyze_cmd->add_option("--max-iters", max_iters, "peeling iteration cap");
  analyze_cmd->add_option("--style", style, "report style")
      ->check(CLI::IsMember({"text", "markdown"}));
  analyze_cmd->add_option("--out-dir", out_dir, "write report and maps here instead of stdout");

  CLI::App* tca_cmd = app.add_subcommand("tca", "first taxicab axis of the nega-coded table");
  tca_cmd->add_option("file", file, "dataset path")->required();
  add_common(tca_cmd, flags);

  CLI::App* census_cmd = app.add_subcommand("census", "riffle-shuffle census of a voter subset");
  census_cmd->add_option("file", file, "dataset path")->required();
  add_common(census_cmd, flags);
  census_cmd->add_option("--voters", voters_spec, "voter ids, e.g. 0,3,10-20 (default: all)");
  census_cmd->add_option("--j1", j1_spec, "item block, labels or indices (default: from TCA)");

  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic profile (csv-borda)");
  synth_cmd->add_option("--d1", d1, "size of the first item block")->required();
  synth_cmd->add_option("--d2", d2, "size of the second item block")->required();
  synth_cmd->add_option("--clusters", clusters_spec, "alpha:size list, e.g. 1:100,3:50")
      ->required();
  synth_cmd->add_option("--noise-frac", noise_frac, "extra uniform ballots, fraction of planted");
  synth_cmd->add_option("--seed", synth_seed, "generator seed");
  synth_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  CLI::App* map_cmd = app.add_subcommand("map", "SVG scatter of the first two axes");
  map_cmd->add_option("file", file, "dataset path")->required();
  add_common(map_cmd, flags);
  map_cmd->add_option("--which", which, "what to plot")
      ->check(CLI::IsMember({"voters", "items"}));
  map_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(file, flags, frac, max_iters, style, out_dir);
    if (tca_cmd->parsed()) return cmd_tca(file, flags);
    if (census_cmd->parsed()) return cmd_census(file, flags, voters_spec, j1_spec);
    if (synth_cmd->parsed())
      return cmd_synth(d1, d2, clusters_spec, noise_frac, synth_seed, out_path);
    if (map_cmd->parsed()) return cmd_map(file, flags, which, out_path);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
