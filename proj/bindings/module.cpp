#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "riffle/coherence.hpp"
#include "riffle/errors.hpp"
#include "riffle/io.hpp"
#include "riffle/peeling.hpp"
#include "riffle/report.hpp"
#include "riffle/synth.hpp"

namespace py = pybind11;
using namespace riffle;

namespace {

py::object to_fraction(const Rat& x) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(format_fraction(x));
}

py::list fractions_of(const std::vector<Rat>& values) {
  py::list out;
  for (const auto& v : values) out.append(to_fraction(v));
  return out;
}

EngineChoice engine_from(const std::string& name) {
  if (name == "enumerate") return EngineChoice::kEnumerate;
  if (name == "ascent") return EngineChoice::kAscent;
  if (name == "auto") return EngineChoice::kAuto;
  throw InputError("unknown engine '" + name + "'");
}

PeelOptions options_from(const std::string& engine, const std::string& min_group_frac,
                         int max_iters, int enum_limit, int restarts, std::uint64_t seed) {
  PeelOptions opts;
  opts.engine = engine_from(engine);
  opts.max_iters = max_iters;
  opts.tca.enumeration_limit = enum_limit;
  opts.restarts.max_row_seeds = restarts;
  opts.restarts.seed = seed;
  auto slash = min_group_frac.find('/');
  if (slash != std::string::npos) {
    opts.min_group_frac = Rat(Int(min_group_frac.substr(0, slash)),
                              Int(min_group_frac.substr(slash + 1)));
  } else {
    auto dot = min_group_frac.find('.');
    if (dot == std::string::npos) {
      opts.min_group_frac = Rat(Int(min_group_frac));
    } else {
      std::string digits = min_group_frac.substr(0, dot) + min_group_frac.substr(dot + 1);
      Int den = 1;
      for (std::size_t k = dot + 1; k < min_group_frac.size(); ++k) den *= 10;
      opts.min_group_frac = Rat(Int(digits), den);
    }
  }
  return opts;
}

py::dict axis_to_dict(const TcaAxis& axis) {
  py::dict out;
  out["u"] = axis.u;
  out["v"] = axis.v;
  out["delta"] = to_fraction(axis.delta);
  out["f"] = fractions_of(axis.f);
  out["g"] = fractions_of(axis.g);
  out["axis_index"] = axis.axis_index;
  out["method"] = axis.method == TcaMethod::kEnumerate ? "enumerate" : "ascent";
  out["tie_count"] = axis.tie_count;
  out["restarts_used"] = axis.restarts_used;
  return out;
}

py::dict group_to_dict(const CoherentGroup& g) {
  py::dict out;
  out["index"] = g.index;
  out["j1"] = g.j1;
  out["j2"] = g.j2;
  out["size"] = g.size;
  out["delta"] = to_fraction(g.delta1);
  out["cross"] = to_fraction(g.cross);
  out["beta"] = fractions_of(g.beta.beta);
  out["stderrs"] = g.beta.stderrs;
  py::list clusters;
  for (const auto& c : g.clusters) {
    py::dict cd;
    cd["alpha"] = c.alpha;
    cd["voter_ids"] = c.voter_ids;
    cd["delta"] = to_fraction(c.delta1);
    cd["cross"] = to_fraction(c.cross);
    cd["T"] = c.T;
    py::list census;
    for (const auto& e : c.census.entries)
      census.append(py::make_tuple(e.scores_j1, e.T, e.count));
    cd["census"] = census;
    clusters.append(cd);
  }
  out["clusters"] = clusters;
  return out;
}

}  // namespace

PYBIND11_MODULE(_riffle, m) {
  m.doc() = "coherent-group analysis of rank data by taxicab correspondence analysis";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<Profile>(m, "Profile")
      .def(py::init([](std::vector<std::vector<int>> rows, std::vector<std::string> items) {
             return make_profile(std::move(rows), std::move(items));
           }),
           py::arg("rows"), py::arg("items"))
      .def_readonly("items", &Profile::items)
      .def_readonly("rows", &Profile::rows)
      .def_readonly("row_ids", &Profile::row_ids)
      .def_property_readonly("n", &Profile::n)
      .def_property_readonly("d", &Profile::d)
      .def("__repr__", [](const Profile& p) {
        std::ostringstream os;
        os << "Profile(n=" << p.n() << ", d=" << p.d() << ")";
        return os.str();
      });

  m.def(
      "encode_profile",
      [](const std::vector<std::pair<std::vector<int>, long long>>& ballots,
         std::vector<std::string> items) {
        std::vector<Preference> prefs;
        for (const auto& [ordering, count] : ballots) prefs.push_back({ordering, count});
        return encode_profile(prefs, std::move(items));
      },
      py::arg("ballots"), py::arg("items"),
      "ballots are (ordering, multiplicity) pairs, most preferred item first");

  m.def("decode_orderings", &decode_orderings);
  m.def("subset", &subset, py::arg("profile"), py::arg("voter_ids"));

  m.def("reverse_and_nega", [](const Profile& p) {
    NegaTable nt = reverse_and_nega(p);
    return py::make_tuple(nt.nega, nt.t);
  });

  m.def("borda_scale", [](const Profile& p) {
    BordaScale scale = borda_scale(p);
    return py::make_tuple(fractions_of(scale.beta), scale.stderrs);
  });

  m.def("first_order_marginals",
        [](const Profile& p) { return first_order_marginals(p).counts; });

  m.def(
      "first_axis",
      [](const Profile& p, const std::string& engine, int enum_limit, int restarts,
         std::uint64_t seed) {
        PeelOptions opts = options_from(engine, "0", 1, enum_limit, restarts, seed);
        ResidualMatrix rm = residual(build_correspondence(reverse_and_nega(p)));
        return axis_to_dict(first_axis(rm, opts.engine, opts.tca, opts.restarts));
      },
      py::arg("profile"), py::arg("engine") = "auto", py::arg("enum_limit") = 24,
      py::arg("restarts") = 64, py::arg("seed") = kDefaultSeed);

  m.def(
      "leading_axes",
      [](const Profile& p, int count, int enum_limit) {
        TcaOptions opts{enum_limit};
        CorrespondenceMatrix cm = build_correspondence(reverse_and_nega(p));
        py::list out;
        for (const auto& axis : leading_axes(cm, count, opts)) out.append(axis_to_dict(axis));
        return out;
      },
      py::arg("profile"), py::arg("count") = 2, py::arg("enum_limit") = 24);

  m.def(
      "partition_first_axis",
      [](const Profile& p, const std::string& engine, int enum_limit, int restarts,
         std::uint64_t seed) {
        PeelOptions opts = options_from(engine, "0", 1, enum_limit, restarts, seed);
        ResidualMatrix rm = residual(build_correspondence(reverse_and_nega(p)));
        TcaAxis axis = first_axis(rm, opts.engine, opts.tca, opts.restarts);
        ClusterPartition part = partition_by_first_axis(p, axis);
        py::dict out;
        out["j1"] = part.j1;
        out["j2"] = part.j2;
        out["d1"] = part.bounds.d1;
        out["d2"] = part.bounds.d2;
        out["max_clusters"] = part.bounds.max_clusters;
        out["f_max"] = to_fraction(part.bounds.f_max);
        out["gap"] = to_fraction(part.bounds.gap);
        py::list clusters;
        for (const auto& c : part.clusters)
          clusters.append(py::make_tuple(c.alpha, c.voter_ids, c.f1_numerator));
        out["clusters"] = clusters;
        return out;
      },
      py::arg("profile"), py::arg("engine") = "auto", py::arg("enum_limit") = 24,
      py::arg("restarts") = 64, py::arg("seed") = kDefaultSeed);

  m.def(
      "coherency_test",
      [](const Profile& sub, int alpha, int d1, int d2, int enum_limit) {
        CoherencyVerdict v = test_subprofile(sub, alpha, d1, d2, TcaOptions{enum_limit});
        py::dict out;
        out["alpha"] = v.alpha;
        out["coherent"] = v.coherent;
        out["delta"] = to_fraction(v.sub_delta);
        out["f_nega"] = to_fraction(v.sub_f_nega);
        out["theoretical"] = to_fraction(v.theoretical_f);
        out["witness"] = v.witness ? py::cast(*v.witness) : py::none();
        out["sub_d1"] = v.sub_d1;
        out["sub_d2"] = v.sub_d2;
        return out;
      },
      py::arg("subprofile"), py::arg("alpha"), py::arg("d1"), py::arg("d2"),
      py::arg("enum_limit") = 24,
      "full TCA of a claimed cluster; exact coherency verdict");

  m.def(
      "crossing_index",
      [](const std::string& delta, int d1, int d2, int d) {
        auto slash = delta.find('/');
        Rat value = slash == std::string::npos
                        ? Rat(Int(delta))
                        : Rat(Int(delta.substr(0, slash)), Int(delta.substr(slash + 1)));
        return to_fraction(crossing_index(value, d1, d2, d));
      },
      py::arg("delta"), py::arg("d1"), py::arg("d2"), py::arg("d"),
      "delta as 'num/den'; returns 1 - delta / (2 d1 d2 / d(d-1))");

  m.def(
      "shuffle_census",
      [](const Profile& p, const std::vector<long long>& voters, const std::vector<int>& j1) {
        ShuffleCensus census = shuffle_census(p, voters, j1);
        py::list out;
        for (const auto& e : census.entries)
          out.append(py::make_tuple(e.scores_j1, e.T, e.count));
        return out;
      },
      py::arg("profile"), py::arg("voters"), py::arg("j1"));

  m.def(
      "peel",
      [](const Profile& p, const std::string& min_group_frac, int max_iters,
         const std::string& engine, int enum_limit, int restarts, std::uint64_t seed) {
        PeelOptions opts =
            options_from(engine, min_group_frac, max_iters, enum_limit, restarts, seed);
        PeelResult result = peel(p, opts);
        py::dict out;
        py::list groups;
        for (const auto& g : result.groups) groups.append(group_to_dict(g));
        out["groups"] = groups;
        out["noisy"] = result.noisy;
        py::list trace;
        for (const auto& it : result.trace) {
          py::dict td;
          td["iteration"] = it.iteration;
          td["profile_size"] = it.profile_size;
          td["d1"] = it.d1;
          td["d2"] = it.d2;
          td["tie_count"] = it.tie_count;
          td["retained"] = it.retained;
          td["stop_reason"] = it.stop_reason;
          trace.append(td);
        }
        out["trace"] = trace;
        return out;
      },
      py::arg("profile"), py::arg("min_group_frac") = "1/100", py::arg("max_iters") = 20,
      py::arg("engine") = "auto", py::arg("enum_limit") = 24, py::arg("restarts") = 64,
      py::arg("seed") = kDefaultSeed);

  m.def(
      "render_report",
      [](const Profile& p, const std::string& style, const std::string& min_group_frac,
         int max_iters) {
        PeelOptions opts = options_from("auto", min_group_frac, max_iters, 24, 64, kDefaultSeed);
        ReportBundle bundle = analyze(p, opts);
        return render_report(bundle,
                             style == "markdown" ? ReportStyle::kMarkdown : ReportStyle::kText);
      },
      py::arg("profile"), py::arg("style") = "text", py::arg("min_group_frac") = "1/100",
      py::arg("max_iters") = 20);

  m.def(
      "render_svg_map",
      [](const Profile& p, const std::string& which) {
        ReportBundle bundle = analyze(p);
        return render_svg_map(bundle, which == "items" ? MapKind::kItems : MapKind::kVoters);
      },
      py::arg("profile"), py::arg("which") = "voters");

  m.def(
      "generate_synthetic",
      [](int d1, int d2, const std::vector<std::pair<int, long long>>& clusters,
         std::uint64_t seed) {
        std::vector<ClusterRequest> requests;
        for (const auto& [alpha, size] : clusters) requests.push_back({alpha, size});
        SyntheticProfile synth = generate_synthetic(d1, d2, requests, seed);
        py::dict out;
        out["profile"] = synth.profile;
        out["j1"] = synth.j1;
        out["planted_ids"] = synth.planted_ids;
        return out;
      },
      py::arg("d1"), py::arg("d2"), py::arg("clusters"), py::arg("seed") = 1);

  m.def("random_profile", &random_profile, py::arg("n"), py::arg("d"), py::arg("seed") = 1);

  m.def(
      "parse_dataset",
      [](const std::string& path, const std::string& format) {
        return parse_dataset({path, format_from_name(format)});
      },
      py::arg("path"), py::arg("format") = "auto");

  m.def("write_csv_borda", &write_csv_borda, py::arg("profile"));
}
