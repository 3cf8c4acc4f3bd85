#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "riffle/errors.hpp"
#include "riffle/io.hpp"

namespace riffle {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<long long> parse_ints(const std::string& line, long long line_no) {
  std::vector<long long> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(line_no, "not an integer: '" + tok + "'");
    }
  }
  return out;
}

bool is_permutation(const std::vector<long long>& v, long long lo) {
  std::vector<bool> seen(v.size(), false);
  for (long long x : v) {
    long long k = x - lo;
    if (k < 0 || k >= static_cast<long long>(v.size()) || seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

std::vector<int> to_int_vector(const std::vector<long long>& v, std::size_t from) {
  std::vector<int> out;
  out.reserve(v.size() - from);
  for (std::size_t i = from; i < v.size(); ++i) out.push_back(static_cast<int>(v[i]));
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

Profile parse_order_lines(std::istream& in) {
  std::vector<Preference> prefs;
  int d = 0;
  std::string raw;
  long long line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<long long> toks = parse_ints(line, line_no);

    long long count = 1;
    std::vector<int> ordering;
    auto take = [&](std::size_t from) { ordering = to_int_vector(toks, from); };
    const long long len = static_cast<long long>(toks.size());

    if (first_data_line) {
      if (len >= 2 && is_permutation(toks, 0)) {
        take(0);
      } else if (len >= 3 && toks[0] >= 1 &&
                 is_permutation({toks.begin() + 1, toks.end()}, 0)) {
        count = toks[0];
        take(1);
      } else if (len >= 4 && toks[1] == len - 2 &&
                 is_permutation({toks.begin() + 2, toks.end()}, 0)) {
        take(2);  // sushi3 "<tag> <d> <indices>" line
      } else if (len <= 3) {
        continue;  // sushi3-style count header; a ballot this short cannot fail all shapes
      } else {
        throw ParseError(line_no, "cannot read an ordering from this line");
      }
      d = static_cast<int>(ordering.size());
      first_data_line = false;
    } else {
      if (len == d) {
        take(0);
      } else if (len == d + 1) {
        if (toks[0] < 1) throw ParseError(line_no, "repeat count must be positive");
        count = toks[0];
        take(1);
      } else if (len == d + 2 && toks[1] == d) {
        take(2);
      } else {
        throw DimensionMismatch(line_no, "expected " + std::to_string(d) + " item indices");
      }
      std::vector<long long> check(ordering.begin(), ordering.end());
      if (!is_permutation(check, 0))
        throw NonPermutationRow(line_no, "indices are not a permutation of 0.." +
                                             std::to_string(d - 1));
    }
    prefs.push_back({std::move(ordering), count});
  }
  if (prefs.empty()) throw EmptyProfile();

  std::vector<std::string> labels(d);
  for (int j = 0; j < d; ++j) labels[j] = "j" + std::to_string(j + 1);
  return encode_profile(prefs, std::move(labels));
}

Profile parse_csv(std::istream& in, DatasetFormat format) {
  std::string raw;
  long long line_no = 0;
  if (!std::getline(in, raw)) throw EmptyProfile();
  ++line_no;
  std::vector<std::string> labels = split_csv(trim(raw));
  const int d = static_cast<int>(labels.size());
  if (d < 2) throw ParseError(1, "header must name at least two items");

  std::vector<std::vector<int>> rows;
  int rank_base = -1;  // csv-rankings: 1-based or 0-based, fixed by the first row
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (static_cast<int>(fields.size()) != d)
      throw DimensionMismatch(line_no, "expected " + std::to_string(d) + " cells");
    std::vector<long long> cells;
    for (const auto& f : fields) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(f, &used);
        if (used != f.size()) throw std::invalid_argument(f);
        cells.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(line_no, "not an integer cell: '" + f + "'");
      }
    }
    if (format == DatasetFormat::kCsvBorda) {
      if (!is_permutation(cells, 0))
        throw NonPermutationRow(line_no, "scores are not a permutation of 0.." +
                                             std::to_string(d - 1));
      rows.push_back(to_int_vector(cells, 0));
    } else {
      int base;
      if (is_permutation(cells, 1))
        base = 1;
      else if (is_permutation(cells, 0))
        base = 0;
      else
        throw NonPermutationRow(line_no, "cells are not rank positions");
      if (rank_base == -1) rank_base = base;
      if (base != rank_base)
        throw NonPermutationRow(line_no, "mixed 0-based and 1-based rank rows");
      std::vector<int> row(d);
      for (int j = 0; j < d; ++j)
        row[j] = d - 1 - static_cast<int>(cells[j] - rank_base);  // rank 1 (or 0) = best
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw EmptyProfile();
  return make_profile(std::move(rows), std::move(labels));
}

Profile parse_dataset(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw InputError("cannot open " + spec.path);
  DatasetFormat format = spec.format;
  if (format == DatasetFormat::kAuto) {
    std::filesystem::path p(spec.path);
    format = (p.extension() == ".csv") ? DatasetFormat::kCsvBorda : DatasetFormat::kOrderLines;
  }
  Profile profile = (format == DatasetFormat::kOrderLines) ? parse_order_lines(in)
                                                           : parse_csv(in, format);

  // Optional sidecar with one item label per line.
  std::ifstream sidecar(spec.path + ".items");
  if (sidecar) {
    std::vector<std::string> labels;
    std::string label;
    while (std::getline(sidecar, label)) {
      label = trim(label);
      if (!label.empty()) labels.push_back(label);
    }
    if (static_cast<int>(labels.size()) == profile.d()) profile.items = std::move(labels);
  }
  return profile;
}

std::string write_csv_borda(const Profile& p) {
  std::ostringstream os;
  for (int j = 0; j < p.d(); ++j) {
    if (j > 0) os << ",";
    os << p.items[j];
  }
  os << "\n";
  for (const auto& row : p.rows) {
    for (int j = 0; j < p.d(); ++j) {
      if (j > 0) os << ",";
      os << row[j];
    }
    os << "\n";
  }
  return os.str();
}

DatasetFormat format_from_name(const std::string& name) {
  if (name == "auto") return DatasetFormat::kAuto;
  if (name == "order-lines") return DatasetFormat::kOrderLines;
  if (name == "csv-rankings") return DatasetFormat::kCsvRankings;
  if (name == "csv-borda") return DatasetFormat::kCsvBorda;
  throw InputError("unknown format '" + name + "'");
}

std::string format_name(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::kOrderLines:
      return "order-lines";
    case DatasetFormat::kCsvRankings:
      return "csv-rankings";
    case DatasetFormat::kCsvBorda:
      return "csv-borda";
    default:
      return "auto";
  }
}

}  // namespace riffle
