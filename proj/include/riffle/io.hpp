#pragma once

#include <iosfwd>
#include <string>

#include "riffle/profile.hpp"

namespace riffle {

// order-lines: one ballot per line as 0-based item indices, most preferred
//   first, with an optional leading repeat count, '#' comments, and
//   tolerance for the sushi3 "<tag> <d> <indices...>" prefix style.
// csv-rankings: header of item labels, cells are rank positions (1-based,
//   or 0-based when a row is a permutation of 0..d-1).
// csv-borda: header of item labels, cells are Borda scores.
enum class DatasetFormat { kAuto, kOrderLines, kCsvRankings, kCsvBorda };

struct DatasetSpec {
  std::string path;
  DatasetFormat format = DatasetFormat::kAuto;
};

Profile parse_dataset(const DatasetSpec& spec);

Profile parse_order_lines(std::istream& in);
Profile parse_csv(std::istream& in, DatasetFormat format);  // rankings or borda

std::string write_csv_borda(const Profile& p);

DatasetFormat format_from_name(const std::string& name);  // "order-lines" etc.
std::string format_name(DatasetFormat f);

}  // namespace riffle
