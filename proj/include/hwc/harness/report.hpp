// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Sweep reports and their CSV / JSON encodings.
//
// Both encodings carry the columns
//   p,family,param,a_number,p_rank,newton_polygon,eo_type,status,detail
// CSV follows RFC 4180 quoting; a missing a_number or p_rank is an empty
// field in CSV and null in JSON.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hwc/errors.hpp"
#include "hwc/ffield.hpp"

namespace hwc {

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Skipped:
      return "SKIPPED";
  }
  return "FAIL";
}

inline Status parse_status(std::string_view s) {
  if (s == "PASS") return Status::Pass;
  if (s == "FAIL") return Status::Fail;
  if (s == "SKIPPED") return Status::Skipped;
  throw ParseError("unknown status '" + std::string(s) + "'", 0);
}

struct ReportRow {
  u64 p = 0;
  std::string family;
  std::string param;
  std::optional<int> a_number;
  std::optional<int> p_rank;
  std::string newton_polygon;
  std::string eo_type;
  Status status = Status::Pass;
  std::string detail;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SweepReport {
  std::vector<ReportRow> rows;

  bool passed() const {
    return std::none_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.status == Status::Fail; });
  }
  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [s](const ReportRow& r) { return r.status == s; }));
  }
  void append(const SweepReport& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

inline constexpr const char* kCsvHeader = "p,family,param,a_number,p_rank,newton_polygon,eo_type,status,detail";

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string optional_field(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

/// Splits RFC 4180 text into records of fields. Quoted fields may span lines.
inline std::vector<std::vector<std::string>> csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw ParseError("quote inside unquoted CSV field", i);
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", text.size());
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

inline std::optional<int> parse_optional_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw ParseError("bad integer '" + s + "'", 0);
  return v;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const SweepReport& report) {
  os << kCsvHeader << '\n';
  for (const ReportRow& r : report.rows) {
    os << r.p << ',' << detail::csv_field(r.family) << ',' << detail::csv_field(r.param) << ','
       << detail::optional_field(r.a_number) << ',' << detail::optional_field(r.p_rank) << ','
       << detail::csv_field(r.newton_polygon) << ',' << detail::csv_field(r.eo_type) << ','
       << to_string(r.status) << ',' << detail::csv_field(r.detail) << '\n';
  }
}

inline std::string to_csv(const SweepReport& report) {
  std::ostringstream os;
  write_csv(os, report);
  return os.str();
}

inline SweepReport parse_csv(std::string_view text) {
  const auto records = detail::csv_records(text);
  if (records.empty()) throw ParseError("empty CSV", 0);
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) header += (i ? "," : "") + records[0][i];
  if (header != kCsvHeader) throw ParseError("unexpected CSV header '" + header + "'", 0);
  SweepReport report;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 9) {
      throw ParseError("CSV record " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields", 0);
    }
    ReportRow r;
    r.p = std::stoull(f[0]);
    r.family = f[1];
    r.param = f[2];
    r.a_number = detail::parse_optional_int(f[3]);
    r.p_rank = detail::parse_optional_int(f[4]);
    r.newton_polygon = f[5];
    r.eo_type = f[6];
    r.status = parse_status(f[7]);
    r.detail = f[8];
    report.rows.push_back(std::move(r));
  }
  return report;
}

/// Array of objects with keys in CSV column order.
inline std::string to_json_text(const SweepReport& report, int indent = 2) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["p"] = r.p;
    row["family"] = r.family;
    row["param"] = r.param;
    row["a_number"] = r.a_number ? nlohmann::ordered_json(*r.a_number) : nlohmann::ordered_json(nullptr);
    row["p_rank"] = r.p_rank ? nlohmann::ordered_json(*r.p_rank) : nlohmann::ordered_json(nullptr);
    row["newton_polygon"] = r.newton_polygon;
    row["eo_type"] = r.eo_type;
    row["status"] = to_string(r.status);
    row["detail"] = r.detail;
    out.push_back(std::move(row));
  }
  return out.dump(indent);
}

inline SweepReport parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_array()) throw ParseError("report JSON must be an array", 0);
  SweepReport report;
  for (const auto& o : doc) {
    ReportRow r;
    try {
      r.p = o.at("p").get<u64>();
      r.family = o.at("family").get<std::string>();
      r.param = o.at("param").get<std::string>();
      if (!o.at("a_number").is_null()) r.a_number = o.at("a_number").get<int>();
      if (!o.at("p_rank").is_null()) r.p_rank = o.at("p_rank").get<int>();
      r.newton_polygon = o.at("newton_polygon").get<std::string>();
      r.eo_type = o.at("eo_type").get<std::string>();
      r.status = parse_status(o.at("status").get<std::string>());
      r.detail = o.at("detail").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), 0);
    }
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace hwc
