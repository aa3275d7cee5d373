#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace fqdist {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// One verified (or recorded) quantity for one instance.
///
/// status is one of: holds, violated, vacuous, refused, info.
///   vacuous  - the hypothesis failed, so the conclusion was not asserted
///   refused  - a scale guard declined the exact computation
///   info     - data only, nothing asserted
struct CheckRecord {
  std::string check;
  std::string instance;
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::size_t set_size = 0;
  std::string status = "info";
  Json values = Json::object();
  double elapsed_ms = 0.0;
};

inline std::string status_from(bool holds) { return holds ? "holds" : "violated"; }

bool is_known_status(std::string_view status);

/// A run's output: a header, a deterministic data section and a timing
/// section. Only the header and timings depend on wall-clock time.
class Report {
 public:
  explicit Report(std::string command, Json config = Json::object());

  void add(CheckRecord record) { records_.push_back(std::move(record)); }
  void append(std::vector<CheckRecord> records);

  const std::string& command() const { return command_; }
  const std::vector<CheckRecord>& records() const { return records_; }
  std::size_t count(std::string_view status) const;
  bool any_violation() const { return count("violated") > 0; }

  void write_jsonl(std::ostream& out) const;
  void write_csv(std::ostream& out) const;
  void write(std::ostream& out, std::string_view format) const;

  /// The data section alone, as JSON lines. Identical configs give
  /// byte-identical strings.
  std::string data_section() const;

 private:
  std::string command_;
  Json config_;
  std::vector<CheckRecord> records_;
};

Json record_to_json(const CheckRecord& record);

/// Schema problems found in a JSON-lines report; empty when valid.
std::vector<std::string> validate_report_jsonl(std::istream& in);

}  // namespace fqdist
