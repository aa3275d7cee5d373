#include "fqdist/report.hpp"

#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "fqdist/errors.hpp"

namespace fqdist {

namespace {

constexpr std::string_view kStatuses[] = {"holds", "violated", "vacuous", "refused", "info"};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_value(const Json& v) {
  if (v.is_string()) return csv_field(v.get<std::string>());
  return csv_field(v.dump());
}

}  // namespace

bool is_known_status(std::string_view status) {
  for (auto s : kStatuses) {
    if (s == status) return true;
  }
  return false;
}

Report::Report(std::string command, Json config) : command_(std::move(command)), config_(std::move(config)) {}

void Report::append(std::vector<CheckRecord> records) {
  for (auto& r : records) records_.push_back(std::move(r));
}

std::size_t Report::count(std::string_view status) const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.status == status;
  return n;
}

Json record_to_json(const CheckRecord& r) {
  Json j;
  j["section"] = "data";
  j["check"] = r.check;
  j["instance"] = r.instance;
  j["q"] = r.q;
  j["d"] = r.d;
  j["set_size"] = r.set_size;
  j["status"] = r.status;
  j["values"] = r.values;
  return j;
}

std::string Report::data_section() const {
  std::string out;
  for (const auto& r : records_) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

void Report::write_jsonl(std::ostream& out) const {
  Json header;
  header["section"] = "header";
  header["schema_version"] = kSchemaVersion;
  header["tool"] = "fqdist";
  header["command"] = command_;
  header["generated_at"] = utc_timestamp();
  header["config"] = config_;
  out << header.dump() << '\n';
  out << data_section();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    Json t;
    t["section"] = "timing";
    t["index"] = i;
    t["check"] = records_[i].check;
    t["instance"] = records_[i].instance;
    t["elapsed_ms"] = records_[i].elapsed_ms;
    out << t.dump() << '\n';
  }
}

void Report::write_csv(std::ostream& out) const {
  out << "# schema_version=" << kSchemaVersion << '\n';
  out << "# tool=fqdist\n";
  out << "# command=" << command_ << '\n';
  out << "# generated_at=" << utc_timestamp() << '\n';
  out << "# config=" << config_.dump() << '\n';

  std::set<std::string> keys;
  for (const auto& r : records_) {
    for (const auto& item : r.values.items()) keys.insert(item.key());
  }
  out << "check,instance,q,d,set_size,status";
  for (const auto& k : keys) out << ',' << csv_field(k);
  out << '\n';
  for (const auto& r : records_) {
    out << csv_field(r.check) << ',' << csv_field(r.instance) << ',' << r.q << ',' << r.d << ','
        << r.set_size << ',' << r.status;
    for (const auto& k : keys) {
      out << ',';
      if (r.values.contains(k)) out << csv_value(r.values.at(k));
    }
    out << '\n';
  }
  out << "\n# timings\nindex,check,instance,elapsed_ms\n";
  for (std::size_t i = 0; i < records_.size(); ++i) {
    out << i << ',' << csv_field(records_[i].check) << ',' << csv_field(records_[i].instance) << ','
        << Json(records_[i].elapsed_ms).dump() << '\n';
  }
}

void Report::write(std::ostream& out, std::string_view format) const {
  if (format == "json") {
    write_jsonl(out);
  } else if (format == "csv") {
    write_csv(out);
  } else {
    throw InvalidArgument("unknown output format '" + std::string(format) + "' (expected json or csv)");
  }
}

std::vector<std::string> validate_report_jsonl(std::istream& in) {
  std::vector<std::string> errors;
  std::string line;
  std::size_t line_no = 0;
  int stage = 0;  // 0 header expected, 1 data, 2 timing
  std::size_t data_lines = 0;
  std::size_t timing_lines = 0;

  auto fail = [&](const std::string& msg) {
    errors.push_back("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& e) {
      fail(std::string("not JSON: ") + e.what());
      continue;
    }
    if (!j.is_object() || !j.contains("section") || !j["section"].is_string()) {
      fail("missing section");
      continue;
    }
    const auto section = j["section"].get<std::string>();
    if (stage == 0) {
      if (section != "header") {
        fail("first line must be the header");
      } else {
        if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion) {
          fail("unsupported schema_version");
        }
        for (const char* key : {"tool", "command", "generated_at"}) {
          if (!j.contains(key) || !j[key].is_string()) fail(std::string("header missing ") + key);
        }
        if (!j.contains("config") || !j["config"].is_object()) fail("header missing config");
      }
      stage = 1;
      continue;
    }
    if (section == "data") {
      if (stage != 1) fail("data line after timing section");
      ++data_lines;
      for (const char* key : {"check", "instance", "status"}) {
        if (!j.contains(key) || !j[key].is_string()) fail(std::string("data missing ") + key);
      }
      for (const char* key : {"q", "d", "set_size"}) {
        if (!j.contains(key) || !j[key].is_number_unsigned()) fail(std::string("data missing ") + key);
      }
      if (j.contains("status") && j["status"].is_string() &&
          !is_known_status(j["status"].get<std::string>())) {
        fail("unknown status");
      }
      if (!j.contains("values") || !j["values"].is_object()) fail("data missing values object");
    } else if (section == "timing") {
      stage = 2;
      ++timing_lines;
      if (!j.contains("index") || !j["index"].is_number_unsigned()) fail("timing missing index");
      if (!j.contains("elapsed_ms") || !j["elapsed_ms"].is_number()) fail("timing missing elapsed_ms");
    } else {
      fail("unknown section '" + section + "'");
    }
  }
  if (line_no == 0) errors.push_back("empty report");
  if (timing_lines != data_lines) errors.push_back("timing section does not match data section");
  return errors;
}

}  // namespace fqdist
