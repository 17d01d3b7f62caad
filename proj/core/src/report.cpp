#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "punn/errors.hpp"
#include "punn/experiment.hpp"

namespace punn {

namespace {

constexpr std::string_view kHeader =
    "run,seed,ccr_train,ccr_test,connections,evaluations,generations,wall_seconds";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <class T>
T parse_number(const std::string& text, std::size_t line_no) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) {
    throw ParseError(fmt::format("report line {}: bad number '{}'", line_no, text));
  }
  return value;
}

}  // namespace

std::string format_mean_row(const Summary& s) {
  return fmt::format("mean,,{:.2f},{:.2f},{:.2f},{:.2f},,", s.ccr_train.mean, s.ccr_test.mean,
                     s.connections.mean, s.evaluations.mean);
}

std::string format_sd_row(const Summary& s) {
  return fmt::format("sd,,{:.2f},{:.2f},{:.2f},{:.2f},,", s.ccr_train.sd, s.ccr_test.sd,
                     s.connections.sd, s.evaluations.sd);
}

void write_report(std::ostream& out, std::span<const RunRecord> records, const Summary& summary) {
  if (records.empty()) throw ArgumentError("report needs at least one record");
  out << kHeader << '\n';
  for (const auto& r : records) {
    out << fmt::format("{},{},{:.2f},{:.2f},{},{},{},{:.3f}\n", r.run, r.seed, r.ccr_train,
                       r.ccr_test, r.connections, r.evaluations, r.generations, r.wall_seconds);
  }
  out << format_mean_row(summary) << '\n' << format_sd_row(summary) << '\n';
}

void write_report(const std::string& path, std::span<const RunRecord> records,
                  const Summary& summary) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  write_report(out, records, summary);
  if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

Report read_report(std::istream& in) {
  Report report;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kHeader) throw ParseError("report: missing header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 8) {
      throw ParseError(fmt::format("report line {}: expected 8 fields, got {}", line_no,
                                   fields.size()));
    }
    if (fields[0] == "mean") {
      report.mean_row = std::move(fields);
      continue;
    }
    if (fields[0] == "sd") {
      report.sd_row = std::move(fields);
      continue;
    }
    RunRecord r;
    r.run = parse_number<std::size_t>(fields[0], line_no);
    r.seed = parse_number<std::uint64_t>(fields[1], line_no);
    r.ccr_train = parse_number<double>(fields[2], line_no);
    r.ccr_test = parse_number<double>(fields[3], line_no);
    r.connections = parse_number<std::size_t>(fields[4], line_no);
    r.evaluations = parse_number<std::uint64_t>(fields[5], line_no);
    r.generations = parse_number<std::size_t>(fields[6], line_no);
    r.wall_seconds = parse_number<double>(fields[7], line_no);
    report.records.push_back(r);
  }
  return report;
}

Report read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  return read_report(in);
}

}  // namespace punn
