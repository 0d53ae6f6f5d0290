#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fcat {

struct CheckResult {
  enum class Status { pass, fail, unknown };
  std::string name;
  Status status = Status::pass;
  std::string witness;
  double seconds = 0.0;  // human report only; omitted from machine output
};

struct Report {
  std::string command;
  std::string config_name;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CheckResult> checks;
  std::string verdict;

  int count(CheckResult::Status s) const;
  bool clean(bool allow_unknown) const;
  int exit_code(bool allow_unknown) const { return clean(allow_unknown) ? 0 : 1; }

  // Deterministic structured-text document (stable field order, no
  // timings): byte-identical for identical config + seed.
  std::string machine_text() const;
  // Readable rendering with timings.
  std::string human_text() const;
};

std::string to_string(CheckResult::Status s);

}  // namespace fcat
