#pragma once
#include <string>
#include <vector>

namespace koszul {

struct Failure {
  std::string check;
  std::string witness;
};

struct Report {
  std::string subject;
  std::vector<Failure> failures;
  std::vector<std::string> notes;
  std::size_t dropped = 0;  // failures beyond the stored limit

  bool ok() const { return failures.empty() && dropped == 0; }
  void fail(std::string check, std::string witness) {
    if (failures.size() >= 32) {
      ++dropped;
      return;
    }
    failures.push_back({std::move(check), std::move(witness)});
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
  void merge(const Report& o, const std::string& prefix = {}) {
    for (auto& f : o.failures) fail(prefix + f.check, f.witness);
    dropped += o.dropped;
  }
  std::string text() const {
    std::string s = subject + ": " + (ok() ? "valid" : "INVALID") + "\n";
    for (auto& f : failures) s += "  " + f.check + " [" + f.witness + "]\n";
    if (dropped) s += "  ... " + std::to_string(dropped) + " more\n";
    for (auto& n : notes) s += "  note: " + n + "\n";
    return s;
  }
};

}  // namespace koszul
