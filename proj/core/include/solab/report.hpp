// solab: plain-text certification reports. One line per checked identity with
// the exact keys identity / max_discrepancy / tolerance / verdict /
// samples_used, byte-stable across runs.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solab {

struct ReportLine {
  std::string identity;
  double max_discrepancy = 0.0;
  double tolerance = 0.0;
  bool verdict = false;  // true = PASS
  int samples_used = 0;
};

class CertificationReport {
 public:
  void add(ReportLine line) { lines_.push_back(std::move(line)); }
  const std::vector<ReportLine>& lines() const { return lines_; }
  bool pass() const;
  // One line per entry:
  // {identity: "...", max_discrepancy: <g17>, tolerance: <g17>,
  //  verdict: PASS|FAIL, samples_used: <int>}
  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<ReportLine> lines_;
};

}  // namespace solab
