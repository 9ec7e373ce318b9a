// solab: CertificationReport implementation.
#include "solab/report.hpp"

#include <ostream>
#include <sstream>

#include "solab/numerics.hpp"

namespace solab {

bool CertificationReport::pass() const {
  for (const ReportLine& l : lines_)
    if (!l.verdict) return false;
  return true;
}

void CertificationReport::write(std::ostream& os) const {
  for (const ReportLine& l : lines_) {
    os << "{identity: \"" << l.identity << "\", max_discrepancy: "
       << format_g17(l.max_discrepancy) << ", tolerance: "
       << format_g17(l.tolerance) << ", verdict: "
       << (l.verdict ? "PASS" : "FAIL") << ", samples_used: " << l.samples_used
       << "}\n";
  }
}

std::string CertificationReport::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace solab
