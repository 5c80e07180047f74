#include <iostream>

#include "spinfp/scenarios.hpp"

int main() {
  const spinfp::VerificationReport report = spinfp::verify_figures();
  spinfp::print_report(report, std::cout);
  return report.all_passed() ? 0 : 1;
}
