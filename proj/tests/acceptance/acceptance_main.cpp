// Runs the acceptance criteria; argument: comma-separated ids (default all).
#include "ctg/suite.hpp"

#include <iostream>

int main(int argc, char** argv) {
  ctg::SuiteOptions opts;
  try {
    if (argc > 1) opts.only = ctg::parse_filter(argv[1]);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  auto rs = ctg::run_suite(opts);
  bool ok = !rs.empty();
  for (const auto& r : rs) {
    std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.id << ": " << r.title << " (" << r.detail << ")\n";
    ok = ok && r.pass;
  }
  std::cout << ctg::suite_summary(rs);
  return ok ? 0 : 1;
}
