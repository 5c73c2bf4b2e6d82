// Integration suite: runs every corpus criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "cakit/checks.hpp"

int main(int argc, char** argv) {
  int level = 2;
  uint64_t seed = 7;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--level") == 0) level = std::atoi(argv[i + 1]);
    if (std::strcmp(argv[i], "--seed") == 0) seed = static_cast<uint64_t>(std::atoll(argv[i + 1]));
  }
  std::printf("corpus checks (level %d, seed %llu)\n", level, static_cast<unsigned long long>(seed));
  auto results = cakit::run_full_checks(level, seed);
  bool all = true;
  for (const auto& r : results) {
    std::printf("%s criterion %d: %s [%.2fs / %.0fs budget]\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.budget_seconds);
    if (!r.pass)
      for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "all criteria passed" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
