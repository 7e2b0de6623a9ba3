// Acceptance runner: executes every gate at full level against the
// bundled zero table and prints one pass/fail line per criterion, with
// the contributing gates indented underneath.  Exit 0 iff everything
// (gates and runtime budgets) holds.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "pzeta/verify.hpp"

namespace {

struct Criterion {
  const char* title;
  double budget_seconds;  // 0 = no stated budget
};

const std::map<int, Criterion> kCriteria{
    {1, {"truncation error bounds", 1.0}},
    {2, {"Euler constant identity", 1.0}},
    {3, {"one-line deviation sup bound", 10.0}},
    {4, {"covariance curve minima and reference deviation", 0.0}},
    {5, {"Monte Carlo covariance agreement", 0.0}},
    {6, {"moment gates and variance-share decay", 0.0}},
    {7, {"zero-gap trough scores", 30.0}},
    {8, {"character error bounds and truncation offsets", 0.0}},
    {9, {"brute-force cross-checks", 0.0}},
    {10, {"conditional probability curve minima and flattening", 0.0}},
};

}  // namespace

int main(int argc, char** argv) {
  pzeta::VerifyOptions opt;
  opt.level = pzeta::VerifyLevel::full;
  opt.seed = 1;
  opt.zeros_path = argc > 1 ? argv[1]
                            : std::string(PZSTAT_DATA_DIR) +
                                  "/riemann_zeros_100k.txt";

  pzeta::VerifyReport report;
  try {
    report = pzeta::run_gates(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 1;
  }

  bool all_ok = true;
  for (const auto& [id, crit] : kCriteria) {
    std::vector<const pzeta::GateResult*> gates;
    for (const auto& g : report.gates)
      if (g.check == id) gates.push_back(&g);

    bool ok = !gates.empty();
    for (const auto* g : gates) ok &= g->pass;

    double seconds = 0.0;
    if (auto it = report.check_seconds.find(id);
        it != report.check_seconds.end())
      seconds = it->second;
    const bool in_budget =
        crit.budget_seconds == 0.0 || seconds <= crit.budget_seconds;
    ok &= in_budget;
    all_ok &= ok;

    char budget[48] = "";
    if (crit.budget_seconds > 0.0)
      std::snprintf(budget, sizeof budget, " / budget %g s",
                    crit.budget_seconds);
    std::printf("[%s] criterion %2d  %-52s (%.2f s%s)\n",
                ok ? "PASS" : "FAIL", id, crit.title, seconds, budget);
    for (const auto* g : gates) {
      if (g->tolerance > 0.0)
        std::printf("    %-32s estimate %.10g  target %.10g +- %.3g  %s\n",
                    g->name.c_str(), g->estimate, g->target, g->tolerance,
                    g->pass ? "ok" : "FAIL");
      else
        std::printf("    %-32s estimate %.10g  bound %.10g  %s\n",
                    g->name.c_str(), g->estimate, g->target,
                    g->pass ? "ok" : "FAIL");
    }
    if (id == 7) {
      if (auto it = report.check_seconds.find(107);
          it != report.check_seconds.end())
        std::printf("    (100k-zero extension: %.2f s, outside the budget)\n",
                    it->second);
    }
  }

  std::printf("%s\n", all_ok ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return all_ok ? 0 : 1;
}
