// Benchmark comparing the OpenMP kernels against their serial references.
// Timings vary; the result-equality checks must not.

#include <chrono>
#include <cstdio>
#include <functional>

#include "domkit/certify.hpp"
#include "domkit/parallel.hpp"

using namespace domkit;
using clock_type = std::chrono::steady_clock;

static double seconds(std::function<void()> fn) {
  auto t0 = clock_type::now();
  fn();
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

static void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-32s %10.3fs %10.3fs %8.2fx  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, agree ? "results agree" : "RESULTS DIFFER");
}

int main() {
  std::printf("jobs available: %d\n", max_jobs());
  std::printf("%-32s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    GroupPtr h = heisenberg_oracle(5);  // order 125, 125^3 assignments
    Word lhs = parse_word("[[a,b],c]");
    Word rhs = parse_word("e");
    IdentityCheck rs, rp;
    double ts = seconds([&] { rs = check_identity_serial(*h, lhs, rhs); });
    double tp = seconds([&] { rp = check_identity(*h, lhs, rhs); });
    row("check_identity (125^3 scans)", ts, tp,
        rs.holds == rp.holds && rs.first_violation == rp.first_violation);
  }

  {
    GroupPtr h = heisenberg_oracle(6);  // 216^3 ordered triples
    SwapScanReport rs, rp;
    double ts = seconds([&] { rs = swap_identity_scan_serial(*h); });
    double tp = seconds([&] { rp = swap_identity_scan(*h); });
    row("swap-identity scan (216^3)", ts, tp,
        rs.hypothesis_triples == rp.hypothesis_triples && rs.violations == rp.violations);
  }

  {
    GroupPtr g = realize_finite(Nil2Params::K(8, 8, 8));
    ElementSet h = generated_subgroup(*g, {g->pow(g->generators()[0], 2),
                                           g->pow(g->generators()[1], 2)});
    TestFamily fam = TestFamily::of({g});
    ElementSet ds, dp;
    set_jobs(1);
    double ts = seconds([&] { ds = dominion_overapprox(g, h, fam); });
    set_jobs(0);
    double tp = seconds([&] { dp = dominion_overapprox(g, h, fam); });
    row("dominion K(8,8,8), single target", ts, tp, ds == dp);
  }

  {
    GroupPtr g = realize_finite(Nil2Params::K(8, 8, 8));
    size_t cs = 0, cp = 0;
    set_jobs(1);
    double ts = seconds([&] { cs = hom_search(g, g).count(); });
    set_jobs(0);
    double tp = seconds([&] { cp = hom_search(g, g).count(); });
    row("hom enumeration End(K(8,8,8))", ts, tp, cs == cp);
  }

  return 0;
}
