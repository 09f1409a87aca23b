// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time limits are
// pinned here and not read from the environment. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "jacobi_riesz/jacobi_riesz.hpp"

using namespace jacobi_riesz;

namespace {

struct Criterion {
  int id;
  const char* what;
  double time_limit_s;
  std::function<SuiteResult()> run;
};

RunConfig cfg(std::initializer_list<std::pair<const char*, const char*>> kv) {
  RunConfig c;
  c.set("seed", "7");
  for (const auto& [k, v] : kv) c.set(k, v);
  return c;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "orthonormality (Gram <= 1e-9) and eigen residual (<= 1e-7), N <= 40, 25 parameter pairs", 30.0,
       [] { return suites::orthonormality_and_eigen(cfg({{"N", "40"}, {"tol", "1e-9"}})); }},
      {2, "Poisson series vs closed form, relative 1e-7, 10x10x3 grid, 4 parameter pairs", 60.0,
       [] { return suites::poisson_dual(cfg({{"poisson_tol", "1e-7"}, {"poisson_grid", "10"}, {"t", "0.5,1,2"}})); }},
      {3, "time integration vs closed form, relative 1e-6, 6x6 off-diagonal grid", 60.0,
       [] { return suites::time_integration(cfg({{"time_tol", "1e-6"}, {"time_grid", "6"}})); }},
      {4, "lemma inequality, 1000 random tuples with d > 0, zero violations", 60.0,
       [] { return suites::lemma0(cfg({{"trials", "1000"}})); }},
      {5, "kernel sweeps j <= 20, 40x40 grid, eps 0.05, max/median <= 10 per mode", 600.0,
       [] {
         return suites::kernel_sweeps(cfg({{"J", "20"}, {"grid", "40"}, {"eps", "0.05"}, {"max_over_median", "10"}}),
                                      suites::SweepKind::All);
       }},
      {6, "ball measure comparability C <= 20", 60.0, [] { return suites::ball_measure_suite(cfg({{"C", "20"}})); }},
      {7, "Rubio de Francia weight: Rf >= f, ||Rf|| <= 2||f|| + 1e-6, A1 bound; 20 functions, p = 1.5,2,3", 120.0,
       [] { return suites::rdf_suite(cfg({{"trials", "20"}, {"p", "1.5,2,3"}, {"tol", "1e-6"}})); }},
      {8, "Jacobi identities, residual <= 1e-10 over 200 random points", 60.0,
       [] { return suites::identities(cfg({{"trials", "200"}, {"tol", "1e-10"}})); }},
      {9, "sphere Riesz d = 3, 50 fields, p = 1.5,2,3: max/median <= 10, L2 ratio <= 1 + 1e-8", 300.0,
       [] { return suites::sphere_suite(cfg({{"d", "3"}, {"trials", "50"}, {"p", "1.5,2,3"}})); }},
      {10, "||alpha T f|| / ||f|| <= 4 for alpha in {1,2,5,10,20}, 50 spectra each", 60.0,
       [] { return suites::t_uniformity(cfg({{"trials", "50"}, {"t_bound", "4"}})); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    std::string err;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.passed = false;
      err = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.time_limit_s;
    const bool ok = r.passed && in_time && err.empty();
    failures += !ok;
    for (const auto& n : r.notes) std::cout << "    " << n << '\n';
    char t[64];
    std::snprintf(t, sizeof t, "%.1fs of %.0fs", secs, c.time_limit_s);
    std::cout << "CRITERION " << c.id << ": " << (ok ? "PASS" : "FAIL") << " - " << c.what << " [" << t << "]";
    if (!err.empty()) std::cout << " exception: " << err;
    else if (!r.passed) std::cout << " first failure: " << r.first_failure;
    else if (!in_time) std::cout << " over the time limit";
    std::cout << std::endl;
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures;
}
