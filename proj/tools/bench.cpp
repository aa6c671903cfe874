#include "banachlab/catalog.hpp"
#include "banachlab/numindex.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/tensor.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace banach;

namespace {

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

struct Timing {
  double value = 0.0;
  double seconds = 0.0;
};

// Each timed call re-parses the catalog so per-object caches from the
// previous run cannot shorten this one.
template <class F>
Timing timed(F&& f, const Config& cfg) {
  Catalog cat = parse_catalog_text(default_catalog_json(), cfg);
  double t0 = now_s();
  double v = f(cat, cfg);
  return {v, now_s() - t0};
}

void row(const std::string& name, const Timing& serial, const Timing& par) {
  bool same = serial.value == par.value;
  std::printf("%-34s %10.6f  %8.3fs  %8.3fs  %6.2fx  %s\n", name.c_str(), par.value,
              serial.seconds, par.seconds,
              par.seconds > 0 ? serial.seconds / par.seconds : 0.0,
              same ? "values match" : "VALUES DIFFER");
}

}  // namespace

int main() {
  Config cfg = default_config();
  int threads = max_threads();
  unsigned hw = std::thread::hardware_concurrency();
  std::printf("omp threads: %d, hardware concurrency: %u\n", threads, hw);
  if (threads > 1 && hw <= 1)
    std::printf("note: single hardware core, speedups near 1.0x are expected\n");
  std::printf("%-34s %10s  %9s  %9s  %7s\n", "kernel", "value", "serial", "parallel",
              "speedup");

  struct Case {
    std::string name;
    double (*run)(const Catalog&, const Config&);
  };
  const Case cases[] = {
      {"index estimate l2-2 (multistart)",
       [](const Catalog& c, const Config& g) {
         return numerical_index_estimate(c.find_space("l2-2"), 0, g).value;
       }},
      {"index exact hex2 (vertex pairs)",
       [](const Catalog& c, const Config& g) {
         return numerical_index_exact(c.find_space("hex2"), g).value;
       }},
      {"index estimate linf4 (multistart)",
       [](const Catalog& c, const Config& g) {
         Config t = g;
         t.index_starts = 64;
         return numerical_index_estimate(c.find_space("linf4"), 0, t).value;
       }},
      {"pi norm third2 (decomposition)",
       [](const Catalog& c, const Config& g) {
         return pi_norm(*c.find_tensor("third2"), g).value;
       }},
      {"radius schedule rot2",
       [](const Catalog& c, const Config& g) {
         return radius_schedule(*c.find_operator("rot2"), g).value;
       }},
  };

  bool all_match = true;
  for (const Case& bc : cases) {
    set_threads(1);
    Timing s = timed(bc.run, cfg);
    set_threads(threads);
    Timing p = timed(bc.run, cfg);
    row(bc.name, s, p);
    if (s.value != p.value) all_match = false;
  }
  if (!all_match) {
    std::printf("determinism check failed: serial and parallel runs disagree\n");
    return 1;
  }
  std::printf("all kernels returned identical values in serial and parallel runs\n");
  return 0;
}
