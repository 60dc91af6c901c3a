// Benchmark for the sparse-matrix assembly kernel: times the serial path
// against the parallel one on growing windows and checks that both produce
// identical matrices.  Usage: qcpat_bench [max-depth] [repeats]
#include "qcpat/action.hpp"
#include "qcpat/patterns.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace qcpat;

namespace {

using Clock = std::chrono::steady_clock;

double time_build(const Signature& sig, const GenSymbol& g, int N, Exec exec,
                  int repeats, GenMatrix& last) {
  double best = 0.0;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    last = build_matrix(sig, g, N, exec);
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (r == 0 || ms < best) best = ms;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int maxDepth = argc > 1 ? std::atoi(argv[1]) : 7;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  if (maxDepth < 3 || repeats < 1) {
    std::fprintf(stderr, "usage: qcpat_bench [max-depth >= 3] [repeats >= 1]\n");
    return 2;
  }

  const std::vector<std::string> sigNames = {"ls-s0", "step-3"};
  const std::vector<GenSymbol> gens = {GenSymbol::e(0), GenSymbol::f(0),
                                       GenSymbol::f(-2)};

  std::printf("%-8s %-5s %4s %6s %12s %12s %8s %6s\n", "sig", "gen", "N", "dim",
              "serial-ms", "parallel-ms", "speedup", "agree");
  bool allAgree = true;
  for (const std::string& name : sigNames) {
    const Signature sig = *battery_signature(name);
    for (int N = 3; N <= maxDepth; N += 2) {
      const std::size_t dim = enumerate_basis(sig, N).size();
      for (const GenSymbol& g : gens) {
        GenMatrix serial;
        GenMatrix parallel;
        const double serialMs = time_build(sig, g, N, Exec::Serial, repeats, serial);
        const double parallelMs =
            time_build(sig, g, N, Exec::Parallel, repeats, parallel);
        const bool agree = serial.equals(parallel);
        allAgree = allAgree && agree;
        std::printf("%-8s %-5s %4d %6zu %12.3f %12.3f %8.2f %6s\n", name.c_str(),
                    gen_name(g).c_str(), N, dim, serialMs, parallelMs,
                    parallelMs > 0 ? serialMs / parallelMs : 0.0,
                    agree ? "yes" : "NO");
      }
    }
  }
  if (!allAgree) {
    std::fprintf(stderr, "serial and parallel kernels disagree\n");
    return 1;
  }
  return 0;
}
