// Regenerates the cached base certificates under data/certificates with
// seeded local search. Usage: make_base_certificates [out_dir]

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>

#include "pgchroma/pgchroma.hpp"

namespace {

struct Target {
  int q, n, k;
};

constexpr Target kTargets[] = {{3, 3, 2}, {4, 3, 2}, {5, 3, 2}, {5, 4, 2}, {3, 5, 3}, {4, 5, 3}};
constexpr std::uint64_t kSeeds[] = {0, 1, 2, 3};

}  // namespace

int main(int argc, char** argv) {
  using namespace pgchroma;
  const std::filesystem::path dir = argc > 1 ? argv[1] : PGCHROMA_DATA_DIR;
  std::filesystem::create_directories(dir);
  int failures = 0;
  for (const Target& tg : kTargets) {
    const auto space = ProjectiveSpace::create(tg.n, tg.q);
    const Hypergraph h = build_hypergraph(space, 2);
    bool done = false;
    for (std::uint64_t seed : kSeeds) {
      SearchConfig config;
      config.seed = seed;
      config.restarts = 200;
      config.time_limit_secs = 600;
      const SearchOutcome out = local_search(h, tg.k, config);
      std::printf("q=%d n=%d k=%d seed=%llu %s moves=%llu %.2fs\n", tg.q, tg.n, tg.k,
                  static_cast<unsigned long long>(seed), std::string(to_string(out.status)).c_str(),
                  static_cast<unsigned long long>(out.nodes), out.elapsed.count());
      if (out.status != SearchStatus::Sat) continue;
      const auto path = dir / ("q" + std::to_string(tg.q) + "_t2_n" + std::to_string(tg.n) + "_k" +
                               std::to_string(tg.k) + ".pgc");
      write_certificate(*out.certificate, path.string());
      done = true;
      break;
    }
    if (!done) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
