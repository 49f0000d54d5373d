// Times prover frontier expansion: the serial reference against the OpenMP
// version, on frontiers taken from the race-condition searches.

#include <chrono>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "effdiag/prover.hpp"

using namespace effdiag;

namespace {

// States reachable from the race interleavings within `depth` rewrites.
std::vector<Diagram> frontier(const Theory& theory, std::size_t depth, std::size_t max_prelude, std::size_t cap) {
  std::vector<Diagram> level;
  std::set<std::string> seen;
  for (const auto& goal : race_condition_goals(theory))
    if (seen.insert(slice_key(normal_form(goal.interleaving))).second) level.push_back(normal_form(goal.interleaving));
  std::vector<Diagram> all = level;
  for (std::size_t d = 0; d < depth && all.size() < cap; ++d) {
    std::vector<Diagram> next;
    for (const auto& succs : expand_serial(theory, level, max_prelude))
      for (const auto& s : succs)
        if (all.size() + next.size() < cap && seen.insert(s.key).second) next.push_back(s.normalized);
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

template <class F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

bool same(const std::vector<std::vector<Successor>>& a, const std::vector<std::vector<Successor>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t k = 0; k < a[i].size(); ++k)
      if (a[i][k].key != b[i][k].key || !(a[i][k].occurrence == b[i][k].occurrence)) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frontier expansion benchmark"};
  std::size_t depth = 3, cap = 2000, max_prelude = 8;
  int repeat = 3;
  std::vector<int> workers{2, 4, 8};
  app.add_option("--depth", depth, "Rewrite depth used to build the frontier");
  app.add_option("--cap", cap, "Maximum number of frontier states");
  app.add_option("--max-prelude", max_prelude, "Exchange budget for matching");
  app.add_option("--repeat", repeat, "Runs per measurement (best is reported)")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Thread counts to try");
  CLI11_PARSE(app, argc, argv);

  const Theory race = race_condition_theory();
  const std::vector<Diagram> states = frontier(race, depth, max_prelude, cap);
  std::cout << "frontier: " << states.size() << " states\n";

  std::vector<std::vector<Successor>> reference;
  const double serial = best_of(repeat, [&] { reference = expand_serial(race, states, max_prelude); });
  std::size_t successors = 0;
  for (const auto& s : reference) successors += s.size();
  std::cout << "serial:     " << serial * 1e3 << " ms (" << successors << " successors)\n";

  bool ok = true;
  for (int w : workers) {
    std::vector<std::vector<Successor>> got;
    const double t = best_of(repeat, [&] { got = expand_parallel(race, states, max_prelude, w); });
    const bool match = same(reference, got);
    ok = ok && match;
    std::cout << "parallel " << w << ": " << t * 1e3 << " ms, speedup " << serial / t << (match ? "" : ", MISMATCH")
              << "\n";
  }
  return ok ? 0 : 1;
}
