// Builds one parameter per cycle type for d = 2..5 and checks the tracked
// monodromy against the request.
#include <cstdio>

#include "skewbraid/skewbraid.hpp"

int main() {
  using namespace skewbraid;
  int failures = 0;
  for (int d = 2; d <= 5; ++d) {
    for (const CycleSpec& spec : cycle_type_specs(d)) {
      const ScaledParam sp = cycle_type_params_auto(spec);
      const Perm s = track_circle(sp.lambda, 1, 1).permutation;
      const bool ok = s.cycle_type() == spec.cycle_type();
      failures += !ok;
      std::printf("d=%d  %-16s scale %-4g %s\n", d, format_cycles(s).c_str(), sp.scale, ok ? "ok" : "MISMATCH");
    }
  }
  return failures == 0 ? 0 : 1;
}
