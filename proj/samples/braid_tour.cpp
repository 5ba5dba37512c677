// Reads a parameter file (or uses the d3-ex3-adm preset), then prints the
// monodromy permutation, the extracted braid word and the component data.
#include <iostream>

#include "skewbraid/skewbraid.hpp"

int main(int argc, char** argv) {
  using namespace skewbraid;
  try {
    const SkewParam lambda = argc > 1 ? load_params(argv[1]) : preset("d3-ex3-adm");
    const AdmissibilityReport adm = admissibility_certificate(lambda);
    std::cout << "escape norm    " << escape_norm(lambda) << "\n";
    std::cout << "admissible     " << (adm.admissible ? "yes" : "no") << "\n";
    if (!adm.admissible) {
      std::cout << "reason         " << adm.reason << "\n";
      return 1;
    }

    const BraidGeometry g = track_circle(lambda, 1, 1);
    const ExtractedBraid word = extract_word(g);
    const BraidInvariants inv = invariants(g);
    std::cout << "S_q            " << format_cycles(g.permutation) << "\n";
    std::cout << "braid word     " << format_word(word.word) << "\n";
    std::cout << "exponent sum   " << inv.exponent_sum << "\n";
    for (const auto& c : fixed_point_components(g.permutation)) {
      std::cout << "component      {";
      for (std::size_t i = 0; i < c.points.size(); ++i) std::cout << (i ? " " : "") << c.points[i];
      std::cout << "} winds " << c.winding << " times\n";
    }

    const LevelCheck lc = level_monodromy_check(lambda, 2, 1);
    std::cout << "level 2        " << format_cycles(lc.numeric) << (lc.match ? "  (matches recurrence)" : "  (MISMATCH)")
              << "\n";
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.is_numerical() ? 2 : 1;
  }
}
