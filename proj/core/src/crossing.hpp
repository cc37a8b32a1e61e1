#pragma once

// Internal helpers shared by the differential calculi: deformation phases for
// letters crossing symbols, and the letterwise formal derivative of a
// monomial.  Not installed.

#include <span>

#include "ncs/algebra.hpp"
#include "ncs/presentation.hpp"

namespace ncs::detail {

/// Phase exponent for one letter crossing one symbol, either direction:
/// fixed * moving -> mu^B * moving * fixed.
inline long long cross_phase(const Presentation& pres, int fixed, int moving) {
  const GeneratorInfo& gf = pres.generator(fixed);
  const GeneratorInfo& gm = pres.generator(moving);
  if (gf.pair < 0 || gm.pair < 0) return 0;
  return static_cast<long long>(gf.pair_sign) * gm.pair_sign *
         pres.pair_matrix()[gf.pair][gm.pair];
}

/// Phase for a whole monomial moving left-to-right through a sequence of
/// symbols (the symbols' letters given by generator index).
inline long long monomial_cross_letters(const Presentation& pres, const Monomial& m,
                                        std::span<const int> letters) {
  long long total = 0;
  for (int g = 0; g < pres.generator_count(); ++g) {
    if (m.exps[g] == 0) continue;
    for (int letter : letters)
      total += static_cast<long long>(m.exps[g]) * cross_phase(pres, g, letter);
  }
  return total;
}

/// Letterwise formal derivative of a raw exponent word: calls
/// fn(generator, remainder_exponents, phase_exponent, multiplicity) once per
/// distinct letter, where the phase moves the derived symbol to the front.
template <typename Fn>
void for_each_letter_derivative(const Presentation& pres, const ExponentArray& exps, Fn&& fn) {
  for (int g = 0; g < pres.generator_count(); ++g) {
    if (exps[g] == 0) continue;
    long long prefix = 0;
    for (int h = 0; h < g; ++h)
      if (exps[h] != 0) prefix += static_cast<long long>(exps[h]) * cross_phase(pres, h, g);
    ExponentArray rest = exps;
    rest[g] -= 1;
    fn(g, rest, prefix, static_cast<int>(exps[g]));
  }
}

}  // namespace ncs::detail
