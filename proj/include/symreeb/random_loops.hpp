#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "spectral.hpp"

namespace symreeb {

/// Trigonometric loop of symmetric matrices of degree <= 3,
/// S(t) = [[a, b], [b, c]] with each entry a_0 + sum_j (p_j cos + q_j sin)(2 pi j t / T).
struct TrigLoop {
  double T = 1.0;
  std::array<std::array<double, 4>, 3> cos_coeff{};  // entries a, b, c
  std::array<std::array<double, 4>, 3> sin_coeff{};  // index 0 unused

  Mat2 operator()(double t) const {
    std::array<double, 3> v{};
    const double w = 2.0 * M_PI / T;
    for (int e = 0; e < 3; ++e) {
      v[e] = cos_coeff[e][0];
      for (int j = 1; j < 4; ++j) v[e] += cos_coeff[e][j] * std::cos(j * w * t) + sin_coeff[e][j] * std::sin(j * w * t);
    }
    Mat2 m;
    m << v[0], v[1], v[1], v[2];
    return m;
  }

  /// S(-t) = I S(t) I: diagonal entries even in t, off-diagonal odd.
  bool is_reflection_symmetric() const {
    for (int j = 0; j < 4; ++j)
      if (sin_coeff[0][j] != 0.0 || sin_coeff[2][j] != 0.0 || cos_coeff[1][j] != 0.0) return false;
    return true;
  }

  SymmetricLoop loop() const {
    const TrigLoop self = *this;
    return {T, [self](double t) { return self(t); }, is_reflection_symmetric()};
  }
};

/// Coefficients uniform in [-amp, amp]; the reflection-symmetric family keeps
/// only cosines on the diagonal and sines off it.
template <class Rng>
TrigLoop random_trig_loop(Rng& rng, bool symmetric, int degree = 3, double amp = 2.0, double T = 1.0) {
  std::uniform_real_distribution<double> u(-amp, amp);
  TrigLoop l;
  l.T = T;
  for (int e = 0; e < 3; ++e)
    for (int j = 0; j <= degree && j < 4; ++j) {
      const bool diag = e != 1;
      const double c = u(rng), s = u(rng);
      l.cos_coeff[e][j] = (!symmetric || diag) ? c : 0.0;
      if (j > 0) l.sin_coeff[e][j] = (!symmetric || !diag) ? s : 0.0;
    }
  return l;
}

/// A trigonometric loop with its fundamental solution at lambda = 0.
struct LoopInstance {
  TrigLoop trig;
  SymmetricLoop s;
  SymplecticPath psi;
};

inline LoopInstance make_instance(const TrigLoop& t, const ode::Options& opt = {}) {
  LoopInstance in{t, t.loop(), {}};
  in.psi = fundamental_solution(in.s, 0.0, opt);
  return in;
}

}  // namespace symreeb
