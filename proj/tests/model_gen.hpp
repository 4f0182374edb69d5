#pragma once

#include <random>
#include <vector>

#include "tightproj/random.hpp"
#include "tightproj/spectrum.hpp"

namespace testsupport {

enum class Family { explicit_tail, harmonic_shift, alternating, two_cluster, compact_decay };

inline constexpr Family kFamilies[] = {Family::explicit_tail, Family::harmonic_shift,
                                       Family::alternating, Family::two_cluster,
                                       Family::compact_decay};

// Valid models with their side counts worked out from the closed forms.
inline tightproj::SpectrumModel random_model(std::mt19937_64& rng, Family family) {
  using namespace tightproj;
  constexpr auto F = SideCount::finite;
  constexpr auto I = SideCount::infinite;
  switch (family) {
    case Family::explicit_tail: {
      std::vector<double> head(uniform_index(rng, 0, 10));
      for (double& h : head) h = uniform(rng, 0.0, 5.0);
      const double tail = uniform(rng, 0.1, 5.0);
      return SpectrumModel::make(ExplicitTail{head, tail}, {{tail, F, I}});
    }
    case Family::harmonic_shift: {
      const double beta = uniform(rng, 1.0, 5.0);
      const double mag = uniform(rng, 0.1, std::min(beta, 2.0));
      const double c = (rng() & 1) ? mag : -mag;
      const double p = uniform(rng, 1.0, 2.0);
      return SpectrumModel::make(HarmonicShift{beta, c, p},
                                 {{beta, c > 0 ? I : F, c > 0 ? F : I}});
    }
    case Family::alternating: {
      const double beta = uniform(rng, 1.0, 5.0);
      const double c = uniform(rng, 0.1, 1.0);
      const double p = uniform(rng, 1.0, 2.0);
      return SpectrumModel::make(Alternating{beta, c, p}, {{beta, I, I}});
    }
    case Family::two_cluster: {
      const double b1 = uniform(rng, 0.5, 2.0);
      const double b2 = b1 + uniform(rng, 0.5, 2.0);
      const double c1 = uniform(rng, 0.05, 0.4);
      const double c2 = uniform(rng, 0.05, 0.4);
      return SpectrumModel::make(TwoCluster{b1, c1, b2, c2}, {{b1, F, I}, {b2, I, F}});
    }
    case Family::compact_decay: {
      const double c = uniform(rng, 0.5, 5.0);
      const double r = uniform(rng, 0.1, 0.9);
      return SpectrumModel::make(CompactDecay{c, r}, {{0.0, F, I}});
    }
  }
  return SpectrumModel::make(CompactDecay{1.0, 0.5}, {{0.0, F, I}});
}

}  // namespace testsupport
