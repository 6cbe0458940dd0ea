#pragma once

#include <random>
#include <string>
#include <vector>

#include "qolct/field.hpp"
#include "qolct/qolct.hpp"

namespace qolct {

struct ParamSet {
  OffsetParams A1;
  OffsetParams A2;
  PureUnit lambda = PureUnit::i();
  PureUnit mu = PureUnit::j();
};

/// b in [0.5, 2], a and d in [-2, 2], c = (ad - 1)/b redrawn until |c| <= 2,
/// tau and eta in [-1, 1].
OffsetParams random_offset_params(std::mt19937_64& rng);

/// Random matrices; axes are (i, j) when `ij` is set, otherwise random pure units.
ParamSet random_param_set(std::mt19937_64& rng, bool ij);

QField random_field(const Grid2D& grid, std::mt19937_64& rng);

/// beta1 e^{-(alpha1 t1^2 + alpha2 t2^2)} beta2 e^{mu gamma (t1^2 + t2^2)}.
QField chirped_gaussian(const Grid2D& grid, double alpha1, double alpha2, const GaussianAmplitude& beta,
                        const PureUnit& lambda, const PureUnit& mu, double gamma);

/// conj(E1(t1)) A e^{-alpha |t|^2} conj(E2(t2)) with E_k = e^{unit (t tau / b + a t^2 / (2b))}:
/// its transform has an exact Gaussian envelope. Requires b1, b2 > 0.
QField hardy_critical_signal(const Grid2D& grid, const ParamSet& ps, double alpha, const Quaternion& amplitude);

struct CorpusSignal {
  std::string name;
  QField field;
};

/// Real Gaussian, quaternion Gaussian, chirped Gaussian and shifted Gaussian.
std::vector<CorpusSignal> signal_corpus(const Grid2D& grid, const PureUnit& lambda, const PureUnit& mu);

}  // namespace qolct
