#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zuklab/rng.hpp"
#include "zuklab/words.hpp"

namespace zuklab {

/**
 * Group presentation <generators | relators>.
 *
 * `alphabet_size` is k for presentations over A u A^-1 and m for positive
 * triangular ones. Relators are kept sorted so that equal relator sets
 * compare equal.
 */
struct Presentation {
  int alphabet_size = 0;
  bool positive_only = false;
  std::vector<Word> relators;

  /// Throws InvalidInput unless letters lie in +-1..alphabet_size and
  /// positive presentations only have positive length-3 relators.
  void validate() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

enum class Model { density, binomial, bprime, mplus };

std::string to_string(Model m);
Model model_from_string(const std::string& name);

/// Parameters of any of the four models; unused fields are ignored.
/// For mplus, `rho` is used unless `alpha` is set, in which case
/// rho = C / m^alpha.
struct ModelParams {
  Model model = Model::mplus;
  int k = 2;
  int l = 3;
  double d = 0.0;
  double rho = 0.0;
  std::uint64_t m = 2;
  std::optional<double> alpha;
  double C = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// C / m^alpha, rejected when it exceeds 1.
double mplus_rho(double alpha, double C, std::uint64_t m);

/// floor((2k-1)^{dl}), with values within 1e-9 relative of an integer
/// snapped to it.
std::uint64_t density_relator_count(int k, int l, double d);

Presentation sample_density(int k, int l, double d, std::uint64_t seed);
Presentation sample_binomial(int k, int l, double rho, std::uint64_t seed);
Presentation sample_bprime(int k, int l, double rho, std::uint64_t seed);
Presentation sample_mplus(std::uint64_t m, double rho, std::uint64_t seed);

/// Same samplers driven by an existing generator.
Presentation sample_density(int k, int l, double d, Rng& rng);
Presentation sample_binomial(int k, int l, double rho, Rng& rng);
Presentation sample_bprime(int k, int l, double rho, Rng& rng);
Presentation sample_mplus(std::uint64_t m, double rho, Rng& rng);

Presentation sample(const ModelParams& params);

/// Uniform cyclically reduced word of length l over k generators.
Word random_cyclically_reduced_word(int k, int l, Rng& rng);

/// Maps s_i s_j s_k to unrank(i-1) unrank(j-1) unrank(k-1) in W'_{l/3}.
Presentation phi_expand(const Presentation& p, int k, int l);

}  // namespace zuklab
