#include "zuklab/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "zuklab/error.hpp"

namespace zuklab {

namespace {

constexpr std::uint64_t kMaxRelators = std::uint64_t{1} << 31;
constexpr std::uint64_t kEnumerateLimit = std::uint64_t{1} << 22;

void check_probability(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
}

void check_word_model(int k, int l) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (l < 1) throw InvalidInput("l must be positive");
}

std::uint64_t binomial_count(std::uint64_t population, double rho, Rng& rng) {
  if (rho * static_cast<double>(population) > static_cast<double>(kMaxRelators)) {
    throw DeskScaleExceeded("expected relator count above 2^31");
  }
  if (rho == 0.0 || population == 0) return 0;
  if (rho == 1.0) return population;
  std::binomial_distribution<std::uint64_t> dist(population, rho);
  return dist(rng);
}

/// `count` distinct uniform values in [0, population), sorted.
std::vector<std::uint64_t> distinct_indices(std::uint64_t population, std::uint64_t count,
                                            Rng& rng) {
  if (count > population) throw InvalidInput("requested count exceeds population");
  std::vector<std::uint64_t> out;
  if (population <= kEnumerateLimit && 2 * count > population) {
    std::vector<std::uint64_t> all(population);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, population - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(count);
    std::uniform_int_distribution<std::uint64_t> pick(0, population - 1);
    while (out.size() < count) {
      const std::uint64_t x = pick(rng);
      if (seen.insert(x).second) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int x : w) h = (h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(x))) * 0x100000001b3ull;
    return static_cast<std::size_t>(h);
  }
};

/// All cyclically reduced words of length l in letter-code order.
std::vector<Word> enumerate_cyclically_reduced(int k, int l) {
  std::vector<Word> out;
  Word w;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(w.size()) == l) {
      if (is_cyclically_reduced(w)) out.push_back(w);
      return;
    }
    for (int code = 0; code < 2 * k; ++code) {
      const int letter = code < k ? code + 1 : -(code - k + 1);
      if (!w.empty() && letter == -w.back()) continue;
      w.push_back(letter);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::vector<Word> distinct_cyclically_reduced(int k, int l, std::uint64_t count,
                                              std::optional<std::uint64_t> population, Rng& rng) {
  if (population && count > *population) {
    throw InvalidInput("requested count exceeds population");
  }
  std::vector<Word> out;
  if (population && *population <= kEnumerateLimit && 2 * count > *population) {
    const std::vector<Word> all = enumerate_cyclically_reduced(k, l);
    for (std::uint64_t i : distinct_indices(all.size(), count, rng)) out.push_back(all[i]);
  } else {
    std::unordered_set<Word, WordHash> seen;
    seen.reserve(count);
    while (out.size() < count) {
      Word w = random_cyclically_reduced_word(k, l, rng);
      if (seen.insert(w).second) out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Population of cyclically reduced words, or nullopt when it passes 2^63.
std::optional<std::uint64_t> word_population(int k, int l) {
  try {
    return count_cyclically_reduced(k, l);
  } catch (const DeskScaleExceeded&) {
    return std::nullopt;
  }
}

}  // namespace

void Presentation::validate() const {
  if (alphabet_size < 1) throw InvalidInput("alphabet size must be positive");
  for (const Word& w : relators) {
    if (w.empty()) throw InvalidInput("empty relator");
    for (int x : w) {
      if (x == 0 || x > alphabet_size || x < -alphabet_size) {
        throw InvalidInput("relator letter outside the alphabet");
      }
      if (positive_only && x < 0) throw InvalidInput("positive presentation with an inverse letter");
    }
    if (positive_only && w.size() != 3) throw InvalidInput("positive relator of length other than 3");
  }
}

std::string to_string(Model m) {
  switch (m) {
    case Model::density: return "density";
    case Model::binomial: return "binomial";
    case Model::bprime: return "bprime";
    case Model::mplus: return "mplus";
  }
  return "mplus";
}

Model model_from_string(const std::string& name) {
  if (name == "density") return Model::density;
  if (name == "binomial") return Model::binomial;
  if (name == "bprime") return Model::bprime;
  if (name == "mplus") return Model::mplus;
  throw InvalidInput("unknown model '" + name + "'");
}

double mplus_rho(double alpha, double C, std::uint64_t m) {
  if (m < 1) throw InvalidInput("m must be positive");
  if (!(C > 0.0)) throw InvalidInput("C must be positive");
  const double rho = C / std::pow(static_cast<double>(m), alpha);
  if (rho > 1.0) throw InvalidInput("C / m^alpha exceeds 1");
  return rho;
}

std::uint64_t density_relator_count(int k, int l, double d) {
  check_word_model(k, l);
  if (!(d >= 0.0 && d <= 1.0)) throw InvalidInput("d must lie in [0, 1]");
  const double x = std::pow(2.0 * k - 1.0, d * l);
  if (!(x <= std::ldexp(1.0, 48))) throw DeskScaleExceeded("density relator count above 2^48");
  const double nearest = std::round(x);
  const double value = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::floor(x);
  return static_cast<std::uint64_t>(value);
}

Word random_cyclically_reduced_word(int k, int l, Rng& rng) {
  check_word_model(k, l);
  std::uniform_int_distribution<int> first(0, 2 * k - 1);
  std::uniform_int_distribution<int> next(0, 2 * k - 2);
  auto letter_of = [k](int code) { return code < k ? code + 1 : -(code - k + 1); };
  Word w(static_cast<std::size_t>(l));
  do {
    w[0] = letter_of(first(rng));
    for (std::size_t i = 1; i < w.size(); ++i) {
      // Skip over the code of the cancelling letter.
      const int prev = w[i - 1];
      const int banned = prev > 0 ? k + prev - 1 : -prev - 1;
      int code = next(rng);
      if (code >= banned) ++code;
      w[i] = letter_of(code);
    }
  } while (!is_cyclically_reduced(w));
  return w;
}

Presentation sample_density(int k, int l, double d, Rng& rng) {
  const std::uint64_t count = density_relator_count(k, l, d);
  Presentation p{k, false, {}};
  p.relators = distinct_cyclically_reduced(k, l, count, word_population(k, l), rng);
  return p;
}

Presentation sample_binomial(int k, int l, double rho, Rng& rng) {
  check_word_model(k, l);
  check_probability(rho);
  const std::uint64_t population = count_cyclically_reduced(k, l);
  const std::uint64_t count = binomial_count(population, rho, rng);
  Presentation p{k, false, {}};
  p.relators = distinct_cyclically_reduced(k, l, count, population, rng);
  return p;
}

Presentation sample_bprime(int k, int l, double rho, Rng& rng) {
  check_word_model(k, l);
  check_probability(rho);
  if (l % 3 != 0) throw InvalidInput("l must be divisible by 3");
  const int t = l / 3;
  const WPrimeTable table = WPrimeTable::cached(k, t);
  const std::uint64_t w = table.count(t);
  if (w > (std::uint64_t{1} << 20)) throw DeskScaleExceeded("|W'_l| above 2^60");
  const std::uint64_t population = w * w * w;
  const std::uint64_t count = binomial_count(population, rho, rng);
  Presentation p{k, false, {}};
  for (std::uint64_t idx : distinct_indices(population, count, rng)) {
    Word word = table.unrank(t, idx / (w * w));
    const Word b = table.unrank(t, (idx / w) % w);
    const Word c = table.unrank(t, idx % w);
    word.insert(word.end(), b.begin(), b.end());
    word.insert(word.end(), c.begin(), c.end());
    p.relators.push_back(std::move(word));
  }
  std::sort(p.relators.begin(), p.relators.end());
  return p;
}

Presentation sample_mplus(std::uint64_t m, double rho, Rng& rng) {
  if (m < 2) throw InvalidInput("m must be at least 2");
  check_probability(rho);
  if (m > (std::uint64_t{1} << 20)) throw DeskScaleExceeded("m above 2^20");
  const std::uint64_t population = m * m * m;
  if (rho * static_cast<double>(population) > static_cast<double>(kMaxRelators)) {
    throw DeskScaleExceeded("m^3 rho above 2^31");
  }
  const std::uint64_t count = binomial_count(population, rho, rng);
  Presentation p{static_cast<int>(m), true, {}};
  p.relators.reserve(count);
  for (std::uint64_t idx : distinct_indices(population, count, rng)) {
    p.relators.push_back({static_cast<int>(idx / (m * m)) + 1, static_cast<int>((idx / m) % m) + 1,
                          static_cast<int>(idx % m) + 1});
  }
  return p;
}

Presentation sample_density(int k, int l, double d, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_density(k, l, d, rng);
}

Presentation sample_binomial(int k, int l, double rho, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_binomial(k, l, rho, rng);
}

Presentation sample_bprime(int k, int l, double rho, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_bprime(k, l, rho, rng);
}

Presentation sample_mplus(std::uint64_t m, double rho, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_mplus(m, rho, rng);
}

Presentation sample(const ModelParams& params) {
  switch (params.model) {
    case Model::density: return sample_density(params.k, params.l, params.d, params.seed);
    case Model::binomial: return sample_binomial(params.k, params.l, params.rho, params.seed);
    case Model::bprime: return sample_bprime(params.k, params.l, params.rho, params.seed);
    case Model::mplus: {
      const double rho = params.alpha ? mplus_rho(*params.alpha, params.C, params.m) : params.rho;
      return sample_mplus(params.m, rho, params.seed);
    }
  }
  throw InvalidInput("unknown model");
}

Presentation phi_expand(const Presentation& p, int k, int l) {
  if (!p.positive_only) throw InvalidInput("phi_expand needs a positive presentation");
  if (l % 3 != 0 || l < 3) throw InvalidInput("l must be a positive multiple of 3");
  p.validate();
  const int t = l / 3;
  const WPrimeTable table = WPrimeTable::cached(k, t);
  const std::uint64_t available = table.count(t);
  if (static_cast<std::uint64_t>(p.alphabet_size) > available) {
    throw InvalidInput("m = " + std::to_string(p.alphabet_size) + " exceeds |W'_" +
                       std::to_string(t) + "| = " + std::to_string(available));
  }
  Presentation out{k, false, {}};
  for (const Word& r : p.relators) {
    Word w;
    for (int s : r) {
      const Word piece = table.unrank(t, static_cast<std::uint64_t>(s - 1));
      w.insert(w.end(), piece.begin(), piece.end());
    }
    out.relators.push_back(std::move(w));
  }
  std::sort(out.relators.begin(), out.relators.end());
  return out;
}

}  // namespace zuklab
