#include "zuklab/words.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "zuklab/error.hpp"

namespace zuklab {

namespace {

constexpr std::uint64_t kCountLimit = std::uint64_t{1} << 63;

std::uint64_t checked(unsigned __int128 v, const char* what) {
  if (v > kCountLimit) throw DeskScaleExceeded(what);
  return static_cast<std::uint64_t>(v);
}

void check_alphabet(int k) {
  if (k < 1) throw InvalidInput("alphabet size must be at least 1");
}

}  // namespace

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == -w[i + 1]) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (w.empty()) return false;
  if (w.size() == 1) return w[0] != 0;
  return is_reduced(w) && w.front() != -w.back();
}

std::string format_word(const Word& w, int alphabet_size) {
  std::string out;
  if (alphabet_size <= 26) {
    for (int x : w) out += static_cast<char>(x > 0 ? 'a' + x - 1 : 'A' - x - 1);
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i]);
  }
  return out + "]";
}

std::uint64_t count_cyclically_reduced(int k, int l) {
  check_alphabet(k);
  if (l < 1) throw InvalidInput("word length must be positive");
  unsigned __int128 p = 1;
  for (int i = 0; i < l; ++i) {
    p *= static_cast<unsigned>(2 * k - 1);
    checked(p, "cyclically reduced word count");
  }
  const unsigned __int128 extra = 1 + ((l % 2 == 0) ? 2 * static_cast<unsigned>(k - 1) : 0);
  return checked(p + extra, "cyclically reduced word count");
}

WPrimeTable::WPrimeTable(int k, int t_max) : k_(k), t_max_(t_max) {
  check_alphabet(k);
  if (t_max < 1) throw InvalidInput("word length must be positive");
  tail_pos_.assign(static_cast<std::size_t>(t_max), 0);
  tail_neg_.assign(static_cast<std::size_t>(t_max), 0);
  tail_pos_[0] = 1;
  tail_neg_[0] = 0;
  const auto uk = static_cast<unsigned __int128>(k);
  for (std::size_t r = 1; r < tail_pos_.size(); ++r) {
    const unsigned __int128 p = tail_pos_[r - 1];
    const unsigned __int128 n = tail_neg_[r - 1];
    tail_pos_[r] = checked(uk * p + (uk - 1) * n, "W' count table");
    tail_neg_[r] = checked((uk - 1) * p + uk * n, "W' count table");
  }
  checked(uk * tail_pos_.back(), "W' count table");
}

WPrimeTable WPrimeTable::cached(int k, int t_max) {
  const char* dir = std::getenv("ZUKLAB_CACHE");
  if (dir == nullptr || *dir == '\0') return WPrimeTable(k, t_max);

  const std::filesystem::path path =
      std::filesystem::path(dir) / ("wprime_k" + std::to_string(k) + ".txt");
  {
    std::ifstream in(path);
    int file_k = 0;
    int file_t = 0;
    if (in >> file_k >> file_t && file_k == k && file_t >= t_max && t_max >= 1) {
      WPrimeTable table;
      table.k_ = k;
      table.t_max_ = file_t;
      table.tail_pos_.resize(static_cast<std::size_t>(file_t));
      table.tail_neg_.resize(static_cast<std::size_t>(file_t));
      bool ok = true;
      for (int r = 0; r < file_t && ok; ++r) {
        int row = -1;
        ok = static_cast<bool>(in >> row >> table.tail_pos_[static_cast<std::size_t>(r)] >>
                               table.tail_neg_[static_cast<std::size_t>(r)]) &&
             row == r;
      }
      if (ok) return table;
    }
  }
  WPrimeTable table(k, t_max);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << k << ' ' << t_max << '\n';
    for (int r = 0; r < t_max; ++r) {
      out << r << ' ' << table.tail_pos_[static_cast<std::size_t>(r)] << ' '
          << table.tail_neg_[static_cast<std::size_t>(r)] << '\n';
    }
  }
  std::filesystem::rename(tmp, path, ec);
  return table;
}

std::uint64_t WPrimeTable::tail(int r, bool positive) const {
  const auto i = static_cast<std::size_t>(r);
  return positive ? tail_pos_.at(i) : tail_neg_.at(i);
}

std::uint64_t WPrimeTable::count(int t) const {
  if (t < 1 || t > t_max_) throw InvalidInput("word length outside the table");
  return static_cast<std::uint64_t>(k_) * tail(t - 1, true);
}

Word WPrimeTable::unrank(int t, std::uint64_t index) const {
  if (index >= count(t)) throw InvalidInput("index out of range");
  Word w;
  w.reserve(static_cast<std::size_t>(t));
  const std::uint64_t first_block = tail(t - 1, true);
  w.push_back(static_cast<int>(index / first_block) + 1);
  index %= first_block;
  for (int pos = 1; pos < t; ++pos) {
    const int remaining = t - 1 - pos;
    const int forbidden = -w.back();
    bool placed = false;
    for (int code = 0; code < 2 * k_ && !placed; ++code) {
      const int letter = code < k_ ? code + 1 : -(code - k_ + 1);
      if (letter == forbidden) continue;
      const std::uint64_t block = tail(remaining, letter > 0);
      if (index < block) {
        w.push_back(letter);
        placed = true;
      } else {
        index -= block;
      }
    }
    if (!placed) throw Error("unrank: table inconsistent");
  }
  return w;
}

std::uint64_t WPrimeTable::rank(const Word& w) const {
  const int t = static_cast<int>(w.size());
  if (t < 1 || t > t_max_) throw InvalidInput("word length outside the table");
  if (w.front() <= 0 || w.back() <= 0 || !is_reduced(w)) {
    throw InvalidInput("word is not in W'");
  }
  for (int x : w) {
    if (x == 0 || x > k_ || x < -k_) throw InvalidInput("letter outside the alphabet");
  }
  std::uint64_t index = static_cast<std::uint64_t>(w[0] - 1) * tail(t - 1, true);
  for (int pos = 1; pos < t; ++pos) {
    const int remaining = t - 1 - pos;
    const int forbidden = -w[static_cast<std::size_t>(pos - 1)];
    const int target = w[static_cast<std::size_t>(pos)];
    for (int code = 0; code < 2 * k_; ++code) {
      const int letter = code < k_ ? code + 1 : -(code - k_ + 1);
      if (letter == target) break;
      if (letter == forbidden) continue;
      index += tail(remaining, letter > 0);
    }
  }
  return index;
}

std::uint64_t count_wprime(int k, int t) { return WPrimeTable::cached(k, t).count(t); }

Word unrank_wprime(int k, int t, std::uint64_t index) {
  return WPrimeTable::cached(k, t).unrank(t, index);
}

std::uint64_t rank_wprime(int k, const Word& w) {
  if (w.empty()) throw InvalidInput("word is not in W'");
  return WPrimeTable::cached(k, static_cast<int>(w.size())).rank(w);
}

}  // namespace zuklab
