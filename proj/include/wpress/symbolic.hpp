#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wpress/errors.hpp"
#include "wpress/rational.hpp"

namespace wpress {

using BigInt = boost::multiprecision::cpp_int;

// Words are stored as symbol indices into the owning alphabet.
using Word = std::vector<int>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(int i) const { return symbols_.at(i); }
  std::optional<int> index_of(std::string_view s) const;

  // Canonical text form of a word: symbols concatenated when every symbol is
  // a single character, otherwise dot-separated.
  std::string format(std::span<const int> word) const;
  Word parse_word(std::string_view text) const;

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
  bool single_char_ = true;
};

// Subshift of finite type given by an order-1 transition matrix.
class Subshift {
 public:
  Subshift(Alphabet alphabet, Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed,
           bool require_irreducible = false);

  static Subshift full_shift(Alphabet alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  int symbol_count() const { return alphabet_.size(); }
  bool allows(int u, int v) const { return allowed_(u, v); }
  bool require_irreducible() const { return require_irreducible_; }
  const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& transitions() const {
    return allowed_;
  }

  bool admissible(std::span<const int> word) const;

  // Invariant violations (stranded symbols, reducibility when required).
  std::vector<std::string> validate() const;

 private:
  Alphabet alphabet_;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed_;
  bool require_irreducible_ = false;
};

// 1-block factor code between consecutive levels.
class BlockCode {
 public:
  BlockCode(Alphabet source, Alphabet target, std::vector<int> map);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  int apply(int s) const { return map_.at(s); }
  Word apply(std::span<const int> word) const;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<int> map_;
};

// Chain X_1 -> X_2 -> ... -> X_k with per-level weights. Constructible in an
// invalid state on purpose; validate_chain reports every violation.
struct ChainSystem {
  std::vector<Subshift> levels;
  std::vector<BlockCode> codes;  // codes[i] : levels[i] -> levels[i+1]
  std::vector<Rational> weights;

  int depth() const { return static_cast<int>(levels.size()); }

  // Symbol map from level 0 to the given level (identity for level 0).
  std::vector<int> cascade(int level) const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate_chain(const ChainSystem& system);

// Locally constant potential on the first level: a table over admissible
// words of fixed length `range`, absent words read as 0.
class Potential {
 public:
  Potential(int range, std::map<Word, double> table);

  static Potential zero() { return Potential(1, {}); }

  int range() const { return range_; }
  const std::map<Word, double>& table() const { return table_; }

  // Value on the cylinder determined by the first `range` entries of window.
  double value(std::span<const int> window) const;
  // max |f|; 0-default entries count, so a partial table never reports a
  // norm below 0.
  double sup_norm() const;
  double min_value() const;
  double max_value() const;

  std::vector<std::string> validate(const Subshift& level1) const;

 private:
  int range_;
  std::map<Word, double> table_;
};

// --- language operations -----------------------------------------------

// Exact number of admissible length-n words (integer transfer matrix powers).
BigInt word_count(const Subshift& shift, int n);

// Lexicographically ordered admissible words; throws ResourceCapError when
// the exact count exceeds the cap.
std::vector<Word> words(const Subshift& shift, int n,
                        std::uint64_t cap = kDefaultEnumerationCap);

// Depth-first sweep over admissible length-n words without materializing the
// list. Visitor receives a span valid only during the call.
template <class Visitor>
void for_each_word(const Subshift& shift, int n, Visitor&& visit) {
  if (n < 1) throw std::invalid_argument("word length must be >= 1");
  const int a = shift.symbol_count();
  std::vector<int> buf(static_cast<size_t>(n));
  // Iterative DFS with explicit symbol counters.
  int pos = 0;
  buf[0] = -1;
  while (pos >= 0) {
    int& s = buf[pos];
    ++s;
    if (s >= a) {
      --pos;
      continue;
    }
    if (pos > 0 && !shift.allows(buf[pos - 1], s)) continue;
    if (pos == n - 1) {
      visit(std::span<const int>(buf.data(), buf.size()));
    } else {
      ++pos;
      buf[pos] = -1;
    }
  }
}

Word apply_code(const BlockCode& code, const Word& word);

// Exact maximum of the horizon-step Birkhoff sum of the potential over all
// points whose leading coordinates equal `prefix`. Requires horizon <= |prefix|;
// when the potential's range reaches past the prefix the maximum is taken
// over admissible extensions (at most range-1 extra symbols).
double birkhoff_sup(const ChainSystem& system, const Potential& potential,
                    std::span<const int> prefix, long horizon);

}  // namespace wpress
