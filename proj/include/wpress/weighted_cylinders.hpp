#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wpress/symbolic.hpp"

namespace wpress {

// Per-level agreement windows m_i = ceil((a_1+...+a_i) n), evaluated with
// exact rational weights.
struct WindowProfile {
  int n = 0;
  std::vector<long> m;  // m[i] for level i (0-based), nondecreasing

  long total() const { return m.empty() ? 0 : m.back(); }
};

WindowProfile window_profile(const std::vector<Rational>& weights, int n);

// Finite-stage weighted Bowen ball on a subshift chain: one word per level,
// level i pinned on [0, m_i). Stored words; the set of points it names is
// determined by the invariants (image prefixes agree across levels).
struct WeightedCylinder {
  int n = 0;
  std::vector<Word> level_words;
};

std::vector<std::string> validate_cylinder(const ChainSystem& system,
                                           const WeightedCylinder& cylinder);

// Position bookkeeping for the weighted-cylinder walk. Every position
// j < m_k carries exactly one free symbol, living at the shallowest level
// whose window is still open; deeper levels see its code image.
class CylinderWalk {
 public:
  CylinderWalk(const ChainSystem& system, int n);

  const ChainSystem& system() const { return *system_; }
  const WindowProfile& profile() const { return profile_; }
  long total_len() const { return profile_.total(); }
  // Level (0-based) owning position j.
  int owner(long j) const { return owner_.at(static_cast<size_t>(j)); }
  int owner_symbols(long j) const {
    return system_->levels[owner(j)].symbol_count();
  }
  // Code image of a level `from` symbol at level `to` (from <= to).
  int lift(int from, int to, int s) const { return lifts_[from][to - from][s]; }
  bool allowed_step(long j, int s_prev, int s) const;

  // Free-symbol key of the cylinder containing a level-1 prefix
  // (prefix length >= m_k required).
  Word key_of_prefix(std::span<const int> prefix) const;
  WeightedCylinder cylinder_from_key(std::span<const int> key) const;

 private:
  const ChainSystem* system_;
  WindowProfile profile_;
  std::vector<int> owner_;
  // lifts_[from][d][s]: symbol s at level `from` seen at level from+d.
  std::vector<std::vector<std::vector<int>>> lifts_;
};

BigInt count_weighted_cylinders(const ChainSystem& system, int n);

// Visits free-symbol keys in lexicographic order (level-1 word, then the
// per-level suffixes). Span is valid only during the call.
void for_each_weighted_cylinder(const ChainSystem& system, int n,
                                const std::function<void(std::span<const int>)>& visit);

std::vector<WeightedCylinder> enumerate_weighted_cylinders(
    const ChainSystem& system, int n, std::uint64_t cap = kDefaultEnumerationCap);

// Log-scale cover cost of one cylinder:
//   -s*n + birkhoff_sup(level-1 word, m_1) / a_1.
double weight_of(const ChainSystem& system, const Potential& potential,
                 const WeightedCylinder& cylinder, double s);

// --- covers ---------------------------------------------------------------

// Per-level clopen cover: either the full partition into length-L cylinders,
// or explicit members given as unions of length-L cylinders.
struct LevelCover {
  int cylinder_len = 1;
  std::vector<std::vector<Word>> members;  // empty => partition cover
  bool is_partition() const { return members.empty(); }
};

struct CoverFamily {
  std::vector<LevelCover> levels;

  static CoverFamily cylinder_covers(const ChainSystem& system, std::vector<int> lens);
  static CoverFamily trivial(const ChainSystem& system);

  std::vector<std::string> validate(const ChainSystem& system) const;
};

// Member choice of the join element containing a level-1 prefix: one member
// index per (level, window position). Partition covers give the unique
// element; overlapping covers take the first containing member.
struct JoinElement {
  std::vector<std::vector<int>> member_indices;
  BigInt flat_index;                 // mixed-radix over (level, position)
  std::vector<std::string> level_keys;  // formatted per-level window words
};

JoinElement join_element_of(const ChainSystem& system, const CoverFamily& cover,
                            int n, std::span<const int> prefix);

// Exhaustive check that interleaving M-step blocks of a cylinder cover
// induces the same partition as the long cylinder cover, per level.
struct PowerJoinLevelReport {
  int level = 0;
  long window_count = 0;  // c_i
  long word_len = 0;      // c_i*M + L_i - 1
  BigInt lhs_classes;
  BigInt rhs_classes;
  bool equal = false;
};

struct PowerJoinReport {
  bool equal = false;
  std::vector<PowerJoinLevelReport> levels;
};

PowerJoinReport power_join_identity_check(const ChainSystem& system,
                                          const CoverFamily& cover, int M, int n,
                                          std::uint64_t cap = kDefaultEnumerationCap);

// Max oscillation of the potential within any element of the zeroth-position
// join of the cover family; exact for locally constant potentials.
double oscillation(const ChainSystem& system, const CoverFamily& cover,
                   const Potential& potential);

}  // namespace wpress
