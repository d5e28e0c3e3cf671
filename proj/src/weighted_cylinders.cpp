#include "wpress/weighted_cylinders.hpp"

#include <algorithm>
#include <limits>

namespace wpress {

WindowProfile window_profile(const std::vector<Rational>& weights, int n) {
  if (n < 1) throw std::invalid_argument("window profile needs n >= 1");
  if (weights.empty()) throw std::invalid_argument("empty weight vector");
  WindowProfile p;
  p.n = n;
  Rational partial;
  for (const Rational& w : weights) {
    partial += w;
    p.m.push_back(partial.ceil_mul(n));
  }
  for (size_t i = 1; i < p.m.size(); ++i)
    if (p.m[i] < p.m[i - 1]) throw std::logic_error("window profile not monotone");
  return p;
}

CylinderWalk::CylinderWalk(const ChainSystem& system, int n)
    : system_(&system), profile_(window_profile(system.weights, n)) {
  const int k = system.depth();
  owner_.assign(static_cast<size_t>(profile_.total()), 0);
  for (long j = 0; j < profile_.total(); ++j) {
    int lvl = 0;
    while (lvl < k && profile_.m[lvl] <= j) ++lvl;
    owner_[static_cast<size_t>(j)] = lvl;  // minimal level with open window
  }
  lifts_.resize(static_cast<size_t>(k));
  for (int from = 0; from < k; ++from) {
    const int a = system.levels[from].symbol_count();
    lifts_[from].resize(static_cast<size_t>(k - from));
    std::vector<int> cur(static_cast<size_t>(a));
    for (int s = 0; s < a; ++s) cur[s] = s;
    lifts_[from][0] = cur;
    for (int d = 1; from + d < k; ++d) {
      for (int s = 0; s < a; ++s) cur[s] = system.codes[from + d - 1].apply(cur[s]);
      lifts_[from][static_cast<size_t>(d)] = cur;
    }
  }
}

bool CylinderWalk::allowed_step(long j, int s_prev, int s) const {
  const int prev_lvl = owner(j - 1);
  const int lvl = owner(j);
  const int at_lvl = lift(prev_lvl, lvl, s_prev);
  return system_->levels[lvl].allows(at_lvl, s);
}

Word CylinderWalk::key_of_prefix(std::span<const int> prefix) const {
  if (static_cast<long>(prefix.size()) < total_len())
    throw std::invalid_argument("prefix shorter than the cylinder window");
  Word key(static_cast<size_t>(total_len()));
  for (long j = 0; j < total_len(); ++j)
    key[static_cast<size_t>(j)] = lift(0, owner(j), prefix[static_cast<size_t>(j)]);
  return key;
}

WeightedCylinder CylinderWalk::cylinder_from_key(std::span<const int> key) const {
  if (static_cast<long>(key.size()) != total_len())
    throw std::invalid_argument("key length mismatch");
  WeightedCylinder c;
  c.n = profile_.n;
  const int k = system_->depth();
  c.level_words.resize(static_cast<size_t>(k));
  for (int lvl = 0; lvl < k; ++lvl) {
    Word& w = c.level_words[static_cast<size_t>(lvl)];
    w.resize(static_cast<size_t>(profile_.m[lvl]));
    for (long j = 0; j < profile_.m[lvl]; ++j)
      w[static_cast<size_t>(j)] = lift(owner(j), lvl, key[static_cast<size_t>(j)]);
  }
  return c;
}

std::vector<std::string> validate_cylinder(const ChainSystem& system,
                                           const WeightedCylinder& cylinder) {
  std::vector<std::string> out;
  const int k = system.depth();
  if (static_cast<int>(cylinder.level_words.size()) != k) {
    out.push_back("expected one word per level");
    return out;
  }
  WindowProfile profile = window_profile(system.weights, cylinder.n);
  for (int i = 0; i < k; ++i) {
    const Word& w = cylinder.level_words[static_cast<size_t>(i)];
    if (static_cast<long>(w.size()) != profile.m[i])
      out.push_back("level " + std::to_string(i + 1) + " word has wrong length");
    else if (!system.levels[i].admissible(w))
      out.push_back("level " + std::to_string(i + 1) + " word not admissible");
  }
  if (!out.empty()) return out;
  for (int i = 1; i < k; ++i) {
    const Word image = system.codes[i - 1].apply(cylinder.level_words[i - 1]);
    const Word& w = cylinder.level_words[static_cast<size_t>(i)];
    for (size_t j = 0; j < image.size(); ++j)
      if (w[j] != image[j]) {
        out.push_back("level " + std::to_string(i + 1) +
                      " word disagrees with the image of level " + std::to_string(i));
        break;
      }
  }
  return out;
}

BigInt count_weighted_cylinders(const ChainSystem& system, int n) {
  CylinderWalk walk(system, n);
  const long len = walk.total_len();
  if (len == 0) return 0;
  std::vector<BigInt> state(static_cast<size_t>(walk.owner_symbols(0)), 1);
  for (long j = 1; j < len; ++j) {
    std::vector<BigInt> next(static_cast<size_t>(walk.owner_symbols(j)), 0);
    for (int sp = 0; sp < static_cast<int>(state.size()); ++sp) {
      if (state[static_cast<size_t>(sp)] == 0) continue;
      for (int s = 0; s < static_cast<int>(next.size()); ++s)
        if (walk.allowed_step(j, sp, s)) next[static_cast<size_t>(s)] += state[static_cast<size_t>(sp)];
    }
    state = std::move(next);
  }
  BigInt total = 0;
  for (const BigInt& x : state) total += x;
  return total;
}

void for_each_weighted_cylinder(const ChainSystem& system, int n,
                                const std::function<void(std::span<const int>)>& visit) {
  CylinderWalk walk(system, n);
  const long len = walk.total_len();
  std::vector<int> buf(static_cast<size_t>(len));
  long pos = 0;
  buf[0] = -1;
  while (pos >= 0) {
    int& s = buf[static_cast<size_t>(pos)];
    ++s;
    if (s >= walk.owner_symbols(pos)) {
      --pos;
      continue;
    }
    if (pos > 0 && !walk.allowed_step(pos, buf[static_cast<size_t>(pos - 1)], s)) continue;
    if (pos == len - 1) {
      visit(std::span<const int>(buf.data(), buf.size()));
    } else {
      ++pos;
      buf[static_cast<size_t>(pos)] = -1;
    }
  }
}

std::vector<WeightedCylinder> enumerate_weighted_cylinders(const ChainSystem& system,
                                                           int n, std::uint64_t cap) {
  BigInt count = count_weighted_cylinders(system, n);
  if (count > BigInt(cap))
    throw ResourceCapError("weighted-cylinder enumeration of " + count.str() +
                           " entries exceeds cap " + std::to_string(cap));
  CylinderWalk walk(system, n);
  std::vector<WeightedCylinder> out;
  out.reserve(static_cast<size_t>(count));
  for_each_weighted_cylinder(system, n, [&](std::span<const int> key) {
    out.push_back(walk.cylinder_from_key(key));
  });
  return out;
}

double weight_of(const ChainSystem& system, const Potential& potential,
                 const WeightedCylinder& cylinder, double s) {
  const double a1 = system.weights.at(0).to_double();
  const Word& w1 = cylinder.level_words.at(0);
  const long horizon = static_cast<long>(w1.size());  // = ceil(a1 * n)
  double sup = birkhoff_sup(system, potential, w1, horizon);
  return -s * cylinder.n + sup / a1;
}

CoverFamily CoverFamily::cylinder_covers(const ChainSystem& system,
                                         std::vector<int> lens) {
  if (lens.size() != static_cast<size_t>(system.depth()))
    throw std::invalid_argument("one cylinder length per level expected");
  CoverFamily f;
  for (int len : lens) {
    if (len < 1) throw std::invalid_argument("cylinder length must be >= 1");
    f.levels.push_back(LevelCover{len, {}});
  }
  return f;
}

CoverFamily CoverFamily::trivial(const ChainSystem& system) {
  CoverFamily f;
  for (const Subshift& shift : system.levels) {
    std::vector<Word> all;
    for (int s = 0; s < shift.symbol_count(); ++s) all.push_back({s});
    f.levels.push_back(LevelCover{1, {all}});
  }
  return f;
}

std::vector<std::string> CoverFamily::validate(const ChainSystem& system) const {
  std::vector<std::string> out;
  if (levels.size() != static_cast<size_t>(system.depth())) {
    out.push_back("cover family must provide one cover per level");
    return out;
  }
  for (int i = 0; i < system.depth(); ++i) {
    const LevelCover& lc = levels[static_cast<size_t>(i)];
    if (lc.cylinder_len < 1)
      out.push_back("level " + std::to_string(i + 1) + ": cylinder length < 1");
    if (lc.is_partition()) continue;
    std::vector<Word> all = words(system.levels[i], lc.cylinder_len);
    std::vector<bool> covered(all.size(), false);
    for (size_t m = 0; m < lc.members.size(); ++m) {
      if (lc.members[m].empty())
        out.push_back("level " + std::to_string(i + 1) + ": empty cover member " +
                      std::to_string(m));
      for (const Word& w : lc.members[m]) {
        if (static_cast<int>(w.size()) != lc.cylinder_len ||
            !system.levels[i].admissible(w)) {
          out.push_back("level " + std::to_string(i + 1) + ": member " +
                        std::to_string(m) + " holds an invalid word");
          continue;
        }
        auto it = std::lower_bound(all.begin(), all.end(), w);
        if (it != all.end() && *it == w) covered[static_cast<size_t>(it - all.begin())] = true;
      }
    }
    for (size_t j = 0; j < all.size(); ++j)
      if (!covered[j]) {
        out.push_back("level " + std::to_string(i + 1) + ": cover misses cylinder '" +
                      system.levels[i].alphabet().format(all[j]) + "'");
        break;
      }
  }
  return out;
}

namespace {

int first_containing_member(const LevelCover& lc, const std::vector<Word>& sorted_words,
                            const Word& w) {
  if (lc.is_partition()) {
    auto it = std::lower_bound(sorted_words.begin(), sorted_words.end(), w);
    if (it == sorted_words.end() || *it != w)
      throw std::logic_error("window word not admissible");
    return static_cast<int>(it - sorted_words.begin());
  }
  for (size_t m = 0; m < lc.members.size(); ++m)
    if (std::find(lc.members[m].begin(), lc.members[m].end(), w) != lc.members[m].end())
      return static_cast<int>(m);
  throw std::logic_error("cover member containing the window word not found");
}

}  // namespace

JoinElement join_element_of(const ChainSystem& system, const CoverFamily& cover,
                            int n, std::span<const int> prefix) {
  auto problems = cover.validate(system);
  if (!problems.empty()) throw std::invalid_argument("invalid cover: " + problems[0]);
  CylinderWalk walk(system, n);
  int max_len = 1;
  for (const LevelCover& lc : cover.levels) max_len = std::max(max_len, lc.cylinder_len);
  if (static_cast<long>(prefix.size()) < walk.total_len() + max_len - 1)
    throw std::invalid_argument("prefix too short to resolve the join element");
  if (!system.levels[0].admissible(prefix))
    throw std::invalid_argument("inadmissible prefix");

  JoinElement elem;
  elem.flat_index = 0;
  const int k = system.depth();
  elem.member_indices.resize(static_cast<size_t>(k));
  elem.level_keys.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const LevelCover& lc = cover.levels[static_cast<size_t>(i)];
    const auto map = system.cascade(i);
    std::vector<Word> sorted_words;
    long radix;
    if (lc.is_partition()) {
      sorted_words = words(system.levels[i], lc.cylinder_len);
      radix = static_cast<long>(sorted_words.size());
    } else {
      radix = static_cast<long>(lc.members.size());
    }
    Word image(prefix.size());
    for (size_t j = 0; j < prefix.size(); ++j) image[j] = map[prefix[j]];
    const long positions = walk.profile().m[i];
    Word window(static_cast<size_t>(lc.cylinder_len));
    for (long l = 0; l < positions; ++l) {
      std::copy(image.begin() + l, image.begin() + l + lc.cylinder_len, window.begin());
      int idx = first_containing_member(lc, sorted_words, window);
      elem.member_indices[static_cast<size_t>(i)].push_back(idx);
      elem.flat_index = elem.flat_index * radix + idx;
    }
    elem.level_keys[static_cast<size_t>(i)] = system.levels[i].alphabet().format(
        std::span<const int>(image.data(), static_cast<size_t>(positions + lc.cylinder_len - 1)));
  }
  return elem;
}

PowerJoinReport power_join_identity_check(const ChainSystem& system,
                                          const CoverFamily& cover, int M, int n,
                                          std::uint64_t cap) {
  if (M < 1) throw std::invalid_argument("power M must be >= 1");
  for (const LevelCover& lc : cover.levels)
    if (!lc.is_partition())
      throw std::invalid_argument("power join check expects cylinder covers");
  WindowProfile profile = window_profile(system.weights, n);

  PowerJoinReport report;
  report.equal = true;
  for (int i = 0; i < system.depth(); ++i) {
    const Subshift& shift = system.levels[i];
    const int L = cover.levels[static_cast<size_t>(i)].cylinder_len;
    const long c = profile.m[i];
    const long word_len = c * M + L - 1;
    const long window_len = M + L - 1;

    PowerJoinLevelReport lvl;
    lvl.level = i + 1;
    lvl.window_count = c;
    lvl.word_len = word_len;

    BigInt count = word_count(shift, static_cast<int>(word_len));
    if (count > BigInt(cap))
      throw ResourceCapError("power join check on level " + std::to_string(i + 1) +
                             " needs " + count.str() + " words, cap " +
                             std::to_string(cap));

    // The block join determines a word iff its windows glue back to the word.
    std::vector<int> glued(static_cast<size_t>(word_len));
    BigInt seen = 0;
    bool equal = true;
    for_each_word(shift, static_cast<int>(word_len), [&](std::span<const int> w) {
      std::fill(glued.begin(), glued.end(), -1);
      bool consistent = true;
      for (long l = 0; l < c && consistent; ++l) {
        for (long t = 0; t < window_len; ++t) {
          const long pos = l * M + t;
          const int sym = w[static_cast<size_t>(pos)];
          if (glued[static_cast<size_t>(pos)] == -1) {
            glued[static_cast<size_t>(pos)] = sym;
          } else if (glued[static_cast<size_t>(pos)] != sym) {
            consistent = false;
            break;
          }
        }
      }
      for (long pos = 0; pos < word_len && consistent; ++pos)
        if (glued[static_cast<size_t>(pos)] != w[static_cast<size_t>(pos)]) consistent = false;
      if (!consistent) equal = false;
      ++seen;
    });

    lvl.lhs_classes = seen;  // keys injective: one class per word
    lvl.rhs_classes = count;
    lvl.equal = equal && seen == count;
    report.equal = report.equal && lvl.equal;
    report.levels.push_back(std::move(lvl));
  }
  return report;
}

double oscillation(const ChainSystem& system, const CoverFamily& cover,
                   const Potential& potential) {
  auto problems = cover.validate(system);
  if (!problems.empty()) throw std::invalid_argument("invalid cover: " + problems[0]);

  const int k = system.depth();
  // Materialize members; partition covers become singleton classes.
  std::vector<std::vector<std::vector<Word>>> members(static_cast<size_t>(k));
  int max_len = potential.range();
  for (int i = 0; i < k; ++i) {
    const LevelCover& lc = cover.levels[static_cast<size_t>(i)];
    max_len = std::max(max_len, lc.cylinder_len);
    if (lc.is_partition()) {
      for (const Word& w : words(system.levels[i], lc.cylinder_len))
        members[static_cast<size_t>(i)].push_back({w});
    } else {
      members[static_cast<size_t>(i)] = lc.members;
    }
  }

  std::vector<Word> sweep = words(system.levels[0], max_len);
  std::vector<std::vector<int>> casc(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) casc[static_cast<size_t>(i)] = system.cascade(i);

  double worst = 0.0;
  std::vector<size_t> choice(static_cast<size_t>(k), 0);
  while (true) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Word& w : sweep) {
      bool inside = true;
      for (int i = 0; i < k && inside; ++i) {
        const int L = cover.levels[static_cast<size_t>(i)].cylinder_len;
        Word window(static_cast<size_t>(L));
        for (int t = 0; t < L; ++t) window[static_cast<size_t>(t)] = casc[static_cast<size_t>(i)][w[static_cast<size_t>(t)]];
        const auto& member = members[static_cast<size_t>(i)][choice[static_cast<size_t>(i)]];
        inside = std::find(member.begin(), member.end(), window) != member.end();
      }
      if (!inside) continue;
      const double v = potential.value(w);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi >= lo) worst = std::max(worst, hi - lo);

    int lvl = k - 1;
    while (lvl >= 0) {
      if (++choice[static_cast<size_t>(lvl)] < members[static_cast<size_t>(lvl)].size()) break;
      choice[static_cast<size_t>(lvl)] = 0;
      --lvl;
    }
    if (lvl < 0) break;
  }
  return worst;
}

}  // namespace wpress
