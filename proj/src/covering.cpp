#include "wpress/covering.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wpress {

namespace {

double logsumexp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

}  // namespace

void validate_stage(const ChainSystem& system, const StageSpec& stage) {
  if (stage.N < 1 || stage.n_max < stage.N)
    throw std::invalid_argument("stage needs 1 <= N <= n_max");
  WindowProfile deepest = window_profile(system.weights, stage.n_max);
  if (stage.depth < deepest.total())
    throw std::invalid_argument("stage depth " + std::to_string(stage.depth) +
                                " is below the deepest window " +
                                std::to_string(deepest.total()));
}

double single_scale_log_sum(const ChainSystem& system, const Potential& potential,
                            double s, int n, std::uint64_t cap) {
  CylinderWalk walk(system, n);
  const double a1 = system.weights[0].to_double();
  const long m1 = walk.profile().m[0];
  const long len = walk.total_len();

  if (potential.range() == 1) {
    // Transfer DP in log space; the per-cylinder supremum is the plain sum
    // of symbol values over the level-1 window, so the whole sum factorizes
    // position by position.
    auto sym_term = [&](long j, int sym) {
      if (walk.owner(j) != 0) return 0.0;
      Word w{sym};
      return potential.value(w) / a1;
    };
    std::vector<double> state(static_cast<size_t>(walk.owner_symbols(0)));
    for (int sym = 0; sym < static_cast<int>(state.size()); ++sym)
      state[static_cast<size_t>(sym)] = sym_term(0, sym);
    std::vector<double> terms;
    for (long j = 1; j < len; ++j) {
      std::vector<double> next(static_cast<size_t>(walk.owner_symbols(j)),
                               -std::numeric_limits<double>::infinity());
      for (int sym = 0; sym < static_cast<int>(next.size()); ++sym) {
        terms.clear();
        for (int sp = 0; sp < static_cast<int>(state.size()); ++sp)
          if (walk.allowed_step(j, sp, sym)) terms.push_back(state[static_cast<size_t>(sp)]);
        next[static_cast<size_t>(sym)] = logsumexp(terms) + sym_term(j, sym);
      }
      state = std::move(next);
    }
    return logsumexp(state) - s * n;
  }

  // Range >= 2: enumerate level-1 windows, extending for the supremum, and
  // count higher-level suffixes by a backward log-space DP.
  BigInt window_words = word_count(system.levels[0], static_cast<int>(m1));
  if (window_words > BigInt(cap))
    throw ResourceCapError("single-scale sum needs " + window_words.str() +
                           " level-1 windows, cap " + std::to_string(cap));

  // log #completions from the free symbol at position j onward.
  std::vector<std::vector<double>> completions(static_cast<size_t>(len));
  completions[static_cast<size_t>(len - 1)].assign(
      static_cast<size_t>(walk.owner_symbols(len - 1)), 0.0);
  for (long j = len - 2; j >= 0; --j) {
    completions[static_cast<size_t>(j)].assign(static_cast<size_t>(walk.owner_symbols(j)),
                                               -std::numeric_limits<double>::infinity());
    std::vector<double> terms;
    for (int sp = 0; sp < walk.owner_symbols(j); ++sp) {
      terms.clear();
      for (int sym = 0; sym < walk.owner_symbols(j + 1); ++sym)
        if (walk.allowed_step(j + 1, sp, sym))
          terms.push_back(completions[static_cast<size_t>(j + 1)][static_cast<size_t>(sym)]);
      completions[static_cast<size_t>(j)][static_cast<size_t>(sp)] = logsumexp(terms);
    }
  }

  std::vector<double> terms;
  for_each_word(system.levels[0], static_cast<int>(m1), [&](std::span<const int> w) {
    double sup = birkhoff_sup(system, potential, w, m1);
    double tail = (len > m1)
                      ? completions[static_cast<size_t>(m1 - 1)][static_cast<size_t>(w[w.size() - 1])]
                      : 0.0;
    terms.push_back(sup / a1 + tail);
  });
  return logsumexp(terms) - s * n;
}

double upper_pressure(const ChainSystem& system, const Potential& potential, int n) {
  return single_scale_log_sum(system, potential, 0.0, n) / n;
}

StageInstance build_stage_instance(const ChainSystem& system,
                                   const Potential& potential, double s,
                                   const StageSpec& stage,
                                   std::uint64_t nonzero_cap) {
  validate_stage(system, stage);
  StageInstance inst;
  inst.stage = stage;

  const int scales = stage.n_max - stage.N + 1;
  BigInt rows = word_count(system.levels[0], static_cast<int>(stage.depth));
  if (rows * scales > BigInt(nonzero_cap))
    throw ResourceCapError("stage instance needs " + BigInt(rows * scales).str() +
                           " covering nonzeros, cap " + std::to_string(nonzero_cap));

  inst.base_words = words(system.levels[0], static_cast<int>(stage.depth));

  std::vector<CylinderWalk> walks;
  walks.reserve(static_cast<size_t>(scales));
  for (int n = stage.N; n <= stage.n_max; ++n) walks.emplace_back(system, n);

  // Column table per scale, keyed by the free-symbol key.
  std::vector<std::map<Word, int>> column_of(static_cast<size_t>(scales));
  std::vector<std::vector<int>> word_columns(inst.base_words.size());
  for (size_t wi = 0; wi < inst.base_words.size(); ++wi) {
    const Word& u = inst.base_words[wi];
    word_columns[wi].reserve(static_cast<size_t>(scales));
    for (int si = 0; si < scales; ++si) {
      Word key = walks[static_cast<size_t>(si)].key_of_prefix(u);
      auto [it, fresh] = column_of[static_cast<size_t>(si)].try_emplace(
          key, -1);
      if (fresh) {
        it->second = inst.columns();
        WeightedCylinder cyl = walks[static_cast<size_t>(si)].cylinder_from_key(key);
        double cost = std::exp(weight_of(system, potential, cyl, s));
        if (!std::isfinite(cost))
          throw std::invalid_argument("cylinder cost overflows double at s = " +
                                      std::to_string(s));
        inst.column_cost.push_back(cost);
        inst.column_id.emplace_back(stage.N + si, std::move(key));
      }
      word_columns[wi].push_back(it->second);
    }
  }

  // Deduplicate rows: the deepest key determines every shallower one.
  std::map<std::vector<int>, int> group_of_pattern;
  inst.group_of_word.resize(inst.base_words.size());
  for (size_t wi = 0; wi < inst.base_words.size(); ++wi) {
    auto [it, fresh] = group_of_pattern.try_emplace(word_columns[wi], -1);
    if (fresh) {
      it->second = inst.groups();
      inst.group_columns.push_back(word_columns[wi]);
      inst.group_size.push_back(0);
    }
    inst.group_of_word[wi] = it->second;
    ++inst.group_size[static_cast<size_t>(it->second)];
  }
  return inst;
}

double w_lp_stage(const ChainSystem& system, const Potential& potential, double s,
                  const StageSpec& stage, std::uint64_t nonzero_cap) {
  StageInstance inst = build_stage_instance(system, potential, s, stage, nonzero_cap);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(inst.groups(), inst.columns());
  for (int g = 0; g < inst.groups(); ++g)
    for (int col : inst.group_columns[static_cast<size_t>(g)]) A(g, col) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(inst.groups());
  Eigen::VectorXd c =
      Eigen::Map<const Eigen::VectorXd>(inst.column_cost.data(), inst.columns());
  LpSolution sol = solve_min_ge(A, b, c);
  if (sol.status != LpSolution::Status::optimal)
    throw std::runtime_error("covering LP did not reach an optimum");
  return sol.value;
}

PressureBracket pressure_bisect(const ChainSystem& system, const Potential& potential,
                                const StageSpec& stage, BisectMode mode, double tol) {
  if (mode == BisectMode::lp) validate_stage(system, stage);

  auto log_value = [&](double s) {
    if (mode == BisectMode::single_scale)
      return single_scale_log_sum(system, potential, s, stage.n_max);
    double v = w_lp_stage(system, potential, s, stage);
    return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
  };

  const double a1 = system.weights[0].to_double();
  double weight_sum = 0.0, partial_sum_total = 0.0, partial = 0.0;
  for (const Rational& w : system.weights) {
    weight_sum += w.to_double();
    partial += w.to_double();
    partial_sum_total += partial;
  }
  int largest_alphabet = 0;
  for (const Subshift& shift : system.levels)
    largest_alphabet = std::max(largest_alphabet, shift.symbol_count());
  const double log_a = std::log(static_cast<double>(largest_alphabet));

  double lo = potential.min_value() / a1 - log_a * weight_sum / a1;
  double hi = potential.max_value() / a1 + partial_sum_total * log_a;

  double glo = log_value(lo), ghi = log_value(hi);
  double width = std::max(1.0, hi - lo);
  while (glo < 0) {
    lo -= width;
    width *= 2;
    glo = log_value(lo);
  }
  while (ghi > 0) {
    hi += width;
    width *= 2;
    ghi = log_value(hi);
  }

  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double gmid = log_value(mid);
    // The stage value must be monotone nonincreasing in s.
    if (gmid > glo + 1e-7 || gmid < ghi - 1e-7)
      throw std::logic_error("stage value is not monotone in s");
    if (gmid >= 0) {
      lo = mid;
      glo = gmid;
    } else {
      hi = mid;
      ghi = gmid;
    }
  }

  PressureBracket bracket;
  bracket.upper = 0.5 * (lo + hi);
  bracket.upper_source = mode == BisectMode::single_scale ? "single-scale" : "lp";
  return bracket;
}

LambdaWReport lambda_vs_w_check(const ChainSystem& system, const Potential& potential,
                                double s, const StageSpec& stage) {
  LambdaWReport report;
  report.lp_value = w_lp_stage(system, potential, s, stage);
  report.set_cover_value = std::numeric_limits<double>::infinity();
  for (int n = stage.N; n <= stage.n_max; ++n) {
    double v = std::exp(single_scale_log_sum(system, potential, s, n));
    if (v < report.set_cover_value) {
      report.set_cover_value = v;
      report.set_cover_n = n;
    }
  }
  report.lp_le_set_cover =
      report.lp_value <= report.set_cover_value + 1e-9 * std::max(1.0, report.set_cover_value);
  return report;
}

ChainSystem power_system(const ChainSystem& system, int M) {
  if (M < 1) throw std::invalid_argument("power M must be >= 1");
  ChainSystem out;
  out.weights = system.weights;

  std::vector<std::vector<Word>> blocks(static_cast<size_t>(system.depth()));
  for (int i = 0; i < system.depth(); ++i) {
    const Subshift& shift = system.levels[static_cast<size_t>(i)];
    blocks[static_cast<size_t>(i)] = words(shift, M);
    const auto& bs = blocks[static_cast<size_t>(i)];

    bool single = true;
    for (int s = 0; s < shift.symbol_count(); ++s)
      single &= shift.alphabet().symbol(s).size() == 1;
    std::vector<std::string> names;
    names.reserve(bs.size());
    for (const Word& b : bs) {
      std::string name;
      for (size_t t = 0; t < b.size(); ++t) {
        if (!single && t > 0) name += '|';
        name += shift.alphabet().symbol(b[t]);
      }
      names.push_back(std::move(name));
    }

    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(bs.size(), bs.size());
    for (size_t u = 0; u < bs.size(); ++u)
      for (size_t v = 0; v < bs.size(); ++v)
        allowed(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) =
            shift.allows(bs[u].back(), bs[v].front());
    out.levels.emplace_back(Alphabet(std::move(names)), std::move(allowed),
                            shift.require_irreducible());
  }

  for (int i = 0; i + 1 < system.depth(); ++i) {
    const auto& src_blocks = blocks[static_cast<size_t>(i)];
    const auto& dst_blocks = blocks[static_cast<size_t>(i + 1)];
    std::map<Word, int> dst_index;
    for (size_t v = 0; v < dst_blocks.size(); ++v)
      dst_index[dst_blocks[v]] = static_cast<int>(v);
    std::vector<int> map;
    map.reserve(src_blocks.size());
    for (const Word& b : src_blocks)
      map.push_back(dst_index.at(system.codes[static_cast<size_t>(i)].apply(b)));
    out.codes.emplace_back(out.levels[static_cast<size_t>(i)].alphabet(),
                           out.levels[static_cast<size_t>(i + 1)].alphabet(),
                           std::move(map));
  }
  return out;
}

Potential power_potential(const ChainSystem& system, const Potential& potential, int M) {
  if (M < 1) throw std::invalid_argument("power M must be >= 1");
  const Subshift& level1 = system.levels[0];
  const int r = potential.range();
  const int r_power = 1 + (r - 1 + M - 1) / M;
  const int span = r_power * M;

  std::vector<Word> blocks = words(level1, M);
  std::map<Word, int> block_index;
  for (size_t b = 0; b < blocks.size(); ++b) block_index[blocks[b]] = static_cast<int>(b);

  std::map<Word, double> table;
  for_each_word(level1, span, [&](std::span<const int> w) {
    double value = 0.0;
    for (int t = 0; t < M; ++t) value += potential.value(w.subspan(static_cast<size_t>(t)));
    if (value == 0.0) return;
    Word key(static_cast<size_t>(r_power));
    for (int b = 0; b < r_power; ++b) {
      Word block(w.begin() + static_cast<long>(b) * M,
                 w.begin() + static_cast<long>(b + 1) * M);
      key[static_cast<size_t>(b)] = block_index.at(block);
    }
    table[std::move(key)] = value;
  });
  return Potential(r_power, std::move(table));
}

PowerRuleReport power_rule_check(const ChainSystem& system, const Potential& potential,
                                 const CoverFamily& cover, int M,
                                 const std::vector<int>& n_list,
                                 std::vector<int> join_n_list,
                                 std::uint64_t join_cap) {
  PowerRuleReport report;
  report.M = M;
  report.ok = true;

  if (join_n_list.empty()) join_n_list = {1, 2};
  for (int n : join_n_list) {
    PowerJoinReport join = power_join_identity_check(system, cover, M, n, join_cap);
    report.ok = report.ok && join.equal;
    report.join_scales.push_back(n);
    report.joins.push_back(std::move(join));
  }

  ChainSystem powered = power_system(system, M);
  Potential powered_f = power_potential(system, potential, M);
  const double a1 = system.weights[0].to_double();
  const double norm_f = potential.sup_norm();
  // ceil(a1*M + M), exact.
  Rational a1_plus_one = system.weights[0] + Rational::of(1);
  const double ceil_term = static_cast<double>(a1_plus_one.ceil_mul(M));

  for (int n : n_list) {
    PowerRuleScaleReport scale;
    scale.n = n;
    scale.base_estimate = upper_pressure(system, potential, M * n);
    scale.power_estimate = upper_pressure(powered, powered_f, n) / M;
    const double s_ref = std::max(std::abs(scale.base_estimate),
                                  std::abs(scale.power_estimate));
    scale.slack =
        (M * s_ref * (1.0 / a1 + 1.0) + ceil_term * norm_f / a1) / n + 1e-9;
    scale.within_slack =
        std::abs(scale.base_estimate - scale.power_estimate) <= scale.slack;
    report.ok = report.ok && scale.within_slack;
    report.scales.push_back(std::move(scale));
  }
  return report;
}

}  // namespace wpress
