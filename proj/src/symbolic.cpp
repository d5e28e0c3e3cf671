#include "wpress/symbolic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wpress {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
    const std::string& s = symbols_[i];
    if (s.empty()) throw std::invalid_argument("empty symbol");
    if (s.find('.') != std::string::npos)
      throw std::invalid_argument("symbol may not contain '.'");
    if (!index_.emplace(s, i).second)
      throw std::invalid_argument("duplicate symbol: " + s);
    if (s.size() > 1) single_char_ = false;
  }
}

std::optional<int> Alphabet::index_of(std::string_view s) const {
  auto it = index_.find(std::string(s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Alphabet::format(std::span<const int> word) const {
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (!single_char_ && i > 0) out += '.';
    out += symbol(word[i]);
  }
  return out;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  if (single_char_) {
    for (char c : text) {
      auto idx = index_of(std::string_view(&c, 1));
      if (!idx) throw std::invalid_argument("unknown symbol: " + std::string(1, c));
      out.push_back(*idx);
    }
    return out;
  }
  std::string token;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, token, '.')) {
    auto idx = index_of(token);
    if (!idx) throw std::invalid_argument("unknown symbol: " + token);
    out.push_back(*idx);
  }
  return out;
}

Subshift::Subshift(Alphabet alphabet,
                   Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed,
                   bool require_irreducible)
    : alphabet_(std::move(alphabet)),
      allowed_(std::move(allowed)),
      require_irreducible_(require_irreducible) {
  if (allowed_.rows() != alphabet_.size() || allowed_.cols() != alphabet_.size())
    throw std::invalid_argument("transition matrix shape does not match alphabet");
}

Subshift Subshift::full_shift(Alphabet alphabet) {
  const int a = alphabet.size();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> all(a, a);
  all.setConstant(true);
  return Subshift(std::move(alphabet), std::move(all));
}

bool Subshift::admissible(std::span<const int> word) const {
  for (int s : word)
    if (s < 0 || s >= symbol_count()) return false;
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (!allowed_(word[i], word[i + 1])) return false;
  return !word.empty();
}

namespace {

// Reachability sweep used for the irreducibility check.
std::vector<bool> reachable_from(
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& m, int start,
    bool transpose) {
  const int n = static_cast<int>(m.rows());
  std::vector<bool> seen(n, false);
  std::vector<int> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      bool edge = transpose ? m(v, u) : m(u, v);
      if (edge && !seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<std::string> Subshift::validate() const {
  std::vector<std::string> out;
  const int a = symbol_count();
  for (int u = 0; u < a; ++u) {
    bool out_edge = false, in_edge = false;
    for (int v = 0; v < a; ++v) {
      out_edge |= allowed_(u, v);
      in_edge |= allowed_(v, u);
    }
    if (!out_edge)
      out.push_back("symbol '" + alphabet_.symbol(u) + "' has no outgoing transition");
    if (!in_edge)
      out.push_back("symbol '" + alphabet_.symbol(u) + "' has no incoming transition");
  }
  if (require_irreducible_ && out.empty()) {
    auto fwd = reachable_from(allowed_, 0, false);
    auto bwd = reachable_from(allowed_, 0, true);
    for (int u = 0; u < a; ++u) {
      if (!fwd[u] || !bwd[u]) {
        out.push_back("transition matrix is not irreducible (symbol '" +
                      alphabet_.symbol(u) + "')");
        break;
      }
    }
  }
  return out;
}

BlockCode::BlockCode(Alphabet source, Alphabet target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (static_cast<int>(map_.size()) != source_.size())
    throw std::invalid_argument("code map must cover the whole source alphabet");
  for (int t : map_)
    if (t < 0 || t >= target_.size())
      throw std::invalid_argument("code maps to unknown target symbol");
}

Word BlockCode::apply(std::span<const int> word) const {
  Word out(word.size());
  for (size_t i = 0; i < word.size(); ++i) out[i] = map_.at(word[i]);
  return out;
}

Word apply_code(const BlockCode& code, const Word& word) { return code.apply(word); }

std::vector<int> ChainSystem::cascade(int level) const {
  const int a = levels.at(0).symbol_count();
  std::vector<int> map(static_cast<size_t>(a));
  for (int s = 0; s < a; ++s) map[s] = s;
  for (int j = 0; j < level; ++j)
    for (int s = 0; s < a; ++s) map[s] = codes.at(j).apply(map[s]);
  return map;
}

ValidationReport validate_chain(const ChainSystem& system) {
  ValidationReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  const int k = system.depth();
  if (k < 1) {
    fail("chain must have at least one level");
    return report;
  }
  if (static_cast<int>(system.codes.size()) != k - 1)
    fail("expected " + std::to_string(k - 1) + " codes, got " +
         std::to_string(system.codes.size()));
  if (static_cast<int>(system.weights.size()) != k)
    fail("expected " + std::to_string(k) + " weights, got " +
         std::to_string(system.weights.size()));

  for (int i = 0; i < k; ++i)
    for (const std::string& v : system.levels[i].validate())
      fail("level " + std::to_string(i + 1) + ": " + v);

  if (!system.weights.empty() && !system.weights[0].is_positive())
    fail("a1 must be positive");
  for (size_t i = 1; i < system.weights.size(); ++i)
    if (system.weights[i].is_negative())
      fail("a" + std::to_string(i + 1) + " must be nonnegative");

  for (size_t i = 0; i + 1 < system.levels.size() && i < system.codes.size(); ++i) {
    const BlockCode& code = system.codes[i];
    const Subshift& src = system.levels[i];
    const Subshift& dst = system.levels[i + 1];
    if (!(code.source() == src.alphabet()))
      fail("code " + std::to_string(i + 1) + " source alphabet mismatch");
    if (!(code.target() == dst.alphabet()))
      fail("code " + std::to_string(i + 1) + " target alphabet mismatch");
    if (code.source() == src.alphabet() && code.target() == dst.alphabet()) {
      for (int u = 0; u < src.symbol_count(); ++u)
        for (int v = 0; v < src.symbol_count(); ++v)
          if (src.allows(u, v) && !dst.allows(code.apply(u), code.apply(v)))
            fail("code " + std::to_string(i + 1) + " maps admissible pair '" +
                 src.alphabet().symbol(u) + src.alphabet().symbol(v) +
                 "' to a forbidden pair");
    }
  }
  return report;
}

Potential::Potential(int range, std::map<Word, double> table)
    : range_(range), table_(std::move(table)) {
  if (range_ < 1) throw std::invalid_argument("potential range must be >= 1");
  for (const auto& [w, v] : table_) {
    if (static_cast<int>(w.size()) != range_)
      throw std::invalid_argument("potential table key of wrong length");
    if (!std::isfinite(v)) throw std::invalid_argument("potential value must be finite");
  }
}

double Potential::value(std::span<const int> window) const {
  if (static_cast<int>(window.size()) < range_)
    throw std::invalid_argument("window shorter than potential range");
  Word key(window.begin(), window.begin() + range_);
  auto it = table_.find(key);
  return it == table_.end() ? 0.0 : it->second;
}

double Potential::sup_norm() const {
  double m = 0.0;
  for (const auto& [w, v] : table_) m = std::max(m, std::abs(v));
  return m;
}

double Potential::min_value() const {
  double m = 0.0;  // absent words read as 0
  for (const auto& [w, v] : table_) m = std::min(m, v);
  return m;
}

double Potential::max_value() const {
  double m = 0.0;
  for (const auto& [w, v] : table_) m = std::max(m, v);
  return m;
}

std::vector<std::string> Potential::validate(const Subshift& level1) const {
  std::vector<std::string> out;
  for (const auto& [w, v] : table_)
    if (!level1.admissible(w))
      out.push_back("potential key '" + level1.alphabet().format(w) +
                    "' is not admissible");
  return out;
}

BigInt word_count(const Subshift& shift, int n) {
  if (n < 1) throw std::invalid_argument("word length must be >= 1");
  const int a = shift.symbol_count();
  std::vector<BigInt> v(static_cast<size_t>(a), 1);
  for (int step = 1; step < n; ++step) {
    std::vector<BigInt> next(static_cast<size_t>(a), 0);
    for (int u = 0; u < a; ++u)
      for (int w = 0; w < a; ++w)
        if (shift.allows(u, w)) next[u] += v[w];
    v = std::move(next);
  }
  BigInt total = 0;
  for (const BigInt& x : v) total += x;
  return total;
}

std::vector<Word> words(const Subshift& shift, int n, std::uint64_t cap) {
  BigInt count = word_count(shift, n);
  if (count > BigInt(cap))
    throw ResourceCapError("word enumeration of " + count.str() +
                           " entries exceeds cap " + std::to_string(cap));
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(count));
  for_each_word(shift, n,
                [&](std::span<const int> w) { out.emplace_back(w.begin(), w.end()); });
  return out;
}

double birkhoff_sup(const ChainSystem& system, const Potential& potential,
                    std::span<const int> prefix, long horizon) {
  const Subshift& level1 = system.levels.at(0);
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const long m = static_cast<long>(prefix.size());
  if (horizon > m) throw std::invalid_argument("horizon exceeds prefix length");
  if (!level1.admissible(prefix)) throw std::invalid_argument("inadmissible prefix");

  const int r = potential.range();
  const long needed = horizon + r - 1;
  if (needed <= m) {
    double sum = 0.0;
    for (long t = 0; t < horizon; ++t)
      sum += potential.value(prefix.subspan(static_cast<size_t>(t)));
    return sum;
  }

  // Maximize over admissible extensions (at most r-1 symbols past the prefix).
  const long ext = needed - m;
  std::vector<int> buf(prefix.begin(), prefix.end());
  buf.resize(static_cast<size_t>(needed));
  double best = -std::numeric_limits<double>::infinity();
  const int a = level1.symbol_count();

  auto eval = [&]() {
    double sum = 0.0;
    std::span<const int> full(buf.data(), buf.size());
    for (long t = 0; t < horizon; ++t) sum += potential.value(full.subspan(t));
    best = std::max(best, sum);
  };

  // DFS over the extension symbols.
  long pos = 0;
  std::vector<int> cursor(static_cast<size_t>(ext), -1);
  while (pos >= 0) {
    int& s = cursor[pos];
    ++s;
    if (s >= a) {
      --pos;
      continue;
    }
    int prev = (pos == 0) ? buf[m - 1] : buf[m + pos - 1];
    if (!level1.allows(prev, s)) continue;
    buf[static_cast<size_t>(m + pos)] = s;
    if (pos == ext - 1) {
      eval();
    } else {
      ++pos;
      cursor[pos] = -1;
    }
  }
  return best;
}

}  // namespace wpress
