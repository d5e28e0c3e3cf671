#include "wpress/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace wpress::io {

namespace {

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
}

void reject_unknown_fields(const json& j, const std::set<std::string>& allowed,
                           const std::string& context) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown field '" + it.key() + "' in " + context);
}

Rational parse_weight(const json& w) {
  if (w.is_string()) return Rational::parse(w.get<std::string>());
  if (w.is_number_integer()) return Rational::of(w.get<long long>());
  if (w.is_number_unsigned()) return Rational::of(static_cast<long long>(w.get<unsigned long long>()));
  if (w.is_number_float())
    throw ConfigError("weights must be strings or integers so they stay exact; got " +
                      w.dump());
  throw ConfigError("bad weight entry " + w.dump());
}

Subshift parse_level(const json& level, int index) {
  const std::string context = "levels[" + std::to_string(index) + "]";
  require_object(level, context);
  reject_unknown_fields(level,
                        {"symbols", "forbidden_words", "transitions", "require_irreducible"},
                        context);
  if (!level.contains("symbols")) throw ConfigError(context + " needs 'symbols'");
  std::vector<std::string> symbols;
  for (const json& s : level.at("symbols")) {
    if (!s.is_string()) throw ConfigError(context + ": symbols must be strings");
    symbols.push_back(s.get<std::string>());
  }
  Alphabet alphabet(symbols);
  const int a = alphabet.size();

  if (level.contains("forbidden_words") && level.contains("transitions"))
    throw ConfigError(context + ": give forbidden_words or transitions, not both");

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(a, a);
  allowed.setConstant(true);
  if (level.contains("forbidden_words")) {
    for (const json& fw : level.at("forbidden_words")) {
      if (!fw.is_string()) throw ConfigError(context + ": forbidden words must be strings");
      Word w = alphabet.parse_word(fw.get<std::string>());
      if (w.size() != 2)
        throw ConfigError(context + ": forbidden word '" + fw.get<std::string>() +
                          "' must have length 2 (order-1 transition structure)");
      allowed(w[0], w[1]) = false;
    }
  } else if (level.contains("transitions")) {
    const json& rows = level.at("transitions");
    if (static_cast<int>(rows.size()) != a)
      throw ConfigError(context + ": transitions needs one row per symbol");
    for (int u = 0; u < a; ++u) {
      if (static_cast<int>(rows[u].size()) != a)
        throw ConfigError(context + ": transitions row " + std::to_string(u) +
                          " has wrong length");
      for (int v = 0; v < a; ++v) {
        const json& cell = rows[u][v];
        if (!cell.is_number_integer() && !cell.is_number_unsigned() && !cell.is_boolean())
          throw ConfigError(context + ": transition entries must be 0/1 or booleans");
        allowed(u, v) = cell.is_boolean() ? cell.get<bool>() : cell.get<long long>() != 0;
      }
    }
  }
  bool irreducible = false;
  if (level.contains("require_irreducible")) {
    if (!level.at("require_irreducible").is_boolean())
      throw ConfigError(context + ": require_irreducible must be a boolean");
    irreducible = level.at("require_irreducible").get<bool>();
  }
  return Subshift(std::move(alphabet), std::move(allowed), irreducible);
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error in " + path + ": " + e.what());
  }
  return doc;
}

ChainSystem parse_system(const json& doc) {
  require_object(doc, "system file");
  reject_unknown_fields(doc, {"levels", "codes", "weights"}, "system file");
  if (!doc.contains("levels") || !doc.contains("weights"))
    throw ConfigError("system file needs 'levels' and 'weights'");

  ChainSystem system;
  int index = 0;
  for (const json& level : doc.at("levels")) system.levels.push_back(parse_level(level, index++));
  if (system.levels.empty()) throw ConfigError("system needs at least one level");

  if (doc.contains("codes")) {
    const json& codes = doc.at("codes");
    if (static_cast<int>(codes.size()) != static_cast<int>(system.levels.size()) - 1)
      throw ConfigError("expected " + std::to_string(system.levels.size() - 1) + " codes");
    for (size_t i = 0; i < codes.size(); ++i) {
      const json& code = codes[i];
      require_object(code, "codes[" + std::to_string(i) + "]");
      const Alphabet& src = system.levels[i].alphabet();
      const Alphabet& dst = system.levels[i + 1].alphabet();
      std::vector<int> map(static_cast<size_t>(src.size()), -1);
      for (auto it = code.begin(); it != code.end(); ++it) {
        auto s = src.index_of(it.key());
        if (!s)
          throw ConfigError("codes[" + std::to_string(i) + "]: unknown source symbol '" +
                            it.key() + "'");
        if (!it.value().is_string())
          throw ConfigError("codes[" + std::to_string(i) + "]: targets must be strings");
        auto t = dst.index_of(it.value().get<std::string>());
        if (!t)
          throw ConfigError("codes[" + std::to_string(i) + "]: unknown target symbol '" +
                            it.value().get<std::string>() + "'");
        map[static_cast<size_t>(*s)] = *t;
      }
      for (size_t s = 0; s < map.size(); ++s)
        if (map[s] < 0)
          throw ConfigError("codes[" + std::to_string(i) + "]: source symbol '" +
                            src.symbol(static_cast<int>(s)) + "' has no image");
      system.codes.emplace_back(src, dst, std::move(map));
    }
  } else if (system.levels.size() > 1) {
    throw ConfigError("system with several levels needs 'codes'");
  }

  for (const json& w : doc.at("weights")) system.weights.push_back(parse_weight(w));

  ValidationReport report = validate_chain(system);
  if (!report.ok) {
    std::string msg = "invalid system:";
    for (const std::string& v : report.violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }
  return system;
}

ChainSystem load_system(const std::string& path) { return parse_system(load_json(path)); }

Potential parse_potential(const json& doc, const Subshift& level1) {
  require_object(doc, "potential file");
  reject_unknown_fields(doc, {"range", "entries"}, "potential file");
  if (!doc.contains("range")) throw ConfigError("potential file needs 'range'");
  if (!doc.at("range").is_number_integer() && !doc.at("range").is_number_unsigned())
    throw ConfigError("potential range must be an integer");
  const int range = doc.at("range").get<int>();
  std::map<Word, double> table;
  if (doc.contains("entries")) {
    require_object(doc.at("entries"), "potential entries");
    for (auto it = doc.at("entries").begin(); it != doc.at("entries").end(); ++it) {
      Word w;
      try {
        w = level1.alphabet().parse_word(it.key());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("potential entry: ") + e.what());
      }
      if (!it.value().is_number())
        throw ConfigError("potential value for '" + it.key() + "' must be a number");
      table[std::move(w)] = it.value().get<double>();
    }
  }
  Potential potential(range, std::move(table));
  auto problems = potential.validate(level1);
  if (!problems.empty()) throw ConfigError("invalid potential: " + problems[0]);
  return potential;
}

Potential load_potential(const std::string& path, const Subshift& level1) {
  return parse_potential(load_json(path), level1);
}

MarkovMeasure parse_measure(const json& doc, const Subshift& level1) {
  require_object(doc, "measure file");
  reject_unknown_fields(doc, {"labels", "transition"}, "measure file");
  if (!doc.contains("transition")) throw ConfigError("measure file needs 'transition'");
  const int a = level1.symbol_count();

  std::vector<int> order(static_cast<size_t>(a));
  for (int i = 0; i < a; ++i) order[static_cast<size_t>(i)] = i;
  if (doc.contains("labels")) {
    const json& labels = doc.at("labels");
    if (static_cast<int>(labels.size()) != a)
      throw ConfigError("measure labels must list every level-1 symbol");
    for (int i = 0; i < a; ++i) {
      if (!labels[i].is_string()) throw ConfigError("measure labels must be strings");
      auto idx = level1.alphabet().index_of(labels[i].get<std::string>());
      if (!idx)
        throw ConfigError("measure label '" + labels[i].get<std::string>() +
                          "' is not a level-1 symbol");
      order[static_cast<size_t>(i)] = *idx;
    }
  }

  const json& rows = doc.at("transition");
  if (static_cast<int>(rows.size()) != a)
    throw ConfigError("measure transition needs one row per symbol");
  Eigen::MatrixXd P(a, a);
  for (int u = 0; u < a; ++u) {
    if (static_cast<int>(rows[u].size()) != a)
      throw ConfigError("measure transition row " + std::to_string(u) + " has wrong length");
    for (int v = 0; v < a; ++v) {
      if (!rows[u][v].is_number())
        throw ConfigError("measure transition entries must be numbers");
      P(order[static_cast<size_t>(u)], order[static_cast<size_t>(v)]) = rows[u][v].get<double>();
    }
  }
  try {
    return MarkovMeasure(level1, std::move(P));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid measure: ") + e.what());
  }
}

MarkovMeasure load_measure(const std::string& path, const Subshift& level1) {
  return parse_measure(load_json(path), level1);
}

json cylinder_to_json(const ChainSystem& system, const WeightedCylinder& cylinder) {
  json words = json::array();
  for (int i = 0; i < system.depth(); ++i)
    words.push_back(system.levels[static_cast<size_t>(i)].alphabet().format(
        cylinder.level_words[static_cast<size_t>(i)]));
  return json{{"n", cylinder.n}, {"words", words}};
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest(std::string_view config, const std::vector<std::string>& paths) {
  std::uint64_t h = fnv1a(config);
  for (const std::string& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file for digest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    h = fnv1a(buf.str(), h);
  }
  std::ostringstream out;
  out << "fnv1a:" << std::hex << h;
  return out.str();
}

}  // namespace wpress::io
