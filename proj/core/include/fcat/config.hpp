#pragma once

#include "fcat/realization.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fcat {

// Parse failure with position information.
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Generic syntax tree of the plain-text table format (see
// docs/config-format.md for the grammar).
struct ConfigValue;
struct ConfigEntry {
  std::string key;
  std::optional<std::string> name;  // optional second token before = or {
  int line = 0, col = 0;
  std::shared_ptr<ConfigValue> value;
};

struct ConfigValue {
  enum class Kind { scalar, list, table };
  Kind kind = Kind::scalar;
  std::string text;        // scalar payload
  bool quoted = false;     // scalar was a string literal
  int line = 0, col = 0;
  std::vector<ConfigValue> items;      // list
  std::vector<ConfigEntry> entries;    // table
};

std::vector<ConfigEntry> parse_config_syntax(const std::string& text);

// Resolved configuration.
struct Config {
  std::string name;
  QuiverPtr quiver;
  std::vector<std::pair<std::string, Rep>> reps;
  std::vector<std::pair<std::string, TorsionPair>> torsion_pairs;
  TStructureSpec tstructure;
  std::vector<NamedHeart> probes;
  std::vector<NamedComplex> generators;
  std::vector<std::pair<std::string, HeartComplex>> heart_complexes;
  std::vector<std::pair<std::string, SubcatPredicate>> subcats;
  struct FunctorialityProbe {
    std::string subcat;
    std::string complex;
  };
  std::vector<FunctorialityProbe> functoriality_probes;
  std::optional<std::string> realize_target;
  std::uint64_t seed = 0;
  int samples = 8;

  const Rep* find_rep(const std::string& n) const;
  const HeartComplex* find_heart_complex(const std::string& n) const;
  const SubcatPredicate* find_subcat(const std::string& n) const;
};

Config parse_config_text(const std::string& text, const std::string& name);
Config parse_config_file(const std::string& path);

// Shipped demo configurations, embedded so the CLI works from any
// directory; mirrored under tools/configs/.
const std::vector<std::pair<std::string, std::string>>& builtin_configs();
const std::string* find_builtin_config(const std::string& name);

}  // namespace fcat
