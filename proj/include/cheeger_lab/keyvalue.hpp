#pragma once

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cheeger_lab/candidate.hpp"
#include "cheeger_lab/domain.hpp"
#include "cheeger_lab/errors.hpp"
#include "cheeger_lab/sampling.hpp"

namespace cheeger {

/// Flat `key = value` text. `#` starts a comment; blank lines are ignored;
/// keys may not repeat. Every lookup error names the offending line.
class KeyValueFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };

  static KeyValueFile parse(std::istream& in) {
    KeyValueFile kv;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string text = trim(raw);
      if (text.empty()) continue;
      const auto eq = text.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
      const std::string key = trim(text.substr(0, eq));
      const std::string value = trim(text.substr(eq + 1));
      if (key.empty()) throw ConfigError("empty key", line);
      if (key.find_first_of(" \t") != std::string::npos) throw ConfigError("key '" + key + "' contains spaces", line);
      if (kv.entries_.count(key)) {
        throw ConfigError("duplicate key '" + key + "' (first on line " + std::to_string(kv.entries_[key].line) + ")",
                          line);
      }
      kv.entries_[key] = {value, line};
    }
    return kv;
  }

  static KeyValueFile parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  static KeyValueFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in);
  }

  /// Adds or replaces a key (command-line overrides carry line 0).
  void set(const std::string& key, const std::string& value) { entries_[key] = {value, 0}; }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  const Entry* find(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const Entry& require(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ConfigError("missing required key '" + key + "'");
    return *e;
  }

  std::string get_string(const std::string& key) const { return require(key).value; }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
  }

  double get_double(const std::string& key) const {
    const Entry& e = require(key);
    return to_double(e.value, key, e.line);
  }
  double get_double(const std::string& key, double fallback) const { return has(key) ? get_double(key) : fallback; }

  long long get_int(const std::string& key) const {
    const Entry& e = require(key);
    return to_int(e.value, key, e.line);
  }
  long long get_int(const std::string& key, long long fallback) const { return has(key) ? get_int(key) : fallback; }

  bool get_bool(const std::string& key, bool fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + e->value + "'", e->line);
  }

  std::vector<double> get_doubles(const std::string& key) const {
    const Entry& e = require(key);
    std::vector<double> out;
    for (const auto& tok : split(e.value)) out.push_back(to_double(tok, key, e.line));
    if (out.empty()) throw ConfigError("key '" + key + "': expected at least one number", e.line);
    return out;
  }

  std::vector<long long> get_ints(const std::string& key) const {
    const Entry& e = require(key);
    std::vector<long long> out;
    for (const auto& tok : split(e.value)) out.push_back(to_int(tok, key, e.line));
    if (out.empty()) throw ConfigError("key '" + key + "': expected at least one integer", e.line);
    return out;
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, e] : entries_) {
      if (k.rfind(prefix, 0) == 0) out.push_back(k);
    }
    return out;
  }

  /// Rejects the first key (by line) that no lookup has touched.
  void reject_unused() const {
    const Entry* worst = nullptr;
    std::string name;
    for (const auto& [k, e] : entries_) {
      if (!e.used && (!worst || e.line < worst->line)) {
        worst = &e;
        name = k;
      }
    }
    if (worst) throw ConfigError("unknown key '" + name + "'", worst->line);
  }

  const std::map<std::string, Entry>& entries() const { return entries_; }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(s);
    while (in >> tok) {
      std::replace(tok.begin(), tok.end(), ',', ' ');
      std::istringstream sub(tok);
      std::string piece;
      while (sub >> piece) out.push_back(piece);
    }
    return out;
  }

  static double to_double(const std::string& s, const std::string& key, int line) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v)) {
      throw ConfigError("key '" + key + "': '" + s + "' is not a number", line);
    }
    return v;
  }

  static long long to_int(const std::string& s, const std::string& key, int line) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
      throw ConfigError("key '" + key + "': '" + s + "' is not an integer", line);
    }
    return v;
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, Entry> entries_;
};

namespace detail {

inline std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_double(v[i]);
  return out;
}

// Runs fn, rethrowing geometry errors as a ConfigError on `line`.
template <class Fn>
auto as_config(int line, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), line);
  } catch (const NoClosedForm& e) {
    throw ConfigError(e.what(), line);
  }
}

}  // namespace detail

/// Keys (under `prefix`): kind, center, radius | sides, rounding | inner,
/// outer; optional ambient.lo, ambient.hi, margin.
inline std::vector<std::pair<std::string, std::string>> domain_to_keys(const Domain& M,
                                                                      const std::string& prefix = "domain.") {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back(prefix + "kind", to_string(M.kind()));
  kv.emplace_back(prefix + "center", detail::join(M.center()));
  switch (M.kind()) {
    case DomainKind::disk: kv.emplace_back(prefix + "radius", format_double(M.radius())); break;
    case DomainKind::rectangle:
      kv.emplace_back(prefix + "sides", detail::join(M.sides()));
      kv.emplace_back(prefix + "rounding", format_double(M.rounding()));
      break;
    case DomainKind::annulus:
      kv.emplace_back(prefix + "inner", format_double(M.inner_radius()));
      kv.emplace_back(prefix + "outer", format_double(M.outer_radius()));
      break;
  }
  kv.emplace_back(prefix + "ambient.lo", detail::join(M.ambient().lo));
  kv.emplace_back(prefix + "ambient.hi", detail::join(M.ambient().hi));
  kv.emplace_back(prefix + "margin", format_double(M.margin()));
  return kv;
}

inline Domain domain_from_keys(const KeyValueFile& kv, const std::string& prefix = "domain.") {
  const auto& kind_entry = kv.require(prefix + "kind");
  const std::string kind = kind_entry.value;
  const auto center = kv.get_doubles(prefix + "center");
  Box ambient;
  if (kv.has(prefix + "ambient.lo") || kv.has(prefix + "ambient.hi")) {
    ambient = {kv.get_doubles(prefix + "ambient.lo"), kv.get_doubles(prefix + "ambient.hi")};
  }
  const double margin = kv.get_double(prefix + "margin", kDefaultMargin);
  return detail::as_config(kind_entry.line, [&] {
    if (kind == "disk") return Domain::disk(center, kv.get_double(prefix + "radius"), ambient, margin);
    if (kind == "rectangle") {
      return Domain::rectangle(center, kv.get_doubles(prefix + "sides"),
                               kv.get_double(prefix + "rounding", kDefaultRounding), ambient, margin);
    }
    if (kind == "annulus") {
      return Domain::annulus(center, kv.get_double(prefix + "inner"), kv.get_double(prefix + "outer"), ambient,
                             margin);
    }
    throw ConfigError("unknown domain kind '" + kind + "' (disk, rectangle, annulus)", kind_entry.line);
  });
}

/// Keys (under `prefix`): kind, then normal (or angle in the plane) and
/// offset for half-space and rounded-slab, center and radius for ball,
/// rounding for rounded-slab, and complement. A rounded slab lives in the
/// domain's ambient box.
inline std::vector<std::pair<std::string, std::string>> candidate_to_keys(const CandidateSet& A,
                                                                         const std::string& prefix = "candidate.") {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back(prefix + "kind", to_string(A.kind()));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          kv.emplace_back(prefix + "center", detail::join(s.center));
          kv.emplace_back(prefix + "radius", format_double(s.radius));
        } else {
          kv.emplace_back(prefix + "normal", detail::join(s.normal));
          kv.emplace_back(prefix + "offset", format_double(s.offset));
          if constexpr (std::is_same_v<T, RoundedSlab>) kv.emplace_back(prefix + "rounding", format_double(s.rounding));
        }
      },
      A.shape());
  kv.emplace_back(prefix + "complement", A.complemented() ? "true" : "false");
  return kv;
}

inline CandidateSet candidate_from_keys(const KeyValueFile& kv, const Domain& M,
                                        const std::string& prefix = "candidate.") {
  const auto& kind_entry = kv.require(prefix + "kind");
  const std::string kind = kind_entry.value;
  auto normal = [&] {
    if (kv.has(prefix + "angle")) {
      if (kv.has(prefix + "normal")) {
        throw ConfigError("give either " + prefix + "normal or " + prefix + "angle", kv.line_of(prefix + "angle"));
      }
      return direction_2d(kv.get_double(prefix + "angle"));
    }
    return kv.get_doubles(prefix + "normal");
  };
  auto check_dim = [&](std::size_t got, const std::string& key) {
    if (static_cast<int>(got) != M.dim()) {
      throw ConfigError("key '" + key + "' has dimension " + std::to_string(got) + ", domain has " +
                            std::to_string(M.dim()),
                        kv.line_of(key));
    }
  };
  CandidateSet A = detail::as_config(kind_entry.line, [&] {
    if (kind == "half-space") {
      auto n = normal();
      check_dim(n.size(), prefix + (kv.has(prefix + "angle") ? "angle" : "normal"));
      return CandidateSet::half_space(n, kv.get_double(prefix + "offset"));
    }
    if (kind == "ball") {
      auto c = kv.get_doubles(prefix + "center");
      check_dim(c.size(), prefix + "center");
      return CandidateSet::ball(c, kv.get_double(prefix + "radius"));
    }
    if (kind == "rounded-slab") {
      auto n = normal();
      check_dim(n.size(), prefix + (kv.has(prefix + "angle") ? "angle" : "normal"));
      return CandidateSet::rounded_slab(n, kv.get_double(prefix + "offset"), kv.get_double(prefix + "rounding"),
                                        M.ambient());
    }
    throw ConfigError("unknown candidate kind '" + kind + "' (half-space, ball, rounded-slab)", kind_entry.line);
  });
  return kv.get_bool(prefix + "complement", false) ? A.complement() : A;
}

inline std::string keys_to_text(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

}  // namespace cheeger
