#include "renormlab/config.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

const std::set<std::string> kCommands = {
    "tune",       "extract-pair", "renorm-orbit", "universality",
    "shift-demo", "scaling",      "validate-pair"};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": " << msg;
  throw ConfigError(os.str());
}

bool valid_key(const std::string& k) {
  if (k.empty() || !(std::isalpha((unsigned char)k[0]) || k[0] == '_'))
    return false;
  for (char ch : k)
    if (!(std::isalnum((unsigned char)ch) || ch == '_')) return false;
  return true;
}

// Raw right-hand side classified by TOML-like syntax.
struct Value {
  enum Kind { String, Integer, Float, Boolean } kind;
  std::string str;
  long long integer = 0;
  Real real = 0;
  bool boolean = false;
};

Value classify(int line, const std::string& raw) {
  Value v;
  if (raw.size() >= 2 && raw.front() == '"') {
    if (raw.back() != '"' || raw.size() < 2)
      fail(line, "unterminated string");
    v.kind = Value::String;
    v.str = raw.substr(1, raw.size() - 2);
    if (v.str.find('"') != std::string::npos)
      fail(line, "stray quote inside string");
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = Value::Boolean;
    v.boolean = raw == "true";
    return v;
  }
  bool integral = !raw.empty();
  for (size_t i = 0; i < raw.size(); ++i) {
    char ch = raw[i];
    if (i == 0 && (ch == '+' || ch == '-')) continue;
    if (!std::isdigit((unsigned char)ch)) integral = false;
  }
  if (integral && raw != "+" && raw != "-") {
    try {
      v.integer = std::stoll(raw);
    } catch (const std::exception&) {
      fail(line, "integer out of range");
    }
    v.kind = Value::Integer;
    return v;
  }
  Real r;
  if (parse_real(raw, r)) {
    v.kind = Value::Float;
    v.real = r;
    return v;
  }
  fail(line, "unparseable value '" + raw + "'");
}

std::string want_string(int line, const std::string& key, const Value& v) {
  if (v.kind != Value::String)
    fail(line, "key '" + key + "' expects a quoted string");
  return v.str;
}

int want_int(int line, const std::string& key, const Value& v, long long lo,
             long long hi) {
  if (v.kind != Value::Integer)
    fail(line, "key '" + key + "' expects an integer");
  if (v.integer < lo || v.integer > hi)
    fail(line, "key '" + key + "' out of representable range");
  return int(v.integer);
}

Real want_real(int line, const std::string& key, const Value& v) {
  if (v.kind == Value::Integer) return Real(v.integer);
  if (v.kind != Value::Float)
    fail(line, "key '" + key + "' expects a number");
  return v.real;
}

}  // namespace

SymbolWord config_word(const ExperimentConfig& cfg) {
  SymbolWord w;
  try {
    w = parse_cf_word(cfg.cf);
  } catch (const Error& e) {
    throw ConfigError("cf: " + std::string(e.what()));
  }
  for (int letter : w.letters)
    if (letter < 1 || letter > kNMax) {
      std::ostringstream os;
      os << "cf: letter " << letter << " outside the alphabet 1.." << kNMax;
      throw ConfigError(os.str());
    }
  return w;
}

void validate_config(const ExperimentConfig& cfg) {
  if (!cfg.command.empty() && !kCommands.count(cfg.command))
    throw ConfigError("unknown command '" + cfg.command + "'");
  auto family = [](const char* key, Real c) {
    if (!(c > Real(-0.9) && c < Real(0.9))) {
      std::ostringstream os;
      os << "family parameter " << key << " = " << real_to_string(c)
         << " outside (-0.9, 0.9)";
      throw ConfigError(os.str());
    }
  };
  family("c", cfg.c);
  family("c_prime", cfg.c_prime);
  config_word(cfg);
  if (cfg.steps < 1 || cfg.steps > kOrbitCap) {
    std::ostringstream os;
    os << "steps = " << cfg.steps << " outside 1.." << kOrbitCap << " for "
       << precision_name() << " precision";
    throw ConfigError(os.str());
  }
  if (!(cfg.tol >= Real(1e-12) && cfg.tol < Real(1)))
    throw ConfigError("tol must lie in [1e-12, 1): below that the rotation "
                      "number is not resolvable");
  if (cfg.degree < 8 || cfg.degree > 2048)
    throw ConfigError("degree must lie in 8..2048");
  if (cfg.grid < 33 || cfg.grid > 100000)
    throw ConfigError("grid must lie in 33..100000");
  if (!(cfg.ellipse > Real(1)))
    throw ConfigError("ellipse parameter must exceed 1");
  if (cfg.out.empty()) throw ConfigError("out directory must be nonempty");
  if (cfg.precision != "double" && cfg.precision != "extended")
    throw ConfigError("precision must be 'double' or 'extended'");
  if (cfg.precision != precision_name())
    throw ConfigError("config wants " + cfg.precision +
                      " precision but this binary carries " +
                      std::string(precision_name()));
  if (cfg.command == "validate-pair" && cfg.pair.empty())
    throw ConfigError("validate-pair needs a pair file path in 'pair'");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string rawline;
  int lineno = 0;
  while (std::getline(in, rawline)) {
    ++lineno;
    // strip comments, respecting quotes
    std::string line;
    bool quoted = false;
    for (char ch : rawline) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      line.push_back(ch);
    }
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string rhs = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail(lineno, "malformed key '" + key + "'");
    if (rhs.empty()) fail(lineno, "missing value for key '" + key + "'");
    if (!seen.insert(key).second) fail(lineno, "duplicate key '" + key + "'");
    Value v = classify(lineno, rhs);

    if (key == "command")
      cfg.command = want_string(lineno, key, v);
    else if (key == "c")
      cfg.c = want_real(lineno, key, v);
    else if (key == "c_prime")
      cfg.c_prime = want_real(lineno, key, v);
    else if (key == "cf")
      cfg.cf = want_string(lineno, key, v);
    else if (key == "steps")
      cfg.steps = want_int(lineno, key, v, -1000000, 1000000);
    else if (key == "tol")
      cfg.tol = want_real(lineno, key, v);
    else if (key == "degree")
      cfg.degree = want_int(lineno, key, v, -1000000, 1000000);
    else if (key == "grid")
      cfg.grid = want_int(lineno, key, v, -1000000, 1000000);
    else if (key == "ellipse")
      cfg.ellipse = want_real(lineno, key, v);
    else if (key == "out")
      cfg.out = want_string(lineno, key, v);
    else if (key == "pair")
      cfg.pair = want_string(lineno, key, v);
    else if (key == "precision")
      cfg.precision = want_string(lineno, key, v);
    else if (key == "seed") {
      if (v.kind != Value::Integer || v.integer < 0)
        fail(lineno, "key 'seed' expects a nonnegative integer");
      cfg.seed = (unsigned long long)v.integer;
    } else
      fail(lineno, "unknown key '" + key + "'");
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace renormlab
