#include "harvestkit/config.hpp"

#include "harvestkit/errors.hpp"
#include "harvestkit/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace harvestkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_key(std::string_view dotted) {
  const auto dot = dotted.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == dotted.size())
    throw ConfigError("key must be written as section.key: '" + std::string(dotted) + "'");
  return {std::string(dotted.substr(0, dot)), std::string(dotted.substr(dot + 1))};
}

} // namespace

Config Config::parse(std::string_view text) {
  Config c;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": bad section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty() || section.find('.') != std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": bad section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": key outside a [section]");
    if (key.empty() || key.find('.') != std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": bad key");
    if (c.sections_[section].count(key))
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + section + "." + key);
    c.sections_[section][key] = value;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [name, keys] : sections_) {
    if (keys.empty()) continue;
    if (!out.empty()) out += '\n';
    out += '[' + name + "]\n";
    for (const auto& [k, v] : keys) out += k + " = " + v + '\n';
  }
  return out;
}

void Config::set(std::string_view dotted, std::string value) {
  auto [s, k] = split_key(dotted);
  sections_[s][k] = std::string(trim(value));
}

bool Config::has(std::string_view dotted) const { return get(dotted).has_value(); }

std::optional<std::string> Config::get(std::string_view dotted) const {
  auto [s, k] = split_key(dotted);
  const auto sec = sections_.find(s);
  if (sec == sections_.end()) return std::nullopt;
  const auto it = sec->second.find(k);
  if (it == sec->second.end()) return std::nullopt;
  return it->second;
}

void Config::require_known(const std::vector<std::string_view>& allowed) const {
  for (const auto& [s, keys] : sections_)
    for (const auto& [k, v] : keys) {
      const std::string dotted = s + "." + k;
      if (std::find(allowed.begin(), allowed.end(), dotted) == allowed.end())
        throw ConfigError("unknown config key '" + dotted + "'");
    }
}

namespace {

const std::vector<std::string_view> kKnownKeys = {
    "medium.preset",          "medium.sound_speed",     "medium.dispersion_strength",
    "medium.healing_length",  "medium.delta",           "medium.branch",
    "detector.gap",           "detector.a",             "detector.pulse_width",
    "detector.spot_size",     "detector.s",             "detector.separation",
    "detector.b",             "detector.coupling",      "detector.lambda_T",
    "detector.smearing",      "quadrature.rel_tol",     "quadrature.abs_tol",
    "quadrature.max_subdivisions", "quadrature.cutoff_factor", "quadrature.default_panel",
    "map.a_min",              "map.a_max",              "map.n_a",
    "map.a_spacing",          "map.b_min",              "map.b_max",
    "map.n_b",                "map.b_spacing",          "optimize.a_min",
    "optimize.a_max",         "optimize.b_min",         "optimize.b_max",
    "optimize.s_min",         "optimize.s_max",         "optimize.constraint",
    "optimize.budget",        "optimize.seed",
};

class Reader {
public:
  explicit Reader(const Config& c) : c_(c) {}

  std::optional<double> number(std::string_view key) const {
    const auto v = c_.get(key);
    if (!v) return std::nullopt;
    try {
      return parse_double(*v);
    } catch (const ConfigError&) {
      throw ConfigError(std::string(key) + ": not a number: '" + *v + "'");
    }
  }

  std::optional<long long> integer(std::string_view key) const {
    const auto v = number(key);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v) || std::abs(*v) > 9.0e15)
      throw ConfigError(std::string(key) + ": expected an integer");
    return static_cast<long long>(*v);
  }

  std::optional<std::string> text(std::string_view key) const { return c_.get(key); }

  // At most one of two spellings of the same quantity.
  void exclusive(std::string_view x, std::string_view y) const {
    if (c_.has(x) && c_.has(y))
      throw ConfigError("both '" + std::string(x) + "' and '" + std::string(y) +
                        "' given; use one");
  }

private:
  const Config& c_;
};

double need(std::optional<double> v, std::string_view key, std::string_view what) {
  if (!v) throw ConfigError(std::string(key) + " requires " + std::string(what));
  return *v;
}

} // namespace

RunConfig resolve(const Config& c) {
  c.require_known(kKnownKeys);
  const Reader r(c);
  RunConfig rc;

  if (const auto name = r.text("medium.preset")) rc.preset = find_preset(*name);

  r.exclusive("medium.dispersion_strength", "medium.healing_length");
  r.exclusive("medium.dispersion_strength", "medium.delta");
  r.exclusive("medium.healing_length", "medium.delta");
  r.exclusive("detector.gap", "detector.a");
  r.exclusive("detector.spot_size", "detector.s");
  r.exclusive("detector.separation", "detector.b");
  r.exclusive("detector.coupling", "detector.lambda_T");

  std::optional<double> cs = r.number("medium.sound_speed");
  if (!cs && rc.preset) cs = rc.preset->sound_speed;
  std::optional<double> T = r.number("detector.pulse_width");
  if (!T && rc.preset) T = rc.preset->pulse_width;
  if (cs && !(*cs > 0.0)) throw ConfigError("medium.sound_speed must be positive");
  if (T && !(*T > 0.0)) throw ConfigError("detector.pulse_width must be positive");

  std::optional<double> eps = r.number("medium.dispersion_strength");
  if (const auto xi = r.number("medium.healing_length")) {
    eps = need(cs, "medium.healing_length", "a sound speed") * *xi / std::sqrt(2.0);
  }
  const bool dispersion_given = eps || c.has("medium.delta");
  if (!eps && !c.has("medium.delta") && rc.preset) eps = rc.preset->dispersion_strength();

  Branch branch = Branch::linear;
  if (const auto b = r.text("medium.branch"))
    branch = parse_branch(*b);
  else if (rc.preset || dispersion_given)
    branch = Branch::bogoliubov;

  if (cs) {
    MediumParams m{*cs, eps.value_or(0.0), branch};
    rc.medium = m;
  }
  rc.pulse_width = T;
  const std::optional<double> cT = (cs && T) ? std::optional<double>(*cs * *T) : std::nullopt;

  DimensionlessPoint& p = rc.point;
  p.branch = branch;
  if (const auto a = r.number("detector.a"))
    p.a = *a;
  else if (const auto g = r.number("detector.gap"))
    p.a = *g * need(T, "detector.gap", "a pulse width");

  if (const auto s = r.number("detector.s"))
    p.s = *s;
  else if (const auto sig = r.number("detector.spot_size"))
    p.s = *sig / need(cT, "detector.spot_size", "sound speed and pulse width");
  else if (rc.preset && cT)
    p.s = rc.preset->spot_size / *cT;

  if (const auto b = r.number("detector.b"))
    p.b = *b;
  else if (const auto dx = r.number("detector.separation"))
    p.b = *dx / need(cT, "detector.separation", "sound speed and pulse width");

  if (const auto d = r.number("medium.delta"))
    p.delta = *d;
  else if (eps && *eps > 0.0) {
    const double ct = need(cT, "medium.dispersion_strength", "sound speed and pulse width");
    p.delta = *eps / (*cs * ct);
  }
  if (branch == Branch::linear) p.delta = 0.0;

  if (const auto lt = r.number("detector.lambda_T")) {
    rc.scale = *lt * *lt;
  } else if (const auto lam = r.number("detector.coupling")) {
    const double x = *lam * need(T, "detector.coupling", "a pulse width");
    rc.scale = x * x;
  }

  if (const auto sm = r.text("detector.smearing")) rc.smearing = parse_smearing(*sm);

  QuadratureSpec& q = rc.quadrature;
  if (const auto v = r.number("quadrature.rel_tol")) q.rel_tol = *v;
  if (const auto v = r.number("quadrature.abs_tol")) q.abs_tol = *v;
  if (const auto v = r.integer("quadrature.max_subdivisions")) q.max_subdivisions = int(*v);
  if (const auto v = r.number("quadrature.cutoff_factor")) q.cutoff_factor = *v;
  if (const auto v = r.number("quadrature.default_panel")) q.default_panel = *v;

  GridSpec& g = rc.grid;
  if (const auto v = r.number("map.a_min")) g.a.min = *v;
  if (const auto v = r.number("map.a_max")) g.a.max = *v;
  if (const auto v = r.integer("map.n_a")) g.a.n = int(*v);
  if (const auto v = r.text("map.a_spacing")) g.a.spacing = parse_spacing(*v);
  if (const auto v = r.number("map.b_min")) g.b.min = *v;
  if (const auto v = r.number("map.b_max")) g.b.max = *v;
  if (const auto v = r.integer("map.n_b")) g.b.n = int(*v);
  if (const auto v = r.text("map.b_spacing")) g.b.spacing = parse_spacing(*v);
  g.s = p.s;
  g.delta = p.delta;
  g.branch = p.branch;
  g.smearing = rc.smearing;
  g.quadrature = q;
  g.scale = rc.scale;

  OptimizeSpec& o = rc.optimize;
  o.s_min = o.s_max = p.s;
  if (const auto v = r.number("optimize.a_min")) o.a_min = *v;
  if (const auto v = r.number("optimize.a_max")) o.a_max = *v;
  if (const auto v = r.number("optimize.b_min")) o.b_min = *v;
  if (const auto v = r.number("optimize.b_max")) o.b_max = *v;
  if (const auto v = r.number("optimize.s_min")) o.s_min = *v;
  if (const auto v = r.number("optimize.s_max")) o.s_max = *v;
  if (const auto v = r.text("optimize.constraint")) o.constraint = parse_constraint(*v);
  if (const auto v = r.integer("optimize.budget")) o.budget = int(*v);
  if (const auto v = r.integer("optimize.seed")) {
    if (*v < 0) throw ConfigError("optimize.seed must be non-negative");
    o.seed = std::uint64_t(*v);
  }
  o.delta = p.delta;
  o.branch = p.branch;
  o.smearing = rc.smearing;
  o.quadrature = q;
  o.scale = rc.scale;

  // Everything is checked before any computation starts.
  try {
    if (rc.medium) rc.medium->validate();
    p.validate();
    q.validate();
    if (!(rc.scale >= 0.0) || !std::isfinite(rc.scale))
      throw DomainError("coupling must be non-negative");
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return rc;
}

} // namespace harvestkit
