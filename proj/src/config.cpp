#include "accretive/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace accretive {

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::EllipticFrac: return "elliptic+frac";
    case Family::HighOrder: return "highorder";
    case Family::Selftest2x2: return "selftest2x2";
  }
  return "unknown";
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string out = z.real() == 0.0 ? "" : format_double(z.real());
  if (z.imag() >= 0.0 && !out.empty()) out += "+";
  return out + format_double(z.imag()) + "i";
}

}  // namespace

Vector CoefficientExpr::sample(const Grid& grid) const {
  Vector v(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double t = (grid.node(i) - grid.a) / (grid.b - grid.a);
    v(i) = start + t * (end - start);
  }
  return v;
}

std::string CoefficientExpr::text() const {
  if (constant()) return format_complex(start);
  return "lin(" + format_complex(start) + ", " + format_complex(end) + ")";
}

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> groups{
      "conditions", "sector",       "resolvent",  "real_part",  "factorization", "two_sided",
      "schatten",   "completeness", "eigen_sums", "compactness", "asymptotic"};
  return groups;
}

bool AnalysisConfig::enabled(std::string_view group) const {
  return std::find(checks.begin(), checks.end(), group) != checks.end();
}

namespace {

[[noreturn]] void parse_error(int line, int column, const std::string& what) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << what;
  throw Error(Errc::ParseError, os.str());
}

[[noreturn]] void constraint(const std::string& what) { throw Error(Errc::ConstraintError, what); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::set<std::string> kSections{"grid", "operator", "fractional", "checks", "tolerances", "run"};

const std::vector<std::string> kKeys{
    "grid.a",           "grid.b",
    "grid.sizes",       "operator.family",
    "operator.diffusion", "operator.alpha",
    "operator.frac_coeff", "operator.beta",
    "operator.right_coeff", "operator.reaction",
    "operator.k",       "operator.left_orders",
    "operator.left_coeffs", "operator.right_orders",
    "operator.right_coeffs", "fractional.scheme",
    "checks.enable",    "tolerances.identity",
    "tolerances.trend", "run.seed",
    "run.p_list",       "run.eps",
    "run.range_angles", "run.range_samples",
    "run.trials"};

bool is_coefficient_key(const std::string& name) {
  static const std::regex re("c(0|[1-9][0-9]?)");
  return std::regex_match(name, re);
}

bool known(const std::string& qualified) {
  if (std::find(kKeys.begin(), kKeys.end(), qualified) != kKeys.end()) return true;
  return qualified.rfind("operator.", 0) == 0 && is_coefficient_key(qualified.substr(9));
}

// Resolves a key written inside `section` (empty at top level).
std::optional<std::string> qualify(const std::string& section, const std::string& key) {
  if (key.find('.') != std::string::npos) {
    if (!section.empty()) return std::nullopt;
    return known(key) ? std::optional(key) : std::nullopt;
  }
  if (!section.empty()) {
    const std::string q = section + "." + key;
    return known(q) ? std::optional(q) : std::nullopt;
  }
  if (is_coefficient_key(key)) return "operator." + key;
  std::optional<std::string> found;
  for (const auto& q : kKeys) {
    if (q.substr(q.find('.') + 1) != key) continue;
    if (found) return std::nullopt;
    found = q;
  }
  return found;
}

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;
};

class ValueReader {
 public:
  explicit ValueReader(const Entry& e) : e_(e) {}

  double real(const std::string& s) const {
    double v = 0.0;
    std::string t = trim(s);
    if (t.size() > 1 && t.front() == '+') t.erase(0, 1);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) fail("expected a number, got '" + t + "'");
    return v;
  }

  double real() const { return real(e_.value); }

  long long integer(const std::string& s) const {
    long long v = 0;
    const std::string t = trim(s);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
      fail("expected an integer, got '" + t + "'");
    return v;
  }

  long long integer() const { return integer(e_.value); }

  std::uint64_t unsigned_integer() const {
    std::uint64_t v = 0;
    const std::string t = trim(e_.value);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
      fail("expected a nonnegative integer, got '" + t + "'");
    return v;
  }

  std::vector<std::string> list() const {
    std::string body = trim(e_.value);
    if (!body.empty() && body.front() == '[') {
      if (body.back() != ']') fail("unterminated list");
      body = body.substr(1, body.size() - 2);
    }
    std::vector<std::string> items;
    if (trim(body).empty()) return items;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail("empty list element");
      items.push_back(item);
    }
    if (body.back() == ',') fail("empty list element");
    return items;
  }

  std::vector<double> reals() const {
    std::vector<double> out;
    for (const auto& s : list()) out.push_back(real(s));
    return out;
  }

  Complex complex(const std::string& text) const {
    std::string t = trim(text);
    t.erase(std::remove_if(t.begin(), t.end(), [](char ch) { return ch == ' ' || ch == '\t'; }), t.end());
    if (t.empty()) fail("expected a complex number");
    if (t.back() != 'i') return {real(t), 0.0};
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t p = t.size(); p-- > 1;) {
      if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
        split = p;
        break;
      }
    }
    auto imag_part = [&](const std::string& s) {
      if (s.empty() || s == "+") return 1.0;
      if (s == "-") return -1.0;
      return real(s);
    };
    if (split == std::string::npos) return {0.0, imag_part(t)};
    return {real(t.substr(0, split)), imag_part(t.substr(split))};
  }

  CoefficientExpr coefficient() const {
    static const std::regex lin(R"(^\s*lin\s*\(([^,]*),([^,]*)\)\s*$)");
    std::smatch m;
    if (std::regex_match(e_.value, m, lin)) return {complex(m[1].str()), complex(m[2].str())};
    const Complex z = complex(e_.value);
    return {z, z};
  }

  [[noreturn]] void fail(const std::string& what) const { parse_error(e_.line, e_.column, what); }

 private:
  const Entry& e_;
};

int positive_int(const ValueReader& r, long long min) {
  const long long v = r.integer();
  if (v < min || v > 1000000) r.fail("value out of range");
  return static_cast<int>(v);
}

std::string sign_text(int s) { return s > 0 ? "+" : "-"; }

}  // namespace

void validate(const AnalysisConfig& cfg) {
  if (!(cfg.b > cfg.a)) constraint("interval must satisfy b > a");
  if (cfg.family != Family::Selftest2x2) {
    if (cfg.sizes.empty()) constraint("sizes must not be empty");
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
      if (cfg.sizes[i] < 8) constraint("every grid size must be >= 8, got " + std::to_string(cfg.sizes[i]));
      if (i > 0 && cfg.sizes[i] <= cfg.sizes[i - 1]) constraint("sizes must be strictly ascending");
    }
  }

  auto check_left = [](double order, double coeff, int k, const std::string& name) {
    if (order < 0.0) constraint(name + " order must be >= 0");
    if (std::floor(order) >= k)
      constraint(name + ": [order] = " + std::to_string(int(std::floor(order))) + " must be below " +
                 std::to_string(k));
    const int s = fractional_sign_rule(order);
    if (coeff * s < 0.0) {
      std::ostringstream os;
      os << name << " coefficient " << coeff << " of order " << order << " violates the parity rule: sign must be "
         << sign_text(s) << " for [order] = " << int(std::floor(order));
      constraint(os.str());
    }
  };
  auto check_right = [](double order, double coeff, int k, const std::string& name) {
    if (order < 0.0) constraint(name + " order must be >= 0");
    if (std::floor(order) >= k)
      constraint(name + ": [order] = " + std::to_string(int(std::floor(order))) + " must be below " +
                 std::to_string(k));
    if (coeff < 0.0) constraint(name + " coefficient must be >= 0");
  };

  if (cfg.family == Family::EllipticFrac) {
    for (Complex z : {cfg.diffusion.start, cfg.diffusion.end}) {
      if (z.imag() != 0.0 || !(z.real() > 0.0))
        constraint("diffusion must be real and positive (ellipticity a(x) > 0), got " + cfg.diffusion.text());
    }
    check_left(cfg.alpha, cfg.frac_coeff, 2, "frac_coeff");
    check_right(cfg.beta, cfg.right_coeff, 2, "right_coeff");
    if (cfg.reaction < 0.0) constraint("reaction must be >= 0");
  } else if (cfg.family == Family::HighOrder) {
    if (cfg.k < 1) constraint("k must be >= 1");
    if (static_cast<int>(cfg.c.size()) != cfg.k + 1) constraint("expected coefficients c0 .. c" + std::to_string(cfg.k));
    for (int j = 0; j <= cfg.k; ++j) {
      const CoefficientExpr& e = cfg.c[static_cast<std::size_t>(j)];
      const int s = (j % 2 == 0) ? 1 : -1;
      for (Complex z : {e.start, e.end}) {
        if (s * z.real() < 0.0) {
          std::ostringstream os;
          os << "c" << j << " = " << e.text() << " violates the sign rule sign(Re c_j) = (-1)^j: Re c_" << j
             << " must be " << (s > 0 ? ">= 0" : "<= 0");
          constraint(os.str());
        }
      }
    }
    const CoefficientExpr& top = cfg.c.back();
    if (top.start.real() == 0.0 || top.end.real() == 0.0)
      constraint("principal coefficient c" + std::to_string(cfg.k) + " must have nonzero real part");
    for (const auto& t : cfg.left) check_left(t.order, t.coeff, cfg.k, "left_coeffs");
    for (const auto& t : cfg.right) check_right(t.order, t.coeff, cfg.k, "right_coeffs");
  }

  for (const auto& g : cfg.checks)
    if (std::find(check_groups().begin(), check_groups().end(), g) == check_groups().end())
      constraint("unknown check '" + g + "'");
  if (cfg.checks_explicit && cfg.enabled("asymptotic") && cfg.family != Family::Selftest2x2 && cfg.sizes.size() < 3)
    constraint("the asymptotic check needs at least 3 sizes");
  if (!(cfg.tolerances.identity > 0.0) || !(cfg.tolerances.trend > 0.0)) constraint("tolerances must be positive");
  if (cfg.p_list.empty()) constraint("p_list must not be empty");
  for (double p : cfg.p_list)
    if (!(p >= 1.0)) constraint("every p in p_list must be >= 1");
  if (!(cfg.eps > 0.0)) constraint("eps must be positive");
  if (cfg.range_angles < 4) constraint("range_angles must be >= 4");
  if (cfg.range_samples < 0) constraint("range_samples must be >= 0");
  if (cfg.trials < 1) constraint("trials must be >= 1");
}

AnalysisConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = hash == std::string::npos ? raw : raw.substr(0, hash);
    const std::string body = trim(content);
    if (body.empty()) continue;
    const int indent = static_cast<int>(content.find_first_not_of(" \t")) + 1;

    if (body.front() == '[') {
      if (body.back() != ']') parse_error(line, indent, "unterminated section header");
      const std::string name = trim(body.substr(1, body.size() - 2));
      if (!kSections.count(name)) parse_error(line, indent + 1, "unknown section '" + name + "'");
      section = name;
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) parse_error(line, indent, "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    static const std::regex key_re(R"([a-z_][a-z0-9_]*(\.[a-z_][a-z0-9_]*)?)");
    if (!std::regex_match(key, key_re)) parse_error(line, indent, "malformed key '" + key + "'");
    const auto q = qualify(section, key);
    if (!q) parse_error(line, indent, "unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
    if (entries.count(*q)) parse_error(line, indent, "duplicate key '" + *q + "'");
    const std::string value = trim(content.substr(eq + 1));
    const auto value_start = content.find_first_not_of(" \t", eq + 1);
    const int column = static_cast<int>(value_start == std::string::npos ? eq + 1 : value_start) + 1;
    if (value.empty()) parse_error(line, column, "missing value for '" + key + "'");
    entries[*q] = Entry{value, line, column};
  }

  AnalysisConfig cfg;
  auto get = [&](const std::string& key) -> const Entry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (auto e = get("grid.a")) cfg.a = ValueReader(*e).real();
  if (auto e = get("grid.b")) cfg.b = ValueReader(*e).real();
  if (auto e = get("grid.sizes")) {
    ValueReader r(*e);
    cfg.sizes.clear();
    for (const auto& s : r.list()) {
      const long long v = r.integer(s);
      if (v < 0 || v > 100000) r.fail("grid size out of range");
      cfg.sizes.push_back(static_cast<int>(v));
    }
  }
  if (auto e = get("operator.family")) {
    const std::string& v = e->value;
    if (v == "elliptic+frac")
      cfg.family = Family::EllipticFrac;
    else if (v == "highorder")
      cfg.family = Family::HighOrder;
    else if (v == "selftest2x2")
      cfg.family = Family::Selftest2x2;
    else
      ValueReader(*e).fail("unknown family '" + v + "' (expected elliptic+frac, highorder or selftest2x2)");
  }
  if (auto e = get("operator.diffusion")) cfg.diffusion = ValueReader(*e).coefficient();
  if (auto e = get("operator.alpha")) cfg.alpha = ValueReader(*e).real();
  if (auto e = get("operator.frac_coeff")) cfg.frac_coeff = ValueReader(*e).real();
  if (auto e = get("operator.beta")) cfg.beta = ValueReader(*e).real();
  if (auto e = get("operator.right_coeff")) cfg.right_coeff = ValueReader(*e).real();
  if (auto e = get("operator.reaction")) cfg.reaction = ValueReader(*e).real();

  if (auto e = get("operator.k")) cfg.k = positive_int(ValueReader(*e), 1);
  int highest = -1;
  for (const auto& [key, entry] : entries) {
    if (key.rfind("operator.c", 0) == 0 && is_coefficient_key(key.substr(9)))
      highest = std::max(highest, std::stoi(key.substr(10)));
  }
  if (cfg.family == Family::HighOrder) {
    if (!get("operator.k") && highest >= 1) cfg.k = highest;
    if (highest > cfg.k) {
      const Entry* e = get("operator.c" + std::to_string(highest));
      parse_error(e->line, e->column, "coefficient c" + std::to_string(highest) + " exceeds k = " + std::to_string(cfg.k));
    }
    cfg.c.assign(static_cast<std::size_t>(cfg.k + 1), CoefficientExpr{});
    for (int j = 0; j <= cfg.k; ++j)
      if (auto e = get("operator.c" + std::to_string(j))) cfg.c[static_cast<std::size_t>(j)] = ValueReader(*e).coefficient();
  } else if (highest >= 0) {
    const Entry* e = get("operator.c" + std::to_string(highest));
    parse_error(e->line, e->column, "coefficients c_j apply to the highorder family only");
  }

  auto terms = [&](const char* orders_key, const char* coeffs_key) {
    std::vector<FractionalTermConfig> out;
    const Entry* o = get(orders_key);
    const Entry* c = get(coeffs_key);
    if (!o && !c) return out;
    if (!o || !c) {
      const Entry* present = o ? o : c;
      parse_error(present->line, present->column,
                  std::string(orders_key).substr(9) + " and " + std::string(coeffs_key).substr(9) +
                      " must be given together");
    }
    const auto orders = ValueReader(*o).reals();
    const auto coeffs = ValueReader(*c).reals();
    if (orders.size() != coeffs.size()) ValueReader(*c).fail("list lengths differ");
    for (std::size_t i = 0; i < orders.size(); ++i) out.push_back({orders[i], coeffs[i]});
    return out;
  };
  cfg.left = terms("operator.left_orders", "operator.left_coeffs");
  cfg.right = terms("operator.right_orders", "operator.right_coeffs");

  if (auto e = get("fractional.scheme")) {
    if (e->value == "composed")
      cfg.scheme = FracVariant::Composed;
    else if (e->value == "grunwald-letnikov")
      cfg.scheme = FracVariant::GrunwaldLetnikovDerivative;
    else
      ValueReader(*e).fail("unknown scheme '" + e->value + "' (expected composed or grunwald-letnikov)");
  }

  cfg.checks = check_groups();
  if (auto e = get("checks.enable")) {
    ValueReader r(*e);
    const auto items = r.list();
    if (!(items.size() == 1 && items[0] == "all")) {
      std::set<std::string> wanted(items.begin(), items.end());
      for (const auto& w : wanted)
        if (std::find(check_groups().begin(), check_groups().end(), w) == check_groups().end())
          constraint("unknown check '" + w + "'");
      cfg.checks.clear();
      for (const auto& g : check_groups())
        if (wanted.count(g)) cfg.checks.push_back(g);
      cfg.checks_explicit = true;
    }
  }

  if (auto e = get("tolerances.identity")) cfg.tolerances.identity = ValueReader(*e).real();
  if (auto e = get("tolerances.trend")) cfg.tolerances.trend = ValueReader(*e).real();
  if (auto e = get("run.seed")) cfg.seed = ValueReader(*e).unsigned_integer();
  if (auto e = get("run.p_list")) cfg.p_list = ValueReader(*e).reals();
  if (auto e = get("run.eps")) cfg.eps = ValueReader(*e).real();
  if (auto e = get("run.range_angles")) cfg.range_angles = positive_int(ValueReader(*e), 0);
  if (auto e = get("run.range_samples")) cfg.range_samples = positive_int(ValueReader(*e), 0);
  if (auto e = get("run.trials")) cfg.trials = positive_int(ValueReader(*e), 0);

  validate(cfg);
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_seed_override(AnalysisConfig& config, const char* value) {
  if (!value) return;
  std::uint64_t seed = 0;
  const std::string t = trim(value);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), seed);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw Error(Errc::ParseError, "ACCRETIVE_SEED must be a nonnegative integer, got '" + t + "'");
  config.seed = seed;
}

std::map<std::string, std::string> echo(const AnalysisConfig& cfg) {
  std::map<std::string, std::string> out;
  auto join = [](const auto& items, auto fmt) {
    std::string s;
    for (const auto& x : items) s += (s.empty() ? "" : ", ") + fmt(x);
    return s;
  };
  out["grid.a"] = format_double(cfg.a);
  out["grid.b"] = format_double(cfg.b);
  out["grid.sizes"] = join(cfg.sizes, [](int n) { return std::to_string(n); });
  out["operator.family"] = std::string(to_string(cfg.family));
  if (cfg.family == Family::EllipticFrac) {
    out["operator.diffusion"] = cfg.diffusion.text();
    out["operator.alpha"] = format_double(cfg.alpha);
    out["operator.frac_coeff"] = format_double(cfg.frac_coeff);
    out["operator.beta"] = format_double(cfg.beta);
    out["operator.right_coeff"] = format_double(cfg.right_coeff);
    out["operator.reaction"] = format_double(cfg.reaction);
  } else if (cfg.family == Family::HighOrder) {
    out["operator.k"] = std::to_string(cfg.k);
    for (std::size_t j = 0; j < cfg.c.size(); ++j) out["operator.c" + std::to_string(j)] = cfg.c[j].text();
    auto orders = [](const FractionalTermConfig& t) { return format_double(t.order); };
    auto coeffs = [](const FractionalTermConfig& t) { return format_double(t.coeff); };
    out["operator.left_orders"] = join(cfg.left, orders);
    out["operator.left_coeffs"] = join(cfg.left, coeffs);
    out["operator.right_orders"] = join(cfg.right, orders);
    out["operator.right_coeffs"] = join(cfg.right, coeffs);
  }
  out["fractional.scheme"] = cfg.scheme == FracVariant::Composed ? "composed" : "grunwald-letnikov";
  out["checks.enable"] = join(cfg.checks, [](const std::string& s) { return s; });
  out["tolerances.identity"] = format_double(cfg.tolerances.identity);
  out["tolerances.trend"] = format_double(cfg.tolerances.trend);
  out["run.seed"] = std::to_string(cfg.seed);
  out["run.p_list"] = join(cfg.p_list, [](double p) { return format_double(p); });
  out["run.eps"] = format_double(cfg.eps);
  out["run.range_angles"] = std::to_string(cfg.range_angles);
  out["run.range_samples"] = std::to_string(cfg.range_samples);
  out["run.trials"] = std::to_string(cfg.trials);
  return out;
}

}  // namespace accretive
