#include "decaylab/models/symbol_parser.hpp"

#include <cctype>
#include <cmath>
#include <optional>

#include "decaylab/errors.hpp"

namespace decaylab::models {
namespace {

namespace sym = spectral::symbols;
using spectral::cplx;
using spectral::Wavenumber;

struct Factor {
  std::optional<MultiplierSymbol> fixed;
  // Diagonal factor: scalar value times the identity of whatever size fits.
  std::function<cplx(const Wavenumber&)> scalar;
  Rational degree;
  std::string name;
  int size = 0;  // 0: inferred.
};

MultiplierSymbol materialize(const Factor& f, int m) {
  if (f.fixed) return *f.fixed;
  auto fn = f.scalar;
  return MultiplierSymbol(f.name, m, m, f.degree, [fn, m](const Wavenumber& k, cplx* out) {
    const cplx v = fn(k);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) out[r * m + c] = r == c ? v : cplx{};
  });
}

class Parser {
 public:
  Parser(std::string_view s, int d, int m) : s_(s), d_(d), m_(m) {}

  MultiplierSymbol parse() {
    auto chain = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return build(chain, m_);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int d_, m_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("symbol expression '" + std::string(s_) + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::vector<Factor> expr() {
    std::vector<Factor> chain;
    if (eat('-')) chain.push_back(constant(-1.0));
    chain.push_back(factor());
    while (eat('*')) chain.push_back(factor());
    return chain;
  }

  static Factor constant(double v) {
    Factor f;
    f.scalar = [v](const Wavenumber&) { return cplx(v); };
    f.degree = 0;
    f.name = std::to_string(v);
    return f;
  }

  std::string token() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '.' || s_[pos_] == '/'))
      ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  std::vector<std::string> args() {
    std::vector<std::string> out;
    if (!eat('(')) return out;
    do {
      skip();
      const std::size_t b = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')') ++pos_;
      out.emplace_back(s_.substr(b, pos_ - b));
    } while (eat(','));
    if (!eat(')')) fail("missing ')'");
    return out;
  }

  int size_arg(const std::vector<std::string>& a, std::size_t i) {
    if (a.size() <= i) return 0;
    const Rational r = Rational::parse(a[i]);
    if (r.den() != 1 || r.num() < 1 || r.num() > 9) fail("bad component count");
    return static_cast<int>(r.num());
  }

  Factor factor() {
    if (eat('(')) {
      Factor f;
      f.fixed = build(expr(), 0);
      if (!eat(')')) fail("missing ')'");
      return f;
    }
    skip();
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      Factor f = constant(Rational::parse(token()).to_double());
      return f;
    }
    const std::string name = token();
    if (name.empty()) fail("expected an operator name");
    const auto a = args();
    auto axis = [&](const std::string& prefix) {
      const int ax = name[prefix.size()] - '1';
      if (name.size() != prefix.size() + 1 || ax < 0 || ax >= d_) fail("bad axis in '" + name + "'");
      return ax;
    };
    Factor f;
    f.name = name;
    if (name == "id") {
      f.scalar = [](const Wavenumber&) { return cplx(1.0); };
      f.degree = 0;
      f.size = size_arg(a, 0);
    } else if (name == "lambda") {
      if (a.empty()) fail("lambda needs an exponent");
      const Rational s = Rational::parse(a[0]);
      const double e = s.to_double();
      f.scalar = [e](const Wavenumber& k) { return cplx(std::pow(k.magnitude, e)); };
      f.degree = s;
      f.name = "lambda(" + s.str() + ")";
      f.size = size_arg(a, 1);
    } else if (name == "inv_lap") {
      f.scalar = [](const Wavenumber& k) { return cplx(-1.0 / (k.magnitude * k.magnitude)); };
      f.degree = -2;
      f.size = size_arg(a, 0);
    } else if (name.rfind("dx", 0) == 0) {
      f.fixed = sym::dx(axis("dx"));
    } else if (name == "riesz_perp") {
      if (d_ != 2) fail("riesz_perp needs d = 2");
      f.fixed = sym::riesz_perp();
    } else if (name.rfind("riesz", 0) == 0) {
      f.fixed = sym::riesz(axis("riesz"));
    } else if (name == "grad") {
      f.fixed = sym::grad(d_);
    } else if (name == "div") {
      f.fixed = sym::div(d_);
    } else if (name == "div_tensor") {
      f.fixed = sym::div_tensor(d_);
    } else if (name == "leray") {
      f.fixed = sym::leray(d_);
    } else {
      fail("unknown operator '" + name + "'");
    }
    return f;
  }

  // Composes right to left; diagonal factors adopt the size of the nearest
  // fixed neighbour (its input on the left side, its output on the right).
  MultiplierSymbol build(const std::vector<Factor>& chain, int fallback) {
    const int n = static_cast<int>(chain.size());
    std::vector<int> sizes(n, 0);
    for (int i = 0; i < n; ++i) {
      if (chain[i].fixed) continue;
      if (chain[i].size) {
        sizes[i] = chain[i].size;
        continue;
      }
      for (int j = i + 1; j < n && !sizes[i]; ++j) {
        if (chain[j].fixed) sizes[i] = chain[j].fixed->out();
        else if (chain[j].size) sizes[i] = chain[j].size;
      }
      for (int j = i - 1; j >= 0 && !sizes[i]; --j) {
        if (chain[j].fixed) sizes[i] = chain[j].fixed->in();
        else if (chain[j].size) sizes[i] = chain[j].size;
      }
      if (!sizes[i]) sizes[i] = fallback > 0 ? fallback : m_;
    }
    std::optional<MultiplierSymbol> acc;
    std::string name;
    for (int i = n - 1; i >= 0; --i) {
      MultiplierSymbol z = materialize(chain[i], sizes[i]);
      acc = acc ? spectral::compose(z, *acc) : z;
      name = name.empty() ? chain[i].name : chain[i].name + "*" + name;
    }
    return acc->renamed(name);
  }
};

}  // namespace

MultiplierSymbol parse_symbol(std::string_view expr, int d, int components) {
  return Parser(expr, d, components).parse().renamed(std::string(expr));
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return Rational::approximate(j.get<double>());
  throw ConfigError("expected a number or a \"p/q\" string");
}

ModelSpec model_from_json(const nlohmann::json& j) {
  try {
    const int d = j.at("d").get<int>();
    const int m = j.value("components", 1);
    const Rational theta = j.contains("theta") ? rational_from_json(j.at("theta")) : Rational(1);
    auto sym_of = [&](const char* key) { return parse_symbol(j.at(key).get<std::string>(), d, m); };
    ModelSpec spec(j.value("name", std::string("custom")), d, m, theta, sym_of("R"), sym_of("S"), sym_of("T"),
                   projector_from_string(j.value("projector", std::string("mean_removal"))),
                   j.value("skew_symmetric", false));
    spec.s_keeps_mean = j.value("s_keeps_mean", false);
    spec.note = j.value("note", std::string());
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model definition: ") + e.what());
  }
}

nlohmann::json model_to_json(const ModelSpec& spec) {
  return {{"name", spec.name},
          {"d", spec.d},
          {"components", spec.components},
          {"theta", spec.theta.str()},
          {"R", spec.R.name()},
          {"S", spec.S.name()},
          {"T", spec.T.name()},
          {"projector", to_string(spec.projector)},
          {"skew_symmetric", spec.skew_symmetric},
          {"s_keeps_mean", spec.s_keeps_mean},
          {"beta_c", spec.beta_c().str()}};
}

}  // namespace decaylab::models
