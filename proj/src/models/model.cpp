#include "decaylab/models/model.hpp"

#include <algorithm>

#include "decaylab/errors.hpp"
#include "decaylab/spectral/ops.hpp"

namespace decaylab::models {

namespace sym = spectral::symbols;

std::string to_string(Projector p) {
  switch (p) {
    case Projector::none: return "none";
    case Projector::mean_removal: return "mean_removal";
    case Projector::leray: return "leray";
  }
  return "none";
}

Projector projector_from_string(const std::string& s) {
  if (s == "none") return Projector::none;
  if (s == "mean_removal" || s == "mean") return Projector::mean_removal;
  if (s == "leray") return Projector::leray;
  throw ConfigError("unknown projector '" + s + "'");
}

ModelSpec::ModelSpec(std::string name_, int d_, int components_, Rational theta_, MultiplierSymbol R_,
                     MultiplierSymbol S_, MultiplierSymbol T_, Projector projector_, bool skew_)
    : name(std::move(name_)),
      d(d_),
      components(components_),
      theta(theta_),
      R(std::move(R_)),
      S(std::move(S_)),
      T(std::move(T_)),
      projector(projector_),
      skew_symmetric(skew_) {
  if (d < 1 || d > 3) throw DimensionError("model dimension must be 1, 2 or 3");
  if (theta <= Rational(0)) throw DomainError("dissipation order must be positive");
  if (S.in() != components || T.in() != components)
    throw DimensionError("S and T must act on the " + std::to_string(components) + " state components");
  if (R.in() != S.out() * T.out())
    throw DimensionError("R consumes " + std::to_string(R.in()) + " products but Su (x) Tv has " +
                         std::to_string(S.out() * T.out()));
  if (R.out() != components) throw DimensionError("R must return the state components");
  if (projector == Projector::leray && components != d) throw DimensionError("Leray projector needs d components");
  beta_c_ = R.degree() + S.degree() + T.degree() + Rational(d, 2) - 2 * theta;
}

ModelSpec ModelSpec::with_theta(Rational th) const {
  ModelSpec out = *this;
  if (th <= Rational(0)) throw DomainError("dissipation order must be positive");
  out.theta = th;
  out.beta_c_ = R.degree() + S.degree() + T.degree() + Rational(d, 2) - 2 * th;
  return out;
}

Rational beta_c(const ModelSpec& spec) { return spec.beta_c(); }

const std::vector<std::string>& registered_models() {
  static const std::vector<std::string> names{"burgers", "ns2d",     "ns3d",     "sqg",     "ks2d",
                                              "ks3d",    "linear1d", "linear2d", "linear3d"};
  return names;
}

namespace {

ModelSpec make_ns(int d) {
  ModelSpec m("ns" + std::to_string(d) + "d", d, d, 1,
              spectral::compose(sym::leray(d), sym::div_tensor(d)).scaled(-1.0).renamed("-leray*div_tensor"),
              sym::identity(d), sym::identity(d), Projector::leray, true);
  return m;
}

ModelSpec make_ks(int d) {
  ModelSpec m("ks" + std::to_string(d) + "d", d, 1, 1, sym::div(d), sym::identity(1),
              spectral::compose(sym::grad(d), sym::inv_laplacian(1)).renamed("grad*inv_lap"), Projector::none,
              false);
  m.s_keeps_mean = true;
  return m;
}

ModelSpec make_linear(int d) {
  ModelSpec m("linear" + std::to_string(d) + "d", d, 1, 1, sym::identity(1).scaled(0.0).renamed("zero"),
              sym::identity(1), sym::identity(1), Projector::mean_removal, true);
  m.linear = true;
  return m;
}

}  // namespace

ModelSpec make_model(const std::string& name, std::optional<Rational> theta) {
  const bool is_linear = name.rfind("linear", 0) == 0;
  if (theta && name != "sqg" && !is_linear)
    throw ConfigError("model '" + name + "' has fixed dissipation order 1; theta applies to sqg only");
  if (name == "burgers")
    return ModelSpec("burgers", 1, 1, 1, sym::dx(0).scaled(-1.0).renamed("-dx1"), sym::identity(1),
                     sym::identity(1), Projector::mean_removal, true);
  if (name == "ns2d") return make_ns(2);
  if (name == "ns3d") return make_ns(3);
  if (name == "ks2d") return make_ks(2);
  if (name == "ks3d") return make_ks(3);
  if (name == "sqg") {
    const Rational th = theta.value_or(Rational(3, 4));
    if (th < Rational(2, 3) || th > Rational(1))
      throw DomainError("sqg needs 2/3 <= theta <= 1, got " + th.str());
    ModelSpec m("sqg", 2, 1, th, sym::div(2).scaled(-1.0).renamed("-div"), sym::identity(1), sym::riesz_perp(),
                Projector::mean_removal, true);
    m.note =
        "alternative assignment R = I, S = grad, T = Riesz gives the same beta_c but admissibility lower "
        "bound 1/2 instead of 2/3";
    return m;
  }
  if (is_linear) {
    const std::string suffix = name.substr(6);
    if (suffix != "1d" && suffix != "2d" && suffix != "3d") throw ConfigError("unknown model '" + name + "'");
    ModelSpec m = make_linear(suffix[0] - '0');
    if (theta) m = m.with_theta(*theta);
    return m;
  }
  throw ConfigError("unknown model '" + name + "'");
}

BilinearOperator::BilinearOperator(const ModelSpec& spec, const spectral::Grid& grid)
    : spec_(std::make_shared<const ModelSpec>(spec)), grid_(grid) {
  if (grid.dim() != spec.d)
    throw DimensionError("model '" + spec.name + "' is " + std::to_string(spec.d) + "D, grid is " +
                         std::to_string(grid.dim()) + "D");
  if (!spec.linear) {
    r_ = std::make_unique<spectral::SymbolTable>(spec.R, grid);
    s_ = std::make_unique<spectral::SymbolTable>(spec.S, grid);
    t_ = std::make_unique<spectral::SymbolTable>(spec.T, grid);
  }
  if (spec.projector == Projector::leray)
    p_ = std::make_unique<spectral::SymbolTable>(sym::leray(spec.d), grid);
}

SpectralField BilinearOperator::project(const SpectralField& f) const {
  if (f.components() != spec_->components) throw DimensionError("field does not match the model's components");
  switch (spec_->projector) {
    case Projector::none: return f;
    case Projector::mean_removal: return spectral::remove_mean(f);
    case Projector::leray: return spectral::apply_multiplier(f, *p_);
  }
  return f;
}

SpectralField BilinearOperator::transport(const SpectralField& u) const {
  if (spec_->linear) return SpectralField(u.grid(), 1);
  return spectral::apply_multiplier(u, *t_);
}

SpectralField BilinearOperator::apply(const SpectralField& u, const SpectralField& v) const {
  spectral::require_same_grid(u, v);
  if (u.grid() != grid_) throw GridMismatch("field grid differs from the operator's grid");
  if (u.components() != spec_->components || v.components() != spec_->components)
    throw DimensionError("model '" + spec_->name + "' expects " + std::to_string(spec_->components) +
                         " components");
  if (spec_->linear) return SpectralField(u.grid(), spec_->components);
  if (spec_->T.degree() < Rational(0) && !spec_->s_keeps_mean && !v.mean_zero())
    throw DomainError("negative-degree T applied to a field with a mean");
  SpectralField su = spectral::apply_multiplier(u, *s_);
  if (spec_->s_keeps_mean)
    for (int c = 0; c < su.components(); ++c) su.at(c, 0) = u.at(c, 0);
  const SpectralField tv = spectral::apply_multiplier(v, *t_);
  const SpectralField prod = spectral::tensor_product(su, tv);
  SpectralField out = spectral::apply_multiplier(prod, *r_);
  out = project(out);
  for (int c = 0; c < out.components(); ++c) out.at(c, 0) = 0.0;
  return out;
}

SpectralField bilinear_apply(const ModelSpec& spec, const SpectralField& u, const SpectralField& v) {
  return BilinearOperator(spec, u.grid()).apply(u, v);
}

SpectralField project_subspace(const ModelSpec& spec, const SpectralField& f) {
  return BilinearOperator(spec, f.grid()).project(f);
}

}  // namespace decaylab::models
