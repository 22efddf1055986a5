#include "expdiff/synthesis/synthesis.hpp"

#include "expdiff/algebra/linalg.hpp"
#include "expdiff/error.hpp"

namespace expdiff {

SynthesisResult extend_derivation(const TSVariety& v, std::size_t derivation,
                                  std::optional<RotundityVerdict> rotundity) {
  const DiffField& base = v.base();
  if (base.nders() > 1)
    fail(ErrorCode::NonCommuting, "synthesis supports exactly one base derivation, got " + std::to_string(base.nders()));
  if (base.nders() == 0 || derivation >= base.nders()) fail(ErrorCode::InvalidArgument, "no such base derivation");
  if (!v.has_parametrization()) fail(ErrorCode::InvalidArgument, "synthesis needs a parametrized variety");

  const Parametrization& p = v.parametrization();
  const std::size_t k = base.ngens(), d = p.params.size(), nv = k + d, n = v.n();
  RFVector d0;
  for (std::size_t g = 0; g < k; ++g) d0.push_back(base.derivation_of(derivation, g).extended(nv));
  auto base_part = [&](const RationalFunction& f) {
    RationalFunction acc(nv);
    for (std::size_t g = 0; g < k; ++g)
      if (!d0[g].is_zero()) acc += d0[g] * f.derivative(g);
    return acc;
  };

  // D x_i = D y_i / y_i, linear in sigma_j = D s_j.
  RFMatrix a;
  RFVector b;
  for (std::size_t i = 0; i < n; ++i) {
    RFVector row;
    for (std::size_t s = 0; s < d; ++s) row.push_back(p.x[i].derivative(k + s) - p.y[i].derivative(k + s) / p.y[i]);
    a.push_back(std::move(row));
    b.push_back(base_part(p.y[i]) / p.y[i] - base_part(p.x[i]));
  }
  auto particular = solve_particular(a, b, d, nv);
  if (!particular) fail(ErrorCode::NoExtension, "no derivation extending the base makes the generic point a Gamma-point");
  auto kernel = nullspace_over_field(a, d, nv);

  SynthesisResult out;
  out.rotundity = std::move(rotundity);
  out.uniqueness_rank = kernel.size();
  RFVector sigma = *particular;
  for (const auto& kv : kernel)
    for (std::size_t s = 0; s < d; ++s) sigma[s] += kv[s];
  for (std::size_t s = 0; s < d; ++s) {
    bool forced = (*particular)[s].is_zero();
    for (const auto& kv : kernel) forced = forced && kv[s].is_zero();
    if (forced) out.forced_constant.push_back(s);
    if (sigma[s].is_zero()) out.constant_parameters.push_back(s);
  }

  std::vector<Generator> gens = base.generators();
  std::vector<bool> flagged(d, false);
  for (std::size_t s : out.constant_parameters) flagged[s] = true;
  for (std::size_t s = 0; s < d; ++s) gens.push_back({p.params[s], flagged[s]});
  RFVector table = d0;
  table.insert(table.end(), sigma.begin(), sigma.end());
  out.field = DiffField(std::move(gens), {base.derivation_names()[derivation]}, {table});
  out.point = TangentPoint(p.x, p.y);
  out.parameter_derivatives = std::move(sigma);
  if (!gamma_member(out.field, out.point))
    fail(ErrorCode::SoundnessAlarm, "synthesized point failed the Gamma check");
  return out;
}

}  // namespace expdiff
