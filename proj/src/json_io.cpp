#include "collatz/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace collatz {

namespace {

std::string decimal12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

json rational_json(const Rational& q) { return format_rational(q); }
Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    // Decimal literals round-trip through text to keep them exact.
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return parse_rational(os.str());
  }
  throw std::invalid_argument("expected rational as string or number");
}

json mu_to_json(const RationalComplex& mu) { return format_rational_complex(mu); }
RationalComplex mu_from_json(const json& j) {
  if (j.is_string()) return parse_rational_complex(j.get<std::string>());
  if (j.is_array() && j.size() == 2) return {rational_from(j[0]), rational_from(j[1])};
  throw std::invalid_argument("mu: expected \"p/q+p/qi\" or [re, im]");
}

constexpr std::int64_t kMaxSafeInt = (std::int64_t(1) << 53);

}  // namespace

json degree_to_json(const Integer& d) {
  if (d <= kMaxSafeInt) return d.convert_to<std::int64_t>();
  return d.str();
}

Integer degree_from_json(const json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  throw std::invalid_argument("degree: expected integer or decimal string");
}

json weight_to_json(const Weight& w) {
  json params = json::object();
  switch (w.family()) {
    case WeightFamily::classic_bergman: break;
    case WeightFamily::power_law:
      params["coeff"] = rational_json(w.coeff());
      params["alpha"] = rational_json(w.alpha());
      break;
    case WeightFamily::constant:
      params["value"] = rational_json(w.coeff());
      break;
    case WeightFamily::tabulated: {
      json table = json::array();
      for (const Rational& v : w.table()) table.push_back(rational_json(v));
      params["table"] = std::move(table);
      params["tail_coeff"] = rational_json(w.coeff());
      params["tail_alpha"] = rational_json(w.alpha());
      break;
    }
  }
  return {{"family", family_name(w.family())}, {"params", params}};
}

Weight weight_from_json(const json& j) {
  std::string fam = j.at("family").get<std::string>();
  // parameters may sit under "params" or directly beside "family"
  json params = j.contains("params") ? j.at("params") : j;
  if (fam == "classic_bergman" || fam == "bergman") return Weight::classic_bergman();
  if (fam == "power_law")
    return Weight::power_law(rational_from(params.at("coeff")),
                             rational_from(params.at("alpha")));
  if (fam == "constant") return Weight::constant(rational_from(params.at("value")));
  if (fam == "tabulated") {
    std::vector<Rational> table;
    for (const json& v : params.at("table")) table.push_back(rational_from(v));
    return Weight::tabulated(std::move(table), rational_from(params.at("tail_coeff")),
                             rational_from(params.at("tail_alpha")));
  }
  throw std::invalid_argument("unknown weight family: " + fam);
}

Weight weight_from_cli(const std::string& text) {
  if (text == "bergman" || text == "classic_bergman") return Weight::classic_bergman();
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::invalid_argument("cannot open weight file " + text.substr(1));
    return weight_from_json(json::parse(in));
  }
  return weight_from_json(json::parse(text));
}

json vec_to_json(const RationalVec& v) {
  json entries = json::array();
  for (const auto& [d, c] : v.entries())
    entries.push_back({degree_to_json(d), rational_json(c.re), rational_json(c.im)});
  return {{"scalar", "rational"}, {"entries", entries}};
}

json vec_to_json(const FloatVec& v) {
  json entries = json::array();
  for (const auto& [d, c] : v.entries())
    entries.push_back({degree_to_json(d), c.real(), c.imag()});
  return {{"scalar", "float"}, {"entries", entries}};
}

json vec_to_json(const CoeffVecAny& v) {
  return std::visit([](const auto& x) { return vec_to_json(x); }, v);
}

CoeffVecAny vec_from_json(const json& j) {
  std::string kind = j.at("scalar").get<std::string>();
  const json& entries = j.at("entries");
  if (kind == "rational") {
    RationalVec v;
    for (const json& e : entries)
      v.add_term(degree_from_json(e.at(0)), {rational_from(e.at(1)), rational_from(e.at(2))});
    return v;
  }
  if (kind == "float") {
    FloatVec v;
    for (const json& e : entries)
      v.add_term(degree_from_json(e.at(0)), {e.at(1).get<double>(), e.at(2).get<double>()});
    return v;
  }
  throw std::invalid_argument("unknown scalar kind: " + kind);
}

RationalVec rational_vec_from_json(const json& j) {
  CoeffVecAny v = vec_from_json(j);
  if (auto* r = std::get_if<RationalVec>(&v)) return std::move(*r);
  throw std::invalid_argument("expected a rational-scalar vector");
}

json eigen_spec_to_json(const EigenSpec& s) {
  return {{"m", s.m}, {"mu", mu_to_json(s.mu)}, {"cap", degree_to_json(s.degree_cap)}};
}

EigenSpec eigen_spec_from_json(const json& j) {
  EigenSpec s;
  s.m = j.at("m").get<unsigned>();
  s.mu = mu_from_json(j.at("mu"));
  if (j.contains("cap")) s.degree_cap = degree_from_json(j.at("cap"));
  return s;
}

json certificate_to_json(const HypercyclicCertificate& c) {
  json targets = json::array();
  for (const RationalVec& t : c.targets) targets.push_back(vec_to_json(t));
  return {{"epsilon", rational_json(c.epsilon)},
          {"schedule", c.schedule},
          {"targets", targets},
          {"x", vec_to_json(c.x)},
          {"errors", c.errors}};
}

HypercyclicCertificate certificate_from_json(const json& j) {
  HypercyclicCertificate c;
  c.epsilon = rational_from(j.at("epsilon"));
  c.schedule = j.at("schedule").get<std::vector<unsigned>>();
  for (const json& t : j.at("targets")) c.targets.push_back(rational_vec_from_json(t));
  c.x = rational_vec_from_json(j.at("x"));
  if (j.contains("errors")) c.errors = j.at("errors").get<std::vector<double>>();
  return c;
}

json sample_to_json(const GaussianMixtureSample& s) {
  json atoms = json::array();
  for (const MixtureAtom& a : s.atoms)
    atoms.push_back({{"m", a.m},
                     {"mu", {a.mu.real(), a.mu.imag()}},
                     {"g", {a.g.real(), a.g.imag()}},
                     {"scale", a.scale}});
  return {{"seed", s.seed},
          {"max_m", s.max_m},
          {"atoms_per_m", s.atoms_per_m},
          {"atoms", atoms}};
}

GaussianMixtureSample sample_from_json(const json& j) {
  GaussianMixtureSample s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.max_m = j.at("max_m").get<unsigned>();
  s.atoms_per_m = j.at("atoms_per_m").get<unsigned>();
  for (const json& a : j.at("atoms")) {
    MixtureAtom atom;
    atom.m = a.at("m").get<unsigned>();
    atom.mu = {a.at("mu").at(0).get<double>(), a.at("mu").at(1).get<double>()};
    atom.g = {a.at("g").at(0).get<double>(), a.at("g").at(1).get<double>()};
    atom.scale = a.at("scale").get<double>();
    s.atoms.push_back(atom);
  }
  return s;
}

json orbit_report_to_json(const OrbitReport& r) {
  json orbit = json::array();
  for (const Integer& v : r.orbit) orbit.push_back(degree_to_json(v));
  json j{{"start", degree_to_json(r.start)},
         {"orbit", orbit},
         {"stopped_on_repeat", r.stopped_on_repeat},
         {"budget_exhausted", r.budget_exhausted}};
  if (r.quotient_death_time) j["quotient_death_time"] = *r.quotient_death_time;
  if (r.hit_power_of_two) j["hit_power_of_two"] = *r.hit_power_of_two;
  return j;
}

json lemma_sequences_to_json(const LemmaSequences& s) {
  json m = json::array(), tracked = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    m.push_back(degree_to_json(s.m_seq[i]));
    tracked.push_back(degree_to_json(s.tracked_product(i)));
  }
  json j{{"k", degree_to_json(s.k)},
         {"mode", s.mode == LemmaMode::density ? "density" : "adjoint"},
         {"m_seq", m},
         {"p_seq", s.p_seq},
         {"j_seq", s.j_seq},
         {"tracked_product", tracked},
         {"budget_exhausted", s.budget_exhausted}};
  if (s.stationary_at) j["stationary_at"] = *s.stationary_at;
  return j;
}

json norm_report_to_json(const IterateNormReport& r) {
  json j{{"n", r.n},
         {"best_k", degree_to_json(r.best_k)},
         {"value", r.value},
         {"scan_bound", degree_to_json(r.scan_bound)},
         {"exactness",
          r.exactness == NormExactness::exact_limit ? "exact_limit" : "lower_bound"}};
  if (r.exact_value) j["exact_value"] = rational_json(*r.exact_value);
  return j;
}

namespace {

json supremum_to_json(const SupremumInfo& s) {
  json j{{"scanned_sup", s.scanned_sup},
         {"scanned_argmax", degree_to_json(s.scanned_argmax)},
         {"attained_in_limit", s.attained_in_limit}};
  if (s.scanned_sup_exact) j["scanned_sup_exact"] = rational_json(*s.scanned_sup_exact);
  if (s.analytic_sup) j["analytic_sup"] = *s.analytic_sup;
  if (s.analytic_sup_exact) j["analytic_sup_exact"] = rational_json(*s.analytic_sup_exact);
  return j;
}

}  // namespace

json boundedness_report_to_json(const BoundednessReport& r) {
  json j{{"s1", supremum_to_json(r.s1)},
         {"s2", supremum_to_json(r.s2)},
         {"s3", supremum_to_json(r.s3)},
         {"bounded", r.bounded},
         {"norm_sq", r.norm_sq},
         {"norm_sq_is_lower_bound", r.norm_sq_is_lower_bound}};
  if (r.norm_sq_exact) j["norm_sq_exact"] = rational_json(*r.norm_sq_exact);
  return j;
}

json eigen_residual_to_json(const EigenResidualReport& r) {
  return {{"window_max", degree_to_json(r.window_max)},
          {"residual_zero", r.residual_zero},
          {"residual_max_abs_sq", format_rational(r.residual_max_abs_sq)},
          {"checked_degrees", r.checked_degrees}};
}

json materialized_to_json(const Materialized& m) {
  return {{"vec", vec_to_json(m.vec)},
          {"levels", m.levels},
          {"tail_norm_sq_bound", m.tail_norm_sq_bound}};
}

json periodic_point_to_json(const PeriodicPoint& p) {
  json j{{"m", p.m},
         {"alpha", format_rational(p.alpha)},
         {"period", p.period},
         {"exact", p.exact},
         {"mu", {p.mu.real(), p.mu.imag()}}};
  j["vec"] = p.exact ? vec_to_json(p.vec_exact) : vec_to_json(p.vec_float);
  return j;
}

json witness_report_to_json(const WitnessReport& r) {
  json inner = json::array(), outer = json::array();
  for (const EigenSpec& s : r.inner_grid) inner.push_back(eigen_spec_to_json(s));
  for (const EigenSpec& s : r.outer_grid) outer.push_back(eigen_spec_to_json(s));
  return {{"rho", format_rational(r.rho)}, {"inner_grid", inner}, {"outer_grid", outer}};
}

json span_residual_to_json(const SpanResidualReport& r) {
  return {{"residual_sq", r.residual_sq},
          {"target_norm_sq", r.target_norm_sq},
          {"condition", r.condition},
          {"ill_conditioned", r.ill_conditioned},
          {"gram_tail_bound", r.gram_tail_bound}};
}

json invariance_report_to_json(const InvarianceReport& r) {
  return {{"runs", r.runs},     {"ks_re", r.ks_re}, {"p_re", r.p_re},
          {"ks_im", r.ks_im},   {"p_im", r.p_im},   {"skipped", r.skipped}};
}

std::string spectral_table_csv(const SpectralBoundTable& t) {
  std::ostringstream os;
  os << "n,norm_sq,upper_bound,lower_bound\n";
  for (const SpectralRow& row : t.rows) {
    os << row.n << "," << format_rational(row.norm_sq) << "," << decimal12(row.upper_bound)
       << "," << decimal12(t.lower_bound) << "\n";
  }
  return os.str();
}

json spectral_table_to_json(const SpectralBoundTable& t) {
  json rows = json::array();
  for (const SpectralRow& row : t.rows)
    rows.push_back({{"n", row.n},
                    {"norm_sq", format_rational(row.norm_sq)},
                    {"upper_bound", row.upper_bound}});
  return {{"rows", rows}, {"lower_bound", t.lower_bound}};
}

}  // namespace collatz
