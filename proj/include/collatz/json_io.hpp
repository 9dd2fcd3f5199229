#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "collatz/coeff_vec.hpp"
#include "collatz/eigenfields.hpp"
#include "collatz/ergodic.hpp"
#include "collatz/exact_norm.hpp"
#include "collatz/map.hpp"
#include "collatz/transfer.hpp"
#include "collatz/weights.hpp"

namespace collatz {

using json = nlohmann::json;

/// Degrees fit in a JSON number only up to 2^53; larger ones are decimal strings.
json degree_to_json(const Integer& d);
Integer degree_from_json(const json& j);

json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j);
/// "bergman" preset, inline JSON, or @path to a JSON file.
Weight weight_from_cli(const std::string& text);

using CoeffVecAny = std::variant<RationalVec, FloatVec>;

json vec_to_json(const RationalVec& v);
json vec_to_json(const FloatVec& v);
json vec_to_json(const CoeffVecAny& v);
CoeffVecAny vec_from_json(const json& j);
RationalVec rational_vec_from_json(const json& j);

json eigen_spec_to_json(const EigenSpec& s);
EigenSpec eigen_spec_from_json(const json& j);

json certificate_to_json(const HypercyclicCertificate& c);
HypercyclicCertificate certificate_from_json(const json& j);

json sample_to_json(const GaussianMixtureSample& s);
GaussianMixtureSample sample_from_json(const json& j);

json orbit_report_to_json(const OrbitReport& r);
json lemma_sequences_to_json(const LemmaSequences& s);
json norm_report_to_json(const IterateNormReport& r);
json boundedness_report_to_json(const BoundednessReport& r);
json eigen_residual_to_json(const EigenResidualReport& r);
json materialized_to_json(const Materialized& m);
json periodic_point_to_json(const PeriodicPoint& p);
json witness_report_to_json(const WitnessReport& r);
json span_residual_to_json(const SpanResidualReport& r);
json invariance_report_to_json(const InvarianceReport& r);

/// CSV with columns n, norm_sq (exact "p/q"), upper_bound, lower_bound
/// (12 decimal digits).
std::string spectral_table_csv(const SpectralBoundTable& t);
json spectral_table_to_json(const SpectralBoundTable& t);

}  // namespace collatz
