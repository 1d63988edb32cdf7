#pragma once

// JSON encodings. Serialization is deterministic, so decode followed by encode
// reproduces the input bytes for canonical values.

#include <json.hpp>

#include "unfold/groebner.hpp"
#include "unfold/hochschild.hpp"
#include "unfold/polynomial.hpp"
#include "unfold/polyvector.hpp"
#include "unfold/singularity.hpp"
#include "unfold/unfolding.hpp"

namespace unfold {

using Json = nlohmann::ordered_json;

class JsonSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"terms": [{"exp": [..], "num": "..", "den": ".."}]}
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, const ContextPtr& ctx);

// {"terms": [{"eps": e, "odd": [1-based indices], "coeff": polynomial}]}
Json to_json(const GElement& g);
GElement gelement_from_json(const Json& j, const ContextPtr& ctx);

// {"arity": k, "terms": [{"coeff": polynomial, "alphas": [[..], ..]}]}
Json to_json(const PolyDiffOperator& op);
PolyDiffOperator operator_from_json(const Json& j, const ContextPtr& ctx);

Json monomial_to_json(const Monomial& m);

// {"module_rank": 1, "order": "grevlex", "generators": [polynomial, ..]}
Json to_json(const GroebnerBasis& gb);
// {"module_rank": r, "order": .., "generators": [[polynomial x r], ..]}
Json to_json(const ModuleGroebnerBasis& gb);

// {"milnor": int|"infinite", "w_basis": [[exp..]..], "isolated": bool}
Json to_json(const JacobianData& d);

// {"order": int|"exact", "p": [..], "S": [..], "T": [..]?, "residual_checked": true}
Json to_json(const MCSolution& sol);
MCSolution solution_from_json(const Json& j, const ContextPtr& ctx);

Json to_json(const ObstructionReport& r);
Json to_json(const ResidualReport& r);

}  // namespace unfold
