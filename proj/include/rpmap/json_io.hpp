#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rpmap/funcspace.hpp"

namespace rpmap::jsonio {

using json = nlohmann::json;

// Raised on any malformed input; the CLI maps it to exit code 2.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex scalars travel as [re, im] pairs; matrices as row-major nested
// arrays of such pairs.

json encode(const Complex& z);
Complex decode_complex(const json& j);

json encode(const ComplexVector& u);
ComplexVector decode_vector(const json& j, std::size_t dim);

json encode(const ComplexMatrix& m);
ComplexMatrix decode_matrix(const json& j);

json encode(const Seminorm& p);
Seminorm decode_seminorm(const json& j, std::size_t dim);

json encode(const VectorSpaceModel& model);
VectorSpaceModel decode_model(const json& j);

json encode(const Neighborhood& B);
Neighborhood decode_neighborhood(const json& j, const VectorSpaceModel& model);

json encode(const FiniteSpace& space);
FiniteSpace decode_space(const json& j);

json encode_symbol(const Symbol& phi);  // {"table": {...}}
Symbol decode_symbol(const json& j, const FiniteSpace& source, const FiniteSpace& target);

json encode_scalar_function(const ScalarFunction& f);
ScalarFunction decode_scalar_function(const json& j, const FiniteSpace& space);

json encode_vector_function(const VectorFunction& f);  // {"values": {...}}
VectorFunction decode_vector_function(const json& j, const FiniteSpace& space,
                                      const VectorSpaceModel& model);

json encode_tensor_sum(const TensorSum& sum);
TensorSum decode_tensor_sum(const json& j, const FiniteSpace& space, std::size_t dim);

// Helpers the decoders share; exposed because the harness decoders reuse them.
const json& expect_field(const json& j, const char* key);
double expect_number(const json& j, const char* what);

}  // namespace rpmap::jsonio
