#pragma once

// JSON forms of alphabets, elements, structure algebras, reports and
// customary polynomials. Rationals are always "p/q" strings.

#include <json.hpp>

#include "jbgp/concrete.hpp"
#include "jbgp/engine.hpp"
#include "jbgp/farkas.hpp"

namespace jbgp {

using json = nlohmann::ordered_json;

json alphabet_to_json(const Alphabet &alphabet);
Alphabet alphabet_from_json(const json &j);

/// A list of {coeff, monomial:[{word, exp}]}; GP elements are wrapped as
/// {"gp": true, "terms": [...]}.
json element_to_json(const Element &e, const Alphabet &alphabet);
/// Words are read with the text parser and the result is normalized in `th`
/// (GP if the wrapper says so).
Element element_from_json(const json &j, const Alphabet &alphabet, Theory th);

json algebra_to_json(const StructureAlgebra &A);
StructureAlgebra algebra_from_json(const json &j);
StructureAlgebra load_algebra(const std::string &path);

json check_to_json(const CheckResult &c);
json report_to_json(const Report &r);

json customary_to_json(const CustomaryPolynomial &c, const Alphabet &alphabet);
/// Letter names, if present, are looked up in (or added to) the alphabet.
CustomaryPolynomial customary_from_json(const json &j, Alphabet &alphabet);

json identity_result_to_json(const IdentityResult &r);
json farkas_to_json(const FarkasResult &r, const Alphabet &alphabet);

json vector_to_json(const Vector &v);
Vector vector_from_json(const json &j, std::size_t dim);

} // namespace jbgp
