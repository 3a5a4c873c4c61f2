#include "jbgp/json_io.hpp"

#include <fstream>
#include <sstream>

#include "jbgp/text.hpp"

namespace jbgp {

namespace {

Scalar scalar_from_json(const json &j) {
  if (j.is_string())
    return parse_scalar(j.get<std::string>());
  if (j.is_number_integer())
    return Scalar(j.get<long>());
  throw Error(ErrorKind::Malformed, "expected a rational string, got " + j.dump());
}

const json &field(const json &j, const char *name) {
  if (!j.is_object() || !j.contains(name))
    throw Error(ErrorKind::Malformed, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::size_t index_from_json(const json &j, std::size_t dim) {
  if (!j.is_number_integer() || j.get<long long>() < 0 ||
      static_cast<std::size_t>(j.get<long long>()) >= dim)
    throw Error(ErrorKind::Malformed, "basis index out of range: " + j.dump());
  return static_cast<std::size_t>(j.get<long long>());
}

json row_to_json(const Row &row) {
  json out = json::array();
  for (const auto &[k, c] : row)
    out.push_back(json::array({k, scalar_to_string(c)}));
  return out;
}

Row row_from_json(const json &j, std::size_t dim) {
  if (!j.is_array())
    throw Error(ErrorKind::Malformed, "a table entry must be a list of [index, \"p/q\"]");
  std::map<std::size_t, Scalar> acc;
  for (const auto &e : j) {
    if (!e.is_array() || e.size() != 2)
      throw Error(ErrorKind::Malformed, "a table entry must be a list of [index, \"p/q\"]");
    acc[index_from_json(e[0], dim)] += scalar_from_json(e[1]);
  }
  Row row;
  for (auto &[k, c] : acc)
    if (c != 0)
      row.emplace_back(k, c);
  return row;
}

std::pair<std::size_t, std::size_t> key_from_string(const std::string &key, std::size_t dim) {
  std::size_t comma = key.find(',');
  if (comma == std::string::npos)
    throw Error(ErrorKind::Malformed, "table key must look like \"i,j\": " + key);
  try {
    std::size_t i = std::stoul(key.substr(0, comma)), j = std::stoul(key.substr(comma + 1));
    if (i >= dim || j >= dim)
      throw Error(ErrorKind::Malformed, "table key out of range: " + key);
    return {i, j};
  } catch (const std::logic_error &) {
    throw Error(ErrorKind::Malformed, "table key must look like \"i,j\": " + key);
  }
}

} // namespace

json vector_to_json(const Vector &v) {
  json out = json::array();
  for (const auto &c : v)
    out.push_back(scalar_to_string(c));
  return out;
}

Vector vector_from_json(const json &j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim)
    throw Error(ErrorKind::Malformed, "expected a vector of length " + std::to_string(dim));
  Vector v;
  for (const auto &c : j)
    v.push_back(scalar_from_json(c));
  return v;
}

json alphabet_to_json(const Alphabet &alphabet) {
  json gens = json::array();
  for (const auto &g : alphabet.generators())
    if (!g.is_unit)
      gens.push_back({{"name", g.name}, {"parity", parity_name(g.parity)}});
  return {{"generators", gens}};
}

Alphabet alphabet_from_json(const json &j) {
  std::vector<std::pair<std::string, Parity>> gens;
  for (const auto &g : field(j, "generators")) {
    Parity p = g.contains("parity") ? parse_parity(g.at("parity").get<std::string>()) : Parity::Even;
    gens.emplace_back(field(g, "name").get<std::string>(), p);
  }
  return Alphabet::from_list(gens);
}

json element_to_json(const Element &e, const Alphabet &alphabet) {
  json terms = json::array();
  for (const auto &[m, c] : e.terms()) {
    json mono = json::array();
    for (const auto &f : m.factors())
      mono.push_back({{"word", f.word.to_string(alphabet)}, {"exp", f.exp}});
    terms.push_back({{"coeff", scalar_to_string(c)}, {"monomial", mono}});
  }
  if (e.theory() == Theory::GP)
    return {{"gp", true}, {"terms", terms}};
  return terms;
}

Element element_from_json(const json &j, const Alphabet &alphabet, Theory th) {
  const json *terms = &j;
  if (j.is_object()) {
    if (j.value("gp", false))
      th = Theory::GP;
    terms = &field(j, "terms");
  }
  if (!terms->is_array())
    throw Error(ErrorKind::Malformed, "an element is a list of terms");
  Element out(th);
  for (const auto &t : *terms) {
    Element prod = Element::unit(th);
    for (const auto &f : field(t, "monomial")) {
      Element w = normal_form(parse_term(field(f, "word").get<std::string>(), alphabet), th);
      long exp = f.value("exp", 1L);
      if (exp < 1)
        throw Error(ErrorKind::Malformed, "exponents start at 1");
      for (long k = 0; k < exp; ++k)
        prod = mul(prod, w);
    }
    out.add(prod, scalar_from_json(field(t, "coeff")));
  }
  return out;
}

json algebra_to_json(const StructureAlgebra &A) {
  json j;
  if (!A.name().empty())
    j["name"] = A.name();
  j["dim"] = A.dim();
  json par = json::array();
  for (Parity p : A.parity())
    par.push_back(bit(p));
  j["parity"] = par;
  if (!A.basis_names().empty())
    j["basis"] = A.basis_names();
  if (A.unit())
    j["unit"] = vector_to_json(*A.unit());
  auto table = [&](bool bracket) {
    json t = json::object();
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t k = 0; k < A.dim(); ++k) {
        const Row &r = bracket ? A.bracket(i, k) : A.product(i, k);
        if (!r.empty())
          t[std::to_string(i) + "," + std::to_string(k)] = row_to_json(r);
      }
    return t;
  };
  j["product"] = table(false);
  if (A.has_bracket())
    j["bracket"] = table(true);
  j["claim"] = claim_name(A.claim());
  return j;
}

StructureAlgebra algebra_from_json(const json &j) {
  const json &dj = field(j, "dim");
  if (!dj.is_number_integer() || dj.get<long long>() < 1)
    throw Error(ErrorKind::Malformed, "\"dim\" must be a positive integer");
  const auto dim = static_cast<std::size_t>(dj.get<long long>());
  std::vector<Parity> parity(dim, Parity::Even);
  if (j.contains("parity")) {
    const json &pj = j.at("parity");
    if (!pj.is_array() || pj.size() != dim)
      throw Error(ErrorKind::Malformed, "\"parity\" needs one entry per basis vector");
    for (std::size_t i = 0; i < dim; ++i) {
      if (pj[i].is_string())
        parity[i] = parse_parity(pj[i].get<std::string>());
      else if (pj[i] == 0 || pj[i] == 1)
        parity[i] = pj[i] == 1 ? Parity::Odd : Parity::Even;
      else
        throw Error(ErrorKind::Malformed, "parity entries are 0 or 1");
    }
  }
  Claim claim = j.contains("claim") ? parse_claim(j.at("claim").get<std::string>()) : Claim::None;
  StructureAlgebra A(parity, claim);
  if (j.contains("name"))
    A.set_name(j.at("name").get<std::string>());
  if (j.contains("basis"))
    A.set_basis_names(j.at("basis").get<std::vector<std::string>>());
  if (j.contains("unit") && !j.at("unit").is_null())
    A.set_unit(vector_from_json(j.at("unit"), dim));
  for (const char *name : {"product", "bracket"}) {
    if (!j.contains(name))
      continue;
    const json &t = j.at(name);
    if (!t.is_object())
      throw Error(ErrorKind::Malformed, std::string("\"") + name + "\" must be an object");
    if (std::string(name) == "bracket" && t.empty() && dim > 0)
      A.set_bracket(0, 0, {});
    for (const auto &[key, row] : t.items()) {
      auto [a, b] = key_from_string(key, dim);
      if (std::string(name) == "product")
        A.set_product(a, b, row_from_json(row, dim));
      else
        A.set_bracket(a, b, row_from_json(row, dim));
    }
  }
  return A;
}

StructureAlgebra load_algebra(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Malformed, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::Malformed, path + ": " + e.what());
  }
  StructureAlgebra A = algebra_from_json(j);
  if (A.name().empty())
    A.set_name(path);
  return A;
}

json check_to_json(const CheckResult &c) {
  json j{{"identity", c.identity}, {"status", c.pass ? "pass" : "fail"}};
  if (!c.pass)
    j["witness"] = {{"indices", c.indices}, {"parities", c.parities},
                    {"residual", vector_to_json(c.residual)}};
  if (!c.note.empty())
    j["note"] = c.note;
  return j;
}

json report_to_json(const Report &r) {
  json checks = json::array();
  for (const auto &c : r.checks)
    checks.push_back(check_to_json(c));
  return {{"subject", r.subject}, {"status", r.pass() ? "pass" : "fail"}, {"checks", checks}};
}

json customary_to_json(const CustomaryPolynomial &c, const Alphabet &alphabet) {
  json terms = json::array();
  for (const auto &t : c.terms()) {
    json pairs = json::array();
    for (const auto &[p, q] : t.pairs)
      pairs.push_back(json::array({p, q}));
    terms.push_back({{"coeff", scalar_to_string(t.coeff)}, {"pairs", pairs}, {"D", t.singles}});
  }
  json j{{"m", c.m()}, {"terms", terms}};
  if (!c.letters().empty()) {
    json names = json::array();
    for (GenId g : c.letters())
      names.push_back(alphabet[g].name);
    j["letters"] = names;
  }
  return j;
}

CustomaryPolynomial customary_from_json(const json &j, Alphabet &alphabet) {
  const json &mj = field(j, "m");
  if (!mj.is_number_integer() || mj.get<long long>() < 0)
    throw Error(ErrorKind::Malformed, "\"m\" must be a nonnegative integer");
  CustomaryPolynomial c(static_cast<int>(mj.get<long long>()));
  if (j.contains("letters")) {
    std::vector<GenId> letters;
    for (const auto &n : j.at("letters")) {
      auto name = n.get<std::string>();
      auto id = alphabet.find(name);
      letters.push_back(id ? *id : alphabet.add(name, Parity::Even));
      if (is_odd(alphabet[letters.back()].parity))
        throw Error(ErrorKind::Precondition, "customary letters must be even");
    }
    c.set_letters(letters);
  } else {
    for (int i = static_cast<int>(alphabet.size()); i <= c.m(); ++i)
      alphabet.add(alphabet.fresh_name("x" + std::to_string(i)), Parity::Even);
  }
  for (const auto &t : field(j, "terms")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto &p : t.value("pairs", json::array())) {
      if (!p.is_array() || p.size() != 2)
        throw Error(ErrorKind::Malformed, "a pair is [p, q]");
      pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    c.add(scalar_from_json(field(t, "coeff")), pairs, t.value("D", std::vector<int>{}));
  }
  return c;
}

json identity_result_to_json(const IdentityResult &r) {
  json j{{"holds", r.holds}, {"evaluations", r.evaluations}};
  if (!r.holds) {
    json w = json::object();
    for (const auto &[name, idx] : r.witness)
      w[name] = idx;
    j["witness"] = w;
    j["residual"] = vector_to_json(r.residual);
  }
  return j;
}

json farkas_to_json(const FarkasResult &r, const Alphabet &alphabet) {
  json trace = json::array();
  for (const auto &s : r.trace) {
    json vars = json::array();
    for (GenId v : s.g.vars)
      vars.push_back(alphabet[v].name);
    trace.push_back({{"step", s.step},
                     {"note", s.note},
                     {"letters", vars},
                     {"text", s.g.f.to_string(alphabet)},
                     {"polynomial", element_to_json(s.g.f, alphabet)}});
  }
  json discharged = json::array();
  for (const auto &d : r.discharged)
    discharged.push_back(element_to_json(d, alphabet));
  return {{"result", customary_to_json(r.result, alphabet)},
          {"text", r.result.to_string(alphabet)},
          {"trace", trace},
          {"discharged", discharged}};
}

} // namespace jbgp
