#include "jbgp/concrete.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace jbgp {

const char *claim_name(Claim c) {
  switch (c) {
  case Claim::None: return "none";
  case Claim::Poisson: return "poisson";
  case Claim::GenP: return "genp";
  case Claim::JB: return "jb";
  case Claim::GP: return "gp";
  }
  return "none";
}

Claim parse_claim(const std::string &text) {
  if (text == "none" || text.empty())
    return Claim::None;
  if (text == "poisson")
    return Claim::Poisson;
  if (text == "genp")
    return Claim::GenP;
  if (text == "jb")
    return Claim::JB;
  if (text == "gp")
    return Claim::GP;
  throw Error(ErrorKind::Malformed, "unknown claim '" + text + "'");
}

// ------------------------------------------------------------ vectors

bool is_zero(const Vector &v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar &x) { return x == 0; });
}

Vector add(const Vector &a, const Vector &b, const Scalar &c) {
  if (a.size() != b.size())
    throw Error(ErrorKind::Precondition, "vector dimension mismatch");
  Vector r = a;
  if (c != 0)
    for (std::size_t i = 0; i < r.size(); ++i)
      if (b[i] != 0)
        r[i] += c * b[i];
  return r;
}

Vector scale(const Vector &a, const Scalar &c) {
  Vector r = a;
  for (auto &x : r)
    x *= c;
  return r;
}

std::string vector_to_string(const Vector &v, const StructureAlgebra &A) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    if (!first)
      out << " + ";
    first = false;
    out << scalar_to_string(v[i]) << " " << A.basis_name(i);
  }
  return first ? "0" : out.str();
}

// ---------------------------------------------------- StructureAlgebra

StructureAlgebra::StructureAlgebra(std::vector<Parity> parity, Claim claim)
    : parity_(std::move(parity)), claim_(claim), product_(parity_.size() * parity_.size()),
      bracket_(parity_.size() * parity_.size()) {}

void StructureAlgebra::set_basis_names(std::vector<std::string> names) {
  if (names.size() != dim())
    throw Error(ErrorKind::Malformed, "basis name count differs from the dimension");
  names_ = std::move(names);
}

std::string StructureAlgebra::basis_name(std::size_t i) const {
  return names_.empty() ? "e" + std::to_string(i) : names_.at(i);
}

void StructureAlgebra::set_unit(Vector u) {
  if (u.size() != dim())
    throw Error(ErrorKind::Malformed, "unit vector has the wrong length");
  unit_ = std::move(u);
}

void StructureAlgebra::check_row(const Row &row) const {
  for (const auto &[k, c] : row)
    if (k >= dim())
      throw Error(ErrorKind::Malformed, "structure constant index " + std::to_string(k) +
                                            " out of range for dimension " + std::to_string(dim()));
}

namespace {

Row canonical(Row row) {
  std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  Row out;
  for (auto &[k, c] : row) {
    if (!out.empty() && out.back().first == k)
      out.back().second += c;
    else
      out.emplace_back(k, c);
  }
  std::erase_if(out, [](const auto &e) { return e.second == 0; });
  return out;
}

} // namespace

void StructureAlgebra::set_product(std::size_t i, std::size_t j, Row row) {
  if (i >= dim() || j >= dim())
    throw Error(ErrorKind::Malformed, "product table index out of range");
  check_row(row);
  product_[i * dim() + j] = canonical(std::move(row));
}

void StructureAlgebra::set_bracket(std::size_t i, std::size_t j, Row row) {
  if (i >= dim() || j >= dim())
    throw Error(ErrorKind::Malformed, "bracket table index out of range");
  check_row(row);
  bracket_[i * dim() + j] = canonical(std::move(row));
  has_bracket_ = true;
}

Vector StructureAlgebra::basis(std::size_t i) const {
  Vector v = zero();
  v.at(i) = 1;
  return v;
}

Vector StructureAlgebra::apply(const std::vector<Row> &table, const Vector &a,
                               const Vector &b) const {
  if (a.size() != dim() || b.size() != dim())
    throw Error(ErrorKind::Precondition, "vector dimension mismatch");
  Vector r = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0)
        continue;
      Scalar c = a[i] * b[j];
      for (const auto &[k, x] : table[i * dim() + j])
        r[k] += c * x;
    }
  }
  return r;
}

Vector StructureAlgebra::mul(const Vector &a, const Vector &b) const { return apply(product_, a, b); }
Vector StructureAlgebra::br(const Vector &a, const Vector &b) const { return apply(bracket_, a, b); }

Vector StructureAlgebra::d(const Vector &a) const {
  if (!unit_)
    throw Error(ErrorKind::Precondition, "D needs a unit, and the algebra has none");
  return br(a, *unit_);
}

std::optional<Parity> StructureAlgebra::parity_of(const Vector &v) const {
  std::optional<Parity> p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    if (p && *p != parity_[i])
      return std::nullopt;
    p = parity_[i];
  }
  return p;
}

// ------------------------------------------------------------- reports

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
}

const CheckResult *Report::find(const std::string &identity) const {
  for (const auto &c : checks)
    if (c.identity == identity)
      return &c;
  return nullptr;
}

namespace {

using Residual2 = std::function<Vector(const Vector &, const Vector &, Parity, Parity)>;
using Residual3 =
    std::function<Vector(const Vector &, const Vector &, const Vector &, Parity, Parity, Parity)>;

CheckResult over_pairs(const StructureAlgebra &A, const std::string &name, const Residual2 &f) {
  CheckResult r{name};
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      Vector res = f(A.basis(i), A.basis(j), A.parity(i), A.parity(j));
      if (!is_zero(res)) {
        r.pass = false;
        r.indices = {i, j};
        r.parities = {bit(A.parity(i)), bit(A.parity(j))};
        r.residual = res;
        return r;
      }
    }
  return r;
}

CheckResult over_triples(const StructureAlgebra &A, const std::string &name, const Residual3 &f) {
  CheckResult r{name};
  std::vector<Vector> e;
  for (std::size_t i = 0; i < A.dim(); ++i)
    e.push_back(A.basis(i));
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      for (std::size_t k = 0; k < A.dim(); ++k) {
        Vector res = f(e[i], e[j], e[k], A.parity(i), A.parity(j), A.parity(k));
        if (!is_zero(res)) {
          r.pass = false;
          r.indices = {i, j, k};
          r.parities = {bit(A.parity(i)), bit(A.parity(j)), bit(A.parity(k))};
          r.residual = res;
          return r;
        }
      }
  return r;
}

CheckResult needs_unit(const std::string &name) {
  CheckResult r{name};
  r.pass = false;
  r.note = "identity involves D = {-,1} and the algebra has no unit";
  return r;
}

Scalar sg(Parity a, Parity b) { return Scalar(sign(a, b)); }

} // namespace

CheckResult check_grading(const StructureAlgebra &A) {
  CheckResult r{"grading"};
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      for (const Row *row : {&A.product(i, j), &A.bracket(i, j)})
        for (const auto &[k, c] : *row)
          if (A.parity(k) != A.parity(i) + A.parity(j)) {
            r.pass = false;
            r.indices = {i, j};
            r.parities = {bit(A.parity(i)), bit(A.parity(j))};
            r.residual = row == &A.product(i, j) ? A.mul(A.basis(i), A.basis(j))
                                                 : A.br(A.basis(i), A.basis(j));
            r.note = "structure constant leaves the expected parity";
            return r;
          }
  if (A.unit() && A.parity_of(*A.unit()) == Parity::Odd) {
    r.pass = false;
    r.note = "unit is odd";
  }
  return r;
}

CheckResult check_supercommutative(const StructureAlgebra &A) {
  return over_pairs(A, "supercommutativity", [&](const Vector &a, const Vector &b, Parity pa, Parity pb) {
    return add(A.mul(a, b), A.mul(b, a), -sg(pa, pb));
  });
}

CheckResult check_associative(const StructureAlgebra &A) {
  return over_triples(A, "associativity",
                      [&](const Vector &a, const Vector &b, const Vector &c, Parity, Parity, Parity) {
                        return add(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c)), -1);
                      });
}

CheckResult check_unit(const StructureAlgebra &A) {
  CheckResult r{"unit"};
  if (!A.unit())
    return r;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    Vector e = A.basis(i);
    Vector res = add(A.mul(*A.unit(), e), e, -1);
    Vector res2 = add(A.mul(e, *A.unit()), e, -1);
    if (!is_zero(res) || !is_zero(res2)) {
      r.pass = false;
      r.indices = {i};
      r.parities = {bit(A.parity(i))};
      r.residual = is_zero(res) ? res2 : res;
      return r;
    }
  }
  return r;
}

CheckResult check_anticommutative(const StructureAlgebra &A) {
  return over_pairs(A, "anticommutativity", [&](const Vector &a, const Vector &b, Parity pa, Parity pb) {
    return add(A.br(a, b), A.br(b, a), sg(pa, pb));
  });
}

CheckResult check_jo1(const StructureAlgebra &A) {
  if (!A.unit())
    return needs_unit("jo1");
  return over_triples(A, "jo1", [&](const Vector &a, const Vector &b, const Vector &c, Parity pa,
                                    Parity pb, Parity) {
    Vector r = A.br(a, A.mul(b, c));
    r = add(r, A.mul(A.br(a, b), c), -1);
    r = add(r, A.mul(b, A.br(a, c)), -sg(pa, pb));
    return add(r, A.mul(A.mul(A.d(a), b), c), 1);
  });
}

CheckResult check_jacobi(const StructureAlgebra &A) {
  return over_triples(A, "jacobi", [&](const Vector &a, const Vector &b, const Vector &c, Parity pa,
                                       Parity pb, Parity) {
    Vector r = A.br(a, A.br(b, c));
    r = add(r, A.br(A.br(a, b), c), -1);
    return add(r, A.br(b, A.br(a, c)), -sg(pa, pb));
  });
}

CheckResult check_kmtojd2(const StructureAlgebra &A) {
  if (!A.unit())
    return needs_unit("KMtojd2");
  return over_triples(A, "KMtojd2", [&](const Vector &a, const Vector &b, const Vector &c,
                                        Parity pa, Parity pb, Parity pc) {
    Vector r = A.br(a, A.br(b, c));
    r = add(r, A.br(A.br(a, b), c), -1);
    r = add(r, A.br(b, A.br(a, c)), -sg(pa, pb));
    r = add(r, A.mul(A.d(a), A.br(b, c)), -1);
    r = add(r, A.mul(A.d(b), A.br(c, a)), -sg(pa, pb + pc));
    return add(r, A.mul(A.d(c), A.br(a, b)), -sg(pc, pa + pb));
  });
}

CheckResult check_gpident(const StructureAlgebra &A) {
  return over_triples(A, "gpident", [&](const Vector &a, const Vector &b, const Vector &c,
                                        Parity pa, Parity pb, Parity) {
    Vector r = A.br(a, A.mul(b, c));
    r = add(r, A.mul(A.br(a, b), c), -1);
    return add(r, A.mul(b, A.br(a, c)), -sg(pa, pb));
  });
}

CheckResult check_jordan_gp(const StructureAlgebra &A) {
  CheckResult r{"jordanGP"};
  const std::size_t n = A.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        Vector ea = A.basis(a), eb = A.basis(b), ec = A.basis(c);
        Vector defect = A.br(A.br(ea, eb), ec);
        defect = add(defect, A.br(A.br(ea, ec), eb), -sg(A.parity(b), A.parity(c)));
        defect = add(defect, A.br(ea, A.br(eb, ec)), -1);
        if (is_zero(defect))
          continue;
        for (std::size_t d = 0; d < n; ++d) {
          Vector res = A.mul(defect, A.basis(d));
          if (!is_zero(res)) {
            r.pass = false;
            r.indices = {a, b, c, d};
            r.parities = {bit(A.parity(a)), bit(A.parity(b)), bit(A.parity(c)), bit(A.parity(d))};
            r.residual = res;
            return r;
          }
        }
      }
  return r;
}

Report validate(const StructureAlgebra &A) {
  Report rep;
  rep.subject = A.name();
  rep.checks.push_back(check_grading(A));
  rep.checks.push_back(check_supercommutative(A));
  rep.checks.push_back(check_associative(A));
  rep.checks.push_back(check_unit(A));
  rep.checks.push_back(check_anticommutative(A));
  switch (A.claim()) {
  case Claim::GenP:
    rep.checks.push_back(check_jo1(A));
    rep.checks.push_back(check_jacobi(A));
    rep.checks.back().identity = "jo2";
    break;
  case Claim::JB:
    rep.checks.push_back(check_jo1(A));
    rep.checks.push_back(check_kmtojd2(A));
    break;
  case Claim::GP:
    rep.checks.push_back(check_gpident(A));
    break;
  case Claim::Poisson:
    rep.checks.push_back(check_gpident(A));
    rep.checks.push_back(check_jacobi(A));
    break;
  case Claim::None:
    break;
  }
  return rep;
}

// ----------------------------------------------------------- evaluation

Vector evaluate(const Term &t, const EvalBindings &bindings, const StructureAlgebra &A) {
  if (auto g = t.as<TermGen>()) {
    if (g->id == 0) {
      if (!A.unit())
        throw Error(ErrorKind::Precondition, "term uses 1 but the algebra has no unit");
      return *A.unit();
    }
    auto it = bindings.generators.find(g->id);
    if (it == bindings.generators.end())
      throw Error(ErrorKind::UnboundVariable, "generator " + std::to_string(g->id) + " is not bound");
    return it->second;
  }
  if (auto p = t.as<TermProd>())
    return A.mul(evaluate(p->left, bindings, A), evaluate(p->right, bindings, A));
  if (auto p = t.as<TermBracket>())
    return A.br(evaluate(p->left, bindings, A), evaluate(p->right, bindings, A));
  if (auto s = t.as<TermSum>()) {
    Vector r = A.zero();
    for (const auto &[c, sub] : s->terms)
      if (c != 0)
        r = add(r, evaluate(sub, bindings, A), c);
    return r;
  }
  const auto *v = t.as<TermVar>();
  auto it = bindings.vars.find(v->name);
  if (it == bindings.vars.end())
    throw Error(ErrorKind::UnboundVariable, "variable ?" + v->name + " is not bound");
  return it->second;
}

std::map<std::string, std::uint32_t> var_degrees(const Term &t) {
  if (t.as<TermGen>())
    return {};
  if (auto v = t.as<TermVar>())
    return {{v->name, 1}};
  auto merge = [](std::map<std::string, std::uint32_t> a,
                  const std::map<std::string, std::uint32_t> &b) {
    for (const auto &[k, n] : b)
      a[k] += n;
    return a;
  };
  if (auto p = t.as<TermProd>())
    return merge(var_degrees(p->left), var_degrees(p->right));
  if (auto p = t.as<TermBracket>())
    return merge(var_degrees(p->left), var_degrees(p->right));
  const auto *s = t.as<TermSum>();
  std::optional<std::map<std::string, std::uint32_t>> first;
  for (const auto &[c, sub] : s->terms) {
    if (c == 0)
      continue;
    auto d = var_degrees(sub);
    if (first && *first != d)
      throw Error(ErrorKind::NonHomogeneous,
                  "summands have different degrees in the variables; cannot linearize");
    first = d;
  }
  return first.value_or(std::map<std::string, std::uint32_t>{});
}

IdentityResult is_identity(const Term &t, const StructureAlgebra &A,
                           const std::map<GenId, Vector> &fixed) {
  auto degrees = var_degrees(t);
  struct Slot {
    std::string var;
    std::uint32_t copy;
  };
  std::vector<Slot> slots;
  for (const auto &[name, n] : degrees)
    for (std::uint32_t k = 0; k < n; ++k)
      slots.push_back({name, k});

  IdentityResult result;
  const std::size_t d = A.dim();
  std::vector<std::size_t> idx(slots.size(), 0);
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < d; ++i)
    basis.push_back(A.basis(i));

  // The linearization is symmetric in the copies of one variable, so only
  // nondecreasing index runs per variable are visited.
  auto valid = [&]() {
    for (std::size_t s = 1; s < slots.size(); ++s)
      if (slots[s].var == slots[s - 1].var && idx[s] < idx[s - 1])
        return false;
    return true;
  };

  auto linearized = [&]() {
    Vector total = A.zero();
    // Subsets per variable, enumerated jointly.
    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (groups.empty() || groups.back().first != slots[s].var)
        groups.push_back({slots[s].var, {}});
      groups.back().second.push_back(s);
    }
    std::vector<std::uint32_t> masks(groups.size(), 1);
    while (true) {
      EvalBindings b;
      b.generators = fixed;
      int sgn = 1;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto &members = groups[g].second;
        Vector v = A.zero();
        std::uint32_t taken = 0;
        for (std::size_t m = 0; m < members.size(); ++m)
          if (masks[g] >> m & 1u) {
            v = add(v, basis[idx[members[m]]]);
            ++taken;
          }
        if ((members.size() - taken) % 2 == 1)
          sgn = -sgn;
        b.vars[groups[g].first] = v;
      }
      total = add(total, evaluate(t, b, A), Scalar(sgn));
      std::size_t g = 0;
      for (; g < groups.size(); ++g) {
        if (++masks[g] < (1u << groups[g].second.size()))
          break;
        masks[g] = 1;
      }
      if (g == groups.size())
        break;
    }
    return total;
  };

  while (true) {
    if (valid()) {
      ++result.evaluations;
      Vector res = linearized();
      if (!is_zero(res)) {
        result.holds = false;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          std::string key = degrees[slots[s].var] > 1
                                ? slots[s].var + "#" + std::to_string(slots[s].copy + 1)
                                : slots[s].var;
          result.witness[key] = idx[s];
        }
        result.residual = res;
        return result;
      }
    }
    std::size_t s = 0;
    for (; s < idx.size(); ++s) {
      if (++idx[s] < d)
        break;
      idx[s] = 0;
    }
    if (s == idx.size())
      break;
  }
  return result;
}

// ------------------------------------------------------------ builtins

namespace {

// Truncated supercommutative polynomial rings used to build examples.
class PolyRing {
public:
  using Exps = std::vector<int>;
  using Poly = std::map<Exps, Scalar>;

  PolyRing(std::vector<std::string> vars, std::vector<Parity> parity,
           std::function<bool(const Exps &)> keep)
      : vars_(std::move(vars)), parity_(std::move(parity)), keep_(std::move(keep)) {
    Exps e(vars_.size(), 0);
    enumerate(0, e);
    std::sort(basis_.begin(), basis_.end(), [](const Exps &a, const Exps &b) {
      int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
      if (da != db)
        return da < db;
      return a > b;
    });
    for (std::size_t i = 0; i < basis_.size(); ++i)
      index_[basis_[i]] = i;
  }

  std::size_t dim() const { return basis_.size(); }
  const Exps &basis(std::size_t i) const { return basis_[i]; }
  Poly mono(std::size_t i) const { return {{basis_[i], Scalar(1)}}; }

  Parity parity(const Exps &e) const {
    Parity p = Parity::Even;
    for (std::size_t v = 0; v < e.size(); ++v)
      p += power_parity(parity_[v], static_cast<std::uint32_t>(e[v]));
    return p;
  }

  std::string name(const Exps &e) const {
    std::string out;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0)
        continue;
      if (!out.empty())
        out += "*";
      out += vars_[v];
      if (e[v] > 1)
        out += "^" + std::to_string(e[v]);
    }
    return out.empty() ? "1" : out;
  }

  Poly mul(const Poly &a, const Poly &b) const {
    Poly r;
    for (const auto &[ea, ca] : a)
      for (const auto &[eb, cb] : b) {
        Exps e(ea.size());
        int s = 1;
        bool dead = false;
        for (std::size_t v = 0; v < e.size(); ++v) {
          e[v] = ea[v] + eb[v];
          if (is_odd(parity_[v]) && e[v] > 1)
            dead = true;
        }
        if (dead)
          continue;
        // odd letters of b pass the odd letters of a with larger index
        for (std::size_t v = 0; v < e.size(); ++v)
          if (is_odd(parity_[v]) && eb[v] == 1)
            for (std::size_t w = v + 1; w < e.size(); ++w)
              if (is_odd(parity_[w]) && ea[w] == 1)
                s = -s;
        r[e] += Scalar(s) * ca * cb;
      }
    return clean(r);
  }

  // left derivative
  Poly partial(std::size_t v, const Poly &a) const {
    Poly r;
    for (const auto &[e, c] : a) {
      if (e[v] == 0)
        continue;
      Exps f = e;
      f[v] -= 1;
      Scalar k = c * e[v];
      if (is_odd(parity_[v]))
        for (std::size_t w = 0; w < v; ++w)
          if (is_odd(parity_[w]) && e[w] == 1)
            k = -k;
      r[f] += k;
    }
    return clean(r);
  }

  Poly euler(const Poly &a) const {
    Poly r;
    for (const auto &[e, c] : a)
      r[e] += c * std::accumulate(e.begin(), e.end(), 0);
    return clean(r);
  }

  Poly lin(const std::vector<std::pair<Scalar, Poly>> &terms) const {
    Poly r;
    for (const auto &[c, p] : terms)
      for (const auto &[e, x] : p)
        r[e] += c * x;
    return clean(r);
  }

  Row row(const Poly &p) const {
    Row r;
    for (const auto &[e, c] : p)
      if (keep_(e))
        r.emplace_back(index_.at(e), c);
    return r;
  }

  StructureAlgebra build(Claim claim, const std::function<Poly(const Poly &, const Poly &)> &br) const {
    std::vector<Parity> par;
    std::vector<std::string> names;
    for (const auto &e : basis_) {
      par.push_back(parity(e));
      names.push_back(name(e));
    }
    StructureAlgebra A(par, claim);
    A.set_basis_names(names);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) {
        A.set_product(i, j, row(mul(mono(i), mono(j))));
        if (br)
          A.set_bracket(i, j, row(br(mono(i), mono(j))));
      }
    Vector u = A.zero();
    u[index_.at(Exps(vars_.size(), 0))] = 1;
    A.set_unit(u);
    return A;
  }

private:
  void enumerate(std::size_t v, Exps &e) {
    if (v == e.size()) {
      if (keep_(e))
        basis_.push_back(e);
      return;
    }
    int top = is_odd(parity_[v]) ? 1 : 16;
    for (int k = 0; k <= top; ++k) {
      e[v] = k;
      Exps probe = e;
      for (std::size_t w = v + 1; w < e.size(); ++w)
        probe[w] = 0;
      if (!keep_(probe))
        break;
      enumerate(v + 1, e);
    }
    e[v] = 0;
  }

  static Poly clean(Poly p) {
    std::erase_if(p, [](const auto &kv) { return kv.second == 0; });
    return p;
  }

  std::vector<std::string> vars_;
  std::vector<Parity> parity_;
  std::function<bool(const Exps &)> keep_;
  std::vector<Exps> basis_;
  std::map<Exps, std::size_t> index_;
};

std::function<PolyRing::Poly(const PolyRing::Poly &, const PolyRing::Poly &)>
wronskian_bracket(const PolyRing &R, const Scalar &scale) {
  return [&R, scale](const PolyRing::Poly &a, const PolyRing::Poly &b) {
    // D = scale * Euler; {a,b} = D(a) b - a D(b)
    return R.lin({{scale, R.mul(R.euler(a), b)}, {-scale, R.mul(a, R.euler(b))}});
  };
}

PolyRing contact_ring() {
  return PolyRing({"x", "y", "z"}, {Parity::Even, Parity::Even, Parity::Even},
                  [](const PolyRing::Exps &e) { return e[0] + e[1] + e[2] <= 3; });
}

// Lambda(f,g) = p (f_y g_z - f_z g_y) + q (f_z g_x - f_x g_z) + r (f_x g_y - f_y g_x)
// with (p,q,r) = (y^2 - z^2, z^2 - x^2, x^2 - y^2).
PolyRing::Poly bivector(const PolyRing &R, const PolyRing::Poly &f, const PolyRing::Poly &g) {
  auto sq = [](int v) {
    PolyRing::Exps e(3, 0);
    e[static_cast<std::size_t>(v)] = 2;
    return PolyRing::Poly{{e, Scalar(1)}};
  };
  auto diff = [&](int a, int b) { return R.lin({{1, sq(a)}, {-1, sq(b)}}); };
  PolyRing::Poly p = diff(1, 2), q = diff(2, 0), r = diff(0, 1);
  auto d = [&](std::size_t v, const PolyRing::Poly &h) { return R.partial(v, h); };
  auto cross = [&](std::size_t a, std::size_t b) {
    return R.lin({{1, R.mul(d(a, f), d(b, g))}, {-1, R.mul(d(b, f), d(a, g))}});
  };
  return R.lin({{1, R.mul(p, cross(1, 2))}, {1, R.mul(q, cross(2, 0))}, {1, R.mul(r, cross(0, 1))}});
}

} // namespace

StructureAlgebra builtin_wronskian(int m) {
  if (m < 2)
    throw Error(ErrorKind::Precondition, "wronskian algebra needs m >= 2");
  PolyRing R({"t"}, {Parity::Even}, [m](const PolyRing::Exps &e) { return e[0] < m; });
  StructureAlgebra A = R.build(Claim::GenP, wronskian_bracket(R, 1));
  A.set_name("wronskian" + std::to_string(m));
  return A;
}

StructureAlgebra builtin_super_wronskian(int m) {
  if (m < 1)
    throw Error(ErrorKind::Precondition, "super wronskian algebra needs m >= 1");
  PolyRing R({"t", "xi"}, {Parity::Even, Parity::Odd},
             [m](const PolyRing::Exps &e) { return e[0] < m && e[1] <= 1; });
  StructureAlgebra A = R.build(Claim::GenP, wronskian_bracket(R, 1));
  A.set_name("super-wronskian" + std::to_string(m));
  return A;
}

StructureAlgebra builtin_zero_mul_anticommutative(
    const std::vector<Parity> &parity,
    const std::map<std::pair<std::size_t, std::size_t>, Row> &bracket) {
  StructureAlgebra A(parity, Claim::GP);
  for (const auto &[ij, row] : bracket)
    A.set_bracket(ij.first, ij.second, row);
  if (!A.has_bracket())
    A.set_bracket(0, 0, {});
  if (auto c = check_anticommutative(A); !c.pass)
    throw Error(ErrorKind::Precondition, "bracket table is not anticommutative at (" +
                                             std::to_string(c.indices[0]) + "," +
                                             std::to_string(c.indices[1]) + ")");
  return A;
}

StructureAlgebra builtin_zero_mul_example() {
  // {e1,e2} = e1, {e1,e3} = e2: J(e1,e2,e3) = e2, so Jacobi fails.
  std::map<std::pair<std::size_t, std::size_t>, Row> br;
  br[{0, 1}] = {{0, Scalar(1)}};
  br[{1, 0}] = {{0, Scalar(-1)}};
  br[{0, 2}] = {{1, Scalar(1)}};
  br[{2, 0}] = {{1, Scalar(-1)}};
  StructureAlgebra A =
      builtin_zero_mul_anticommutative({Parity::Even, Parity::Even, Parity::Even}, br);
  A.set_basis_names({"e1", "e2", "e3"});
  A.set_name("zero-product");
  return A;
}

StructureAlgebra builtin_zero_bracket_poisson(int m) {
  PolyRing R({"t"}, {Parity::Even}, [m](const PolyRing::Exps &e) { return e[0] < m; });
  StructureAlgebra A = R.build(Claim::Poisson, [](const PolyRing::Poly &, const PolyRing::Poly &) {
    return PolyRing::Poly{};
  });
  A.set_name("poisson-zero" + std::to_string(m));
  return A;
}

StructureAlgebra builtin_grassmann_poisson(int n) {
  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i)
    vars.push_back("xi" + std::to_string(i));
  PolyRing R(vars, std::vector<Parity>(static_cast<std::size_t>(n), Parity::Odd),
             [](const PolyRing::Exps &) { return true; });
  StructureAlgebra A = R.build(Claim::Poisson, [&R, n](const PolyRing::Poly &f, const PolyRing::Poly &g) {
    Scalar s = is_odd(R.parity(f.begin()->first)) ? -1 : 1;
    std::vector<std::pair<Scalar, PolyRing::Poly>> terms;
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v)
      terms.emplace_back(s, R.mul(R.partial(v, f), R.partial(v, g)));
    return R.lin(terms);
  });
  A.set_name("grassmann-poisson" + std::to_string(n));
  return A;
}

StructureAlgebra builtin_contact() {
  PolyRing R = contact_ring();
  auto w = wronskian_bracket(R, -2);
  StructureAlgebra A = R.build(Claim::GenP, [&](const PolyRing::Poly &f, const PolyRing::Poly &g) {
    return R.lin({{1, bivector(R, f, g)}, {1, w(f, g)}});
  });
  A.set_name("contact");
  return A;
}

StructureAlgebra builtin_bivector_gp() {
  PolyRing R = contact_ring();
  StructureAlgebra A = R.build(Claim::GP, [&](const PolyRing::Poly &f, const PolyRing::Poly &g) {
    return bivector(R, f, g);
  });
  A.set_name("bivector");
  return A;
}

StructureAlgebra untwist_algebra(const StructureAlgebra &A) {
  if (!A.unit())
    throw Error(ErrorKind::Precondition, "untwisting needs a unit");
  StructureAlgebra B = A;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      Vector a = A.basis(i), b = A.basis(j);
      Vector v = A.br(a, b);
      v = add(v, A.mul(a, A.d(b)), -1);
      v = add(v, A.mul(A.d(a), b), 1);
      Row row;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0)
          row.emplace_back(k, v[k]);
      B.set_bracket(i, j, row);
    }
  B.set_claim(Claim::JB);
  B.set_name("untwisted-" + A.name());
  return B;
}

std::vector<std::string> builtin_names() {
  return {"wronskian2",       "wronskian3",         "wronskian4",         "super-wronskian2",
          "zero-product",     "poisson-zero3",      "grassmann-poisson2", "contact",
          "bivector",         "untwisted-wronskian3"};
}

StructureAlgebra builtin_by_name(const std::string &name) {
  auto number_after = [&](const std::string &prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size())
      return std::nullopt;
    std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); }))
      return std::nullopt;
    return std::stoi(rest);
  };
  if (name.rfind("untwisted-", 0) == 0)
    return untwist_algebra(builtin_by_name(name.substr(10)));
  if (auto m = number_after("wronskian"))
    return builtin_wronskian(*m);
  if (auto m = number_after("super-wronskian"))
    return builtin_super_wronskian(*m);
  if (auto m = number_after("poisson-zero"))
    return builtin_zero_bracket_poisson(*m);
  if (auto m = number_after("grassmann-poisson"))
    return builtin_grassmann_poisson(*m);
  if (name == "zero-product")
    return builtin_zero_mul_example();
  if (name == "contact")
    return builtin_contact();
  if (name == "bivector")
    return builtin_bivector_gp();
  throw Error(ErrorKind::UnknownIdentifier, "unknown built-in algebra '" + name + "'");
}

} // namespace jbgp
