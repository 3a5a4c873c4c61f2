#include "jbgp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>

#include "jbgp/concrete.hpp"
#include "jbgp/engine.hpp"
#include "jbgp/farkas.hpp"
#include "jbgp/genericpoisson.hpp"
#include "jbgp/json_io.hpp"
#include "jbgp/kantor.hpp"
#include "jbgp/text.hpp"

namespace jbgp {

unsigned max_degree_from_env() {
  const char *v = std::getenv("JB_MAX_DEGREE");
  if (!v || !*v)
    return 12;
  try {
    long n = std::stol(v);
    if (n >= 1)
      return static_cast<unsigned>(n);
  } catch (const std::exception &) {
  }
  throw Error(ErrorKind::Malformed, std::string("JB_MAX_DEGREE must be a positive integer, got ") + v);
}

namespace {

struct Context {
  std::ostream &out;
  bool json = false;
  unsigned max_degree = 12;
};

void guard(std::uint32_t degree, const std::string &what, const Context &ctx) {
  if (degree > ctx.max_degree)
    throw Error(ErrorKind::Limit, what + " has degree " + std::to_string(degree) +
                                      ", above JB_MAX_DEGREE=" + std::to_string(ctx.max_degree));
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (auto b = item.find_first_not_of(" \t"); b != std::string::npos)
      out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
  return out;
}

StructureAlgebra resolve_algebra(const std::string &arg) {
  if (arg.rfind("builtin:", 0) == 0)
    return builtin_by_name(arg.substr(8));
  return load_algebra(arg);
}

void print_report(const Report &r, std::ostream &out) {
  out << r.subject << ": " << (r.pass() ? "pass" : "FAIL") << '\n';
  for (const auto &c : r.checks) {
    out << "  " << c.identity << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.pass) {
      out << " at basis";
      for (std::size_t i : c.indices)
        out << ' ' << i;
      out << " (parities";
      for (int p : c.parities)
        out << ' ' << p;
      out << ')';
    }
    if (!c.note.empty())
      out << "  [" << c.note << ']';
    out << '\n';
  }
}

// --- nf ---------------------------------------------------------------

struct NfArgs {
  std::string theory = "genp", gens, expr;
};

int cmd_nf(const NfArgs &a, Context &ctx) {
  Theory th = parse_theory(a.theory);
  Alphabet alphabet = parse_generators(a.gens);
  Term t = parse_term(a.expr, alphabet);
  guard(multidegree(t).x_total(), "expression", ctx);
  Element e = normal_form(t, th);
  if (ctx.json)
    ctx.out << element_to_json(e, alphabet).dump(2) << '\n';
  else
    ctx.out << print(e, alphabet) << '\n';
  return kExitOk;
}

// --- dim --------------------------------------------------------------

struct DimArgs {
  std::string theory = "genp";
  int n = 0;
  bool table = false;
};

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

int cmd_dim(const DimArgs &a, Context &ctx) {
  Theory th = parse_theory(a.theory);
  if (a.n < 1)
    throw Error(ErrorKind::Precondition, "N must be at least 1");
  guard(static_cast<std::uint32_t>(a.n), "dim", ctx);
  if (!a.table) {
    std::size_t d = dim_multilinear(a.n, th);
    if (ctx.json)
      ctx.out << json{{"theory", theory_name(th)}, {"n", a.n}, {"dim", d}}.dump() << '\n';
    else
      ctx.out << d << '\n';
    return kExitOk;
  }
  json rows = json::array();
  if (!ctx.json)
    ctx.out << "n\tdim\tn*n!\n";
  for (int n = 1; n <= a.n; ++n) {
    std::size_t d = dim_multilinear(n, th);
    long long expect = n * factorial(n);
    if (ctx.json)
      rows.push_back({{"n", n}, {"dim", d}, {"n_factorial_n", expect}});
    else
      ctx.out << n << '\t' << d << '\t' << expect << '\n';
  }
  if (ctx.json)
    ctx.out << json{{"theory", theory_name(th)}, {"table", rows}}.dump(2) << '\n';
  return kExitOk;
}

// --- basis ------------------------------------------------------------

struct BasisArgs {
  std::string theory = "genp", gens, multidegree;
};

// "1,x1,x2^2" or "x1:1,x2:2"
MultiDegree parse_multidegree(const std::string &s, const Alphabet &alphabet) {
  MultiDegree d;
  for (const auto &item : split_list(s)) {
    std::string name = item;
    std::uint32_t count = 1;
    if (auto p = item.find_first_of("^:"); p != std::string::npos) {
      name = item.substr(0, p);
      try {
        count = static_cast<std::uint32_t>(std::stoul(item.substr(p + 1)));
      } catch (const std::logic_error &) {
        throw Error(ErrorKind::Malformed, "bad multidegree entry '" + item + "'");
      }
    }
    auto id = name == "1" ? std::optional<GenId>(0) : alphabet.find(name);
    if (!id)
      throw Error(ErrorKind::UnknownIdentifier, "undeclared identifier '" + name + "'");
    if (count)
      d.add(*id, count);
  }
  return d;
}

int cmd_basis(const BasisArgs &a, Context &ctx) {
  Theory th = parse_theory(a.theory);
  Alphabet alphabet = parse_generators(a.gens);
  MultiDegree d = parse_multidegree(a.multidegree, alphabet);
  guard(d.x_total(), "multidegree", ctx);
  auto basis = enumerate_basis(d, alphabet, th);
  if (ctx.json) {
    json list = json::array();
    for (const auto &m : basis)
      list.push_back(element_to_json(Element::monomial(th, m), alphabet));
    ctx.out << json{{"theory", theory_name(th)},
                    {"multidegree", d.to_string(alphabet)},
                    {"count", basis.size()},
                    {"basis", list}}
                   .dump(2)
            << '\n';
  } else {
    for (const auto &m : basis)
      ctx.out << m.to_string(alphabet) << '\n';
    ctx.out << "# " << basis.size() << " elements\n";
  }
  return kExitOk;
}

// --- check-identity ---------------------------------------------------

struct CheckArgs {
  std::string algebra, free_theory, odd, expr;
};

int cmd_check(const CheckArgs &a, Context &ctx) {
  if (a.algebra.empty() == a.free_theory.empty())
    throw Error(ErrorKind::Precondition, "give exactly one of --algebra or --free");
  Alphabet none;
  Term t = parse_term(a.expr, none, true);
  guard([&] {
    std::uint32_t s = 0;
    for (const auto &[v, deg] : var_degrees(t))
      s += deg;
    return s;
  }(), "identity", ctx);

  if (!a.free_theory.empty()) {
    Theory th = parse_theory(a.free_theory);
    std::set<std::string> odd;
    for (const auto &n : split_list(a.odd))
      odd.insert(n);
    Alphabet alphabet;
    Bindings b;
    for (const auto &[name, deg] : var_degrees(t)) {
      GenId g = alphabet.add(name, odd.count(name) ? Parity::Odd : Parity::Even);
      b[name] = Element::generator(th, alphabet[g]);
    }
    Element r = substitute(t, b, th);
    bool holds = r.is_zero();
    if (ctx.json) {
      ctx.out << json{{"holds", holds},
                      {"theory", theory_name(th)},
                      {"alphabet", alphabet_to_json(alphabet)},
                      {"residual", element_to_json(r, alphabet)}}
                     .dump(2)
              << '\n';
    } else {
      ctx.out << (holds ? "true" : "false") << '\n';
      if (!holds)
        ctx.out << "residual: " << print(r, alphabet) << '\n';
    }
    return holds ? kExitOk : kExitFalse;
  }

  StructureAlgebra A = resolve_algebra(a.algebra);
  IdentityResult r = is_identity(t, A);
  if (ctx.json) {
    ctx.out << identity_result_to_json(r).dump(2) << '\n';
  } else {
    ctx.out << (r.holds ? "true" : "false") << " (" << r.evaluations << " evaluations)\n";
    if (!r.holds) {
      ctx.out << "witness:";
      for (const auto &[slot, idx] : r.witness)
        ctx.out << ' ' << slot << '=' << A.basis_name(idx);
      ctx.out << "\nresidual: " << vector_to_string(r.residual, A) << '\n';
    }
  }
  return r.holds ? kExitOk : kExitFalse;
}

// --- kantor-check -----------------------------------------------------

struct KantorArgs {
  std::string algebra, free_theory;
  bool direct = false, jorskob = false, exhaustive = false;
};

int cmd_kantor(const KantorArgs &a, Context &ctx) {
  if (!a.free_theory.empty()) {
    Report r = jorskob_check_free(parse_theory(a.free_theory));
    if (ctx.json)
      ctx.out << report_to_json(r).dump(2) << '\n';
    else
      print_report(r, ctx.out);
    return r.pass() ? kExitOk : kExitFalse;
  }
  if (a.algebra.empty())
    throw Error(ErrorKind::Precondition, "give --algebra or --free");
  StructureAlgebra A = resolve_algebra(a.algebra);
  bool both = a.direct == a.jorskob;
  std::optional<Report> jr, dr;
  if (both || a.jorskob)
    jr = jorskob_check(A);
  if (both || a.direct)
    dr = super_jordan_check(double_of(A), a.exhaustive);
  if (!both) {
    const Report &r = jr ? *jr : *dr;
    if (ctx.json)
      ctx.out << report_to_json(r).dump(2) << '\n';
    else
      print_report(r, ctx.out);
    return r.pass() ? kExitOk : kExitFalse;
  }
  bool agree = jr->pass() == dr->pass();
  if (ctx.json) {
    ctx.out << json{{"jorskob", report_to_json(*jr)},
                    {"direct", report_to_json(*dr)},
                    {"agree", agree}}
                   .dump(2)
            << '\n';
  } else {
    print_report(*jr, ctx.out);
    print_report(*dr, ctx.out);
    ctx.out << "Kantor double is " << (dr->pass() ? "" : "not ") << "Jordan; checks "
            << (agree ? "agree" : "DISAGREE") << '\n';
  }
  if (!agree)
    throw Error(ErrorKind::Internal, "the two Jordan checks disagree");
  return jr->pass() ? kExitOk : kExitFalse;
}

// --- farkas -----------------------------------------------------------

struct FarkasArgs {
  std::string gens, vars, input;
  bool trace = false;
};

int cmd_farkas(const FarkasArgs &a, Context &ctx) {
  Alphabet alphabet = parse_generators(a.gens);
  Term t = parse_term(a.input, alphabet);
  guard(multidegree(t).x_total(), "input", ctx);
  PoissonPolynomial p;
  p.f = normal_form(t, Theory::GenP);
  if (a.vars.empty()) {
    for (GenId g = 1; g < alphabet.size(); ++g)
      p.vars.push_back(g);
  } else {
    for (const auto &n : split_list(a.vars)) {
      auto id = alphabet.find(n);
      if (!id)
        throw Error(ErrorKind::UnknownIdentifier, "undeclared identifier '" + n + "'");
      p.vars.push_back(*id);
    }
  }
  FarkasResult r = farkas_reduce(p, alphabet);
  if (ctx.json) {
    json j = farkas_to_json(r, alphabet);
    if (!a.trace)
      j.erase("trace");
    ctx.out << j.dump(2) << '\n';
    return kExitOk;
  }
  if (a.trace) {
    for (const auto &s : r.trace) {
      ctx.out << '[' << s.step << "] " << print(s.g.f, alphabet);
      if (!s.note.empty())
        ctx.out << "    # " << s.note;
      ctx.out << '\n';
    }
    for (const auto &d : r.discharged)
      ctx.out << "[discharged] " << print(d, alphabet) << '\n';
  }
  ctx.out << r.result.to_string(alphabet) << '\n';
  return kExitOk;
}

// --- eval -------------------------------------------------------------

struct EvalArgs {
  std::string algebra, expr;
  std::vector<std::string> binds;
};

// Value of a binding: an expression over the basis names, or [c0,c1,...].
Vector parse_value(const std::string &src, const StructureAlgebra &A) {
  auto b = src.find_first_not_of(" \t");
  if (b != std::string::npos && src[b] == '[') {
    auto e = src.find_last_of(']');
    if (e == std::string::npos || e < b)
      throw Error(ErrorKind::Parse, "unterminated vector '" + src + "'");
    json arr = json::array();
    for (const auto &c : split_list(src.substr(b + 1, e - b - 1)))
      arr.push_back(c);
    return vector_from_json(arr, A.dim());
  }
  // e0, e1, ... always; the file's own basis names too when they are identifiers.
  Alphabet basis;
  EvalBindings eb;
  auto declare = [&](const std::string &name, std::size_t i) {
    if (basis.find(name))
      return;
    eb.generators[basis.add(name, A.parity(i))] = A.basis(i);
  };
  for (std::size_t i = 0; i < A.dim(); ++i)
    declare("e" + std::to_string(i), i);
  for (std::size_t i = 0; i < A.dim(); ++i) {
    std::string n = A.basis_name(i);
    bool ident = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_') &&
                 std::all_of(n.begin(), n.end(), [](char c) {
                   return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
                 });
    if (ident && n != "D")
      declare(n, i);
  }
  return evaluate(parse_term(src, basis), eb, A);
}

int cmd_eval(const EvalArgs &a, Context &ctx) {
  StructureAlgebra A = resolve_algebra(a.algebra);
  std::vector<std::pair<std::string, Parity>> gens;
  std::vector<Vector> values;
  for (const auto &bind : a.binds) {
    auto eq = bind.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Malformed, "--bind expects NAME=VALUE, got '" + bind + "'");
    std::string name = bind.substr(0, eq);
    Vector v = parse_value(bind.substr(eq + 1), A);
    auto p = A.parity_of(v);
    if (!p && !is_zero(v))
      throw Error(ErrorKind::UndefinedParity, "value bound to '" + name + "' is not homogeneous");
    gens.emplace_back(name, p.value_or(Parity::Even));
    values.push_back(std::move(v));
  }
  Alphabet alphabet = Alphabet::from_list(gens);
  Term t = parse_term(a.expr, alphabet);
  guard(multidegree(t).x_total(), "expression", ctx);
  EvalBindings eb;
  for (std::size_t i = 0; i < values.size(); ++i)
    eb.generators[static_cast<GenId>(i + 1)] = values[i];
  Vector r = evaluate(t, eb, A);
  if (ctx.json)
    ctx.out << json{{"value", vector_to_json(r)}}.dump() << '\n';
  else
    ctx.out << vector_to_string(r, A) << '\n';
  return kExitOk;
}

// --- validate / builtin -----------------------------------------------

int cmd_validate(const std::string &file, Context &ctx) {
  Report r = validate(resolve_algebra(file));
  if (ctx.json)
    ctx.out << report_to_json(r).dump(2) << '\n';
  else
    print_report(r, ctx.out);
  return r.pass() ? kExitOk : kExitFalse;
}

int cmd_builtin(const std::string &name, Context &ctx) {
  if (name.empty()) {
    for (const auto &n : builtin_names())
      ctx.out << n << '\n';
    return kExitOk;
  }
  ctx.out << algebra_to_json(builtin_by_name(name)).dump(2) << '\n';
  return kExitOk;
}

int exit_code_for(ErrorKind k) {
  return k == ErrorKind::Internal ? kExitInternal : kExitUsage;
}

void report_error(const Context &ctx, std::ostream &err, const std::string &kind,
                  const std::string &msg, std::optional<std::size_t> offset) {
  if (ctx.json) {
    json e{{"kind", kind}, {"message", msg}};
    if (offset)
      e["offset"] = *offset;
    ctx.out << json{{"error", e}}.dump() << '\n';
  } else {
    err << "error (" << kind << "): " << msg << '\n';
  }
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Free generalized Poisson, Jordan-bracket and generic Poisson superalgebras"};
  app.name("jbgp");
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{out};
  app.add_flag("--json", ctx.json, "Machine-readable JSON output");

  const std::vector<std::string> theories{"genp", "jb", "gp"};

  NfArgs nf;
  auto *s_nf = app.add_subcommand("nf", "Normal form of an expression");
  s_nf->add_option("--theory", nf.theory)->check(CLI::IsMember(theories));
  s_nf->add_option("--gens", nf.gens, "Generators, e.g. x1,x2 or t:odd");
  s_nf->add_option("expr", nf.expr)->required();

  DimArgs dim;
  auto *s_dim = app.add_subcommand("dim", "Dimension of the multilinear component");
  s_dim->add_option("--theory", dim.theory)->check(CLI::IsMember(theories));
  s_dim->add_flag("--table", dim.table, "Print n = 1..N next to n*n!");
  s_dim->add_option("N", dim.n)->required();

  BasisArgs basis;
  auto *s_basis = app.add_subcommand("basis", "Basis monomials of a multidegree");
  s_basis->add_option("--theory", basis.theory)->check(CLI::IsMember(theories));
  s_basis->add_option("--gens", basis.gens);
  s_basis->add_option("--multidegree", basis.multidegree, "e.g. 1,x1,x2^2")->required();

  CheckArgs check;
  auto *s_check = app.add_subcommand("check-identity", "Test an identity with ?variables");
  s_check->add_option("--algebra", check.algebra, "Algebra JSON file or builtin:NAME");
  s_check->add_option("--free", check.free_theory, "Free theory: genp, jb or gp")
      ->check(CLI::IsMember(theories));
  s_check->add_option("--odd", check.odd, "Variables taken odd in the free check");
  s_check->add_option("expr", check.expr)->required();

  KantorArgs kantor;
  auto *s_kantor = app.add_subcommand("kantor-check", "Jordan-ness of the Kantor double");
  s_kantor->add_option("--algebra", kantor.algebra, "Algebra JSON file or builtin:NAME");
  s_kantor->add_option("--free", kantor.free_theory, "Run the identities in a free theory")
      ->check(CLI::IsMember(theories));
  s_kantor->add_flag("--direct", kantor.direct, "Super-Jordan identity on the double");
  s_kantor->add_flag("--jorskob", kantor.jorskob, "The three identities on the algebra");
  s_kantor->add_flag("--exhaustive", kantor.exhaustive, "Direct check on all basis tuples");

  FarkasArgs farkas;
  auto *s_farkas = app.add_subcommand("farkas", "Reduce an identity to customary form");
  s_farkas->add_option("--gens", farkas.gens)->required();
  s_farkas->add_option("--vars", farkas.vars, "Identity letters (default: all generators)");
  s_farkas->add_option("--input", farkas.input)->required();
  s_farkas->add_flag("--trace", farkas.trace);

  EvalArgs eval;
  auto *s_eval = app.add_subcommand("eval", "Evaluate an expression in an algebra");
  s_eval->add_option("--algebra", eval.algebra)->required();
  s_eval->add_option("--bind", eval.binds, "NAME=VALUE, VALUE over basis names or [c0,...]");
  s_eval->add_option("expr", eval.expr)->required();

  std::string validate_file;
  auto *s_validate = app.add_subcommand("validate", "Check the axioms an algebra file claims");
  s_validate->add_option("file", validate_file)->required();

  std::string builtin_name;
  auto *s_builtin = app.add_subcommand("builtin", "List built-in algebras or dump one as JSON");
  s_builtin->add_option("name", builtin_name);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    report_error(ctx, err, "usage", e.what(), std::nullopt);
    return kExitUsage;
  }

  try {
    ctx.max_degree = max_degree_from_env();
    if (s_nf->parsed())
      return cmd_nf(nf, ctx);
    if (s_dim->parsed())
      return cmd_dim(dim, ctx);
    if (s_basis->parsed())
      return cmd_basis(basis, ctx);
    if (s_check->parsed())
      return cmd_check(check, ctx);
    if (s_kantor->parsed())
      return cmd_kantor(kantor, ctx);
    if (s_farkas->parsed())
      return cmd_farkas(farkas, ctx);
    if (s_eval->parsed())
      return cmd_eval(eval, ctx);
    if (s_validate->parsed())
      return cmd_validate(validate_file, ctx);
    if (s_builtin->parsed())
      return cmd_builtin(builtin_name, ctx);
  } catch (const ParseError &e) {
    report_error(ctx, err, error_kind_name(e.kind()), e.what(), e.offset());
    return kExitUsage;
  } catch (const Error &e) {
    report_error(ctx, err, error_kind_name(e.kind()), e.what(), std::nullopt);
    return exit_code_for(e.kind());
  } catch (const std::exception &e) {
    report_error(ctx, err, "internal", e.what(), std::nullopt);
    return kExitInternal;
  }
  report_error(ctx, err, "usage", "no subcommand", std::nullopt);
  return kExitUsage;
}

} // namespace jbgp
