#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "exactsos/descent.hpp"
#include "exactsos/parser.hpp"
#include "exactsos/pipeline.hpp"

using namespace exactsos;
using nlohmann::json;

namespace {

constexpr int kExitParse = 64;

// Malformed input; maps to exit code 64.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Fn>
auto parsing(const std::string& what, Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// A path to an existing file, or the polynomial text itself.
std::string file_or_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

VarList vars_option(const std::string& text) {
  if (text.empty()) return nullptr;
  return parsing("--vars", [&] { return parse_variable_list(text); });
}

PolynomialDocument load_document(const std::string& arg, const VarList& vars) {
  return parsing("polynomial", [&] { return parse_polynomial_document(file_or_text(arg), vars); });
}

QPoly load_rational(const std::string& arg, const VarList& vars) {
  const PolynomialDocument doc = load_document(arg, vars);
  QPoly f(doc.poly.vars());
  for (const auto& [e, c] : doc.poly.terms()) {
    if (!c.is_rational()) throw InputError("polynomial must have rational coefficients");
    f.add_term(e, c.coord(0));
  }
  if (f.is_zero()) throw InputError("polynomial is zero");
  if (!f.is_homogeneous()) throw InputError("polynomial is not homogeneous");
  if (f.degree() % 2 != 0) throw InputError("polynomial has odd degree");
  return f;
}

bool yes_no(const std::string& v) { return v == "yes"; }

json certificate_json(const Certificate& c) {
  json j;
  if (c.field) {
    j["field"] = {{"generator", c.field->generator()}, {"minpoly", c.field->minpoly().to_string("Z")}};
  }
  j["coefficients"] = json::array();
  for (const auto& x : c.coefficients) j["coefficients"].push_back(to_string(x));
  j["polynomials"] = json::array();
  for (const auto& p : c.polynomials) j["polynomials"].push_back(p.to_string());
  return j;
}

void write_certificate(const Certificate& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << serialize(c);
}

void emit_certificate(const Certificate& c, const std::string& path) {
  std::cout << serialize(c);
  if (path.empty()) return;
  write_certificate(c, path);
  std::cout << "certificate written to " << path << "\n";
}

struct DecomposeArgs {
  std::string poly, zeros, vars, output;
  std::string trace = "yes", force = "no", minors = "yes";
  long long max_denom = 1000000;
  double sdp_tol = 1e-9;
  int sdp_iters = 2000;
  uint64_t seed = 1;
  bool json = false;
};

int cmd_decompose(const DecomposeArgs& a) {
  const QPoly f = load_rational(a.poly, vars_option(a.vars));
  std::vector<ZeroPoint> zeros;
  if (!a.zeros.empty()) zeros = parsing("zeros", [&] { return parse_zero_file(read_file(a.zeros), f); });

  DecomposeOptions opt;
  opt.reduce.trace_equations = yes_no(a.trace);
  opt.reduce.force_rational = yes_no(a.force);
  opt.reduce.minor_ghosts = yes_no(a.minors);
  opt.reduce.seed = a.seed;
  opt.sdp.eig_tolerance = a.sdp_tol;
  opt.sdp.max_iterations = a.sdp_iters;
  opt.sdp.seed = a.seed;
  opt.max_denom = Integer(std::to_string(a.max_denom));
  const RunReport r = decompose(f, zeros, opt);

  if (a.json) {
    json j;
    j["exit_code"] = r.exit_code;
    j["steps"] = json::array();
    for (const auto& s : r.log.steps) {
      j["steps"].push_back({{"label", s.label}, {"dimension", s.dimension}, {"rank", s.rank}, {"empty", s.empty}});
    }
    j["warnings"] = r.log.warnings;
    j["messages"] = r.messages;
    j["unique_solution"] = r.unique_solution;
    if (r.sdp) {
      j["solver"] = {{"status", to_string(r.sdp->status)},
                     {"min_eigenvalue", r.sdp->min_eigenvalue},
                     {"iterations", r.sdp->iterations},
                     {"omega", r.omega}};
    }
    if (r.certificate) j["certificate"] = certificate_json(*r.certificate);
    if (!r.refusal.empty()) j["refusal"] = r.refusal;
    if (!r.witness.empty()) j["witness"] = r.witness;
    j["seconds"] = r.seconds;
    std::cout << j.dump(2) << "\n";
    if (r.certificate && !a.output.empty()) write_certificate(*r.certificate, a.output);
    return r.exit_code;
  }

  if (opt.reduce.trace_equations) {
    std::cout << "Option trace-equations: yes - Only valid when looking for rational decompositions.\n";
  }
  std::cout << "Facial reduction results:\n";
  for (const auto& s : r.log.steps) {
    std::cout << "  " << s.label << ": ";
    if (s.empty) {
      std::cout << "empty\n";
    } else {
      std::cout << "rank " << s.rank << ", indeterminates " << s.dimension << "\n";
    }
  }
  for (const auto& w : r.log.warnings) std::cerr << "warning: " << w << "\n";
  if (r.sdp) {
    std::cout << "Numerical solver on a " << r.omega.size() << "x" << r.omega.size()
              << " principal submatrix: " << to_string(r.sdp->status) << ", min eigenvalue " << r.sdp->min_eigenvalue
              << "\n";
  }
  for (const auto& m : r.messages) std::cout << m << "\n";
  if (!r.witness.empty()) {
    std::cout << "witness:";
    for (const auto& w : r.witness) std::cout << " " << w;
    std::cout << "\n";
  }
  if (!r.refusal.empty()) std::cout << "refusal: " << r.refusal << "\n";
  if (r.certificate) emit_certificate(*r.certificate, a.output);
  return r.exit_code;
}

int cmd_verify(const std::string& cert_path, const std::string& poly, const std::string& vars) {
  const Certificate c = parsing("certificate", [&] { return parse_certificate(read_file(cert_path)); });
  const PolynomialDocument doc = load_document(poly, vars.empty() ? c.vars : vars_option(vars));
  const bool ok = verify_certificate(c, doc.poly);
  std::cout << (ok ? "certificate verified" : "certificate does not match") << "\n";
  return ok ? 0 : 1;
}

int cmd_pencil(const std::string& poly, const std::string& vars, bool dump, uint64_t seed) {
  const QPoly f = load_rational(poly, vars_option(vars));
  const GramPencil<Rational> p = build_pencil(f);
  std::mt19937_64 rng(seed);
  if (dump) {
    std::cout << dump_pencil(p);
    return 0;
  }
  std::cout << "size " << p.size() << "\n";
  std::cout << "dimension " << p.num_params() << "\n";
  std::cout << "rank " << generic_rank(p, rng) << "\n";
  return 0;
}

int cmd_descend2(const std::string& p1_arg, const std::string& p2_arg, const std::string& minpoly,
                 const std::string& vars, const std::string& output) {
  FieldPtr field;
  if (!minpoly.empty()) {
    field = parsing("--minpoly", [&] { return NumberField::make(parse_univariate(minpoly), "a"); });
  }
  const std::string t1 = parsing("p1", [&] { return file_or_text(p1_arg); });
  const std::string t2 = parsing("p2", [&] { return file_or_text(p2_arg); });
  auto header = [&](const std::string& text) -> FieldPtr {
    for (const auto& line : split(text, '\n')) {
      if (auto fp = parsing("field header", [&] { return parse_field_header(trim(line)); })) return fp;
    }
    return nullptr;
  };
  if (!field) field = header(t1);
  if (!field) field = header(t2);
  if (!field) throw InputError("no number field given (use --minpoly or a field: header)");
  auto body = [&](const std::string& text) {
    std::string out;
    for (const auto& line : split(text, '\n')) {
      const std::string l = trim(line.substr(0, line.find('#')));
      if (l.rfind("field:", 0) == 0 || l.rfind("vars:", 0) == 0) continue;
      out += l + " ";
    }
    return out;
  };
  VarList vs = vars_option(vars);
  for (const std::string* t : {&t1, &t2}) {
    for (const auto& line : split(*t, '\n')) {
      const std::string l = trim(line);
      if (!vs && l.rfind("vars:", 0) == 0) vs = vars_option(l.substr(5));
    }
  }
  if (!vs) {
    vs = parsing("variables", [&] { return infer_variables({body(t1) + " " + body(t2)}, {field->generator()}); });
  }
  const NfPoly p1 = parsing("p1", [&] { return parse_nf_polynomial(body(t1), vs, field); });
  const NfPoly p2 = parsing("p2", [&] { return parse_nf_polynomial(body(t2), vs, field); });

  const ConjugateProduct cp = conjugate_product(p1, p2, field);
  std::cerr << "f = " << cp.f.to_string() << "\n";
  const DescentResult d = two_square_descent(cp.f, cp.P1, cp.P2, cp.degree);
  if (!d.complete) {
    std::cout << "refusal: descent-incomplete (" << d.note << ")\n";
    std::cout << "f = (P1/f^" << d.denominator_power << ")^2 + (P2/f^" << d.denominator_power << ")^2 with\n";
    std::cout << "P1 = " << cp.P1.to_string() << "\nP2 = " << cp.P2.to_string() << "\n";
    return 2;
  }
  auto lift = [](const QPoly& q) { return q.map_coefficients([](const Rational& c) { return AlgebraicNumber(c); }); };
  std::vector<AlgebraicNumber> coeffs;
  std::vector<NfPoly> polys;
  for (const QPoly* q : {&d.q1, &d.q2}) {
    if (q->is_zero()) continue;
    coeffs.emplace_back(1);
    polys.push_back(lift(*q));
  }
  const Certificate c = certificate_from_squares(coeffs, polys);
  if (!verify_certificate(c, cp.f)) throw Error("internal: descent certificate does not verify");
  emit_certificate(c, output);
  return 0;
}

int cmd_gen3(const std::vector<std::string>& inputs, const std::string& vars, const std::string& output) {
  std::vector<std::string> names = {"a3", "b1", "b2", "b3", "c1", "c2", "c3"};
  VarList vs = vars_option(vars);
  if (!vs) vs = parsing("variables", [&] { return infer_variables(inputs); });
  std::vector<QPoly> q;
  for (size_t i = 0; i < inputs.size(); ++i) {
    q.push_back(parsing(names[i], [&] { return parse_polynomial(inputs[i], vs); }));
  }
  const ThreeSquares g = gen_three_squares(q[0], q[1], q[2], q[3], q[4], q[5], q[6]);
  std::cerr << "f = " << g.f.to_string() << "\n";
  std::vector<AlgebraicNumber> coeffs;
  std::vector<NfPoly> polys;
  for (const NfPoly* p : {&g.p1, &g.p2, &g.p3}) {
    if (p->is_zero()) continue;
    coeffs.emplace_back(1);
    polys.push_back(*p);
  }
  const Certificate c = certificate_from_squares(coeffs, polys, g.field);
  if (!verify_certificate(c, g.f)) throw Error("internal: generated certificate does not verify");
  emit_certificate(c, output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sum-of-squares certificates for rational forms"};
  app.require_subcommand(1);

  DecomposeArgs da;
  auto* dec = app.add_subcommand("decompose", "Facial reduction, numerical step and exact certificate");
  dec->add_option("polynomial", da.poly, "Polynomial file or expression")->required();
  dec->add_option("--zeros", da.zeros, "Zero-point file");
  dec->add_option("--vars", da.vars, "Variable order, e.g. \"x, y, z\"");
  dec->add_option("--trace-equations", da.trace, "Trace constraints for algebraic zeros")
      ->check(CLI::IsMember({"yes", "no"}));
  dec->add_option("--force-rational", da.force, "Force rational entries")->check(CLI::IsMember({"yes", "no"}));
  dec->add_option("--minor-ghosts", da.minors, "2x2 minor ghost constraints")->check(CLI::IsMember({"yes", "no"}));
  dec->add_option("--max-denom", da.max_denom, "Denominator bound for rounding")->check(CLI::PositiveNumber);
  dec->add_option("--sdp-tol", da.sdp_tol, "Eigenvalue tolerance of the numerical solver");
  dec->add_option("--sdp-iters", da.sdp_iters, "Iteration budget of the numerical solver");
  dec->add_option("--seed", da.seed, "Random seed");
  dec->add_option("-o,--output", da.output, "Write the certificate to a file");
  dec->add_flag("--json", da.json, "Structured report");

  std::string cert_path, poly, vars, output, minpoly, p1, p2;
  bool dump = false;
  uint64_t seed = 1;
  auto* ver = app.add_subcommand("verify", "Check a certificate against a polynomial");
  ver->add_option("certificate", cert_path, "Certificate file")->required();
  ver->add_option("polynomial", poly, "Polynomial file or expression")->required();
  ver->add_option("--vars", vars, "Variable order");

  auto* pen = app.add_subcommand("pencil", "Gram pencil size, dimension and generic rank");
  pen->add_option("polynomial", poly, "Polynomial file or expression")->required();
  pen->add_option("--vars", vars, "Variable order");
  pen->add_option("--seed", seed, "Random seed");
  pen->add_flag("--dump", dump, "Print the pencil matrices");

  auto* d2 = app.add_subcommand("descend2", "Sum of two squares over an odd-degree field to one over Q");
  d2->add_option("p1", p1, "First polynomial (file or expression)")->required();
  d2->add_option("p2", p2, "Second polynomial (file or expression)")->required();
  d2->add_option("--minpoly", minpoly, "Minimal polynomial in Z of the generator a");
  d2->add_option("--vars", vars, "Variable order");
  d2->add_option("-o,--output", output, "Write the certificate to a file");

  std::vector<std::string> g3(7);
  auto* gen = app.add_subcommand("gen3", "Rational form that is a sum of three squares over Q(2^(1/3))");
  const char* names[] = {"--a3", "--b1", "--b2", "--b3", "--c1", "--c2", "--c3"};
  for (size_t i = 0; i < 7; ++i) gen->add_option(names[i], g3[i], "Polynomial over Q")->required();
  gen->add_option("--vars", vars, "Variable order");
  gen->add_option("-o,--output", output, "Write the certificate to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*dec) return cmd_decompose(da);
    if (*ver) return cmd_verify(cert_path, poly, vars);
    if (*pen) return cmd_pencil(poly, vars, dump, seed);
    if (*d2) return cmd_descend2(p1, p2, minpoly, vars, output);
    if (*gen) return cmd_gen3(g3, vars, output);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return kExitParse;
}
