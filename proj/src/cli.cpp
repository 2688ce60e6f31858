#include "apq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <exception>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "apq/errors.hpp"
#include "apq/index_tools.hpp"
#include "apq/modules.hpp"
#include "apq/poly.hpp"
#include "apq/positivity.hpp"
#include "apq/trace.hpp"

namespace apq {
namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

struct JobSpec {
  std::string coeffs;
  std::string roots_text;
  std::string leading = "1";
  int degree = 6;
  double tol = 1e-9;
  std::string method = "petrov";
  bool json_out = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

ComplexPoly input_polynomial(const JobSpec& job) {
  const bool have_c = !job.coeffs.empty();
  const bool have_r = !job.roots_text.empty();
  if (have_c == have_r)
    throw input_error("exactly one of --coeffs / --roots is required");
  if (have_c) return parse_poly(job.coeffs);
  Scalar lead = parse_scalar(job.leading);
  if (lead.is_zero()) throw input_error("--leading must be nonzero");
  ComplexPoly P{lead};
  for (const std::string& r : job.roots_text.empty()
                                  ? std::vector<std::string>{}
                                  : split_list(job.roots_text))
    P = P * ComplexPoly{Scalar(0) - parse_scalar(r), Scalar(1)};
  return P;
}

/* +1 when P >= 0 on the imaginary axis, -1 when -P is, else 0. */
int sign_convention(const ComplexPoly& P) {
  try {
    if (nonneg_on_line(P, Scalar(0))) return 1;
    if (nonneg_on_line(Scalar(-1) * P, Scalar(0))) return -1;
  } catch (const std::exception&) {
  }
  return 0;
}

json trace_json(const TraceFunctional& T) {
  json t;
  t["provenance"] = T.provenance;
  t["hermitian"] = T.hermitian;
  t["resolved_sign"] = T.resolved_sign;
  t["quad_error"] = T.quad_error;
  t["dimension"] = T.basis.dim();
  json vals = json::array();
  for (const Scalar& v : T.values) vals.push_back(to_string(v));
  t["values"] = vals;
  return t;
}

std::string descriptor_text(const ModuleDescriptor& d) {
  if (d.is_family()) return "lambda + 2Z (symbolic family)";
  if (d.family_residue) return to_string(*d.family_residue) + " + 2Z";
  if (d.is_finite())
    return "{" + to_string(*d.start) + " .. " + to_string(*d.end) + "} (dim " +
           std::to_string(d.dimension()) + ")";
  if (d.start) return "[" + to_string(*d.start) + ", +inf)";
  return "(-inf, " + to_string(*d.end) + "]";
}

json descriptor_json(const ComplexPoly& P, const ModuleDescriptor& d,
                     double tol) {
  json m;
  if (d.is_family())
    m["kind"] = "family";
  else if (d.family_residue)
    m["kind"] = "family_member";
  else if (d.is_finite())
    m["kind"] = "finite";
  else
    m["kind"] = d.start ? "lowest_weight" : "highest_weight";
  m["weights"] = descriptor_text(d);
  m["start"] = d.start ? json(to_string(*d.start)) : json(nullptr);
  m["end"] = d.end ? json(to_string(*d.end)) : json(nullptr);
  m["step"] = d.step;
  if (d.family_residue) m["residue"] = to_string(*d.family_residue);
  if (d.is_finite()) m["dimension"] = d.dimension();
  try {
    UnitarityReport r = is_unitarizable_module(P, d, tol);
    m["unitarizable"] = r.unitarizable;
    m["reason"] = r.reason;
    if (r.failing_weight) m["failing_weight"] = to_string(*r.failing_weight);
  } catch (const input_error& e) {
    // Symbolic family, or no invariant form exists for this P.
    m["unitarizable"] = nullptr;
    m["reason"] = e.what();
  }
  return m;
}

json classify_payload(const ComplexPoly& P, const JobSpec& job) {
  Parity par = P.degree() % 2 == 0 ? Parity::even : Parity::odd;
  std::vector<ModuleDescriptor> mods =
      enumerate_irreducibles(P, par, job.tol);
  json out;
  out["count"] = mods.size();
  json arr = json::array();
  for (const ModuleDescriptor& d : mods)
    arr.push_back(descriptor_json(P, d, job.tol));
  out["modules"] = arr;
  return out;
}

json root_counts_json(const RootCounts& rc) {
  json r;
  r["inner"] = rc.inner;
  r["boundary"] = rc.boundary;
  r["outer"] = rc.outer;
  r["ascending"] = rc.ascending;
  return r;
}

json certificate_json(const ComplexPoly& F, const ComplexPoly& P) {
  json c;
  c["F"] = to_string(F);
  c["degree"] = F.degree();
  json checks;
  checks["re_F_nonneg_on_line"] = nonneg_on_line(re_line(F, Scalar(0)), Scalar(0));
  ComplexPoly FP = shift(F, Scalar(-1)) * shift(P, Scalar(-1));
  checks["re_FP_shifted_nonneg_on_line"] =
      nonneg_on_line(re_line(FP, Scalar(0)), Scalar(0));
  checks["exact_certificate"] = certificate_check_prop38(F, P);
  c["checks"] = checks;
  return c;
}

json decide_payload(const Verdict& v, const ComplexPoly& P) {
  json out;
  out["status"] = to_string(v.status);
  out["rationale"] = v.rationale;
  out["root_counts"] = root_counts_json(v.root_counts);
  json ev = json::object();
  if (v.trace) ev["trace"] = trace_json(*v.trace);
  if (v.certificate) ev["certificate"] = certificate_json(*v.certificate, P);
  out["evidence"] = ev;
  return out;
}

/* First difference-equation pair (alpha, -conj(alpha)) accepted over the
 * sorted root list. */
std::tuple<TraceFunctional, Scalar, Scalar> pick_petrov(const ComplexPoly& P,
                                                        double tol) {
  RootMultiset rs = roots(P, tol);
  std::exception_ptr last;
  for (const auto& e : rs.roots) {
    Scalar alpha = Scalar::inexact(e.value);
    Scalar beta = Scalar::inexact(-std::conj(e.value));
    try {
      return {petrov_trace(P, alpha, beta), alpha, beta};
    } catch (const std::exception&) {
      last = std::current_exception();
    }
  }
  if (last) std::rethrow_exception(last);
  throw input_error("trace: P has no roots to pair");
}

/* First admissible weight-function parameter lambda = |Re root| over the
 * real roots of P, smallest first. */
std::pair<TraceFunctional, double> pick_weight(const ComplexPoly& P,
                                               double tol) {
  RootMultiset rs = roots(P, tol);
  std::vector<double> lambdas;
  for (const auto& e : rs.roots) {
    if (std::abs(e.value.imag()) > 1e-7 * (1.0 + std::abs(e.value))) continue;
    double lambda = std::abs(e.value.real());
    bool seen = false;
    for (double l : lambdas) seen = seen || std::abs(l - lambda) <= 1e-9;
    if (!seen) lambdas.push_back(lambda);
  }
  std::sort(lambdas.begin(), lambdas.end());
  std::exception_ptr last;
  for (double lambda : lambdas) {
    try {
      return {weight_function_trace(P, lambda), lambda};
    } catch (const std::exception&) {
      last = std::current_exception();
    }
  }
  if (last) std::rethrow_exception(last);
  throw input_error("trace: P has no real root pair +-lambda");
}

json trace_payload(const ComplexPoly& P, const JobSpec& job) {
  json out;
  out["method"] = job.method;
  if (job.method == "quotient") {
    TraceBasis basis = build_basis(P);
    out["dimension"] = basis.dim();
    json red = json::array();
    for (int j = 0; j <= 2 * job.degree; ++j) {
      json entry;
      entry["power"] = j;
      entry["representative"] =
          to_string(basis.reduce(ComplexPoly::monomial(j)));
      red.push_back(entry);
    }
    out["reductions"] = red;
    return out;
  }
  if (job.method == "petrov") {
    auto [T, alpha, beta] = pick_petrov(P, job.tol);
    out["alpha"] = to_string(alpha);
    out["beta"] = to_string(beta);
    out["T1"] = to_string(trace_apply(T, ComplexPoly{Scalar(1)}));
    out["trace"] = trace_json(T);
    return out;
  }
  auto [T, lambda] = pick_weight(P, job.tol);
  out["lambda"] = lambda;
  out["T1"] = to_string(trace_apply(T, ComplexPoly{Scalar(1)}));
  out["trace"] = trace_json(T);
  return out;
}

json matrix_json(const Eigen::MatrixXcd& M) {
  json rows = json::array();
  for (int j = 0; j < M.rows(); ++j) {
    json row = json::array();
    for (int k = 0; k < M.cols(); ++k)
      row.push_back(json::array({M(j, k).real(), M(j, k).imag()}));
    rows.push_back(row);
  }
  return rows;
}

json gram_json(const GramReport& g) {
  json out;
  out["D"] = g.degree;
  out["min_eigenvalues"] =
      json::array({g.min_eigenvalues.first, g.min_eigenvalues.second});
  out["positive"] = g.positive;
  out["G1"] = matrix_json(g.G1);
  out["G2"] = matrix_json(g.G2);
  return out;
}

json gram_payload(const ComplexPoly& P, const JobSpec& job) {
  if (job.method == "quotient")
    throw input_error("gram: --method must be petrov or weight");
  json out;
  out["method"] = job.method;
  TraceFunctional T = job.method == "petrov"
                          ? std::get<0>(pick_petrov(P, job.tol))
                          : pick_weight(P, job.tol).first;
  out["trace"] = trace_json(T);
  GramReport g = gram_matrices(T, P, job.degree, 0.0);
  json gj = gram_json(g);
  for (auto& [key, value] : gj.items()) out[key] = value;
  return out;
}

json witness_payload(const ComplexPoly& P) {
  ComplexPoly F = nonunitarizability_witness(P);
  return certificate_json(F, P);
}

json report_payload(const ComplexPoly& P, const JobSpec& job) {
  json out;
  out["classify"] = classify_payload(P, job);
  Verdict v = decide_regular_unitarizability(P, job.tol, job.degree);
  out["decide"] = decide_payload(v, P);
  if (v.status == Status::Unitarizable && v.trace) {
    out["trace"] = trace_json(*v.trace);
    out["gram"] = gram_json(gram_matrices(*v.trace, P, job.degree, 0.0));
  } else if (v.status == Status::NotUnitarizable && v.certificate) {
    out["witness"] = certificate_json(*v.certificate, P);
  }
  return out;
}

/* ---------------- text rendering ---------------- */

void render_trace_text(std::ostream& os, const json& t, int indent = 0) {
  std::string pad(indent, ' ');
  os << pad << "trace: provenance " << t["provenance"].get<std::string>()
     << ", dimension " << t["dimension"].get<int>() << ", hermitian "
     << (t["hermitian"].get<bool>() ? "yes" : "no") << "\n"
     << pad << "values:";
  for (const auto& v : t["values"]) os << " " << v.get<std::string>();
  os << "\n";
}

void render_payload_text(std::ostream& os, const std::string& command,
                         const json& p) {
  if (command == "classify") {
    os << "modules: " << p["count"].get<std::size_t>() << "\n";
    for (const auto& m : p["modules"]) {
      os << "  " << m["weights"].get<std::string>() << " -- unitarizable: ";
      if (m["unitarizable"].is_null())
        os << "n/a";
      else
        os << (m["unitarizable"].get<bool>() ? "yes" : "no");
      os << " (" << m["reason"].get<std::string>() << ")\n";
    }
  } else if (command == "decide") {
    os << "status: " << p["status"].get<std::string>() << "\n"
       << "rationale: " << p["rationale"].get<std::string>() << "\n";
    const json& rc = p["root_counts"];
    os << "roots: inner " << rc["inner"].get<int>() << ", boundary "
       << rc["boundary"].get<int>() << ", outer " << rc["outer"].get<int>()
       << ", ascending " << (rc["ascending"].get<bool>() ? "yes" : "no")
       << "\n";
    if (p["evidence"].contains("trace"))
      render_trace_text(os, p["evidence"]["trace"]);
    if (p["evidence"].contains("certificate"))
      os << "certificate F = "
         << p["evidence"]["certificate"]["F"].get<std::string>() << "\n";
  } else if (command == "trace") {
    os << "method: " << p["method"].get<std::string>() << "\n";
    if (p.contains("dimension") && !p.contains("trace"))
      os << "dimension: " << p["dimension"].get<int>() << "\n";
    if (p.contains("reductions"))
      for (const auto& r : p["reductions"])
        os << "  x^" << r["power"].get<int>() << " -> "
           << r["representative"].get<std::string>() << "\n";
    if (p.contains("alpha"))
      os << "pair: (" << p["alpha"].get<std::string>() << ", "
         << p["beta"].get<std::string>() << ")\n";
    if (p.contains("lambda")) os << "lambda: " << p["lambda"].get<double>() << "\n";
    if (p.contains("trace")) render_trace_text(os, p["trace"]);
  } else if (command == "gram") {
    render_trace_text(os, p["trace"]);
    os << "D: " << p["D"].get<int>() << "\n"
       << "min eigenvalues: " << p["min_eigenvalues"][0].get<double>() << " "
       << p["min_eigenvalues"][1].get<double>() << "\n"
       << "positive: " << (p["positive"].get<bool>() ? "yes" : "no") << "\n";
  } else if (command == "witness") {
    os << "F = " << p["F"].get<std::string>() << "  (degree "
       << p["degree"].get<int>() << ")\n";
    for (const auto& [name, ok] : p["checks"].items())
      os << "  " << name << ": " << (ok.get<bool>() ? "pass" : "fail") << "\n";
  } else if (command == "report") {
    os << "== classify ==\n";
    render_payload_text(os, "classify", p["classify"]);
    os << "== decide ==\n";
    render_payload_text(os, "decide", p["decide"]);
    if (p.contains("trace")) {
      os << "== evidence trace ==\n";
      render_trace_text(os, p["trace"]);
    }
    if (p.contains("gram")) {
      os << "== evidence gram ==\n";
      os << "min eigenvalues: " << p["gram"]["min_eigenvalues"][0].get<double>()
         << " " << p["gram"]["min_eigenvalues"][1].get<double>() << "\n"
         << "positive: " << (p["gram"]["positive"].get<bool>() ? "yes" : "no")
         << "\n";
    }
    if (p.contains("witness")) {
      os << "== witness ==\n";
      render_payload_text(os, "witness", p["witness"]);
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"unitarizability toolkit for quantized Kleinian singularities"};
  app.require_subcommand(1);
  JobSpec job;
  const std::vector<std::string> commands = {"classify", "decide", "trace",
                                             "gram",     "witness", "report"};
  for (const std::string& name : commands) {
    CLI::App* sc = app.add_subcommand(name);
    sc->add_option("--coeffs", job.coeffs,
                   "coefficient list c0,c1,..., ascending degree");
    sc->add_option("--roots", job.roots_text, "root list r1,r2,...");
    sc->add_option("--leading", job.leading,
                   "leading coefficient for --roots (default 1)");
    sc->add_option("--degree", job.degree, "truncation degree (default 6)")
        ->check(CLI::Range(1, 64));
    sc->add_option("--tol", job.tol, "tolerance (default 1e-9)")
        ->check(CLI::PositiveNumber);
    sc->add_option("--method", job.method,
                   "trace construction: quotient | petrov | weight")
        ->check(CLI::IsMember({"quotient", "petrov", "weight"}));
    sc->add_flag("--json", job.json_out, "machine-readable output");
  }

  std::vector<const char*> argv;
  argv.push_back("apq");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    ComplexPoly P = input_polynomial(job);
    if (P.degree() < 1) throw input_error("polynomial must be nonconstant");
    json payload;
    if (command == "classify")
      payload = classify_payload(P, job);
    else if (command == "decide")
      payload = decide_payload(
          decide_regular_unitarizability(P, job.tol, job.degree), P);
    else if (command == "trace")
      payload = trace_payload(P, job);
    else if (command == "gram")
      payload = gram_payload(P, job);
    else if (command == "witness")
      payload = witness_payload(P);
    else
      payload = report_payload(P, job);

    if (job.json_out) {
      json doc;
      doc["command"] = command;
      doc["P"] = to_string(P);
      doc["n"] = P.degree();
      doc["sign_convention"] = sign_convention(P);
      for (auto& [key, value] : payload.items()) doc[key] = value;
      out << doc.dump(2) << "\n";
    } else {
      out << "P = " << to_string(P) << "  (degree " << P.degree()
          << ", sign convention " << sign_convention(P) << ")\n";
      render_payload_text(out, command, payload);
    }
    return 0;
  } catch (const input_error& e) {
    err << "error (" << command << "): " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    err << "numerical failure (" << command << "): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal failure (" << command << "): " << e.what() << "\n";
    return 3;
  }
}

}  // namespace apq
