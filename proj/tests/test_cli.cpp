#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "apq/cli.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
  json doc;  // parsed stdout when JSON was requested and produced
};

RunResult run(std::vector<std::string> args, bool parse_json = true) {
  std::ostringstream out, err;
  RunResult r;
  r.code = apq::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (parse_json && r.code == 0 && !r.out.empty() && r.out[0] == '{')
    r.doc = json::parse(r.out);
  return r;
}

}  // namespace

TEST_CASE("decide command maps verdicts to exit 0") {
  RunResult pos = run({"decide", "--coeffs", "0.25,0,-1", "--json"});
  REQUIRE(pos.code == 0);
  CHECK(pos.doc["command"] == "decide");
  CHECK(pos.doc["P"] == "1/4,0,-1");
  CHECK(pos.doc["n"] == 2);
  CHECK(pos.doc["sign_convention"] == 1);
  CHECK(pos.doc["status"] == "Unitarizable");
  CHECK(pos.doc["root_counts"]["inner"] == 2);
  CHECK(pos.doc["evidence"].contains("trace"));
  CHECK(pos.doc["evidence"]["trace"]["hermitian"] == true);

  RunResult neg = run({"decide", "--coeffs", "4,0,-1", "--json"});
  REQUIRE(neg.code == 0);
  CHECK(neg.doc["status"] == "NotUnitarizable");
  CHECK(neg.doc["evidence"].contains("certificate"));
  CHECK(neg.doc["evidence"]["certificate"]["checks"]["exact_certificate"] ==
        true);

  // Unknown is a verdict, not an error.
  RunResult unk = run({"decide", "--coeffs", "1,0,-1", "--json"});
  REQUIRE(unk.code == 0);
  CHECK(unk.doc["status"] == "Unknown");
  CHECK(unk.doc["root_counts"]["boundary"] == 2);
}

TEST_CASE("classify lists half-infinite modules plus the symbolic family") {
  RunResult r = run({"classify", "--coeffs", "0.25,0,-1", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.doc["count"] == 5);
  int lowest = 0, highest = 0, family = 0, unitary = 0;
  for (const auto& m : r.doc["modules"]) {
    std::string kind = m["kind"];
    if (kind == "lowest_weight") ++lowest;
    if (kind == "highest_weight") ++highest;
    if (kind == "family") {
      ++family;
      CHECK(m["unitarizable"].is_null());
    } else if (m["unitarizable"] == true) {
      ++unitary;
    }
  }
  CHECK(lowest == 2);
  CHECK(highest == 2);
  CHECK(family == 1);
  CHECK(unitary == 4);
}

TEST_CASE("trace command: quotient, petrov, and weight methods") {
  RunResult q = run({"trace", "--coeffs", "0.25,0,-1", "--method", "quotient",
                     "--degree", "2", "--json"});
  REQUIRE(q.code == 0);
  CHECK(q.doc["dimension"] == 1);
  CHECK(q.doc["reductions"][2]["representative"] == "-1/4");
  CHECK(q.doc["reductions"][4]["representative"] == "5/16");

  RunResult p = run({"trace", "--coeffs", "0.25,0,-1", "--method", "petrov",
                     "--json"});
  REQUIRE(p.code == 0);
  CHECK(p.doc["trace"]["provenance"] == "petrov");
  CHECK(p.doc["trace"]["hermitian"] == true);
  CHECK(p.doc["trace"]["values"].size() == 1);
  CHECK(p.doc["T1"] == "0.5");

  RunResult w = run({"trace", "--coeffs", "0.25,0,-1", "--method", "weight",
                     "--json"});
  REQUIRE(w.code == 0);
  CHECK(w.doc["trace"]["provenance"] == "weight");
  CHECK(w.doc["trace"]["resolved_sign"] == 1);
  CHECK(w.doc["lambda"] == doctest::Approx(0.5));
  CHECK(w.doc["T1"] == "1");
}

TEST_CASE("gram command reports matrices and positivity") {
  RunResult r = run({"gram", "--coeffs", "0.25,0,-1", "--method", "petrov",
                     "--degree", "3", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.doc["positive"] == true);
  CHECK(r.doc["min_eigenvalues"][0] == doctest::Approx(0.0655939).epsilon(1e-4));
  CHECK(r.doc["min_eigenvalues"][1] == doctest::Approx(0.0902533).epsilon(1e-4));
  CHECK(r.doc["G1"].size() == 4);
  CHECK(r.doc["G1"][0].size() == 4);
  CHECK(r.doc["G1"][0][0].size() == 2);

  CHECK(run({"gram", "--coeffs", "0.25,0,-1", "--method", "quotient"}).code ==
        2);
}

TEST_CASE("witness command emits a checked certificate") {
  RunResult r = run({"witness", "--coeffs", "4,0,-1", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.doc["F"] == "1/4");
  CHECK(r.doc["checks"]["re_F_nonneg_on_line"] == true);
  CHECK(r.doc["checks"]["re_FP_shifted_nonneg_on_line"] == true);
  CHECK(r.doc["checks"]["exact_certificate"] == true);

  RunResult quartic = run({"witness", "--coeffs", "36,0,-13,0,1", "--json"});
  REQUIRE(quartic.code == 0);
  CHECK(quartic.doc["checks"]["exact_certificate"] == true);

  CHECK(run({"witness", "--coeffs", "0.25,0,-1"}).code == 2);
}

TEST_CASE("report bundles classify, decide, and the matching evidence") {
  RunResult pos = run({"report", "--coeffs", "0.25,0,-1", "--json"});
  REQUIRE(pos.code == 0);
  CHECK(pos.doc.contains("classify"));
  CHECK(pos.doc["decide"]["status"] == "Unitarizable");
  CHECK(pos.doc.contains("trace"));
  CHECK(pos.doc["gram"]["positive"] == true);
  CHECK_FALSE(pos.doc.contains("witness"));

  RunResult neg = run({"report", "--coeffs", "4,0,-1", "--json"});
  REQUIRE(neg.code == 0);
  CHECK(neg.doc["decide"]["status"] == "NotUnitarizable");
  CHECK(neg.doc["witness"]["checks"]["exact_certificate"] == true);
  CHECK_FALSE(neg.doc.contains("gram"));
}

TEST_CASE("reports are byte-stable across runs") {
  for (const char* coeffs : {"0.25,0,-1", "4,0,-1"}) {
    RunResult a = run({"report", "--coeffs", coeffs, "--json"}, false);
    RunResult b = run({"report", "--coeffs", coeffs, "--json"}, false);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("root-list input builds the same polynomial as coefficients") {
  RunResult via_roots =
      run({"decide", "--roots", "2,-2", "--leading", "-1", "--json"}, false);
  RunResult via_coeffs = run({"decide", "--coeffs", "4,0,-1", "--json"}, false);
  REQUIRE(via_roots.code == 0);
  CHECK(via_roots.out == via_coeffs.out);
}

TEST_CASE("input problems exit 2, numerical failures exit 3") {
  CHECK(run({"decide", "--coeffs", "junk"}).code == 2);
  CHECK(run({"decide"}).code == 2);
  CHECK(run({"decide", "--coeffs", "1,1", "--roots", "1"}).code == 2);
  CHECK(run({"decide", "--coeffs", "5"}).code == 2);          // constant
  CHECK(run({"decide", "--coeffs", "1,1"}).code == 2);        // not in R[ix]
  CHECK(run({"decide", "--coeffs", "1,0,-1", "--method", "bogus"}).code == 2);
  CHECK(run({"decide", "--coeffs", "1,0,-1", "--degree", "0"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK_FALSE(run({"decide", "--coeffs", "junk"}).err.empty());

  // Neither sign of (x^2+1)(1/4-x^2) works on the imaginary axis: the
  // weight-function construction fails numerically, not on input shape.
  CHECK(run({"trace", "--coeffs", "1/4,0,-3/4,0,-1", "--method", "weight"})
            .code == 3);
}

TEST_CASE("help text names the subcommands") {
  RunResult r = run({"--help"}, false);
  CHECK(r.code == 0);
  for (const char* name :
       {"classify", "decide", "trace", "gram", "witness", "report"})
    CHECK(r.out.find(name) != std::string::npos);
}
