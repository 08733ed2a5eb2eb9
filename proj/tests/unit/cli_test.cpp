#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "medial/cli.hpp"
#include "medial/medial.hpp"
#include "oracle.hpp"

using namespace medial;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("medial_cli_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("documented exit codes") {
  CHECK(run({"check", "(xy)(zt)=(xz)(yt)", "--variety", "sigma", "--group", "2,2,1,0,0,1"}).code == 0);
  CHECK(run({"check", "x(xy)=y", "--k", "2,4"}).code == 0);
  CHECK(run({"represent", "0,1,0,2"}).code == 1);
  CHECK(run({"basis-status", "--group", "6,6,1,0,0,1"}).code == 1);
  CHECK(run({"basis-status", "--group", "2,2,1,0,0,1"}).code == 0);
}

TEST_CASE("errors exit 2 with one line") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {},
           {"nope"},
           {"check", "xy="},
           {"check", "x=x"},
           {"check", "x=x", "--k", "2", "--method", "criterion"},
           {"check", "x=x", "--variety", "sigma", "--k", "1"},
           {"derive", "(xy)(zt)", "--swap", "LL,LR"},
           {"derive", "(xy)(zt)"},
           {"represent", "1,2"},
           {"spectrum", "--s", "2,2", "--row", "1,2"},
           {"basis-status", "--group", "2,2,1,0,1,0"},
           {"verify-trace", "/nonexistent/trace.json"},
           {"search", "x=x", "--rules", "B9", "--depth", "1"},
           {"enumerate", "--report", "interchange"},
           {"enumerate", "--rank", "40", "--report", "interchange"},
       }) {
    CAPTURE(args.empty() ? std::string("<none>") : args[0]);
    const Outcome o = run(args);
    CHECK(o.code == 2);
    CHECK(o.out.empty());
    CHECK(o.err.rfind("error: ", 0) == 0);
    CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
  }
}

TEST_CASE("help exits 0") {
  const Outcome o = run({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("basis-status") != std::string::npos);
  CHECK(run({"derive", "--help"}).out.find("--swap") != std::string::npos);
}

TEST_CASE("check verdicts match the library") {
  std::mt19937_64 rng(31);
  const GroupSpec g63 = GroupSpec::parse("6,3,1,0,0,1");
  for (int i = 0; i < 150; ++i) {
    const Identity e = oracle::random_identity(rng, 6, 3);
    const std::string text = to_string(e);
    CAPTURE(text);
    CHECK(run({"check", text, "--variety", "sigma"}).code == (in_sigma(e, GroupSpec::klein()) ? 0 : 1));
    CHECK(run({"check", text, "--variety", "sigma", "--group", "6,3,1,0,0,1"}).code == (in_sigma(e, g63) ? 0 : 1));
    CHECK(run({"check", text, "--k", "2,4"}).code == (oracle_in_sigma_K(e, OperationSelector{2, 4}) ? 0 : 1));
    CHECK(run({"check", text, "--k", "1,2,3", "--method", "criterion"}).code ==
          (criterion_in_sigma_K(e, OperationSelector{1, 2, 3}) ? 0 : 1));
  }
}

TEST_CASE("represent and lambda match the library") {
  for (std::int64_t a = 0; a <= 3; ++a)
    for (std::int64_t b = 0; b <= 3; ++b)
      for (std::int64_t c = 0; c <= 3; ++c)
        for (std::int64_t d = 0; d <= 3; ++d) {
          const TotalColor q{a, b, c, d};
          const Outcome o = run({"represent", q.str(), "--witness"});
          REQUIRE(o.code == (is_representable(q) ? 0 : 1));
          if (o.code == 0) {
            const std::string tree = o.out.substr(o.out.find('\n') + 1);
            REQUIRE(to_string(construct_tree(q)) + "\n" == tree);
            const Outcome l = run({"lambda", tree.substr(0, tree.size() - 1)});
            REQUIRE(l.out.rfind(q.str() + "\t", 0) == 0);
          }
        }
}

TEST_CASE("compress and sigma-term match the library") {
  for (const char* w : {"", "a", "ab", "abbb", "aab", "bab", "baaa", "bbba"}) {
    const Signature s = Signature::parse(w);
    if (*w) CHECK(run({"compress", w}).code == (is_compressed(s) ? 0 : 1));
    CHECK(run({"sigma-term", w, "--var", "y"}).out == to_string(build_sigma_term(s, "y")) + "\n");
  }
}

TEST_CASE("derive emits a trace that verify-trace accepts") {
  const Outcome d = run({"derive", "(((xy)z)t)u", "--swap", "LLR,R"});
  REQUIRE(d.code == 0);
  const DerivationTrace tr = parse_trace(d.out);
  const VerifyResult v = verify_trace(tr, mutation_laws());
  CHECK(v.ok);
  CHECK(to_string(v.final) == "(((xy)u)t)z");
  CHECK(trace_to_string(derive_interchange({parse_term("(((xy)z)t)u"), Position::parse("LLR"), Position::parse("R")})) +
            "\n" ==
        d.out);

  const auto file = temp_file("trace.json", d.out);
  Outcome o = run({"verify-trace", file.string()});
  CHECK(o.code == 0);
  CHECK(o.out == "ok\t(((xy)u)t)z\n");

  nlohmann::json j = nlohmann::json::parse(d.out);
  j["steps"][0]["rule"] = "M2";
  const auto bad = temp_file("bad.json", j.dump());
  o = run({"verify-trace", bad.string()});
  CHECK(o.code == 1);
  CHECK(o.out.rfind("failed at step 0", 0) == 0);
}

TEST_CASE("search") {
  Outcome o = run({"search", "(xy)(zt)=(tz)(yx)", "--rules", "M", "--depth", "2"});
  CHECK(o.code == 0);
  CHECK(parse_trace(o.out).steps.size() == 2);
  o = run({"search", "xy=yx", "--rules", "M", "--depth", "3"});
  CHECK(o.code == 1);
  o = run({"search", "x(xy)=y", "--rules", "B24", "--depth", "1"});
  CHECK(o.code == 0);
  const auto file = temp_file("b24.json", o.out);
  CHECK(run({"verify-trace", file.string(), "--rules", "B24"}).code == 0);
  CHECK(run({"verify-trace", file.string()}).code == 1);
}

TEST_CASE("color and coeffs output") {
  CHECK(run({"color", "(xy)(zt)"}).out == "x\tLL\t1\ny\tLR\tgamma\nz\tRL\tgamma\nt\tRR\t1\n");
  CHECK(run({"color", "x"}).out == "x\t-\t1\n");
  CHECK(run({"coeffs", "x(xy)"}).out == "x\talpha + gamma\ny\t1\n");
  CHECK(run({"coeffs", "xy", "--group", "3,1,1,0,2,0"}).out == "x\t(1,0)\ny\t(2,0)\n");
}

TEST_CASE("quad-form output round-trips") {
  const Outcome o = run({"quad-form", "(x(yz))(t(uv))"});
  REQUIRE(o.code == 0);
  const nlohmann::json j = nlohmann::json::parse(o.out);
  const DerivationTrace tr = trace_from_json(j["trace"]);
  const VerifyResult v = verify_trace(tr, mutation_laws());
  CHECK(v.ok);
  CHECK(to_string(v.final) == j["term"]);
  const Term out = parse_term(j["term"].get<std::string>());
  CHECK(is_quad_shape(subterm_at(out, Position::parse(j["at"].get<std::string>()))));
  CHECK(to_string(to_quad_form(parse_term("(x(yz))(t(uv))")).term) == j["term"]);
}

TEST_CASE("spectrum and basis-status JSON") {
  Outcome o = run({"spectrum", "--s", "2,2", "--row", "-1,1,1,0"});
  REQUIRE(o.code == 0);
  nlohmann::json j = nlohmann::json::parse(o.out);
  CHECK(j == to_json(eigenvalues(MulticirculantSpec::parse("2,2", "-1,1,1,0"))));
  o = run({"basis-status", "--group", "6,4,1,0,0,1"});
  j = nlohmann::json::parse(o.out);
  const GroupSpec g = GroupSpec::parse("6,4,1,0,0,1");
  CHECK(j == to_json(interchange_basis_decision(g), g));
  CHECK(o.code == 0);
}

TEST_CASE("model-check") {
  const std::string table = MEDIAL_TEST_DATA "/second_projection.txt";
  CHECK(run({"model-check", "--table", table, "x(xy)=y"}).code == 0);
  CHECK(run({"model-check", "--table", table, "(xy)(zt)=(ty)(zx)"}).code == 1);
  const auto bad = temp_file("bad_table.txt", "2\n0 5\n1 1\n");
  CHECK(run({"model-check", "--table", bad.string(), "x=x"}).code == 2);
}

TEST_CASE("enumerate reports") {
  Outcome o = run({"enumerate", "--report", "closure"});
  CHECK(o.code == 0);
  CHECK(nlohmann::json::parse(o.out) == to_json(check_closure()));
  o = run({"enumerate", "--rank", "5", "--report", "interchange"});
  CHECK(o.code == 0);
  nlohmann::json j = nlohmann::json::parse(o.out);
  CHECK(j["failures"] == 0);
  CHECK(j["shapes"] == 1 + 1 + 2 + 5 + 14);
  o = run({"enumerate", "--rank", "6", "--report", "representability"});
  CHECK(o.code == 0);
  j = nlohmann::json::parse(o.out);
  CHECK(j["sets_equal"] == true);
  CHECK(j["achieved"] == 30);
}
