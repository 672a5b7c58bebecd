#include <sstream>

#include "cymod_cli/cli.hpp"
#include "doctest.h"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cymod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) v.push_back(l);
  return v;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("group verification") {
    auto r = run({"groups", "verify"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    CHECK(ls.size() == 9);
    for (const auto& l : ls) CHECK(contains(l, "\"ok\":true"));
    auto one = run({"groups", "verify", "--group", "gamma1_7"});
    CHECK(lines(one.out).size() == 1);
  }

  TEST_CASE("form commands") {
    auto r = run({"forms", "check", "--form", "h8"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"mismatches\":0"));
    auto ap = run({"forms", "ap", "--form", "h8", "--pmax", "13"});
    CHECK(ap.code == 0);
    CHECK(contains(ap.out, "\"p\":5"));
    CHECK(run({"forms", "qexp", "--form", "h7", "--prec", "20"}).code == 0);
    CHECK(run({"forms", "check", "--form", "h99"}).code == 2);
  }

  TEST_CASE("surface commands") {
    auto r = run({"surface", "count", "--family", "g4", "--pmin", "5", "--pmax", "13", "--csv"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(contains(ls[0], "family,p,total"));
    CHECK(contains(ls[1], "g4_legendre,5,120,20,-6"));
    auto scan = run({"surface", "scan", "--family", "g62", "--p", "13"});
    CHECK(scan.code == 0);
    CHECK(contains(scan.out, "I6"));
    auto bad = run({"surface", "count", "--family", "g4", "--p", "3"});
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "unsupported-characteristic"));
    CHECK(run({"surface", "count", "--family", "nope", "--p", "5"}).code == 2);
    CHECK(run({"surface", "count", "--bogus"}).code == 2);
  }

  TEST_CASE("pretty output") {
    auto r = run({"surface", "count", "--family", "g62", "--pmin", "5", "--pmax", "20", "--pretty"});
    CHECK(r.code == 0);
    CHECK_FALSE(contains(r.out, "{"));
    CHECK(contains(r.out, "family"));
  }

  TEST_CASE("thread count does not change output") {
    auto a = run({"surface", "count", "--family", "g8_412", "--pmin", "5", "--pmax", "80", "--threads", "1"});
    auto b = run({"surface", "count", "--family", "g8_412", "--pmin", "5", "--pmax", "80", "--threads", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("three-fold series") {
    auto r = run({"l3fold", "series", "--family", "g62", "--n", "20"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"coefficients\":[1,"));
    auto eul = run({"l3fold", "euler", "--family", "g4", "--p", "13"});
    CHECK(eul.code == 0);
    CHECK(run({"l3fold", "series", "--family", "g62", "--n", "20", "--curve", "1,2"}).code == 1);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
  }
}
