#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "imnim/cli.hpp"
#include "json.hpp"

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "imnim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  std::istringstream in(input);
  const int status = imnim::cli::run(static_cast<int>(argv.size()), argv.data(), out, err, in);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("table") {
    const Run r = run({"table", "--p", "3", "--m", "2", "--rows", "14", "--format", "csv"});
    CHECK(r.status == 0);
    CHECK(r.out ==
          "n,a,b,delta\n0,0,0,0\n1,1,1,0\n2,2,2,0\n3,3,5,2\n4,4,6,2\n5,7,9,2\n6,8,12,4\n7,10,14,4\n"
          "8,11,15,4\n9,13,19,6\n10,16,22,6\n11,17,23,6\n12,18,26,8\n13,20,28,8\n");
    const Run j = run({"table", "--p", "1", "--m", "1", "--rows", "3", "--format", "json"});
    CHECK(nlohmann::json::parse(j.out).size() == 3);
    CHECK(run({"table", "--rows", "30000000"}).status == 3);
    CHECK(run({"table", "--format", "xml"}).status == 2);
  }

  TEST_CASE("classify") {
    Run r = run({"classify", "--p", "1", "--m", "1", "--pos", "1,3"});
    CHECK(r.status == 0);
    CHECK(r.out == "N; winning move: remove 1 from larger pile → (1,2)\n");
    r = run({"classify", "--p", "1", "--m", "1", "--pos", "1,3", "--pending", "pile1:1", "--credit", "0"});
    CHECK(r.out == "P (clause II)\n");
    r = run({"classify", "--p", "1", "--m", "1", "--replay", "2,3;pile0:1"});
    CHECK(r.out == "P (clause II)\n");
    r = run({"classify", "--p", "3", "--m", "2", "--pos", "20,27"});
    CHECK(r.out == "N; winning move: remove 3 from smaller pile → (17,27)\n");
    r = run({"classify", "--p", "1", "--m", "2", "--pos", "1,3", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("verdict").at("clause") == "I");
    CHECK(j.at("staticClass").at("kind") == "NonDynamicP");
  }

  TEST_CASE("classify rejects bad history") {
    CHECK(run({"classify", "--pos", "1,3", "--pending", "pile1:1", "--credit-other", "0", "--p", "2"}).status == 2);
    CHECK(run({"classify", "--p", "1", "--replay", "2,3;pile0:1;pile1:1"}).status == 2);
    CHECK(run({"classify", "--pos", "1;3"}).status == 2);
    CHECK(run({"classify"}).status == 2);
    CHECK(run({"classify", "--p", "0", "--pos", "1,3"}).status == 2);
  }

  TEST_CASE("verify") {
    Run r = run({"verify", "--p", "2", "--m", "1", "--bound", "25"});
    CHECK(r.status == 0);
    CHECK(r.out.find("0 mismatches") != std::string::npos);
    CHECK(run({"verify", "--bound", "100"}).status == 3);
    r = run({"verify", "--bound", "6", "--format", "json"});
    CHECK(nlohmann::json::parse(r.out).at("mismatches").empty());
  }

  TEST_CASE("beatty") {
    const Run r = run({"beatty", "--p", "3", "--K", "2000", "--format", "json"});
    CHECK(r.status == 0);
    CHECK(nlohmann::json::parse(r.out).at("ok") == true);
  }

  TEST_CASE("play") {
    const Run r = run({"play", "--p", "2", "--m", "1", "--pos", "2,2"}, "0 1\nq\n");
    CHECK(r.status == 0);
    CHECK(r.out.find("engine: ") != std::string::npos);
    const Run win = run({"play", "--pos", "0,1", "--engine", "first"});
    CHECK(win.out.find("Engine wins.") != std::string::npos);
  }

  TEST_CASE("usage") {
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"--help"}).status == 0);
  }

  TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"verify", "--p", "3", "--m", "2", "--bound", "12", "--format", "json"};
    CHECK(run(args).out == run(args).out);
  }
}
