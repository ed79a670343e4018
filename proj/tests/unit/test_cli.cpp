#include <doctest.h>

#include <sstream>

#include "reflekt/cli.hpp"

using namespace reflekt;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "reflekt");
  std::vector<char *> argv;
  for (auto &a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  CHECK(run({"verify", "shephard-todd", "--group", "G(4,2,2)"}).code == cli::kPass);
  CHECK(run({"verify", "main", "--group", "C6", "--sigma", "2"}).code == cli::kUsage);
  CHECK(run({"verify", "nonesuch", "--group", "C6"}).code == cli::kUsage);
  CHECK(run({"verify", "main", "--group", "G(6,5,2)"}).code == cli::kUsage);
  CHECK(run({"verify", "main", "--group", "C6", "--normal", "C_4"}).code == cli::kUsage);
  CHECK(run({"verify", "cyclic", "--group", "G(4,2,2)"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"sweep", "cyclic", "--cap", "0"}).code == cli::kPass);
  CHECK(run({"sweep", "cyclic", "--cap", "99"}).code == cli::kUsage);
  CHECK(run({"sweep", "imprimitive", "--cap", "7"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kPass);
}

TEST_CASE("verify streams JSON lines") {
  Result r = run({"verify", "shephard-todd", "--group", "G(4,2,2)"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["pass"] == true);
  CHECK(j["rhs"] == "q^2 + 6q + 9");

  r = run({"verify", "main", "--group", "G(6,1,2)", "--normal", "(C_3)^2", "--sigma", "all"});
  CHECK(r.code == cli::kPass);
  std::istringstream lines(r.out);
  int n = 0;
  for (std::string line; std::getline(lines, line); ++n) CHECK(nlohmann::json::parse(line)["pass"] == true);
  CHECK(n == 2);
}

TEST_CASE("the F4 triple") {
  Result r = run({"verify", "numerology", "--group", "g28", "--normal", "short-roots", "--sigma", "1"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("(1,5,3,3)+(0,0,4,8)=(1,5,7,11); (2,6,4,4)*(0,0,1,2)=(0,0,4,8); "
                   "(2,6,4,4)*(1,1,2,3)=(2,6,8,12)") != std::string::npos);
}

TEST_CASE("case (d) fake tensor: literal form fails past s = a") {
  Result r = run({"verify", "fake-tensor", "--group", "G(4,2,2)", "--normal", "G(2,1,2)", "--sigma", "1"});
  CHECK(r.code == cli::kPass);
  r = run({"verify", "fake-tensor", "--group", "G(4,2,2)", "--normal", "G(2,1,2)", "--sigma", "3"});
  CHECK(r.code == cli::kFail);
  CHECK(r.out.find("\"identity\":\"fake-tensor-corrected\",\"lhs\"") != std::string::npos);
}

TEST_CASE("table2 against the golden file") {
  Result r = run({"table2"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("| 7 | 6,8 | 1,2 | 6,16 | 11,1 | 6,16 | 17,17 | (qt+11t+6)(qt+t+16) |") != std::string::npos);
}

TEST_CASE("other subcommands") {
  Result r = run({"info", "--group", "g15"});
  CHECK(r.code == cli::kPass);
  CHECK(nlohmann::json::parse(r.out)["order"] == 288);
  r = run({"normals", "--group", "G(4,2,2)"});
  CHECK(r.code == cli::kPass);
  CHECK(nlohmann::json::parse(r.out)["complete"] == true);
  r = run({"exponents", "--group", "g15", "--normal", "g12", "--sigma", "13"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["e_N_V"] == std::vector<int>{11, 1});
  CHECK(j["e_G_U"] == std::vector<int>{0, 22});
}

TEST_CASE("sweep plans") {
  auto plan = cli::cyclic_plan(12);
  CHECK(plan.groups.size() == 12);
  CHECK(plan.tasks.size() == 35);
  auto reps = cli::run_plan(cli::cyclic_plan(6));
  for (auto const &task : reps)
    for (auto const &r : task) CHECK(r.pass);
}

}
