#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "semitall/certifier.hpp"
#include "semitall/cli.hpp"
#include "semitall/tensor_io.hpp"

using namespace semitall;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("semitall_test_" + name);
}

}  // namespace

TEST_CASE("alpha") {
  const Run r = run({"alpha", "--m", "5", "--n", "27"});
  REQUIRE(r.code == kExitOk);
  const json d = r.doc();
  CHECK(d["command"] == "alpha");
  CHECK(d["alpha"] == 105);
  CHECK(d["p"] == 105);
  CHECK(d["alpha_lt_p"] == false);

  const Run plain = run({"alpha", "--m", "3", "--n", "5", "--format", "plain"});
  CHECK(plain.out == "alpha(3,5) = 3, p = 9 (alpha < p)\n");
}

TEST_CASE("classify") {
  const json d = run({"classify", "--m", "7", "--n", "16"}).doc();
  CHECK(d["verdict"] == "PLURAL");
  CHECK(d["reasons"] == json::array({"BIT_DISJOINT_FAIL"}));
  CHECK(d["trank"] == json::array({91, 92}));

  const json tall = run({"classify", "--m", "3", "--n", "3", "--p", "8"}).doc();
  CHECK(tall["verdict"] == "SINGLE");
  CHECK(run({"classify", "--m", "3", "--n", "3", "--p", "4"}).code == kExitDomain);
}

TEST_CASE("argument errors") {
  CHECK(run({"alpha", "--m", "3", "--n", "3", "--bogus"}).code == kExitDomain);
  CHECK(run({"alpha", "--n", "3"}).code == kExitDomain);
  CHECK(run({"alpha", "--m", "3", "--n", "3", "--format", "csv"}).code == kExitDomain);
  CHECK(run({"table", "--m", "4", "--n", "6", "--format", "csv"}).code == kExitOk);
  CHECK(run({"experiment", "sideways", "--m", "3", "--n", "3"}).code == kExitDomain);
  CHECK(run({}).code == kExitDomain);
}

TEST_CASE("table csv") {
  const Run r = run({"table", "--m", "4", "--n", "5", "--format", "csv"});
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 1 + 3 + 2);
}

TEST_CASE("certify from a saved input file") {
  const auto path = temp_file("certify_input.json");
  const Run gen = run({"certify", "--m", "3", "--n", "5", "--seed", "4", "--save-input", path.string()});
  REQUIRE(gen.code == kExitOk);
  CHECK(gen.doc()["verdict"] == "RANK_GT_P");

  const Run again = run({"certify", "--input", path.string(), "--seed", "4"});
  REQUIRE(again.code == kExitOk);
  CHECK(again.doc()["verdict"] == gen.doc()["verdict"]);
  CHECK(again.doc()["dim_U"] == gen.doc()["dim_U"]);
  CHECK(again.doc()["psi_vectors"] == gen.doc()["psi_vectors"]);

  const Tensor3 T = load_tensor(path);
  CHECK(T.shape() == Tensor3::Shape{5, 9, 3});
  std::filesystem::remove(path);

  CHECK(run({"certify", "--input", path.string()}).code == kExitDomain);
}

TEST_CASE("same seed, same output") {
  auto strip = [](const Run& r) {
    json d = r.doc();
    d.erase("elapsed_seconds");
    return d.dump();
  };
  const std::vector<std::string> args = {"experiment", "global", "--m", "3", "--n", "3", "--trials", "5", "--seed", "9"};
  const Run a = run(args), b = run(args);
  CHECK(strip(a) == strip(b));
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--jobs", "2"});
  CHECK(strip(a) == strip(run(threaded)));

  const std::vector<std::string> solve = {"solve", "--m", "3", "--n", "4", "--eps", "0.5", "--seed", "2"};
  CHECK(strip(run(solve)) == strip(run(solve)));
}

TEST_CASE("tensor file round trip") {
  const Tensor3 T = random_tensor(4, 5, 3, 21);
  CHECK(parse_tensor(serialize_tensor(T)) == T);
  const auto path = temp_file("roundtrip.json");
  save_tensor(path, T);
  CHECK(load_tensor(path) == T);
  std::filesystem::remove(path);
  CHECK_THROWS(parse_tensor(R"({"shape":[2,2,2],"data":[1,2,3]})"));
  CHECK_THROWS(parse_tensor(R"({"shape":[2,2],"data":[1,2,3,4]})"));
  CHECK_THROWS(parse_tensor("not json"));
}
