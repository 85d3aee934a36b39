#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run dlat(const std::string& args) {
  Run r;
  std::string cmd = std::string(DLAT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// The last line of verify/check/compute output is a JSON record.
nlohmann::json last_json(const std::string& out) {
  auto end = out.find_last_not_of('\n');
  auto start = out.rfind('\n', end);
  return nlohmann::json::parse(out.substr(start == std::string::npos ? 0 : start + 1, end - start));
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t c = 0;
  for (auto i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("cli: verify prints both sides and exits 0") {
  auto r = dlat("verify opd-gl q=2 n=3");
  CHECK(r.code == 0);
  auto j = last_json(r.out);
  CHECK(j["computed"] == -64);  // [DERIVED] -q^{n(n-1)}
  CHECK(j["pass"] == true);
  CHECK(last_json(dlat("verify hyperforest n=4").out)["computed"] == -2);
  CHECK(last_json(dlat("verify solomon q=2 n=3").out)["computed"]["mobius"] == -8);  // [DERIVED] -q^{C(n,2)}
}

TEST_CASE("cli: exit codes") {
  CHECK(dlat("suite --scope bogus").code == 2);
  CHECK(dlat("verify no-such-identity").code == 2);
  CHECK(dlat("verify opd-gl q=6 n=2").code == 2);
  CHECK(dlat("build boolean:n=0").code == 2);
  CHECK(dlat("build cube:n=3").code == 2);
  CHECK(dlat("build boolean:n=3").code == 0);
  // a failing property check exits 1 and names the witness
  auto r = dlat("check --spec json:" DLAT_DATA_DIR "/figure5.json --property EX");
  CHECK(r.code == 1);
  auto j = last_json(r.out);
  CHECK(j["holds"] == false);
  CHECK(j["witness"]["y"] == "e");
  CHECK(dlat("check --spec boolean:n=3 --property UNIQUE").code == 0);
}

TEST_CASE("cli: export") {
  auto dot = dlat("export --spec boolean:n=2 --object base --format dot");
  CHECK(dot.code == 0);
  CHECK(count(dot.out, "->") == 4);
  auto pd = nlohmann::json::parse(dlat("export --spec subspace:q=2,n=2 --object PD").out);
  CHECK(pd["elements"].size() == 8);
  auto h = nlohmann::json::parse(dlat("export --spec boolean:n=2 --object OPD --proper --stat homology").out);
  CHECK(h["betti"] == nlohmann::json({{"1", 1}}));
}

TEST_CASE("cli: compute") {
  auto r = dlat("compute --spec boolean:n=3 --object PD --proper --stat euler");
  CHECK(r.code == 0);
  CHECK(last_json(r.out)["value"] == 0);  // [DERIVED] proper part of PD(B_n) is acyclic
  CHECK(dlat("compute --spec boolean:n=3 --object XX --stat euler").code == 2);
  CHECK(dlat("suite --scope fast").code == 0);
}
