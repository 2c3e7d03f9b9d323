#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>
#include "cyops/cyops.hpp"

using namespace cyops;

namespace {

struct Run {
  int status;
  std::string out;
};

Run cyops_run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(CYOPS_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

nlohmann::json json_of(const std::string& args) {
  Run r = cyops_run(args + " --json");
  REQUIRE(r.status == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("lambert prints the integral expansion") {
  Run r = cyops_run("lambert R1 --ell 4 --depth 5");
  CHECK(r.status == 0);
  CHECK(r.out.find("Y_1 (ell = 4): 768, -136800, 35597568, -5313408000, -6059212935936") != std::string::npos);
  Run r3 = cyops_run("lambert R3 --depth 2");
  CHECK(r3.out.find("Y_1 (ell = 4): 1485, 9853515/8") != std::string::npos);
  Run q = cyops_run("lambert quintic --depth 3");
  CHECK(q.out.find("Y_1 (ell = 3): 575, 121850, 63441275") != std::string::npos);
}

TEST_CASE("analyze report has the documented keys") {
  auto j = json_of("analyze quintic --depth 60 --truncation 20");
  for (const char* k : {"operator", "verdict", "normal_form", "lambert", "galois", "params", "version"}) CHECK(j.contains(k));
  CHECK(j["verdict"]["cy_type"] == true);
  CHECK(j["verdict"]["N"]["N"] == "1");
  CHECK(j["verdict"]["irreducibility"] == "not checked");
  CHECK(j["galois"]["classification"] == "Sp4-heuristic");
  CHECK(j["params"]["depth"] == 60);
  CHECK(j["lambert"][0]["coefficients"][0] == "575");
  CHECK(j["normal_form"]["q"]["shift"] == 1);
  CHECK(j["normal_form"]["q"]["coefficients"][1] == "770");
}

TEST_CASE("output is deterministic") {
  Run a = cyops_run("analyze E_tilde --json --depth 40 --truncation 15");
  Run b = cyops_run("analyze E_tilde --json --depth 40 --truncation 15");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(cyops_run("yinv R2 --truncation 8").out == cyops_run("yinv R2 --truncation 8").out);
}

TEST_CASE("exit codes") {
  CHECK(cyops_run("frobnicate quintic").status == 2);
  Run bad = cyops_run("flag \"T^4 - z*\"", true);
  CHECK(bad.status == 2);
  CHECK(bad.out.find("position") != std::string::npos);
  CHECK(cyops_run("qcoord").status == 2);
  CHECK(cyops_run("equiv quintic R1").status == 0);
  CHECK(cyops_run("equiv quintic R1 --strict").status == 1);
  CHECK(cyops_run("equiv quintic quintic --strict").status == 0);
  CHECK(cyops_run("analyze E --depth 20 --strict").status == 1);
  CHECK(cyops_run("analyze E --depth 20").status == 0);
  CHECK(cyops_run("dual \"T^4 - z*(T^4+T+1)\" --strict").status == 1);
  CHECK(cyops_run("yinv E_tilde").status == 2);
}

TEST_CASE("dual, exponents, flag and qcoord") {
  auto d = json_of("dual quintic");
  CHECK(d["self_dual"] == true);
  CHECK(d["alpha"].get<std::string>().find("z^4") != std::string::npos);

  Run e = cyops_run("exponents quintic");
  CHECK(e.out.find("1/3125: 0 1 1 2  (logarithmic)") != std::string::npos);
  CHECK(e.out.find("infinity: 1/5 2/5 3/5 4/5") != std::string::npos);

  auto f = json_of("flag quintic --truncation 4");
  CHECK(f["mum_exponent"] == 0);
  CHECK(f["f"][0]["coefficients"] == nlohmann::json::array({"1", "120", "113400", "168168000"}));
  CHECK(f["f"][1]["coefficients"][1] == "770");

  auto q = json_of("qcoord R3 --truncation 6");
  CHECK(q["q"]["shift"] == 1);
  const std::vector<std::string> expected = {"1", "5562", "49552317", "547802062578", "6855142017357054"};
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(q["q"]["coefficients"][k] == expected[k]);
}

TEST_CASE("sources: corpus, file and expression") {
  const auto dir = std::filesystem::temp_directory_path() / "cyops_cli_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "myop.op";
  {
    std::ofstream o(file);
    o << "# name: myop\n# source: test\nT^4 - 5*z*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)\n";
  }
  const std::string a = json_of("qcoord quintic --truncation 6")["q"].dump();
  CHECK(json_of("qcoord " + file.string() + " --truncation 6")["q"].dump() == a);
  CHECK(json_of("qcoord \"T^4 - 5*z*(5*T+1)*(5*T+2)*(5*T+3)*(5*T+4)\" --truncation 6")["q"].dump() == a);
  CHECK(json_of("qcoord " + file.string())["operator"]["name"] == "myop");
  std::filesystem::remove_all(dir);

  auto c = json_of("corpus");
  std::vector<std::string> names;
  for (const auto& e : c["corpus"]) names.push_back(e["name"]);
  CHECK(names == std::vector<std::string>{"E", "E_tilde", "R1", "R2", "R3", "R4", "R5", "quintic"});
  CHECK(cyops_run("corpus nothing").status == 2);
}

TEST_CASE("sympow, symroot and galois") {
  auto s = json_of("sympow E_tilde --power 3");
  const ThetaOperator S3 = to_theta_form(sym_power_order2(to_d_form(corpus_operator("E_tilde")), 3)).normalized();
  CHECK(s["theta_form"] == render(S3));

  Run root = cyops_run("symroot \"" + render(S3) + "\"");
  CHECK(root.status == 0);
  CHECK(root.out.find("P = ") == 0);
  CHECK(cyops_run("symroot quintic").status == 2);

  Run g = cyops_run("galois quintic");
  CHECK(g.out.find("Sp4-heuristic (ambient Sp4)") == 0);
  CHECK(g.out.find("order of Sym^2: 10") != std::string::npos);
  Run g1 = cyops_run("galois R1");
  CHECK(g1.out.find("G2-candidate") == 0);
  CHECK(g1.out.find("a_1 relation: fails") != std::string::npos);
}

TEST_CASE("render and parse agree through the CLI") {
  for (const auto& e : corpus_entries()) {
    auto j = json_of("dual " + e.name);
    CHECK(j["operator"]["theta_form"] == render(parse_theta_operator(e.expression)));
    CHECK(same_operator(parse_theta_operator(j["operator"]["theta_form"].get<std::string>()), parse_theta_operator(e.expression)));
  }
}
