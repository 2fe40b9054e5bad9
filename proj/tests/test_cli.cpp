#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hl-cli-test-" + name)).string();
}

}  // namespace

TEST_CASE("documented examples") {
  CHECK(run("salie --m 1 --n 1 --c 3").out == "0,-1.7320508075688772\n");
  CHECK(run("salie --m 1 --n 1 --c 3 --fast").out == "0,-1.7320508075688772\n");
  CHECK(run("ramanujan --q 4 --n 2").out == "-2\n");
  CHECK(run("hilbert --a -1 --b -1 --p 2").out == "-1\n");
  CHECK(run("classnum --d1 5 --d2 12 --t 136").out == "5,12,136,8\n");
  CHECK(run("circle --y 1 --X 2").out == "x,y,X,N,err\n0,1,2,2,-4\n");
  const Run id = run("identity-check --lemma 3.17 --trials 1000 --seed 42");
  CHECK(id.code == 0);
  CHECK(id.out.find("3.17,pass,1000,0,") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("salie --m 1 --n 1 --c 4").code == 2);
  CHECK(run("classnum --d1 5 --d2 12 --t 136 --box 1 --growth 1").code == 3);
  CHECK(run("salie --m 1 --n 1").code == 1);
  CHECK(run("salie --m 1 --n 1 --c 3 --bogus").code == 1);
  CHECK(run("nosuch").code == 1);
  CHECK(run("--help").code == 0);
  CHECK(run("identity-check --lemma 9.99").code == 1);
}

TEST_CASE("json output") {
  CHECK(run("salie --m 1 --n 1 --c 3 --format json").out == "[{\"im\":-1.7320508075688772,\"re\":0.0}]\n");
  CHECK(run("ramanujan --q 4 --n 2 --format json").out == "[{\"value\":-2}]\n");
}

TEST_CASE("config file, flags override it") {
  const std::string cfg = temp("config.txt");
  {
    std::ofstream f(cfg);
    f << "# scan settings\nm = 1\nn = 1\nc = 5\nformat = json\n";
  }
  CHECK(run("salie --config " + cfg + " --c 3 --format csv").out == "0,-1.7320508075688772\n");
  const Run five = run("salie --config " + cfg);
  CHECK(five.code == 0);
  CHECK(five.out.rfind("[{", 0) == 0);
}

TEST_CASE("cache and reproducible output files") {
  const std::string dir = temp("cache");
  std::filesystem::remove_all(dir);
  const Run first = run("classnum --d1 21 --d2 77 --t 2089 --cache-dir " + dir);
  const Run second = run("classnum --d1 21 --d2 77 --t 2089.0 --cache-dir " + dir);
  CHECK(first.out == "21,77,2089,4\n");
  CHECK(second.code == 1);  // integer flag rejects 2089.0
  CHECK(run("classnum --d1 21 --d2 77 --t 2089 --cache-dir " + dir).out == first.out);
  const std::string lines = slurp(dir + "/hl-cache.jsonl");
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 1);

  const std::string a = temp("scan-a.csv"), b = temp("scan-b.csv");
  CHECK(run("conjecture-scan --lo 6 --hi 9 --alpha 0.25 --out " + a).code == 0);
  CHECK(run("conjecture-scan --lo 6 --hi 9 --alpha 0.25 --threads 3 --out " + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  const std::string c = temp("id-c.csv"), d = temp("id-d.csv");
  CHECK(run("identity-check --lemma gauss --trials 300 --seed 7 --out " + c).code == 0);
  CHECK(run("identity-check --lemma gauss --trials 300 --seed 7 --out " + d).code == 0);
  CHECK(slurp(c) == slurp(d));
  CHECK(slurp(a).rfind("C,m,n,L,K,r,alpha,re,im,abs,terms,seconds\n64,", 0) == 0);
}
