#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

Result mti(const std::string& args) {
  const std::string cmd = std::string(MTI_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_CASE("generate complete graphs") {
  const auto dir = scratch("gen");
  auto r = mti("generate --model er --n 10 --p 1.0 --replicas 1 --seed 7 --out " + dir.string());
  REQUIRE(r.code == 0);
  std::vector<fs::path> files(fs::directory_iterator(dir), fs::directory_iterator{});
  REQUIRE(files.size() == 1);
  CHECK(slurp(files[0]).rfind("10 45\n", 0) == 0);
  CHECK(files[0].filename().string().find("seed7") != std::string::npos);

  const auto br = scratch("gen_br");
  r = mti("generate --model br --n1 2 --n2 3 --p 1 --seed 7 --out " + br.string());
  REQUIRE(r.code == 0);
  files.assign(fs::directory_iterator(br), fs::directory_iterator{});
  REQUIRE(files.size() == 1);
  CHECK(slurp(files[0]).rfind("5 6\n", 0) == 0);
}

TEST_CASE("generate is reproducible") {
  const auto a = scratch("rep_a"), b = scratch("rep_b");
  const std::string flags = "generate --model rg --n 30,40 --r 0.3 --replicas 3 --seed 11 --out ";
  REQUIRE(mti(flags + a.string()).code == 0);
  REQUIRE(mti(flags + b.string()).code == 0);
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    ++count;
  }
  CHECK(count == 6);
}

TEST_CASE("seed is required") {
  const auto r = mti("generate --model er --n 10 --p 0.5");
  CHECK(r.code == 2);
  CHECK(r.out.find("--seed") != std::string::npos);
  CHECK(mti("sweep --model er --n 10 --p 0.5").code == 2);
  CHECK(mti("verify").code == 2);
}

TEST_CASE("index values") {
  const auto dir = scratch("index");
  write(dir / "p3.txt", "3 2\n0 1\n1 2\n");
  write(dir / "empty.txt", "5 0\n");
  auto r = mti("index " + (dir / "p3.txt").string() + " --index nk,hpi,m1");
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",nk,ln_product,0.6931471805599453,0\n") != std::string::npos);
  CHECK(r.out.find(",hpi,ln_product,-0.81093021621632") != std::string::npos);
  CHECK(r.out.find(",m1,sum,6.0,0\n") != std::string::npos);

  r = mti("index " + (dir / "empty.txt").string() + " --index pi2,chipi,gapi");
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",pi2,ln_product,0.0,") != std::string::npos);
  CHECK(r.out.find(",gapi,ln_product,0.0,") != std::string::npos);

  r = mti("index " + (dir / "empty.txt").string() + " --index nk --policy logzero");
  CHECK(r.out.find(",nk,ln_product,logzero,") != std::string::npos);

  write(dir / "bad.txt", "3 2\n0 1\n");
  CHECK(mti("index " + (dir / "bad.txt").string()).code == 2);
  CHECK(mti("index " + (dir / "p3.txt").string() + " --index wiener").code == 2);
}

TEST_CASE("sweep output is independent of workers and reruns") {
  const auto dir = scratch("sweep");
  const std::string flags =
      "sweep --model er --n 50,100 --k 2,6,10 --index nk,pi2,idpi --budget 3000 --seed 3 ";
  REQUIRE(mti(flags + "--workers 1 --out " + (dir / "w1.csv").string()).code == 0);
  REQUIRE(mti(flags + "--workers 8 --out " + (dir / "w8.csv").string()).code == 0);
  REQUIRE(mti(flags + "--workers 1 --out " + (dir / "again.csv").string()).code == 0);
  const auto w1 = slurp(dir / "w1.csv");
  CHECK(w1 == slurp(dir / "w8.csv"));
  CHECK(w1 == slurp(dir / "again.csv"));
  CHECK(std::count(w1.begin(), w1.end(), '\n') == 1 + 2 * 3 * 3);

  const auto br = mti("sweep --model br --n1 20,30 --n2 20 --p 0.1 --index pi2 --budget 200 --seed 1");
  REQUIRE(br.code == 0);
  CHECK(br.out.find("\nbr,40,20,20,") != std::string::npos);
  CHECK(br.out.find("\nbr,50,30,20,") != std::string::npos);
}

TEST_CASE("sweep input errors") {
  CHECK(mti("sweep --model er --n 500 --p 0.1 --budget 100 --seed 1").code == 2);
  CHECK(mti("sweep --model rg --n 50 --p 0.1 --seed 1").code == 2);
  CHECK(mti("sweep --model er --n 50 --p 1.5 --seed 1").code == 2);
  CHECK(mti("sweep --model br --n1 5,6 --n2 5,6,7 --p 0.1 --seed 1").code == 2);
  CHECK(mti("sweep --model er --n 50 --p 0.1 --seed 1 --workers 0").code == 2);
}

TEST_CASE("collapse identical and mismatched tables") {
  const auto dir = scratch("collapse");
  const auto table = dir / "er.csv";
  REQUIRE(mti("sweep --model er --n 60 --k 2,4,6,8,10,12 --index nk --budget 600 --seed 2 --out " +
              table.string())
              .code == 0);
  auto r = mti("collapse " + table.string() + " " + table.string() + " --index nk --out " +
               (dir / "c.csv").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("max |delta| = 0.0 ") != std::string::npos);
  CHECK(slurp(dir / "c.csv").rfind("k,#1 er n=60,#2 er n=60,max_abs_deviation,prediction\n", 0) == 0);

  r = mti("collapse " + table.string() + " " + table.string() + " --index chipi");
  CHECK(r.code == 2);
  CHECK(r.out.find("index not present") != std::string::npos);
}

TEST_CASE("collapse reports failure with exit 1") {
  const auto dir = scratch("collapse_fail");
  const auto a = dir / "a.csv", b = dir / "b.csv";
  REQUIRE(mti("sweep --model er --n 60 --k 2,4,6,8,10 --index pi2 --budget 600 --seed 2 --out " + a.string()).code == 0);
  REQUIRE(mti("sweep --model er --n 60 --k 2,4,6,8,10 --index pi2 --budget 600 --seed 2 --out " + b.string()).code == 0);
  // Shift one curve by a constant far outside the tolerance.
  std::istringstream in(slurp(b));
  std::string line, out;
  std::getline(in, line);
  out += line + "\n";
  while (std::getline(in, line)) {
    const auto last = line.rfind(',');
    const auto prev = line.rfind(',', last - 1);
    const double v = std::stod(line.substr(prev + 1, last - prev - 1)) + 50.0;
    out += line.substr(0, prev + 1) + std::to_string(v) + line.substr(last) + "\n";
  }
  write(b, out);
  const auto r = mti("collapse " + a.string() + " " + b.string() + " --index pi2");
  CHECK(r.code == 1);
  CHECK(r.out.find("NOT collapsed") != std::string::npos);
}

TEST_CASE("predict") {
  auto r = mti("predict --model er --index nk --k 10");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("er,nk,10.0,10.0,2.302585092994046,2.302585092994046") != std::string::npos);
  r = mti("predict --model br --index pi2 --d1 6 --d2 6");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("br,pi2,6.0,6.0,21.50111363073666") != std::string::npos);
  CHECK(mti("predict --model er --index gapi --k 10").code == 2);
  CHECK(mti("predict --model er --index nk").code == 2);
}

TEST_CASE("verify") {
  const auto dir = scratch("verify");
  auto r = mti("verify --n 8,16 --graphs 10 --seed 1 --out " + (dir / "v.csv").string());
  CHECK(r.code == 0);
  CHECK(slurp(dir / "v.csv").rfind("inequality,model,n,param,function,lhs,rhs,slack,holds,hypothesis_ok\n", 0) == 0);

  r = mti("verify --n 8 --graphs 10 --seed 1 --include-counterexample --out " + (dir / "c.csv").string());
  CHECK(r.code == 0);
  CHECK(slurp(dir / "c.csv").find("petrovic_sum,constructed,0,0.0,") != std::string::npos);

  r = mti("verify --n 8 --graphs 10 --seed 1 --function vertex:const:-1");
  CHECK(r.code == 1);
  CHECK(r.out.find("vertex:const:-1") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(mti("").code == 2);
  CHECK(mti("frobnicate").code == 2);
  CHECK(mti("generate --model ws --n 5 --p 0.5 --seed 1").code == 2);
  CHECK(mti("--help").code == 0);
}
