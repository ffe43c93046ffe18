#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("genodist_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const std::string command = std::string(GENODIST_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("cli exit codes and outputs") {
  TempDir dir;
  const auto fa = dir.path / "g.fa";
  std::ofstream(fa) << ">c1\nCGAACGAACGAATTTGCA\n>c2\nACGTNNACGTACGT\n";
  const auto bad = dir.path / "bad.fa";
  std::ofstream(bad) << "ACGT\n>c1\nACGT\n";
  const auto empty = dir.path / "empty.fa";
  std::ofstream(empty) << "";
  const std::string out = " --out " + dir.path.string();

  CHECK(run("scan " + fa.string() + " --k 2 --dmax 20" + out) == 0);
  const auto store = dir.path / "store_k2.tsv";
  CHECK(fs::exists(store));
  CHECK(slurp(store).rfind("#genodist-store v1 k=2 dmax=20\n", 0) == 0);

  CHECK(run("scan " + fa.string() + " --k 9" + out) == 3);
  CHECK(run("scan " + fa.string() + " --k 2 --dmax 2" + out) == 3);
  CHECK(run("scan " + bad.string() + " --k 2 --store " + (dir.path / "bad.tsv").string()) == 2);
  CHECK(!fs::exists(dir.path / "bad.tsv"));
  CHECK(!fs::exists(dir.path / "bad.tsv.tmp"));
  CHECK(run("scan " + (dir.path / "missing.fa").string() + " --k 2" + out) == 2);
  CHECK(run("scan " + empty.string() + " --k 2 --store " + (dir.path / "empty.tsv").string()) == 0);
  CHECK(fs::exists(dir.path / "empty.tsv"));
  CHECK(run("scan --k 2") == 3);

  const auto rep = dir.path / "rep";
  CHECK(run("report " + store.string() + " --dmax 20 --h 2 --n-peaks 2 --min-freq 1 --threads 2 --dump-dist CG --out " +
            rep.string()) == 0);
  CHECK(fs::exists(rep / "pairs.tsv"));
  CHECK(fs::exists(rep / "dist_CG.tsv"));
  CHECK(run("report " + store.string() + " --dmax 30 --out " + rep.string()) == 4);
  CHECK(run("report " + store.string() + " --k 3 --dmax 20 --out " + rep.string()) == 4);
  CHECK(run("report " + (dir.path / "missing.tsv").string() + " --dmax 20") == 4);
  CHECK(run("report " + store.string() + " --dmax 20 --h 30 --out " + rep.string()) == 3);
  CHECK(run("report " + store.string() + " --dmax 20 --base-freq 0.5,0.5,0.5,0.5 --out " + rep.string()) == 3);

  const auto bed = dir.path / "cg.bed";
  CHECK(run("locate " + fa.string() + " --word CG --d-star 4 --dmax 20 --bed " + bed.string()) == 0);
  CHECK(slurp(bed) == "c1\t0\t6\tCG|4\nc1\t4\t10\tCG|4\nc2\t7\t13\tCG|4\n");
  CHECK(run("locate " + fa.string() + " --word GGG --d-star 4 --bed " + bed.string()) == 0);
  CHECK(slurp(bed).empty());
  CHECK(run("locate " + fa.string() + " --word CG --d-star 21 --dmax 20 --bed " + bed.string()) == 3);
  CHECK(run("locate " + fa.string() + " --word CG --d-star 2 --bed " + bed.string()) == 3);
  CHECK(run("locate " + fa.string() + " --word CXG --d-star 5 --bed " + bed.string()) == 3);

  CHECK(run("reference --word AA --dmax 10") == 0);
  CHECK(run("reference --word AA --dmax 2") == 3);
  CHECK(run("dump " + store.string() + " --word CG") == 0);
  CHECK(run("dump " + store.string() + " --word CGA") == 4);
  CHECK(run("--version") == 0);
  CHECK(run("") == 3);
}
