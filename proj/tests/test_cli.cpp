#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "koszulkit/cli.hpp"
#include "koszulkit/errors.hpp"
#include "koszulkit/problem.hpp"

using namespace koszulkit;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = KOSZULKIT_CORPUS_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string command_of(const fs::path& p) {
  auto prob = load_problem(p.string());
  return *prob.option("command");
}

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kCorpus))
    if (e.path().extension() == ".kk") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

// writes text to a scratch file and runs a command on it
Run run_text(const std::string& command, const std::string& text, std::vector<std::string> extra = {}) {
  fs::path p = fs::temp_directory_path() / "koszulkit_test_cli.kk";
  {
    std::ofstream f(p, std::ios::binary);
    f << text;
  }
  std::vector<std::string> args{command, p.string()};
  args.insert(args.end(), extra.begin(), extra.end());
  return run(args);
}

}  // namespace

TEST_CASE("corpus reports match the golden files") {
  auto files = corpus_files();
  REQUIRE(files.size() >= 12);
  for (const auto& f : files) {
    CAPTURE(f.filename().string());
    auto r = run({command_of(f), f.string(), "--json", "-"});
    CHECK(r.code == kComputed);
    CHECK(r.out == slurp(kCorpus / "golden" / (f.stem().string() + ".json")));
  }
}

TEST_CASE("two runs are byte identical") {
  for (const auto& f : corpus_files()) {
    CAPTURE(f.filename().string());
    auto a = run({command_of(f), f.string(), "--json", "-"});
    auto b = run({command_of(f), f.string(), "--json", "-"});
    CHECK(a.out == b.out);
    auto ta = run({command_of(f), f.string()});
    auto tb = run({command_of(f), f.string()});
    CHECK(ta.out == tb.out);
  }
}

TEST_CASE("depth golden values") {
  auto depth = [](const std::string& name) {
    auto r = run({"depth", (kCorpus / name).string()});
    REQUIRE(r.code == kComputed);
    return r.out;
  };
  CHECK(depth("depth_regular.kk").find("depth 2, codepth 0") != std::string::npos);
  CHECK(depth("depth_node.kk").find("depth 1, codepth 0") != std::string::npos);
  CHECK(depth("depth_noncm.kk").find("depth 0, codepth 2") != std::string::npos);
}

TEST_CASE("input errors exit with 1") {
  CHECK(run({}).code == kInputError);
  CHECK(run({"depth", (kCorpus / "missing.kk").string()}).code == kInputError);
  CHECK(run({"frobnicate", (kCorpus / "depth_node.kk").string()}).code == kInputError);
  // the file declares a different command
  CHECK(run({"sm", (kCorpus / "depth_node.kk").string()}).code == kInputError);

  const std::string ring = "[ring]\nvars = x, y\n";
  auto bad = run_text("depth", ring + "[module M]\nideal = x +\n[task]\nobject = M\npoint = (0, 0)\n");
  CHECK(bad.code == kInputError);
  CHECK(bad.err.find("line") != std::string::npos);

  CHECK(run_text("depth", "[ring]\nvars = x, x\n").code == kInputError);
  CHECK(run_text("depth", ring + "[bogus]\n").code == kInputError);
  CHECK(run_text("depth", ring + "[module M]\nrank = 1\n[task]\nobject = M\npoint = (0, 0, 0)\n").code == kInputError);
  // point off the variety
  CHECK(run_text("depth", "[ring]\nvars = x, y\nideal = x*y\n[module M]\nrank = 1\n[task]\nobject = M\npoint = (1, 1)\n").code ==
        kInputError);
  // missing required keys
  CHECK(run_text("depth", ring + "[module M]\nrank = 1\n[task]\nobject = M\n").code == kInputError);
  CHECK(run_text("sm", ring + "[module M]\nrank = 1\n[task]\nobject = M\n").code == kInputError);
  CHECK(run_text("ff-check", ring + "[module M]\nrank = 1\n[task]\nkernel = M\n").code == kInputError);
  // a sop element that does not vanish at its point
  CHECK(run_text("depth", ring + "[points]\np = (1, 0)\n[sops]\ns = x, y @ p\n").code == kInputError);
}

TEST_CASE("flags override task keys and fields can be forced") {
  auto f = (kCorpus / "depth_node.kk").string();
  auto at = run({"depth", f, "--point", "(1, 0)"});
  CHECK(at.code == kComputed);
  CHECK(at.out.find("at (1, 0)") != std::string::npos);
  CHECK(at.out.find("local dimension 1") != std::string::npos);
  // the named sops belong to the origin
  CHECK(run({"depth", (kCorpus / "depth_regular.kk").string(), "--point", "(1, 2)"}).code == kInputError);

  auto fp = run({"depth", (kCorpus / "depth_noncm.kk").string(), "--field", "fp:101", "--json", "-"});
  CHECK(fp.code == kComputed);
  CHECK(fp.out.find("\"field\": \"fp:101\"") != std::string::npos);
  CHECK(fp.out.find("\"depth\": 0") != std::string::npos);
}

TEST_CASE("verdicts that fail still exit with 0") {
  auto r = run({"support-check", (kCorpus / "support_shifted.kk").string()});
  CHECK(r.code == kComputed);
  CHECK(r.out.find("hypotheses fails") != std::string::npos);
  auto d = run({"ff-check", (kCorpus / "ff_doubled.kk").string()});
  CHECK(d.code == kComputed);
  CHECK(d.out.find(": fails") != std::string::npos);
}

TEST_CASE("selftest passes") {
  auto r = run({"selftest"});
  CHECK(r.code == kComputed);
  CHECK(r.out.find("examples pass") != std::string::npos);
}
