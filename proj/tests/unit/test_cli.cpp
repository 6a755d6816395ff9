#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spherecx/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using spherecx::run_cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run_cli(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

Outcome run_json(std::vector<std::string> args) {
  args.push_back("--json");
  return run(std::move(args));
}

bool check_passed(const json& report, const std::string& name) {
  for (const auto& c : report["checks"]) {
    if (c["name"] == name) return c["pass"].get<bool>();
  }
  ADD_FAILURE() << "no check named " << name;
  return false;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("spherecx-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string write(const std::string& name, const json& doc) const {
    fs::path p = path_ / name;
    std::ofstream(p) << doc.dump();
    return p.string();
  }

 private:
  fs::path path_;
};

json triangle_to_star() {
  return json{{"source",
               {{"vertices", {"a", "b", "c"}},
                {"edges", {{{"id", "ab"}, {"ends", {"a", "b"}}}, {{"id", "bc"}, {"ends", {"b", "c"}}},
                           {{"id", "ca"}, {"ends", {"c", "a"}}}}}}},
              {"target",
               {{"vertices", {"o", "x", "y", "z"}},
                {"edges", {{{"id", "ox"}, {"ends", {"o", "x"}}}, {{"id", "oy"}, {"ends", {"o", "y"}}},
                           {{"id", "oz"}, {"ends", {"o", "z"}}}}}}},
              {"map", {{"ab", "ox"}, {"bc", "oy"}, {"ca", "oz"}}}};
}

json path_scrambled() {
  return json{{"source",
               {{"vertices", {"a", "b", "c", "d"}},
                {"edges", {{{"id", "e1"}, {"ends", {"a", "b"}}}, {{"id", "e2"}, {"ends", {"b", "c"}}},
                           {{"id", "e3"}, {"ends", {"c", "d"}}}, {{"id", "e4"}, {"ends", {"d", "d"}}}}}}},
              {"target",
               {{"vertices", {"p", "q", "r", "t"}},
                {"edges", {{{"id", "f1"}, {"ends", {"t", "q"}}}, {{"id", "f2"}, {"ends", {"q", "p"}}},
                           {{"id", "f3"}, {"ends", {"p", "r"}}}, {{"id", "f4"}, {"ends", {"r", "r"}}}}}}},
              {"map", {{"e1", "f1"}, {"e2", "f2"}, {"e3", "f3"}, {"e4", "f4"}}}};
}

}  // namespace

TEST(Cli, Fnv1aReferenceValues) {
  EXPECT_EQ(spherecx::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(spherecx::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(spherecx::fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(Cli, ReportShape) {
  Outcome o = run_json({"complex", "build", "--genus-zero", "6"});
  ASSERT_EQ(o.code, 0) << o.err;
  json r = o.report();
  EXPECT_EQ(r["command"], "complex build --genus-zero 6 --json");
  EXPECT_EQ(r["inputs_digest"].get<std::string>().size(), 16u);
  EXPECT_EQ(r["status"], "pass");
  EXPECT_TRUE(r["timing_ms"].is_number_integer());
  EXPECT_EQ(r["results"]["vertices"], 25);
  EXPECT_EQ(r["results"]["edges"], 105);
  EXPECT_EQ(r["results"]["dimension"], 2);
  EXPECT_TRUE(check_passed(r, "vertex_count_formula"));
}

TEST(Cli, TextSummary) {
  Outcome o = run({"complex", "stats", "--complex", "petersen"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("command: complex stats --complex petersen"), std::string::npos);
  EXPECT_NE(o.out.find("vertices: 10"), std::string::npos);
  EXPECT_NE(o.out.find("status: pass"), std::string::npos);
}

TEST(Cli, RerunIsReproducible) {
  for (std::vector<std::string> args : {std::vector<std::string>{"pants", "flip-graph", "--s", "6"},
                                        std::vector<std::string>{"rigidity", "aut", "--genus-zero", "5"},
                                        std::vector<std::string>{"complex", "homology", "--genus-zero", "6"}}) {
    json a = run_json(args).report(), b = run_json(args).report();
    EXPECT_EQ(a["results"].dump(), b["results"].dump());
    EXPECT_EQ(a["checks"].dump(), b["checks"].dump());
    EXPECT_EQ(a["inputs_digest"], b["inputs_digest"]);
  }
}

TEST(Cli, DigestDependsOnCommandAndInputs) {
  TempDir dir;
  json doc = triangle_to_star();
  std::string file = dir.write("psi.json", doc);
  json a = run_json({"whitney", "check", "--input", file}).report();
  doc["map"] = {{"ab", "oy"}, {"bc", "ox"}, {"ca", "oz"}};
  dir.write("psi.json", doc);
  json b = run_json({"whitney", "check", "--input", file}).report();
  EXPECT_NE(a["inputs_digest"], b["inputs_digest"]);
  EXPECT_NE(run_json({"pants", "enumerate", "--s", "5"}).report()["inputs_digest"],
            run_json({"pants", "enumerate", "--s", "6"}).report()["inputs_digest"]);
}

TEST(Cli, Homology) {
  json r = run_json({"complex", "homology", "--genus-zero", "6"}).report();
  const auto& dims = r["results"]["dimensions"];
  ASSERT_EQ(dims.size(), 3u);
  EXPECT_EQ(dims[0]["betti"], 1);
  EXPECT_EQ(dims[1]["betti"], 0);
  EXPECT_EQ(dims[2]["betti"], 24);
  EXPECT_TRUE(check_passed(r, "modular_rank_agreement"));
  EXPECT_TRUE(check_passed(r, "euler_consistency"));
}

TEST(Cli, PantsCommands) {
  json e = run_json({"pants", "enumerate", "--s", "6"}).report();
  EXPECT_EQ(e["results"]["count"], 105);
  EXPECT_TRUE(check_passed(e, "all_maximal"));
  json f = run_json({"pants", "flip-graph", "--s", "6", "--check-connected"}).report();
  EXPECT_EQ(f["results"]["nodes"], 105);
  EXPECT_EQ(f["results"]["edges"], 315);
  EXPECT_EQ(f["results"]["diameter"], 5);
  EXPECT_TRUE(check_passed(f, "connected"));
  EXPECT_TRUE(check_passed(f, "two_flip_partners"));
  Outcome d = run_json({"pants", "dual", "--s", "6", "--index", "3"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_TRUE(check_passed(d.report(), "tree"));
  EXPECT_EQ(run({"pants", "enumerate", "--s", "2"}).code, 2);
}

TEST(Cli, DualClassify) {
  TempDir dir;
  json dual = run_json({"pants", "dual", "--s", "7", "--index", "0"}).report()["results"]["dual"];
  std::string file = dir.write("dual.json", dual);
  Outcome o = run_json({"dual", "classify", "--input", file, "--edges", "0;1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(check_passed(o.report(), "complexity_sum"));
  EXPECT_EQ(run({"dual", "classify", "--input", file, "--edges", "99"}).code, 2);
}

TEST(Cli, WhitneyVerdicts) {
  TempDir dir;
  std::string bad = dir.write("k3.json", triangle_to_star());
  json r = run_json({"whitney", "lift", "--input", bad, "--expect", "obstructed"}).report();
  EXPECT_EQ(r["results"]["verdict"], "obstructed");
  EXPECT_EQ(r["status"], "pass");
  EXPECT_EQ(run({"whitney", "lift", "--input", bad, "--expect", "lifted"}).code, 1);
  std::string good = dir.write("path.json", path_scrambled());
  json l = run_json({"whitney", "lift", "--input", good}).report();
  EXPECT_EQ(l["results"]["verdict"], "lifted");
  EXPECT_EQ(l["results"]["vertex_map"], (json{{"a", "t"}, {"b", "q"}, {"c", "p"}, {"d", "r"}}));
  json c = run_json({"whitney", "check", "--input", good}).report();
  EXPECT_TRUE(check_passed(c, "edge_isomorphism"));
}

TEST(Cli, RigidityCommands) {
  json aut = run_json({"rigidity", "aut", "--genus-zero", "6", "--label-action"}).report();
  EXPECT_EQ(aut["results"]["order"], "720");
  EXPECT_TRUE(check_passed(aut, "label_action_faithful"));
  EXPECT_TRUE(check_passed(aut, "label_action_surjective"));
  json v = run_json({"rigidity", "verify", "--genus-zero", "5"}).report();
  EXPECT_EQ(v["results"]["certificate"]["total_maps"], 120);
  EXPECT_TRUE(check_passed(v, "all_extend_uniquely"));
  Outcome single = run_json({"rigidity", "verify", "--genus-zero", "5", "--vertices", "p:1,2|s=5"});
  EXPECT_EQ(single.code, 1);
  EXPECT_EQ(single.report()["status"], "fail");
  json split = run_json({"rigidity", "split", "--genus-zero", "6", "--sphere", "p:1,2,3|s=6", "--pants",
                         "p:1,2|s=6;p:1,2,3|s=6;p:1,2,3,4|s=6"})
                   .report();
  const auto& spheres = split["results"]["split_spheres"];
  EXPECT_NE(std::find(spheres.begin(), spheres.end(), "p:1,2,5,6|s=6"), spheres.end());
  json xs = run_json({"rigidity", "xsigma", "--genus-zero", "5", "--pants", "p:1,2|s=5;p:1,2,5|s=5"}).report();
  EXPECT_EQ(xs["results"]["count"], 6);
  json det = run_json({"rigidity", "detect", "--genus-zero", "5", "--vertices", "p:1,2|s=5;p:1,5|s=5;p:1,2,5|s=5",
                       "--from", "p:1,2|s=5", "--to", "p:1,5|s=5"})
                 .report();
  EXPECT_FALSE(det["results"]["witness"].is_null());
  json cls = run_json({"rigidity", "classes", "--genus-zero", "6", "--system", "p:1,2,3|s=6"}).report();
  EXPECT_EQ(cls["results"]["classes"].size(), 2u);
  EXPECT_TRUE(check_passed(cls, "classes_match_regions"));
  json wit = run_json({"rigidity", "witness", "--window", "6", "--vertices", "z:0;z:1;w:1"}).report();
  EXPECT_EQ(wit["results"]["witness"]["map"]["w:1"], "z:2");
  EXPECT_TRUE(check_passed(wit, "witness_valid"));
  EXPECT_EQ(run({"rigidity", "witness", "--window", "6", "--vertices", "z:5;z:6"}).code, 2);
}

TEST(Cli, Nonembedding) {
  json a = run_json({"nonembed", "--source", "k33", "--target", "petersen", "--expect", "none"}).report();
  EXPECT_EQ(a["results"]["embeds"], false);
  EXPECT_EQ(a["results"]["decided_by"], "exhausted");
  EXPECT_EQ(a["status"], "pass");
  json b = run_json({"nonembed", "--source", "petersen", "--target", "k33"}).report();
  EXPECT_EQ(b["results"]["decided_by"], "vertex-count-precheck");
  json c = run_json({"nonembed", "--source", "k33", "--target", "caterpillar:10", "--exhaustive"}).report();
  EXPECT_EQ(c["results"]["decided_by"], "exhausted");
  EXPECT_EQ(c["results"]["embeds"], false);
  json d = run_json({"nonembed", "--source", "k13", "--target", "caterpillar:2", "--expect", "embedding"}).report();
  EXPECT_EQ(d["results"]["embeds"], true);
  EXPECT_TRUE(check_passed(d, "map_is_injective_simplicial"));
  EXPECT_EQ(run({"nonembed", "--source", "k33", "--target", "petersen", "--expect", "embedding"}).code, 1);
}

TEST(Cli, Census) {
  json one = run_json({"census", "good-pairs", "--n", "1", "--s", "4", "--pair", "1"}).report();
  EXPECT_EQ(one["results"]["count"], 12);
  json sweep = run_json({"census", "good-pairs", "--sweep"}).report();
  EXPECT_EQ(sweep["results"]["rows"].size(), 27u);
  EXPECT_TRUE(check_passed(sweep, "threshold"));
  EXPECT_EQ(run({"census", "good-pairs", "--n", "0", "--s", "4", "--pair", "1"}).code, 2);
}

TEST(Cli, Catalog) {
  json r = run_json({"catalog"}).report();
  EXPECT_EQ(r["results"]["complexes"].size(), 6u);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nosuch"}).code, 2);
  EXPECT_EQ(run({"complex", "build"}).code, 2);
  EXPECT_EQ(run({"complex", "build", "--complex", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"complex", "build", "--complex", "genus-zero:x"}).code, 2);
  EXPECT_EQ(run({"rigidity", "verify", "--genus-zero", "5", "--vertices", "p:9,9|s=5"}).code, 2);
  EXPECT_EQ(run({"rigidity", "verify", "--genus-zero", "5", "--mode", "odd"}).code, 2);
  TempDir dir;
  std::ofstream(dir.path() / "broken.json") << "{not json";
  EXPECT_EQ(run({"whitney", "check", "--input", (dir.path() / "broken.json").string()}).code, 2);
  Outcome help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("rigidity"), std::string::npos);
}

TEST(Cli, OutputFiles) {
  TempDir dir;
  const fs::path report = dir.path() / "r.json", dot = dir.path() / "c.dot";
  Outcome o = run({"complex", "build", "--complex", "petersen", "--out", report.string(), "--dot", dot.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  std::ifstream in(report);
  json r = json::parse(in);
  EXPECT_EQ(r["results"]["vertices"], 10);
  std::ifstream d(dot);
  std::string text((std::istreambuf_iterator<char>(d)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("graph"), std::string::npos);
  const fs::path emitted = dir.path() / "pet.json";
  ASSERT_EQ(run({"complex", "build", "--complex", "petersen", "--emit", emitted.string()}).code, 0);
  json back = run_json({"complex", "stats", "--complex", emitted.string()}).report();
  EXPECT_EQ(back["results"]["edges"], 15);
  EXPECT_EQ(run({"catalog", "--dot", dot.string()}).code, 2);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  TempDir dir;
  ::setenv("SPHERECX_OUTPUT_DIR", dir.path().c_str(), 1);
  Outcome o = run({"pants", "enumerate", "--s", "5"});
  Outcome rel = run({"catalog", "--out", "sub/cat.json"});
  ::unsetenv("SPHERECX_OUTPUT_DIR");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(dir.path() / "pants-enumerate.json"));
  ASSERT_EQ(rel.code, 0) << rel.err;
  EXPECT_TRUE(fs::exists(dir.path() / "sub" / "cat.json"));
}
