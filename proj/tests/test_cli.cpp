#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SICMAP_BIN + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return o;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) o.out.append(buf.data(), got);
  const int status = pclose(f);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("sicmap_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    net = write("net.json",
                R"({"dim": 2, "stations": [[0, 0], [3, 0], [5, 1]], "noise": 0.005, "beta": 2, "alpha": 2})");
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir;
  std::string net;
};

}  // namespace

TEST_F(Cli, EvalTable) {
  const Outcome o = run("eval --net " + net + " --point 1,0.2");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("station\tsinr\treceived\tsic\n1\t", 0), 0u) << o.out;
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("eval --net " + net).code, 1);
  EXPECT_EQ(run("eval --net " + net + " --point 0,0").code, 2);
  EXPECT_EQ(run("eval --net " + (dir / "missing.json").string() + " --point 1,1").code, 2);
  const std::string bad = write("bad.json", R"({"dim": 2, "stations": [[0, 0]], "noise": 0.1})");
  EXPECT_EQ(run("eval --net " + bad + " --point 1,1").code, 2);
  EXPECT_EQ(run("sic-chain --net " + net + " --station 9 --point 1,1").code, 2);
  EXPECT_EQ(run("schedule-demo --n 6").code, 0);
}

TEST_F(Cli, NcoVerify) {
  const Outcome o = run("nco --net " + net + " --station 1 --verify");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("(s1)"), std::string::npos) << o.out;
}

TEST_F(Cli, AuditDetectsDamagedLocator) {
  const std::string loc = (dir / "loc.bin").string();
  ASSERT_EQ(run("--eps 0.3 locate-build --net " + net + " --station 1 --c1 0.05 -o " + loc).code, 0);
  EXPECT_EQ(run("locate-audit --net " + net + " --locator " + loc + " --budget 20000").code, 0);
  std::string bytes;
  {
    std::ifstream in(loc, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  // Lift the upper '?' band of every zone so the '+' band reaches well
  // outside the zone.
  auto u32 = [&](std::size_t at) {
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = v << 8 | static_cast<unsigned char>(bytes[at + k]);
    return v;
  };
  auto add_i32 = [&](std::size_t at, std::int32_t d) {
    const std::uint32_t v = u32(at) + static_cast<std::uint32_t>(d);
    for (int k = 0; k < 4; ++k) bytes[at + k] = static_cast<char>(v >> (8 * k) & 0xff);
  };
  std::size_t at = 4 + 2 + 4 + 4 + 6 * 8;
  const std::uint32_t zones = u32(at);
  at += 8;
  for (std::uint32_t z = 0; z < zones; ++z) {
    at += 4 + 4 * u32(at) + 8;
    const std::uint32_t ncols = u32(at);
    at += 4;
    for (std::uint32_t c = 0; c < ncols; ++c, at += 17) {
      if (bytes[at] & 1) continue;
      add_i32(at + 9, 2000);
      add_i32(at + 13, 2000);
    }
  }
  std::ofstream(loc, std::ios::binary) << bytes;
  EXPECT_EQ(run("locate-audit --net " + net + " --locator " + loc + " --budget 20000").code, 3);
}

TEST_F(Cli, BuildThenQuery) {
  const std::string loc = (dir / "loc.bin").string();
  ASSERT_EQ(run("locate-build --net " + net + " --station 1 --c1 0.05 -o " + loc, "SICMAP_EPS=0.3").code, 0);
  ASSERT_TRUE(fs::exists(loc));
  const std::string pts = write("pts.txt", "0.01,0.01\n# skipped\n40,40\n");
  const Outcome o = run("locate-query --locator " + loc + " --points " + pts);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("PLUS"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("MINUS"), std::string::npos) << o.out;
}

TEST_F(Cli, FlagBeatsEnvironment) {
  const std::string a = (dir / "a.bin").string(), b = (dir / "b.bin").string();
  ASSERT_EQ(run("--eps 0.3 locate-build --net " + net + " --station 1 --c1 0.05 -o " + a, "SICMAP_EPS=0.9").code, 0);
  ASSERT_EQ(run("locate-build --net " + net + " --station 1 --c1 0.05 -o " + b, "SICMAP_EPS=0.3").code, 0);
  EXPECT_EQ(fs::file_size(a), fs::file_size(b));
  EXPECT_EQ(run("locate-build --net " + net + " --station 1 -o " + b, "SICMAP_EPS=abc").code, 1);
}

TEST_F(Cli, NoPartialOutputOnError) {
  const std::string out = (dir / "never.bin").string();
  EXPECT_EQ(run("--eps 1.5 locate-build --net " + net + " --station 1 -o " + out).code, 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out + ".tmp"));
  const std::string svg = (dir / "never.svg").string();
  EXPECT_EQ(run("--res 100000 map --net " + net + " -o " + svg).code, 2);
  EXPECT_FALSE(fs::exists(svg));
}

TEST_F(Cli, MapWritesSvg) {
  const std::string svg = (dir / "m.svg").string();
  EXPECT_EQ(run("--res 64 map --net " + net + " --sic -o " + svg).code, 0);
  std::ifstream in(svg);
  std::string head;
  std::getline(in, head);
  EXPECT_EQ(head.rfind("<svg", 0), 0u);
}
