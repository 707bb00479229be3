#include <doctest.h>

#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>
#include <vector>

#include "gripkit/cli.hpp"
#include "gripkit/config.hpp"
#include "gripkit/error.hpp"

using namespace gripkit;
using config::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run gk(std::vector<std::string> args) {
  args.insert(args.begin(), "gripkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "gripkit_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kDomain;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults round trip") {
    const auto c = config::ToolConfig::defaults();
    const Json j = config::to_json(c);
    const auto back = config::config_from_json(j);
    CHECK(config::to_json(back) == j);
    CHECK(j["finger"]["r_ip_mm"] == 26.0);
    CHECK(j["cvt"]["l_flt_mm"] == 24.0);
    CHECK(j["load"]["tau_in_Nmm"] == 1300.0);
  }

  TEST_CASE("partial config keeps defaults and derives the input range") {
    const auto c = config::config_from_json(Json::parse(R"({"finger": {"r_ip_mm": 27}})"));
    CHECK(c.finger.r_ip == 27);
    CHECK(c.cvt.l_out == 9);
    CHECK(c.cvt.theta_in_range.hi > c.cvt.theta_in_range.lo);
  }

  TEST_CASE("errors name the offending field") {
    const auto msg = [](const char* text) {
      try {
        config::config_from_json(Json::parse(text));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kMalformedInput);
        return std::string(e.what());
      }
      FAIL("expected malformed");
      return std::string();
    };
    CHECK(msg(R"({"cvt": {"l_out_mm": -3}})").find("l_out_mm") != std::string::npos);
    CHECK(msg(R"({"finger": {"bogus": 1}})").find("bogus") != std::string::npos);
    CHECK(msg(R"({"load": {"tau_in_Nmm": "lots"}})").find("tau_in_Nmm") != std::string::npos);
    CHECK(code_of([] { config::parse_json("{ nope", "x.json"); }) == ErrorCode::kMalformedInput);
  }

  TEST_CASE("object files") {
    const auto cyl = config::object_from_json(Json::parse(R"({"cylinder": {"radius_mm": 12}})"));
    REQUIRE(std::holds_alternative<Cylinder>(cyl));
    CHECK(std::get<Cylinder>(cyl).radius == 12);
    const auto pr = config::object_from_json(
        Json::parse(R"({"prism": {"vertices_mm": [[0,0],[30,0],[30,50],[0,50]]}})"));
    REQUIRE(std::holds_alternative<Prism>(pr));
    CHECK(std::get<Prism>(pr).vertices.size() == 4);
    CHECK(config::object_from_json(config::to_json(pr)) == pr);
    CHECK(code_of([] { config::object_from_json(Json::parse(R"({"sphere": {}})")); }) ==
          ErrorCode::kMalformedInput);
  }

  TEST_CASE("search spaces round trip") {
    const design_search::CvtSearchSpace s;
    const auto back = config::cvt_space_from_json(config::to_json(s));
    CHECK(back.l_fix.lo == s.l_fix.lo);
    CHECK(back.reference == s.reference);
    const design_search::FingerSearchSpace f;
    CHECK(config::finger_space_from_json(config::to_json(f)).phi2_deg.hi == f.phi2_deg.hi);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("exit code mapping") {
    CHECK(cli::exit_code_for(ErrorCode::kMalformedInput) == 2);
    CHECK(cli::exit_code_for(ErrorCode::kDegenerateInput) == 2);
    CHECK(cli::exit_code_for(ErrorCode::kClosureFailure) == 3);
    CHECK(cli::exit_code_for(ErrorCode::kNoPlan) == 4);
    CHECK(cli::exit_code_for(ErrorCode::kEmptyFeasibleSet) == 5);
  }

  TEST_CASE("defaults is valid config JSON") {
    const auto r = gk({"defaults"});
    REQUIRE(r.code == 0);
    const auto c = config::config_from_json(Json::parse(r.out));
    CHECK(c.finger.r_op == 35);
  }

  TEST_CASE("config file is honoured") {
    const auto path = temp_file("cfg.json", R"({"load": {"tau_in_Nmm": 650}})");
    const auto full = gk({"analyze", "force-profile"});
    const auto half = gk({"analyze", "force-profile", "-c", path});
    REQUIRE(full.code == 0);
    REQUIRE(half.code == 0);
    CHECK(full.out.rfind("r_ob_mm,f_cnt_N\n", 0) == 0);
    CHECK(full.out != half.out);
  }

  TEST_CASE("analysis outputs") {
    const auto t = gk({"analyze", "trajectory", "-n", "5"});
    REQUIRE(t.code == 0);
    CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 6);
    CHECK(gk({"analyze", "speed"}).code == 0);
    CHECK(gk({"analyze", "amplification", "--mode", "no-load"}).code == 0);
    const auto s = gk({"analyze", "score", "-t", "1396,80,0.3"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("372.2") != std::string::npos);
  }

  TEST_CASE("svg output is written") {
    const auto svg = (fs::temp_directory_path() / "gripkit_tests" / "traj.svg").string();
    fs::create_directories(fs::path(svg).parent_path());
    fs::remove(svg);
    REQUIRE(gk({"analyze", "trajectory", "--svg", svg}).code == 0);
    CHECK(fs::exists(svg));
  }

  TEST_CASE("plan outcomes and exit codes") {
    const auto cyl = temp_file("cyl.json", R"({"cylinder": {"radius_mm": 20}})");
    const auto ok = gk({"plan", "--object", cyl});
    REQUIRE(ok.code == 0);
    CHECK(Json::parse(ok.out)["state"] == "F");

    const auto big = temp_file("big.json", R"({"prism": {"vertices_mm": [[0,0],[200,0],[100,173.2]]}})");
    const auto np = gk({"plan", "--object", big});
    CHECK(np.code == 4);
    CHECK(np.out.find("too-large") != std::string::npos);
    CHECK_FALSE(np.err.empty());

    const auto cw = temp_file("cw.json", R"({"prism": {"vertices_mm": [[0,0],[0,10],[10,0]]}})");
    CHECK(gk({"plan", "--object", cw}).code == 2);
  }

  TEST_CASE("bad input exits 2") {
    const auto bad = temp_file("bad.json", R"({"cvt": {"l_out_mm": -1}})");
    const auto r = gk({"analyze", "trajectory", "-c", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("cvt.l_out_mm") != std::string::npos);
    CHECK(gk({"frobnicate"}).code == 2);
    CHECK(gk({"analyze", "force-profile", "--model", "magic"}).code == 2);
  }

  TEST_CASE("design searches") {
    const auto lam = gk({"design-search", "lambda"});
    REQUIRE(lam.code == 0);
    const auto space = temp_file("fs.json", R"({"r_ip_mm": {"min": 25, "max": 27, "step": 0.5},
                                                "phi2_deg": {"min": 56, "max": 60, "step": 0.5}})");
    const auto csv = (fs::temp_directory_path() / "gripkit_tests" / "fs.csv").string();
    const auto f = gk({"design-search", "finger", "--space", space, "--csv", csv});
    REQUIRE(f.code == 0);
    CHECK(fs::exists(csv));
    const auto empty = temp_file("empty.json", R"({"r_ip_mm": {"min": 25, "max": 26, "step": 0.5},
        "phi2_deg": {"min": 56, "max": 57, "step": 0.5}, "min_graspable_width_mm": 900})");
    CHECK(gk({"design-search", "finger", "--space", empty}).code == 5);
  }
}
