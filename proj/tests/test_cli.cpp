#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "test_support.hpp"
#include "uuvloc/commands.hpp"
#include "uuvloc/io.hpp"

using namespace uuvloc;

namespace {

struct Workspace {
  testing::TempDir dir;
  Workspace(const std::string& scenario_extra = "", const std::string& run_extra = "") {
    testing::write_text(dir / "cam.cfg", testing::kCalibrationText);
    testing::write_text(dir / "run.cfg", "calibration = cam.cfg\n" + run_extra);
    testing::write_text(dir / "scenario.cfg",
                        "calibration = cam.cfg\nsamples = 200\naltitude = 25\n"
                        "depth_min = 0.21\ndepth_max = 1.95\n" + scenario_extra);
  }
  std::filesystem::path operator/(const std::string& n) const { return dir / n; }
};

nlohmann::json evaluate(const Workspace& w, const std::string& traj, const std::string& gt,
                        int* code = nullptr, const std::string& cfg = "run.cfg") {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = run_evaluate({w / cfg, w / traj, w / gt, std::nullopt}, out, err);
  if (code) *code = rc;
  if (rc != kExitOk) return {};
  return nlohmann::json::parse(out.str());
}

}  // namespace

TEST_CASE("simulate, recover, evaluate with zero noise") {
  Workspace w;
  std::ostringstream err;
  REQUIRE(run_simulate({w / "scenario.cfg", w / "obs.csv", w / "gt.csv", std::nullopt}, err) ==
          kExitOk);
  REQUIRE(run_recover({w / "run.cfg", w / "obs.csv", w / "traj.csv"}, err) == kExitOk);
  const auto report = evaluate(w, "traj.csv", "gt.csv");
  CHECK(report["mae"].get<double>() < 1e-9);
  CHECK(report["rmse"].get<double>() < 1e-9);
  CHECK(report["n_samples"].get<int>() == 200);
  CHECK(report["n_excluded"].get<int>() == 0);
  CHECK(testing::read_text(w / "traj.csv.excluded.csv") == "line,t,reason\n");
}

TEST_CASE("outputs are byte-identical across runs") {
  Workspace w("sigma_px = 2\nsigma_alt = 0.1\nseed = 5\n");
  std::ostringstream err;
  run_simulate({w / "scenario.cfg", w / "a.csv", w / "ga.csv", std::nullopt}, err);
  run_simulate({w / "scenario.cfg", w / "b.csv", w / "gb.csv", std::nullopt}, err);
  CHECK(testing::read_text(w / "a.csv") == testing::read_text(w / "b.csv"));
  run_recover({w / "run.cfg", w / "a.csv", w / "ta.csv"}, err);
  run_recover({w / "run.cfg", w / "b.csv", w / "tb.csv"}, err);
  CHECK(testing::read_text(w / "ta.csv") == testing::read_text(w / "tb.csv"));
  run_simulate({w / "scenario.cfg", w / "c.csv", w / "gc.csv", 6u}, err);
  CHECK(testing::read_text(w / "a.csv") != testing::read_text(w / "c.csv"));
}

TEST_CASE("pixel noise through the command line stays in band") {
  Workspace w;
  std::ostringstream err;
  testing::write_text(w / "scenario.cfg",
                      "calibration = cam.cfg\nsamples = 1000\naltitude = 25\ndepth_min = 0.63\n"
                      "sigma_px = 2\nseed = 11\n");
  REQUIRE(run_simulate({w / "scenario.cfg", w / "obs.csv", w / "gt.csv", std::nullopt}, err) ==
          kExitOk);
  REQUIRE(run_recover({w / "run.cfg", w / "obs.csv", w / "traj.csv"}, err) == kExitOk);
  const auto report = evaluate(w, "traj.csv", "gt.csv");
  CHECK(report["mae"].get<double>() >= 0.015);
  CHECK(report["mae"].get<double>() <= 0.04);
  CHECK(report["rmse"].get<double>() >= report["mae"].get<double>());
}

TEST_CASE("evaluate examples") {
  Workspace w;
  testing::write_text(w / "traj.csv",
                      "t,east,north,up\n0,1,2,-25\n1,3,1,-25\n2,-1,0,-26\n");
  testing::write_text(w / "gt.csv", "t,x,y,z\n0,1,2,-25\n1,3,1,-25\n2,-1,0,-26\n");
  testing::write_text(w / "shifted.csv", "t,x,y,z\n0,1.3,2.4,-25\n1,3.3,1.4,-25\n2,-0.7,0.4,-26\n");
  const auto same = evaluate(w, "traj.csv", "gt.csv");
  CHECK(same["mae"].get<double>() == 0.0);
  CHECK(same["rmse"].get<double>() == 0.0);
  const auto off = evaluate(w, "traj.csv", "shifted.csv");
  CHECK(off["mae"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(off["rmse"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));

  // Nothing within the sync gap.
  testing::write_text(w / "late.csv", "t,x,y,z\n10,0,0,0\n11,0,0,0\n");
  int code = 0;
  evaluate(w, "traj.csv", "late.csv", &code);
  CHECK(code == kExitInputError);

  // Row-wise pairing with unequal lengths.
  testing::write_text(w / "rowwise.cfg", "calibration = cam.cfg\nsync_max_gap = 0\n");
  testing::write_text(w / "short.csv", "t,x,y,z\n0,1,2,-25\n");
  evaluate(w, "traj.csv", "short.csv", &code, "rowwise.cfg");
  CHECK(code == kExitInputError);
}

TEST_CASE("recover reports input problems") {
  Workspace w;
  std::ostringstream err;
  testing::write_text(w / "empty.csv", "");
  CHECK(run_recover({w / "run.cfg", w / "empty.csv", w / "out.csv"}, err) == kExitInputError);
  CHECK(err.str().find("EmptyTrajectory") != std::string::npos);

  std::string header;
  for (const auto& c : kObservationColumns) header += (header.empty() ? "" : ",") + c;
  testing::write_text(w / "header_only.csv", header + "\n");
  CHECK(run_recover({w / "run.cfg", w / "header_only.csv", w / "out.csv"}, err) ==
        kExitInputError);

  testing::write_text(w / "mixed.csv", header + "\n" +
                                           "0,1920,1080,25,0.5,0,-90,0,0,0,0,42,17,0\n"
                                           "0.1,1920,1080,0,0.5,0,-90,0,0,0,0,42,17,0\n"
                                           "0.2,1920,1080,-1,0.5,0,-90,0,0,0,0,42,17,0\n");
  CHECK(run_recover({w / "run.cfg", w / "mixed.csv", w / "out.csv"}, err) == kExitOk);
  const CsvTable out = read_csv(w / "out.csv");
  CHECK(out.rows.size() == 1);
  const CsvTable excluded = read_csv(w / "out.csv.excluded.csv");
  REQUIRE(excluded.rows.size() == 2);
  CHECK(excluded.rows[0].cells[0] == "3");
  CHECK(excluded.rows[0].cells[2] == "degenerate");

  testing::write_text(w / "ragged.csv", header + "\n0,1,2\n");
  std::ostringstream err2;
  CHECK(run_recover({w / "run.cfg", w / "ragged.csv", w / "out.csv"}, err2) == kExitInputError);
  CHECK(err2.str().find(":2:") != std::string::npos);

  CHECK(run_recover({w / "run.cfg", w / "missing.csv", w / "out.csv"}, err) == kExitInputError);
}

TEST_CASE("configuration errors exit with 2") {
  Workspace w("", "");
  std::ostringstream err;
  testing::write_text(w / "typo.cfg", "calibration = cam.cfg\ngimbal_frmae = body\n");
  CHECK(run_recover({w / "typo.cfg", w / "obs.csv", w / "out.csv"}, err) == kExitConfigError);
  CHECK(run_recover({w / "absent.cfg", w / "obs.csv", w / "out.csv"}, err) == kExitConfigError);
  testing::write_text(w / "scenario_typo.cfg", "calibration = cam.cfg\nsigma_pix = 2\n");
  CHECK(run_simulate({w / "scenario_typo.cfg", w / "o.csv", w / "g.csv", std::nullopt}, err) ==
        kExitConfigError);
}

TEST_CASE("infeasible scenarios are input errors") {
  Workspace w;
  testing::write_text(w / "wide.cfg", "calibration = cam.cfg\nextent = 200\n");
  std::ostringstream err;
  CHECK(run_simulate({w / "wide.cfg", w / "o.csv", w / "g.csv", std::nullopt}, err) ==
        kExitInputError);
  CHECK(err.str().find("InfeasibleScene") != std::string::npos);
}

TEST_CASE("ground-truth frame and grid rescale") {
  Workspace w;
  // One sample at the nadir, one 2 m east at depth 2.5 below a 25 m camera.
  testing::write_text(w / "traj.csv",
                      "t,east,north,up,a_cam,d_uuv,nadir_east,nadir_north\n"
                      "0,0,0,-27.5,25,2.5,0,0\n1,2.2,1.1,-27.5,25,2.5,0,0\n");
  testing::write_text(w / "grid.csv", "t,x,y,z\n0,0,0,0\n1,2,1,0\n");
  testing::write_text(w / "grid.cfg", "calibration = cam.cfg\ngt_grid_rescale = true\n");
  const auto r = evaluate(w, "traj.csv", "grid.csv", nullptr, "grid.cfg");
  CHECK(r["mae"].get<double>() < 1e-12);
  CHECK_FALSE(r.contains("z_mae"));

  testing::write_text(w / "rot.cfg", "calibration = cam.cfg\ngt_yaw_deg = 90\ngt_tx = 5\n");
  testing::write_text(w / "rot_traj.csv", "t,east,north,up\n0,1,0,0\n");
  // Passive yaw of +90 deg sends east onto -y.
  testing::write_text(w / "rot_gt.csv", "t,x,y,z\n0,5,-1,0\n");
  const auto rot = evaluate(w, "rot_traj.csv", "rot_gt.csv", nullptr, "rot.cfg");
  CHECK(rot["mae"].get<double>() < 1e-12);
}
