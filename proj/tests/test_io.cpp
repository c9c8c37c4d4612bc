#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "uuvloc/error.hpp"
#include "uuvloc/io.hpp"

using namespace uuvloc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(25.63) == "25.63");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1e7, 1e7);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    CHECK(parse_double(format_double(x)).value() == x);
  }
}

TEST_CASE("parse_double is strict") {
  CHECK(parse_double(" 1.5 ").value() == 1.5);
  CHECK(parse_double("+2").value() == 2.0);
  CHECK_FALSE(parse_double("1.5m"));
  CHECK_FALSE(parse_double(""));
  CHECK_FALSE(parse_double("1,5"));
}

TEST_CASE("key/value files") {
  KeyValueFile kv = KeyValueFile::parse("# comment\na = 1\n b=two # trailing\n\nflag = yes\n");
  CHECK(kv.get_double("a", 0.0) == 1.0);
  CHECK(kv.require_string("b") == "two");
  CHECK(kv.get_bool("flag", false));
  CHECK(kv.get_double("missing", 4.5) == 4.5);
  CHECK_NOTHROW(kv.ensure_all_consumed());

  KeyValueFile extra = KeyValueFile::parse("a = 1\ngimbal_frmae = body\n");
  extra.get_double("a", 0.0);
  CHECK(code_of([&] { extra.ensure_all_consumed(); }) == ErrorCode::ConfigError);

  CHECK(code_of([] { KeyValueFile::parse("a = 1\na = 2\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { KeyValueFile::parse("just words\n"); }) == ErrorCode::ConfigError);
  KeyValueFile bad = KeyValueFile::parse("x = abc\n");
  CHECK(code_of([&] { bad.get_double("x", 0.0); }) == ErrorCode::ConfigError);
}

TEST_CASE("run config") {
  testing::TempDir dir;
  testing::write_text(dir / "cam.cfg", testing::kCalibrationText);
  testing::write_text(dir / "run.cfg",
                      "calibration = cam.cfg\ncam_offset_z = -0.2\ngimbal_frame = body\n"
                      "altitude_datum_offset = -1.5\nellipsoid = grs80\ngt_yaw_deg = -67.3\n"
                      "gt_tx = 1\ngt_grid_rescale = true\n");
  const RunConfig cfg = load_run_config(dir / "run.cfg");
  CHECK(cfg.calib.intrinsics.fx == 2000.0);
  CHECK(cfg.calib.distortion.k1 == -0.08);
  CHECK(cfg.rig.cam_offset.z() == -0.2);
  CHECK(cfg.rig.gimbal_frame == GimbalFrame::Body);
  CHECK(cfg.altitude_datum_offset == -1.5);
  CHECK(cfg.ellipsoid.polar_radius == Ellipsoid::grs80().polar_radius);
  REQUIRE(cfg.gt_frame);
  CHECK(cfg.gt_frame->translation.x() == 1.0);
  CHECK(cfg.gt_grid_rescale);
  CHECK(cfg.sync_max_gap == 0.05);

  const auto config_error = [&](const std::string& body) {
    testing::write_text(dir / "bad.cfg", "calibration = cam.cfg\n" + body);
    return code_of([&] { load_run_config(dir / "bad.cfg"); });
  };
  CHECK(config_error("gimbal_frame = sideways\n") == ErrorCode::ConfigError);
  CHECK(config_error("colour = blue\n") == ErrorCode::ConfigError);
  CHECK(config_error("gimbal_pitch_sign = 3\n") == ErrorCode::ConfigError);
  CHECK(config_error("ellipsoid = custom\nequatorial_radius = 1\npolar_radius = 2\n") ==
        ErrorCode::ConfigError);
  CHECK(config_error("gt_tx = 3\n") == ErrorCode::ConfigError);
  CHECK(code_of([&] { load_run_config(dir / "nope.cfg"); }) == ErrorCode::ConfigError);
}

TEST_CASE("csv parsing") {
  const CsvTable t = parse_csv("a,b\n1,2\n\n3, 4\n");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1].line == 4);
  CHECK(t.rows[1].cells[1] == "4");
  CHECK(t.column("b") == 1u);
  CHECK_FALSE(t.column("c"));

  try {
    parse_csv("a,b\n1,2\n3\n", "log.csv");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("log.csv:3") != std::string::npos);
  }
  CHECK(code_of([] { parse_csv(""); }) == ErrorCode::EmptyTrajectory);
}

TEST_CASE("observation log round trip") {
  Observation o;
  o.t = 1.25;
  o.px = {1000.5, 200.25};
  o.a_uav = 25.0;
  o.d_uuv = 0.63;
  o.gimbal = {0.1, -1.2, 0.01};
  o.body = {2.0, 0.05, -0.02};
  o.ref_geo = make_geodetic(0.745, 0.309, 12.0);
  std::ostringstream out;
  write_observations(out, {o}, 3.0);
  const auto records = parse_observations(parse_csv(out.str()), 3.0);
  REQUIRE(records.size() == 1);
  const Observation& r = records[0].obs;
  CHECK(r.a_uav == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(r.px.u == 1000.5);
  CHECK(r.gimbal.pitch == doctest::Approx(-1.2).epsilon(1e-15));
  CHECK(r.ref_geo.lat == doctest::Approx(0.745).epsilon(1e-15));
  CHECK(records[0].line == 2);
  CHECK_FALSE(records[0].origin_px);
}

TEST_CASE("observation schema violations") {
  std::string header;
  for (const auto& c : kObservationColumns) header += (header.empty() ? "" : ",") + c;
  const std::string good = "0,1,2,25,0.5,0,-90,0,0,0,0,42,17,0\n";
  CHECK(parse_observations(parse_csv(header + "\n" + good)).size() == 1);
  CHECK(code_of([&] {
          parse_observations(parse_csv(header + "\n" + good + "1,x,2,25,0.5,0,-90,0,0,0,0,42,17,0\n"));
        }) == ErrorCode::ParseError);
  CHECK(code_of([&] {
          parse_observations(parse_csv(header + "\n" + "0,1,2,25,0.5,0,-90,0,0,0,0,95,17,0\n"));
        }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_observations(parse_csv("t,u,v\n1,2,3\n")); }) ==
        ErrorCode::ParseError);
  const auto with_origin =
      parse_observations(parse_csv(header + ",origin_u,origin_v\n" +
                                   good.substr(0, good.size() - 1) + ",10,20\n"));
  REQUIRE(with_origin[0].origin_px);
  CHECK(with_origin[0].origin_px->v == 20.0);
}

TEST_CASE("trajectory and report output") {
  RecoveredSample s;
  s.camera_point = {0.1, 0.2, 25.0};
  s.enu = {0.2, 0.1, -25.0};
  s.geodetic = make_geodetic(0.7, 0.3, -13.0);
  s.a_cam = 24.5;
  s.nadir_en = {0.0, 0.0};
  s.out_of_frame = true;
  std::ostringstream out;
  write_trajectory(out, {{3.0, s, 0.5}});
  const CsvTable t = parse_csv(out.str());
  CHECK(t.header == kTrajectoryColumns);
  CHECK(t.rows[0].cells.back() == "out_of_frame");
  const auto recs = parse_trajectory(t);
  CHECK(recs[0].enu == s.enu);
  CHECK(recs[0].a_cam == 24.5);
  CHECK(recs[0].d_uuv == 0.5);

  TrajectoryErrorReport rep{0.5, 0.5, 3, 1};
  const std::string json = to_json(rep, AxisErrors{0.0, 0.0});
  CHECK(json.find("\"mae\": 0.5") != std::string::npos);
  CHECK(json.find("\"n_excluded\": 1") != std::string::npos);
  CHECK(json.find("z_rmse") != std::string::npos);
  CHECK(to_json(rep, std::nullopt).find("z_mae") == std::string::npos);
}
