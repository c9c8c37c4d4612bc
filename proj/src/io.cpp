#include "uuvloc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "uuvloc/error.hpp"

namespace uuvloc {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::filesystem::path& path, ErrorCode code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(code, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// ------------------------------------------------------------ key/value ----

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source) {
  KeyValueFile kv;
  kv.source_ = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    const std::string where = kv.source_ + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, where + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorCode::ConfigError, where + ": empty key");
    if (!kv.values_.emplace(key, value).second) {
      throw Error(ErrorCode::ConfigError, where + ": duplicate key '" + key + "'");
    }
    if (end == text.size()) break;
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  KeyValueFile kv = parse(read_file(path, ErrorCode::ConfigError), path.string());
  kv.directory_ = path.parent_path();
  return kv;
}

std::optional<std::string> KeyValueFile::get_string(const std::string& key) {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  consumed_.insert(key);
  return it->second;
}

std::string KeyValueFile::require_string(const std::string& key) {
  auto value = get_string(key);
  if (!value) throw Error(ErrorCode::ConfigError, source_ + ": missing key '" + key + "'");
  return *value;
}

std::optional<double> KeyValueFile::get_optional_double(const std::string& key) {
  const auto text = get_string(key);
  if (!text) return std::nullopt;
  const auto value = parse_double(*text);
  if (!value || !std::isfinite(*value)) {
    throw Error(ErrorCode::ConfigError,
                source_ + ": key '" + key + "' is not a finite number: '" + *text + "'");
  }
  return value;
}

double KeyValueFile::get_double(const std::string& key, double fallback) {
  return get_optional_double(key).value_or(fallback);
}

double KeyValueFile::require_double(const std::string& key) {
  const auto value = get_optional_double(key);
  if (!value) throw Error(ErrorCode::ConfigError, source_ + ": missing key '" + key + "'");
  return *value;
}

long long KeyValueFile::get_int(const std::string& key, long long fallback) {
  const auto text = get_string(key);
  if (!text) return fallback;
  long long value = 0;
  const auto res = std::from_chars(text->data(), text->data() + text->size(), value);
  if (res.ec != std::errc() || res.ptr != text->data() + text->size()) {
    throw Error(ErrorCode::ConfigError,
                source_ + ": key '" + key + "' is not an integer: '" + *text + "'");
  }
  return value;
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) {
  const auto text = get_string(key);
  if (!text) return fallback;
  if (*text == "true" || *text == "1" || *text == "yes") return true;
  if (*text == "false" || *text == "0" || *text == "no") return false;
  throw Error(ErrorCode::ConfigError,
              source_ + ": key '" + key + "' is not a boolean: '" + *text + "'");
}

void KeyValueFile::ensure_all_consumed() const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    if (consumed_.count(key) == 0) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) {
    throw Error(ErrorCode::ConfigError, source_ + ": unknown key(s): " + unknown);
  }
}

// ---------------------------------------------------------------- config ----

CameraCalibration parse_calibration(KeyValueFile& kv) {
  const double width = kv.require_double("width");
  const double height = kv.require_double("height");
  if (width != std::floor(width) || height != std::floor(height)) {
    throw Error(ErrorCode::ConfigError, kv.source() + ": image size must be integral");
  }
  CameraCalibration calib;
  try {
    calib.intrinsics = make_intrinsics(kv.require_double("fx"), kv.require_double("fy"),
                                       kv.require_double("cx"), kv.require_double("cy"),
                                       static_cast<int>(width), static_cast<int>(height));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, kv.source() + ": " + e.what());
  }
  calib.distortion.k1 = kv.get_double("k1", 0.0);
  calib.distortion.k2 = kv.get_double("k2", 0.0);
  calib.distortion.k3 = kv.get_double("k3", 0.0);
  calib.distortion.p1 = kv.get_double("p1", 0.0);
  calib.distortion.p2 = kv.get_double("p2", 0.0);
  return calib;
}

CameraCalibration load_calibration(const std::filesystem::path& path) {
  KeyValueFile kv = KeyValueFile::load(path);
  CameraCalibration calib = parse_calibration(kv);
  kv.ensure_all_consumed();
  return calib;
}

RunConfig parse_run_config(KeyValueFile& kv) {
  RunConfig cfg;
  std::filesystem::path calib_path = kv.require_string("calibration");
  if (calib_path.is_relative()) calib_path = kv.directory() / calib_path;
  cfg.calib = load_calibration(calib_path);

  cfg.rig.cam_offset = {kv.get_double("cam_offset_x", 0.0), kv.get_double("cam_offset_y", 0.0),
                        kv.get_double("cam_offset_z", 0.0)};
  cfg.rig.gimbal_pitch_sign = static_cast<int>(kv.get_int("gimbal_pitch_sign", 1));
  const std::string frame = kv.get_string("gimbal_frame").value_or("world");
  if (frame == "world") {
    cfg.rig.gimbal_frame = GimbalFrame::World;
  } else if (frame == "body") {
    cfg.rig.gimbal_frame = GimbalFrame::Body;
  } else {
    throw Error(ErrorCode::ConfigError, kv.source() + ": gimbal_frame must be world or body");
  }
  try {
    validate(cfg.rig);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, kv.source() + ": " + e.what());
  }

  cfg.altitude_datum_offset = kv.get_double("altitude_datum_offset", 0.0);

  const std::string ellipsoid = kv.get_string("ellipsoid").value_or("wgs84");
  if (ellipsoid == "wgs84") {
    cfg.ellipsoid = Ellipsoid::wgs84();
  } else if (ellipsoid == "grs80") {
    cfg.ellipsoid = Ellipsoid::grs80();
  } else if (ellipsoid == "custom") {
    try {
      cfg.ellipsoid = make_ellipsoid(kv.require_double("equatorial_radius"),
                                     kv.require_double("polar_radius"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      throw Error(ErrorCode::ConfigError, kv.source() + ": " + e.what());
    }
  } else {
    throw Error(ErrorCode::ConfigError, kv.source() + ": ellipsoid must be wgs84, grs80 or custom");
  }

  cfg.sync_max_gap = kv.get_double("sync_max_gap", 0.05);

  const auto gt_yaw = kv.get_optional_double("gt_yaw_deg");
  const Eigen::Vector3d gt_t(kv.get_double("gt_tx", 0.0), kv.get_double("gt_ty", 0.0),
                             kv.get_double("gt_tz", 0.0));
  if (gt_yaw) {
    try {
      cfg.gt_frame = make_ground_truth_frame(*gt_yaw * kDegToRad, gt_t);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, kv.source() + ": " + e.what());
    }
  } else if (!gt_t.isZero()) {
    throw Error(ErrorCode::ConfigError, kv.source() + ": gt_t* given without gt_yaw_deg");
  }
  cfg.gt_grid_rescale = kv.get_bool("gt_grid_rescale", false);
  cfg.origin_track = kv.get_bool("origin_track", false);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  KeyValueFile kv = KeyValueFile::load(path);
  RunConfig cfg = parse_run_config(kv);
  kv.ensure_all_consumed();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  KeyValueFile kv = KeyValueFile::load(path);
  ScenarioConfig cfg;
  cfg.run = parse_run_config(kv);

  TrajectorySpec& tr = cfg.trajectory;
  try {
    tr.pattern = parse_pattern(kv.get_string("pattern").value_or("lawnmower"));
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, kv.source() + ": " + e.what());
  }
  const long long samples = kv.get_int("samples", 500);
  if (samples < 1) throw Error(ErrorCode::ConfigError, kv.source() + ": samples must be >= 1");
  tr.samples = static_cast<std::size_t>(samples);
  tr.duration = kv.get_double("duration", 100.0);
  tr.extent = kv.get_double("extent", 10.0);
  tr.lanes = static_cast<int>(kv.get_int("lanes", 5));
  tr.center = {kv.get_double("center_east", 0.0), kv.get_double("center_north", 0.0)};
  tr.a_uav = kv.get_double("altitude", 25.0);
  tr.depth_min = kv.get_double("depth_min", 0.63);
  tr.depth_max = kv.get_double("depth_max", tr.depth_min);
  tr.depth_cycles = kv.get_double("depth_cycles", 3.0);
  tr.gimbal = {kv.get_double("gimbal_yaw_deg", 0.0) * kDegToRad,
               kv.get_double("gimbal_pitch_deg", -90.0) * kDegToRad,
               kv.get_double("gimbal_roll_deg", 0.0) * kDegToRad};
  tr.body = {kv.get_double("body_yaw_deg", 0.0) * kDegToRad,
             kv.get_double("body_pitch_deg", 0.0) * kDegToRad,
             kv.get_double("body_roll_deg", 0.0) * kDegToRad};

  try {
    cfg.ref_geo = make_geodetic(kv.get_double("ref_lat_deg", 42.7) * kDegToRad,
                                kv.get_double("ref_lon_deg", 17.7) * kDegToRad,
                                kv.get_double("ref_alt_m", 0.0));
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, kv.source() + ": " + e.what());
  }

  cfg.noise.sigma_px = kv.get_double("sigma_px", 0.0);
  cfg.noise.sigma_alt = kv.get_double("sigma_alt", 0.0);
  cfg.noise.sigma_depth = kv.get_double("sigma_depth", 0.0);
  cfg.noise.sigma_gimbal = kv.get_double("sigma_gimbal_deg", 0.0) * kDegToRad;
  const long long seed = kv.get_int("seed", 0);
  if (seed < 0) throw Error(ErrorCode::ConfigError, kv.source() + ": seed must be >= 0");
  cfg.noise.seed = static_cast<std::uint64_t>(seed);
  kv.ensure_all_consumed();
  return cfg;
}

Scenario make_scenario(const ScenarioConfig& cfg) {
  Scenario s;
  try {
    s.samples = generate_trajectory(cfg.trajectory);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  s.calib = cfg.run.calib;
  s.rig = cfg.run.rig;
  s.noise = cfg.noise;
  s.ref_geo = cfg.ref_geo;
  return s;
}

// ------------------------------------------------------------------- CSV ----

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cells.emplace_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

}  // namespace

CsvTable parse_csv(std::string_view text, std::string_view source) {
  CsvTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!have_header) {
      table.header = split_cells(line);
      have_header = true;
      continue;
    }
    CsvTable::Row row{line_no, split_cells(line)};
    if (row.cells.size() != table.header.size()) {
      throw Error(ErrorCode::ParseError,
                  std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " fields, found " +
                      std::to_string(row.cells.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) {
    throw Error(ErrorCode::EmptyTrajectory, std::string(source) + ": file is empty");
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_file(path, ErrorCode::ParseError), path.string());
}

namespace {

class ColumnReader {
 public:
  ColumnReader(const CsvTable& table, std::string_view what) : table_(table), what_(what) {}

  std::size_t require(std::string_view name) const {
    const auto idx = table_.column(name);
    if (!idx) {
      throw Error(ErrorCode::ParseError,
                  std::string(what_) + ": missing column '" + std::string(name) + "'");
    }
    return *idx;
  }

  double number(const CsvTable::Row& row, std::size_t col, bool allow_nan = false) const {
    const auto value = parse_double(row.cells[col]);
    if (!value || (!allow_nan && !std::isfinite(*value))) {
      throw Error(ErrorCode::ParseError,
                  std::string(what_) + ":" + std::to_string(row.line) + ": column '" +
                      table_.header[col] + "' is not a finite number: '" + row.cells[col] + "'");
    }
    return *value;
  }

 private:
  const CsvTable& table_;
  std::string_view what_;
};

}  // namespace

const std::vector<std::string> kObservationColumns = {
    "t",           "u",             "v",              "a_uav",
    "d_uuv",       "gimbal_yaw_deg", "gimbal_pitch_deg", "gimbal_roll_deg",
    "body_yaw_deg", "body_pitch_deg", "body_roll_deg",  "ref_lat_deg",
    "ref_lon_deg", "ref_alt_m"};

const std::vector<std::string> kTrajectoryColumns = {
    "t",       "cam_x",   "cam_y", "cam_z", "east",       "north",       "up",   "lat_deg",
    "lon_deg", "h_m",     "a_cam", "d_uuv", "nadir_east", "nadir_north", "flags"};

std::vector<ObservationRecord> parse_observations(const CsvTable& table,
                                                  double altitude_datum_offset) {
  const ColumnReader reader(table, "observations");
  std::vector<std::size_t> cols;
  for (const auto& name : kObservationColumns) cols.push_back(reader.require(name));
  const auto origin_u = table.column("origin_u");
  const auto origin_v = table.column("origin_v");
  if (origin_u.has_value() != origin_v.has_value()) {
    throw Error(ErrorCode::ParseError, "observations: origin_u and origin_v must appear together");
  }

  std::vector<ObservationRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    double f[14];
    for (std::size_t i = 0; i < cols.size(); ++i) f[i] = reader.number(row, cols[i]);
    ObservationRecord rec;
    rec.line = row.line;
    Observation& o = rec.obs;
    o.t = f[0];
    o.px = {f[1], f[2]};
    o.a_uav = f[3] + altitude_datum_offset;
    o.d_uuv = f[4];
    o.gimbal = normalized({f[5] * kDegToRad, f[6] * kDegToRad, f[7] * kDegToRad});
    o.body = normalized({f[8] * kDegToRad, f[9] * kDegToRad, f[10] * kDegToRad});
    try {
      o.ref_geo = make_geodetic(f[11] * kDegToRad, f[12] * kDegToRad, f[13]);
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, "observations:" + std::to_string(row.line) +
                                             ": reference latitude out of range");
    }
    if (origin_u) {
      rec.origin_px = PixelCoord{reader.number(row, *origin_u), reader.number(row, *origin_v)};
    }
    out.push_back(rec);
  }
  return out;
}

namespace {

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_double(v);
    first = false;
  }
}

void write_header(std::ostream& out, const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
}

}  // namespace

void write_observations(std::ostream& out, const std::vector<Observation>& observations,
                        double altitude_datum_offset) {
  write_header(out, kObservationColumns);
  for (const Observation& o : observations) {
    write_row(out, {o.t, o.px.u, o.px.v, o.a_uav - altitude_datum_offset, o.d_uuv,
                    o.gimbal.yaw * kRadToDeg, o.gimbal.pitch * kRadToDeg,
                    o.gimbal.roll * kRadToDeg, o.body.yaw * kRadToDeg, o.body.pitch * kRadToDeg,
                    o.body.roll * kRadToDeg, o.ref_geo.lat * kRadToDeg,
                    o.ref_geo.lon * kRadToDeg, o.ref_geo.h});
    out << '\n';
  }
}

void write_ground_truth(std::ostream& out, const std::vector<GroundTruthSample>& gt) {
  write_header(out, {"t", "x", "y", "z"});
  for (const auto& s : gt) {
    write_row(out, {s.t, s.enu.x(), s.enu.y(), s.enu.z()});
    out << '\n';
  }
}

std::vector<GroundTruthSample> parse_ground_truth(const CsvTable& table) {
  const ColumnReader reader(table, "ground truth");
  const std::size_t ct = reader.require("t");
  const std::size_t cx = reader.require("x");
  const std::size_t cy = reader.require("y");
  const std::size_t cz = reader.require("z");
  std::vector<GroundTruthSample> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    out.push_back({reader.number(row, ct),
                   {reader.number(row, cx), reader.number(row, cy), reader.number(row, cz)}});
  }
  return out;
}

void write_trajectory(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  write_header(out, kTrajectoryColumns);
  for (const auto& r : rows) {
    const RecoveredSample& s = r.sample;
    write_row(out, {r.t, s.camera_point.x(), s.camera_point.y(), s.camera_point.z(), s.enu.x(),
                    s.enu.y(), s.enu.z(), s.geodetic.lat * kRadToDeg,
                    s.geodetic.lon * kRadToDeg, s.geodetic.h, s.a_cam, r.d_uuv, s.nadir_en.x(),
                    s.nadir_en.y()});
    out << ',' << (s.out_of_frame ? "out_of_frame" : "ok") << '\n';
  }
}

std::vector<TrajectoryRecord> parse_trajectory(const CsvTable& table) {
  const ColumnReader reader(table, "trajectory");
  const std::size_t ct = reader.require("t");
  const std::size_t ce = reader.require("east");
  const std::size_t cn = reader.require("north");
  const std::size_t cu = reader.require("up");
  const auto ca = table.column("a_cam");
  const auto cd = table.column("d_uuv");
  const auto cne = table.column("nadir_east");
  const auto cnn = table.column("nadir_north");
  std::vector<TrajectoryRecord> out;
  out.reserve(table.rows.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : table.rows) {
    TrajectoryRecord rec;
    rec.t = reader.number(row, ct);
    rec.enu = {reader.number(row, ce), reader.number(row, cn), reader.number(row, cu)};
    rec.a_cam = ca ? reader.number(row, *ca) : nan;
    rec.d_uuv = cd ? reader.number(row, *cd) : nan;
    rec.nadir_en = {cne ? reader.number(row, *cne, true) : nan,
                    cnn ? reader.number(row, *cnn, true) : nan};
    out.push_back(rec);
  }
  return out;
}

std::string to_json(const TrajectoryErrorReport& report, const std::optional<AxisErrors>& z) {
  nlohmann::ordered_json j;
  j["mae"] = report.mae;
  j["rmse"] = report.rmse;
  j["n_samples"] = report.n_samples;
  j["n_excluded"] = report.n_excluded;
  if (z) {
    j["z_mae"] = z->mae;
    j["z_rmse"] = z->rmse;
  }
  return j.dump(2) + "\n";
}

}  // namespace uuvloc
