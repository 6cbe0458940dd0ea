#include "qolct/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "qolct/error.hpp"

namespace qolct::io {

namespace {

constexpr char kMagic[6] = {'Q', 'S', 'I', 'G', '1', '\0'};
constexpr std::size_t kHeaderSize = 6 + 8 + 32;
constexpr double kParamDetTol = 1e-9;
constexpr double kCsvSpacingTol = 1e-9;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_f64(std::vector<std::uint8_t>& out, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  for (int s = 0; s < 64; s += 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int b = 3; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

double get_f64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return std::bit_cast<double>(v);
}

double component_of(const Quaternion& q, int m) {
  switch (m) {
    case 0: return q.w;
    case 1: return q.x;
    case 2: return q.y;
    default: return q.z;
  }
}

double& component_ref(Quaternion& q, int m) {
  switch (m) {
    case 0: return q.w;
    case 1: return q.x;
    case 2: return q.y;
    default: return q.z;
  }
}

using nlohmann::json;

double number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw InvalidArgument(std::string("parameter file: missing numeric field '") + key + "'");
  }
  return obj.at(key).get<double>();
}

OffsetParams parse_matrix(const json& root, const char* key) {
  if (!root.contains(key) || !root.at(key).is_object()) {
    throw InvalidArgument(std::string("parameter file: missing object '") + key + "'");
  }
  const json& m = root.at(key);
  const double tau = m.contains("tau") ? number(m, "tau") : 0.0;
  const double eta = m.contains("eta") ? number(m, "eta") : 0.0;
  try {
    return OffsetParams::make(number(m, "a"), number(m, "b"), number(m, "c"), number(m, "d"), tau, eta,
                              kParamDetTol);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("parameter file: ") + key + ": " + e.what());
  }
}

PureUnit parse_axis(const json& root, const char* key) {
  if (!root.contains(key)) throw InvalidArgument(std::string("parameter file: missing axis '") + key + "'");
  const json& v = root.at(key);
  if (!v.is_array() || v.size() != 3 || !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
    throw InvalidArgument(std::string("parameter file: axis '") + key + "' must be [x, y, z]");
  }
  try {
    return PureUnit::from_vector(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  } catch (const InvalidArgument&) {
    throw InvalidArgument(std::string("parameter file: axis '") + key + "' is the zero vector");
  }
}

json matrix_json(const OffsetParams& A) {
  return {{"a", A.a}, {"b", A.b}, {"c", A.c}, {"d", A.d}, {"tau", A.tau}, {"eta", A.eta}};
}

json axis_json(const PureUnit& u) { return json::array({u.q().x, u.q().y, u.q().z}); }

// Sorted distinct values, merging those closer than tol * spread.
std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const double spread = v.back() - v.front();
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > kCsvSpacingTol * std::max(spread, 1.0)) out.push_back(x);
  }
  return out;
}

double uniform_spacing(const std::vector<double>& values, const char* axis) {
  if (values.size() < 2) return 1.0;
  const double h = (values.back() - values.front()) / static_cast<double>(values.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - (values.front() + static_cast<double>(i) * h)) > kCsvSpacingTol * std::max(1.0, h * values.size())) {
      throw InvalidArgument(std::string("CSV signal: ") + axis + " coordinates are not uniformly spaced");
    }
  }
  return h;
}

}  // namespace

std::size_t signal_file_size(std::size_t n1, std::size_t n2) { return kHeaderSize + 32 * n1 * n2; }

std::vector<std::uint8_t> encode_signal(const QField& f) {
  const Grid2D& g = f.grid();
  if (g.n1 > UINT32_MAX || g.n2 > UINT32_MAX) throw InvalidArgument("grid too large for a signal file");
  std::vector<std::uint8_t> out;
  out.reserve(signal_file_size(g.n1, g.n2));
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, static_cast<std::uint32_t>(g.n1));
  put_u32(out, static_cast<std::uint32_t>(g.n2));
  for (double x : {g.center1, g.center2, g.spacing1, g.spacing2}) put_f64(out, x);
  for (int m = 0; m < 4; ++m) {
    for (const Quaternion& q : f.samples()) put_f64(out, component_of(q, m));
  }
  return out;
}

QField decode_signal(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw IoError("not a QSIG1 signal file");
  }
  Grid2D g;
  g.n1 = get_u32(bytes.data() + 6);
  g.n2 = get_u32(bytes.data() + 10);
  g.center1 = get_f64(bytes.data() + 14);
  g.center2 = get_f64(bytes.data() + 22);
  g.spacing1 = get_f64(bytes.data() + 30);
  g.spacing2 = get_f64(bytes.data() + 38);
  if (bytes.size() != signal_file_size(g.n1, g.n2)) {
    throw IoError("signal file size " + std::to_string(bytes.size()) + " does not match its " + std::to_string(g.n1) +
                  " x " + std::to_string(g.n2) + " header");
  }
  try {
    g.validate();
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("signal file header: ") + e.what());
  }
  QField f(g);
  const std::uint8_t* p = bytes.data() + kHeaderSize;
  for (int m = 0; m < 4; ++m) {
    for (Quaternion& q : f.samples()) {
      component_ref(q, m) = get_f64(p);
      p += 8;
    }
  }
  return f;
}

void write_signal(const std::filesystem::path& path, const QField& f) {
  const std::vector<std::uint8_t> bytes = encode_signal(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

QField read_signal(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_signal(bytes);
}

QField parse_csv_signal(const std::string& text) {
  struct Row {
    double t1, t2;
    Quaternion q;
  };
  std::vector<Row> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> cells;
    std::istringstream fields(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(fields, cell, ',')) {
      try {
        std::size_t used = 0;
        cells.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (rows.empty() && lineno == 1) continue;  // header
      throw InvalidArgument("CSV signal: non-numeric cell on line " + std::to_string(lineno));
    }
    if (cells.size() != 6) throw InvalidArgument("CSV signal: line " + std::to_string(lineno) + " needs 6 columns");
    rows.push_back({cells[0], cells[1], {cells[2], cells[3], cells[4], cells[5]}});
  }
  if (rows.empty()) throw InvalidArgument("CSV signal: no data rows");

  std::vector<double> c1, c2;
  for (const Row& r : rows) {
    c1.push_back(r.t1);
    c2.push_back(r.t2);
  }
  const std::vector<double> u1 = distinct(c1), u2 = distinct(c2);
  if (u1.size() * u2.size() != rows.size()) {
    throw InvalidArgument("CSV signal: " + std::to_string(rows.size()) + " rows do not form a complete " +
                          std::to_string(u1.size()) + " x " + std::to_string(u2.size()) + " grid");
  }
  Grid2D g;
  g.n1 = u1.size();
  g.n2 = u2.size();
  g.spacing1 = uniform_spacing(u1, "t1");
  g.spacing2 = uniform_spacing(u2, "t2");
  g.center1 = 0.5 * (u1.front() + u1.back());
  g.center2 = 0.5 * (u2.front() + u2.back());

  QField f(g);
  std::vector<bool> seen(g.size(), false);
  for (const Row& r : rows) {
    const auto p = static_cast<std::size_t>(std::lround((r.t1 - u1.front()) / g.spacing1));
    const auto q = static_cast<std::size_t>(std::lround((r.t2 - u2.front()) / g.spacing2));
    const std::size_t idx = g.index(std::min(p, g.n1 - 1), std::min(q, g.n2 - 1));
    if (seen[idx]) throw InvalidArgument("CSV signal: duplicate grid point");
    seen[idx] = true;
    f[idx] = r.q;
  }
  return f;
}

QField read_csv_signal(const std::filesystem::path& path) { return parse_csv_signal(read_text(path)); }

ParamSet parse_params(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("parameter file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InvalidArgument("parameter file must hold a JSON object");
  ParamSet ps;
  ps.A1 = parse_matrix(root, "A1");
  ps.A2 = parse_matrix(root, "A2");
  ps.lambda = parse_axis(root, "lambda");
  ps.mu = parse_axis(root, "mu");
  return ps;
}

ParamSet read_params(const std::filesystem::path& path) { return parse_params(read_text(path)); }

std::string format_params(const ParamSet& ps) {
  const json root = {{"A1", matrix_json(ps.A1)},
                     {"A2", matrix_json(ps.A2)},
                     {"lambda", axis_json(ps.lambda)},
                     {"mu", axis_json(ps.mu)}};
  return root.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace qolct::io
