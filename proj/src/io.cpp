#include "ilap/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ilap/error.hpp"

namespace ilap::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& field, double& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) fields.push_back(cur);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  return out;
}

Index as_index(double v, const std::string& where) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 2147483647.0)
    fail(ErrorKind::Parse, where + ": node index must be a nonnegative integer");
  return static_cast<Index>(v);
}

template <class T>
void put(std::ostream& out, T v) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  out.write(bytes, sizeof(T));
}

template <class T>
T get(std::istream& in, const std::string& source) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) fail(ErrorKind::Parse, source + ": truncated binary cache");
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace

std::vector<std::vector<double>> read_numeric_rows(std::istream& in, std::size_t columns,
                                                   const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = split(t);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric && first_row) {
      first_row = false;
      continue;  // header
    }
    first_row = false;
    const std::string where = source + ":" + std::to_string(lineno);
    if (!numeric) fail(ErrorKind::Parse, where + ": non-numeric field in '" + t + "'");
    if (columns != 0 && row.size() != columns)
      fail(ErrorKind::Parse, where + ": expected " + std::to_string(columns) + " fields, found " +
                                 std::to_string(row.size()));
    for (double v : row)
      if (!std::isfinite(v)) fail(ErrorKind::Parse, where + ": non-finite value");
    rows.push_back(std::move(row));
  }
  return rows;
}

PointCloud read_points_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto rows = read_numeric_rows(in, 0, path.string());
  if (rows.empty()) fail(ErrorKind::Parse, path.string() + ": no points");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != dim)
      fail(ErrorKind::Parse, path.string() + ": point " + std::to_string(r) + " has " +
                                 std::to_string(rows[r].size()) + " coordinates, expected " +
                                 std::to_string(dim));
    coords.insert(coords.end(), rows[r].begin(), rows[r].end());
  }
  return PointCloud(dim, std::move(coords));
}

void write_points_csv(const std::filesystem::path& path, const PointCloud& cloud) {
  auto out = open_out(path);
  out.precision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
    out << '\n';
  }
}

PointCloud read_points_binary(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "ILPC", 4) != 0)
    fail(ErrorKind::Parse, path.string() + ": not a point cloud cache");
  const auto version = get<std::uint32_t>(in, path.string());
  if (version != 1) fail(ErrorKind::Parse, path.string() + ": unsupported cache version");
  const auto n = get<std::uint64_t>(in, path.string());
  const auto d = get<std::uint64_t>(in, path.string());
  if (d == 0) fail(ErrorKind::Parse, path.string() + ": zero dimension");
  std::vector<double> coords(n * d);
  for (auto& v : coords) v = get<double>(in, path.string());
  return PointCloud(d, std::move(coords));
}

void write_points_binary(const std::filesystem::path& path, const PointCloud& cloud) {
  auto out = open_out(path, std::ios::binary);
  out.write("ILPC", 4);
  put<std::uint32_t>(out, 1);
  put<std::uint64_t>(out, cloud.size());
  put<std::uint64_t>(out, cloud.dim());
  for (double v : cloud.coords()) put<double>(out, v);
}

std::vector<Edge> read_edges_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto rows = read_numeric_rows(in, 3, path.string());
  std::vector<Edge> edges;
  edges.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = path.string() + " row " + std::to_string(r + 1);
    if (rows[r][2] < 0.0) fail(ErrorKind::Parse, where + ": negative weight");
    edges.push_back({as_index(rows[r][0], where), as_index(rows[r][1], where), rows[r][2]});
  }
  return edges;
}

void write_graph_csv(const std::filesystem::path& path, const WeightGraph& graph) {
  auto out = open_out(path);
  out.precision(17);
  out << "i,j,w\n";
  for (const auto& e : graph.edges()) out << e.from << ',' << e.to << ',' << e.weight << '\n';
}

std::vector<std::pair<Index, double>> read_labels_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto rows = read_numeric_rows(in, 2, path.string());
  std::vector<std::pair<Index, double>> labels;
  labels.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    labels.emplace_back(as_index(rows[r][0], path.string() + " row " + std::to_string(r + 1)),
                        rows[r][1]);
  return labels;
}

void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<Index, double>>& labels) {
  auto out = open_out(path);
  out.precision(17);
  out << "i,value\n";
  for (const auto& [i, v] : labels) out << i << ',' << v << '\n';
}

void write_solution_csv(const std::filesystem::path& path, const std::vector<double>& u) {
  auto out = open_out(path);
  out.precision(17);
  out << "i,u\n";
  for (std::size_t i = 0; i < u.size(); ++i) out << i << ',' << u[i] << '\n';
}

std::vector<double> read_solution_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto rows = read_numeric_rows(in, 2, path.string());
  std::vector<double> u(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index i = as_index(rows[r][0], path.string());
    if (static_cast<std::size_t>(i) >= u.size())
      fail(ErrorKind::Parse, path.string() + ": solution index out of range");
    u[i] = rows[r][1];
  }
  return u;
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  auto out = open_out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace ilap::io
